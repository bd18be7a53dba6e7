#include "bimasim/noma.hpp"

#include <cmath>
#include <stdexcept>

#include "bimasim/special.hpp"

namespace bimasim {

PowerAllocation PowerAllocation::from_alphas(std::vector<double> alphas) {
    if (alphas.empty()) throw std::invalid_argument("power allocation: empty vector");
    double sum = 0.0;
    for (std::size_t k = 0; k < alphas.size(); ++k) {
        if (!(alphas[k] > 0.0)) throw std::invalid_argument("power allocation: coefficients must be positive");
        if (k > 0 && !(alphas[k] > alphas[k - 1]))
            throw std::invalid_argument("power allocation: coefficients must be strictly increasing");
        sum += alphas[k];
    }
    if (std::fabs(sum - 1.0) > 1e-3)
        throw std::invalid_argument("power allocation: coefficients must sum to 1");
    for (double& a : alphas) a /= sum;
    PowerAllocation pa;
    pa.alphas_ = std::move(alphas);
    return pa;
}

namespace {

double pam_half_spacing(unsigned order) { return std::sqrt(3.0 / (2.0 * (order - 1.0))); }

double pam_max_amplitude(unsigned order) {
    return (std::sqrt(double(order)) - 1.0) * pam_half_spacing(order);
}

}  // namespace

PaCheck check_pa_feasible(const std::vector<double>& alphas, const std::vector<unsigned>& orders) {
    if (alphas.size() != orders.size())
        throw std::invalid_argument("check_pa_feasible: size mismatch");
    const int L = static_cast<int>(alphas.size());
    PaCheck out;
    out.bounds.resize(L);
    out.margins.resize(L);
    out.feasible = true;
    double inner = 0.0;  // sum_{j<i} sqrt(alpha_j/(M_j-1)) * (sqrt(M_j)-1)
    for (int i = 1; i <= L; ++i) {
        const unsigned m = orders[i - 1];
        if (m < 2 || !is_power_of_two(m))
            throw std::invalid_argument("check_pa_feasible: bad modulation order");
        const double bound = (m - 1.0) * inner * inner;
        out.bounds[i - 1] = bound;
        out.margins[i - 1] = alphas[i - 1] - bound;
        if (!(alphas[i - 1] > bound)) out.feasible = false;
        inner += std::sqrt(alphas[i - 1] / (m - 1.0)) * (std::sqrt(double(m)) - 1.0);
    }
    return out;
}

PowerAllocation generate_pa(const std::vector<unsigned>& orders, double margin_t) {
    if (!(margin_t > 1.0)) throw std::invalid_argument("generate_pa: margin must exceed 1");
    if (orders.empty()) throw std::invalid_argument("generate_pa: no devices");
    const int L = static_cast<int>(orders.size());
    std::vector<double> amp(L);
    double spread = 0.0;  // sum_{j<i} amp_j * d_max_j
    for (int i = 0; i < L; ++i) {
        if (orders[i] < 2 || !is_power_of_two(orders[i]))
            throw std::invalid_argument("generate_pa: bad modulation order");
        if (i == 0) {
            amp[0] = 1.0;
        } else {
            // The detectability bound on the amplitude, with the ascending
            // convention enforced when the bound alone would not grow.
            const double bound_amp = spread / pam_half_spacing(orders[i]);
            amp[i] = margin_t * std::max(bound_amp, amp[i - 1]);
        }
        spread += amp[i] * pam_max_amplitude(orders[i]);
    }
    double sum = 0.0;
    for (double a : amp) sum += a * a;
    std::vector<double> alphas(L);
    for (int i = 0; i < L; ++i) alphas[i] = amp[i] * amp[i] / sum;
    if (alphas[0] < 1e-12)
        throw std::runtime_error(
            "generate_pa: weakest device's power share collapsed (infeasible configuration)");
    std::vector<double> normalized = alphas;
    PowerAllocation pa;
    // Bypass the sum tolerance path: alphas already sum to 1 exactly.
    pa = PowerAllocation::from_alphas(std::move(normalized));
    return pa;
}

cplx superpose(std::span<const cplx> symbols, const PowerAllocation& pa) {
    if (static_cast<int>(symbols.size()) != pa.device_count())
        throw std::invalid_argument("superpose: symbol count does not match allocation");
    cplx acc(0.0, 0.0);
    for (int i = 0; i < pa.device_count(); ++i)
        acc += std::sqrt(pa.alpha(i + 1)) * symbols[i];
    return acc;
}

SicResult sic_receive(cplx received, cplx gain, const PowerAllocation& pa,
                      const std::vector<Constellation>& constellations, int device) {
    const int L = pa.device_count();
    if (static_cast<int>(constellations.size()) != L)
        throw std::invalid_argument("sic_receive: constellation count mismatch");
    if (device < 1 || device > L) throw std::invalid_argument("sic_receive: device out of range");
    if (gain == cplx(0.0, 0.0)) throw std::domain_error("sic_receive: zero channel gain");

    SicResult out;
    out.trace.device = device;
    cplx y = received;
    for (int j = L; j > device; --j) {
        const double a = std::sqrt(pa.alpha(j));
        const Detection det = constellations[j - 1].slice(y, gain * a);
        const cplx sym = constellations[j - 1].points()[det.index];
        y -= gain * a * sym;
        out.trace.detected_indices.push_back(det.index);
        out.trace.detected_symbols.push_back(sym);
        out.trace.residuals.push_back(y);
    }
    const Detection own = constellations[device - 1].slice(y, gain * std::sqrt(pa.alpha(device)));
    out.index = own.index;
    out.label = own.label;
    return out;
}

void annotate_deltas(SicTrace& trace, std::span<const cplx> true_symbols) {
    const int L = static_cast<int>(true_symbols.size());
    trace.deltas.clear();
    for (std::size_t s = 0; s < trace.detected_symbols.size(); ++s) {
        const int j = L - static_cast<int>(s);  // stage s detected device j
        trace.deltas.push_back(std::norm(true_symbols[j - 1] - trace.detected_symbols[s]));
    }
}

std::vector<double> deltas_in_device_order(const SicTrace& trace) {
    std::vector<double> out(trace.deltas.rbegin(), trace.deltas.rend());
    return out;
}

double sinr_conventional(const PowerAllocation& pa, int device, double gamma, double rho,
                         std::span<const double> deltas) {
    const int L = pa.device_count();
    if (device < 1 || device > L) throw std::invalid_argument("sinr: device out of range");
    double residual = 0.0;  // sum_{j>i} alpha_j * delta_j
    for (int j = device + 1; j <= L; ++j) {
        const std::size_t k = static_cast<std::size_t>(j - device - 1);
        const double d = k < deltas.size() ? deltas[k] : 0.0;
        residual += pa.alpha(j) * d;
    }
    double iui = 0.0;  // devices decoded after i treat i's signal as noise
    for (int p = 1; p < device; ++p) iui += pa.alpha(p);
    return rho * pa.alpha(device) * gamma / (rho * gamma * residual + rho * gamma * iui + 1.0);
}

}  // namespace bimasim
