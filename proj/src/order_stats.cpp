#include "bimasim/order_stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bimasim/special.hpp"

namespace bimasim {

namespace {

void require_order_args(int L, int i, double sigma2) {
    if (L < 1) throw std::invalid_argument("device count must be >= 1");
    if (i < 1 || i > L) throw std::invalid_argument("order index out of range");
    if (!(sigma2 > 0.0)) throw std::invalid_argument("variance must be positive");
}

}  // namespace

GainModel GainModel::ico(int device_count, double sigma2) {
    if (device_count < 1) throw std::invalid_argument("device count must be >= 1");
    if (!(sigma2 > 0.0)) throw std::invalid_argument("variance must be positive");
    GainModel m;
    m.ordering = Ordering::Ico;
    m.device_count = device_count;
    m.sigma2 = sigma2;
    return m;
}

GainModel GainModel::sco(std::vector<double> sigma2s) {
    if (sigma2s.empty()) throw std::invalid_argument("need at least one variance");
    for (std::size_t k = 0; k < sigma2s.size(); ++k) {
        if (!(sigma2s[k] > 0.0)) throw std::invalid_argument("variance must be positive");
        if (k > 0 && sigma2s[k] > sigma2s[k - 1] + 1e-15)
            throw std::invalid_argument("SCO variances must be non-increasing");
    }
    GainModel m;
    m.ordering = Ordering::Sco;
    m.device_count = static_cast<int>(sigma2s.size());
    m.sigma2 = sigma2s.front();
    m.sigma2_per_device = std::move(sigma2s);
    return m;
}

double GainModel::variance_of(int device) const {
    if (device < 1 || device > device_count) throw std::invalid_argument("device out of range");
    if (ordering == Ordering::Ico) return sigma2;
    return sigma2_per_device[device - 1];
}

double ith_max_pdf(int L, int i, double sigma2, double gamma) {
    require_order_args(L, i, sigma2);
    if (gamma < 0.0) throw std::domain_error("gamma must be >= 0");
    // Alternating binomial sum; accumulate in extended precision.
    long double acc = 0.0L;
    const double front = L * binomial(L - 1, L - i);
    for (int p = 0; p <= L - i; ++p) {
        const long double term =
            binomial(L - i, p) / (long double)sigma2 * std::exp(-(i + p) * gamma / sigma2);
        acc += (p % 2 == 0) ? term : -term;
    }
    const double v = front * (double)acc;
    return v < 0.0 && v > -1e-15 ? 0.0 : v;
}

double ith_max_cdf(int L, int i, double sigma2, double gamma) {
    require_order_args(L, i, sigma2);
    if (gamma < 0.0) throw std::domain_error("gamma must be >= 0");
    const long double u = -std::expm1(-(long double)gamma / sigma2);  // 1 - exp(-g/s2)
    long double acc = 0.0L;
    for (int j = L - i + 1; j <= L; ++j) {
        for (int p = 0; p <= L - j; ++p) {
            const long double term =
                binomial(L, j) * binomial(L - j, p) * std::pow((double)u, j + p);
            acc += (p % 2 == 0) ? term : -term;
        }
    }
    double v = (double)acc;
    if (v < 0.0) v = 0.0;
    if (v > 1.0) v = 1.0;
    return v;
}

double ith_max_mgf(int L, int i, double sigma2, double s) {
    require_order_args(L, i, sigma2);
    const double front = L * binomial(L - 1, L - i);
    long double acc = 0.0L;
    for (int p = 0; p <= L - i; ++p) {
        const long double denom = (long double)(p + i) - (long double)s * sigma2;
        if (denom <= 0.0L) throw std::domain_error("ith_max_mgf: s at or beyond a pole");
        const long double term = binomial(L - i, p) / denom;
        acc += (p % 2 == 0) ? term : -term;
    }
    return front * (double)acc;
}

void sample_gains(const GainModel& model, RandomStream& rng, std::vector<double>& out) {
    const int L = model.device_count;
    out.resize(L);
    if (model.ordering == Ordering::Ico) {
        for (int k = 0; k < L; ++k) {
            const double g1 = rng.normal();
            const double g2 = rng.normal();
            out[k] = 0.5 * model.sigma2 * (g1 * g1 + g2 * g2);
        }
        std::stable_sort(out.begin(), out.end(), std::greater<double>());
    } else {
        for (int k = 0; k < L; ++k) {
            const double g1 = rng.normal();
            const double g2 = rng.normal();
            out[k] = 0.5 * model.sigma2_per_device[k] * (g1 * g1 + g2 * g2);
        }
    }
}

std::vector<double> sample_gains(const GainModel& model, RandomStream& rng) {
    std::vector<double> out;
    sample_gains(model, rng, out);
    return out;
}

}  // namespace bimasim
