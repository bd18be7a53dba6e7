#include "bimasim/analytic.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "bimasim/special.hpp"

namespace bimasim {

namespace {

constexpr double kLog2E = 1.4426950408889634073599246810019;

void check_device(const GainModel& gains, int device) {
    if (device < 1 || device > gains.device_count)
        throw std::invalid_argument("device index out of range");
}

int total_bits(const std::vector<unsigned>& orders) {
    int n = 0;
    for (unsigned m : orders) n += int_log2(m);
    return n;
}

/// Prefactor of the conditional BER expression: 4(sqrt(M)-1)/(sqrt(M) log2 M)
/// for square layouts, 4/log2 M otherwise.
double ber_prefactor(const std::vector<unsigned>& orders) {
    const int n = total_bits(orders);
    const double mbw = std::ldexp(1.0, n);
    if (n % 2 == 0) {
        const double root = std::sqrt(mbw);
        return 4.0 * (root - 1.0) / (root * n);
    }
    return 4.0 / n;
}

/// Rayleigh-averaged Q(sqrt(2 c gamma)) for an exponential gain of mean m:
/// (1/2) (1 - sqrt(cm / (1 + cm))).
long double fading_q_term(long double cm) {
    return 0.5L * (1.0L - std::sqrt(cm / (1.0L + cm)));
}

}  // namespace

double bit_fraction(int device, const std::vector<unsigned>& orders) {
    if (device < 1 || device > static_cast<int>(orders.size()))
        throw std::invalid_argument("device index out of range");
    return double(int_log2(orders[device - 1])) / double(total_bits(orders));
}

unsigned joint_order(const std::vector<unsigned>& orders) {
    unsigned long long m = 1;
    for (unsigned o : orders) m *= o;
    if (m > (1ull << 31)) throw std::invalid_argument("joint order too large");
    return static_cast<unsigned>(m);
}

double bima_rate(int device, const std::vector<unsigned>& orders, double snr_term) {
    if (snr_term < 0.0) throw std::domain_error("snr term must be >= 0");
    return bit_fraction(device, orders) * std::log2(1.0 + snr_term);
}

double bima_ec(const GainModel& gains, int device, const std::vector<unsigned>& orders,
               double rho) {
    check_device(gains, device);
    const double frac = bit_fraction(device, orders);
    if (gains.ordering == Ordering::Sco) {
        const double rs = rho * gains.variance_of(device);
        if (rs < 1e-10) return 0.0;
        return frac * kLog2E * expx_e1(1.0 / rs);
    }
    const int L = gains.device_count;
    const int i = device;
    const double rs = rho * gains.sigma2;
    if (rs < 1e-10) return 0.0;
    const double front = frac * kLog2E * L * binomial(L - 1, L - i);
    long double acc = 0.0L;
    for (int p = 0; p <= L - i; ++p) {
        const long double term =
            binomial(L - i, p) / (long double)(i + p) * expx_e1((i + p) / rs);
        acc += (p % 2 == 0) ? term : -term;
    }
    const double v = front * (double)acc;
    return v > 0.0 ? v : 0.0;
}

double bima_outage_threshold(int device, const std::vector<unsigned>& orders, double rho,
                             double target_rate) {
    if (!(rho > 0.0)) throw std::domain_error("rho must be positive");
    if (target_rate < 0.0) throw std::domain_error("target rate must be >= 0");
    const double frac = bit_fraction(device, orders);
    return std::expm1(target_rate / frac * 0.69314718055994530941723212145818) / rho;
}

double bima_op(const GainModel& gains, int device, const std::vector<unsigned>& orders,
               double rho, double target_rate) {
    check_device(gains, device);
    if (target_rate == 0.0) return 0.0;
    const double phi = bima_outage_threshold(device, orders, rho, target_rate);
    if (gains.ordering == Ordering::Sco)
        return -std::expm1(-phi / gains.variance_of(device));
    return ith_max_cdf(gains.device_count, device, gains.sigma2, phi);
}

double bima_ber(const GainModel& gains, int device, const std::vector<unsigned>& orders,
                double rho) {
    check_device(gains, device);
    if (rho < 0.0) throw std::domain_error("rho must be >= 0");
    const double mbw = std::ldexp(1.0, total_bits(orders));
    const double g = 1.5 * rho / (mbw - 1.0);
    const double xi = ber_prefactor(orders);
    if (gains.ordering == Ordering::Sco)
        return xi * (double)fading_q_term((long double)g * gains.variance_of(device));
    const int L = gains.device_count;
    const int i = device;
    long double acc = 0.0L;
    for (int p = 0; p <= L - i; ++p) {
        const long double term = binomial(L - i, p) / (long double)(p + i) *
                                 fading_q_term((long double)g * gains.sigma2 / (p + i));
        acc += (p % 2 == 0) ? term : -term;
    }
    const double v = xi * L * binomial(L - 1, L - i) * (double)acc;
    return v < 0.0 ? 0.0 : v;
}

double bima_ber_by_quadrature(const GainModel& gains, int device,
                              const std::vector<unsigned>& orders, double rho,
                              int quadrature_points) {
    check_device(gains, device);
    const double mbw = std::ldexp(1.0, total_bits(orders));
    const double g = 1.5 * rho / (mbw - 1.0);
    const double xi = ber_prefactor(orders);
    const double inv_pi = 1.0 / 3.1415926535897932384626433832795;
    if (gains.ordering == Ordering::Sco) {
        const double s2 = gains.variance_of(device);
        const double v = integrate_half_pi(
            [&](double theta) {
                const double sin2 = std::sin(theta) * std::sin(theta);
                return 1.0 / (1.0 + g * s2 / sin2);
            },
            quadrature_points);
        return xi * inv_pi * v;
    }
    const int L = gains.device_count;
    const int i = device;
    const double v = integrate_half_pi(
        [&](double theta) {
            const double sin2 = std::sin(theta) * std::sin(theta);
            const double s = -g / sin2;
            long double acc = 0.0L;
            for (int p = 0; p <= L - i; ++p) {
                const long double term =
                    binomial(L - i, p) / ((long double)(p + i) - (long double)s * gains.sigma2);
                acc += (p % 2 == 0) ? term : -term;
            }
            return (double)acc;
        },
        quadrature_points);
    return xi * L * binomial(L - 1, L - i) * inv_pi * v;
}

double sum_ec(const GainModel& gains, const std::vector<unsigned>& orders, double rho) {
    double acc = 0.0;
    for (int i = 1; i <= gains.device_count; ++i) acc += bima_ec(gains, i, orders, rho);
    return acc;
}

double conv_rate(const PowerAllocation& pa, int device, double gamma, double rho,
                 std::span<const double> deltas) {
    return std::log2(1.0 + sinr_conventional(pa, device, gamma, rho, deltas));
}

double conv_rate_ceiling(const PowerAllocation& pa, int device) {
    double below = 0.0;
    for (int p = 1; p < device; ++p) below += pa.alpha(p);
    if (below == 0.0) return std::numeric_limits<double>::infinity();
    return std::log2(1.0 + pa.alpha(device) / below);
}

double conv_ber_2user_4qam(int device, const std::vector<double>& alphas,
                           const GainModel& gains, double rho) {
    if (alphas.size() != 2 || gains.device_count != 2)
        throw std::domain_error("conv_ber_2user_4qam: closed form exists for two 4-QAM devices only");
    if (device < 1 || device > 2) throw std::invalid_argument("device out of range");
    const double a1 = std::sqrt(alphas[0]);
    const double a2 = std::sqrt(alphas[1]);
    // Per-rail amplitude analysis of the SIC chain: the weights multiply
    // Q(sqrt(arg * rho * gamma)) terms, negative weights carrying the
    // detect-then-subtract cancellation events.
    std::vector<double> weights, args;
    if (device == 1) {
        weights = {-0.5, 0.5, 1.0, 0.5, -0.5};
        args = {(a2 + a1) * (a2 + a1), (a2 - a1) * (a2 - a1), alphas[0],
                (2 * a2 + a1) * (2 * a2 + a1), (2 * a2 - a1) * (2 * a2 - a1)};
    } else {
        weights = {0.5, 0.5};
        args = {(a2 + a1) * (a2 + a1), (a2 - a1) * (a2 - a1)};
    }
    double acc = 0.0;
    for (std::size_t k = 0; k < weights.size(); ++k) {
        if (args[k] == 0.0) {
            acc += weights[k] * 0.5;  // Q(0) averaged over any gain
            continue;
        }
        const double c = 0.5 * args[k] * rho;  // E[Q(sqrt(2 c gamma))]
        double avg;
        if (gains.ordering == Ordering::Sco) {
            avg = (double)fading_q_term((long double)c * gains.variance_of(device));
        } else {
            // Mixture form of the ordered-gain average.
            const int L = 2, i = device;
            long double sum = 0.0L;
            for (int p = 0; p <= L - i; ++p) {
                const long double term = binomial(L - i, p) / (long double)(p + i) *
                                         fading_q_term((long double)c * gains.sigma2 / (p + i));
                sum += (p % 2 == 0) ? term : -term;
            }
            avg = L * binomial(L - 1, L - i) * (double)sum;
        }
        acc += weights[k] * avg;
    }
    return acc < 0.0 ? 0.0 : acc;
}

double evaluate(const KpiRequest& request) {
    if (request.scheme == Scheme::Bima) {
        switch (request.metric) {
            case Metric::Ec:
                return bima_ec(request.gains, request.device, request.orders, request.rho);
            case Metric::Op:
                return bima_op(request.gains, request.device, request.orders, request.rho,
                               request.target_rate);
            case Metric::Ber:
                return bima_ber(request.gains, request.device, request.orders, request.rho);
        }
    }
    if (request.metric == Metric::Ber) {
        if (!request.alphas) throw std::invalid_argument("conventional BER needs an allocation");
        return conv_ber_2user_4qam(request.device, *request.alphas, request.gains, request.rho);
    }
    throw std::domain_error(
        "no closed form: conventional EC/OP are evaluated by simulation (residuals are random)");
}

}  // namespace bimasim
