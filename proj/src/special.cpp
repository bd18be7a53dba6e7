#include "bimasim/special.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace bimasim {

double gaussian_q(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

namespace {

constexpr double kEulerGamma = 0.57721566490153286060651209008240;

// Series branch, x in (0, 1]: E1(x) = -gamma - ln x + sum_k (-1)^{k+1} x^k / (k * k!)
double e1_series(double x) {
    long double sum = 0.0L;
    long double term = 1.0L;
    for (int k = 1; k < 64; ++k) {
        term *= -x / k;
        const long double add = -term / k;
        sum += add;
        if (std::fabs((double)add) < 1e-18 * std::fabs((double)sum)) break;
    }
    return (double)(-kEulerGamma - std::log((long double)x) + sum);
}

// Continued fraction (modified Lentz) for F(x) with E1(x) = exp(-x) / F(x):
//   F(x) = x + 1 - 1^2/(x + 3 - 2^2/(x + 5 - 3^2/(x + 7 - ...)))
double e1_cf_denominator(double x) {
    const double tiny = 1e-300;
    double f = x + 1.0;
    if (f == 0.0) f = tiny;
    double c = f;
    double d = 0.0;
    for (int k = 1; k < 400; ++k) {
        const double a = -double(k) * double(k);
        const double b = x + 2.0 * k + 1.0;
        d = b + a * d;
        if (d == 0.0) d = tiny;
        c = b + a / c;
        if (c == 0.0) c = tiny;
        d = 1.0 / d;
        const double delta = c * d;
        f *= delta;
        if (std::fabs(delta - 1.0) < 1e-16) break;
    }
    return f;
}

}  // namespace

double exp_integral_e1(double x) {
    if (!(x > 0.0)) throw std::domain_error("E1 requires x > 0");
    if (x <= 1.0) return e1_series(x);
    return std::exp(-x) / e1_cf_denominator(x);
}

double exp_integral_ei(double x) {
    if (!(x < 0.0)) throw std::domain_error("Ei evaluated for x < 0 only");
    return -exp_integral_e1(-x);
}

double expx_e1(double x) {
    if (!(x > 0.0)) throw std::domain_error("expx_e1 requires x > 0");
    if (x <= 1.0) return std::exp(x) * e1_series(x);
    return 1.0 / e1_cf_denominator(x);
}

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    if (n > 60) throw std::domain_error("binomial: n too large for exact evaluation");
    k = std::min(k, n - k);
    long double r = 1.0L;
    for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
    return std::floor((double)r + 0.5);
}

bool is_power_of_two(unsigned v) { return v != 0 && (v & (v - 1)) == 0; }

int int_log2(unsigned v) {
    if (!is_power_of_two(v)) throw std::domain_error("int_log2: not a power of two");
    int n = 0;
    while (v > 1) {
        v >>= 1;
        ++n;
    }
    return n;
}

const GaussLegendreRule& gauss_legendre(int n) {
    static std::map<int, GaussLegendreRule> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    GaussLegendreRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Newton iteration from the Chebyshev-like initial guess.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    auto [pos, inserted] = cache.emplace(n, std::move(rule));
    (void)inserted;
    return pos->second;
}

}  // namespace bimasim
