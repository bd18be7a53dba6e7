#pragma once

#include <cstdint>
#include <vector>

// Scalar special functions and quadrature used by the closed-form KPI
// evaluators: Gaussian tail Q(x), exponential integral Ei/E1, and
// Gauss-Legendre rules for the finite-angle integrals.

namespace bimasim {

/// Gaussian tail probability Q(x) = P(N(0,1) > x).
double gaussian_q(double x);

/// Exponential integral Ei(x) for x < 0 only. Throws std::domain_error at
/// x >= 0 (the positive branch is never needed here).
double exp_integral_ei(double x);

/// E1(x) = -Ei(-x) for x > 0.
double exp_integral_e1(double x);

/// exp(x) * E1(x), evaluated without overflow for large x. This is the
/// combination appearing in the ergodic-capacity closed forms.
double expx_e1(double x);

/// Binomial coefficient as a double; exact for the small arguments used by
/// the order-statistics sums (n <= 60).
double binomial(int n, int k);

bool is_power_of_two(unsigned v);

/// log2 of a power of two.
int int_log2(unsigned v);

struct GaussLegendreRule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1]; rules are cached per n.
const GaussLegendreRule& gauss_legendre(int n);

/// Integrate f over (0, pi/2) with an n-point Gauss-Legendre rule.
template <class F>
double integrate_half_pi(F&& f, int n = 200) {
    const GaussLegendreRule& rule = gauss_legendre(n);
    const double half = 0.5 * 1.5707963267948966192313216916398;
    double acc = 0.0;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
        const double theta = half * (rule.nodes[k] + 1.0);
        acc += rule.weights[k] * f(theta);
    }
    return acc * half;
}

}  // namespace bimasim
