#include <doctest.h>

#include <cmath>
#include <complex>
#include <set>
#include <vector>

#include "bimasim/analytic.hpp"
#include "bimasim/noma.hpp"
#include "bimasim/rng.hpp"

using namespace bimasim;

namespace {

std::vector<Constellation> qams(const std::vector<unsigned>& orders) {
    std::vector<Constellation> out;
    for (unsigned m : orders) out.push_back(Constellation::qam(m));
    return out;
}

/// Zero-noise exhaustive SIC sweep; returns the number of composite symbols
/// any device fails to decode.
int zero_noise_failures(const std::vector<double>& alphas, const std::vector<unsigned>& orders) {
    const PowerAllocation pa = PowerAllocation::from_alphas(alphas);
    const std::vector<Constellation> cs = qams(orders);
    const int L = static_cast<int>(orders.size());
    unsigned total = 1;
    for (unsigned m : orders) total *= m;
    int failures = 0;
    const cplx gain(0.8, -0.45);
    for (unsigned composite = 0; composite < total; ++composite) {
        unsigned rem = composite;
        std::vector<std::size_t> idx(L);
        std::vector<cplx> symbols(L);
        for (int i = 0; i < L; ++i) {
            idx[i] = rem % orders[i];
            rem /= orders[i];
            symbols[i] = cs[i].points()[idx[i]];
        }
        const cplx y = gain * superpose(symbols, pa);
        for (int i = 1; i <= L; ++i) {
            const SicResult r = sic_receive(y, gain, pa, cs, i);
            if (r.index != idx[i - 1]) {
                ++failures;
                break;
            }
        }
    }
    return failures;
}

}  // namespace

TEST_CASE("power allocation validation and normalization") {
    CHECK_THROWS_AS(PowerAllocation::from_alphas({0.5, 0.2, 0.3}), std::invalid_argument);
    CHECK_THROWS_AS(PowerAllocation::from_alphas({-0.1, 1.1}), std::invalid_argument);
    CHECK_THROWS_AS(PowerAllocation::from_alphas({0.2, 0.3}), std::invalid_argument);  // sum .5
    const PowerAllocation pa = PowerAllocation::from_alphas({0.0001, 0.0037, 0.0586, 0.9377});
    double sum = 0.0;
    for (double a : pa.alphas()) sum += a;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("feasibility of the published allocations") {
    auto feasible = [](std::vector<double> a, unsigned m) {
        return check_pa_feasible(a, std::vector<unsigned>(a.size(), m)).feasible;
    };
    CHECK(feasible({0.0261, 0.1948, 0.7791}, 4));
    CHECK(feasible({0.0012, 0.0588, 0.9400}, 16));
    CHECK(feasible({0.0001, 0.0154, 0.9845}, 64));
    CHECK(feasible({0.0063, 0.0473, 0.1893, 0.7571}, 4));
    CHECK(feasible({0.0001, 0.0037, 0.0586, 0.9377}, 16));
    // Constellation-agnostic picks break the bound once the order grows.
    CHECK_FALSE(feasible({0.05, 0.25, 0.7}, 16));
    const PaCheck c = check_pa_feasible({0.05, 0.25, 0.7}, {16, 16, 16});
    CHECK(c.bounds[1] == doctest::Approx(0.45).epsilon(1e-12));
    CHECK(c.margins[1] == doctest::Approx(0.25 - 0.45).epsilon(1e-9));
}

TEST_CASE("uniform-gap allocation fails at the third device") {
    const PaCheck c = check_pa_feasible({1.0 / 6, 2.0 / 6, 3.0 / 6}, {4, 4, 4});
    CHECK(c.bounds[1] == doctest::Approx(1.0 / 6).epsilon(1e-12));
    CHECK(c.bounds[2] ==
          doctest::Approx(3.0 * std::pow(std::sqrt(1.0 / 18) + std::sqrt(1.0 / 9), 2))
              .epsilon(1e-12));
    CHECK(c.bounds[2] > 0.5);
    CHECK_FALSE(c.feasible);
}

TEST_CASE("single device is vacuously feasible") {
    const PaCheck c = check_pa_feasible({1.0}, {16});
    CHECK(c.feasible);
    CHECK(c.bounds[0] == 0.0);
}

TEST_CASE("feasibility is scale invariant before normalization") {
    RandomStream rng(17);
    for (int t = 0; t < 200; ++t) {
        std::vector<double> a(3);
        for (double& v : a) v = 0.01 + rng.uniform();
        const std::vector<unsigned> orders = {4, 16, 4};
        const bool base = check_pa_feasible(a, orders).feasible;
        const double c = 0.05 + 20.0 * rng.uniform();
        std::vector<double> scaled = a;
        for (double& v : scaled) v *= c;
        CHECK(check_pa_feasible(scaled, orders).feasible == base);
    }
}

TEST_CASE("generated allocations pass their own constraint") {
    for (double t : {1.2, 1.6, 2.0, 3.0}) {
        for (auto orders : std::vector<std::vector<unsigned>>{
                 {4, 4}, {4, 4, 4}, {16, 16, 16}, {2, 2, 2}, {4, 16, 64}}) {
            const PowerAllocation pa = generate_pa(orders, t);
            CHECK(check_pa_feasible(pa.alphas(), orders).feasible);
            for (std::size_t i = 1; i < orders.size(); ++i)
                CHECK(pa.alphas()[i] > pa.alphas()[i - 1]);
        }
    }
    CHECK_THROWS_AS(generate_pa({4, 4}, 1.0), std::invalid_argument);
}

TEST_CASE("generated allocation approaches the published three-device row") {
    // The published selection rule is unknown; a margin sweep should land
    // within 10% relative distance of the (0.0261, 0.1948, 0.7791) row.
    const std::vector<double> target = {0.0261, 0.1948, 0.7791};
    double best = 1e9;
    for (double t = 1.01; t < 4.0; t += 0.002) {
        const PowerAllocation pa = generate_pa({4, 4, 4}, t);
        double num = 0.0, den = 0.0;
        for (int i = 0; i < 3; ++i) {
            num += (pa.alphas()[i] - target[i]) * (pa.alphas()[i] - target[i]);
            den += target[i] * target[i];
        }
        best = std::min(best, std::sqrt(num / den));
    }
    CHECK(best < 0.10);
}

TEST_CASE("five devices leave almost no power for the weakest") {
    const PowerAllocation pa = generate_pa({4, 4, 4, 4, 4}, 2.5);
    CHECK(pa.alphas()[0] < 1e-4);
    // At the default margin the share is still far below an even split.
    const PowerAllocation def = generate_pa({4, 4, 4, 4, 4}, 2.0);
    CHECK(def.alphas()[0] < 5e-4);
    CHECK(10.0 * std::log10(1.0 / def.alphas()[0]) > 30.0);  // >30 dB penalty
}

TEST_CASE("superposition identity and energy") {
    const PowerAllocation one = PowerAllocation::from_alphas({1.0});
    const cplx x(0.3, -0.8);
    CHECK(superpose(std::vector<cplx>{x}, one) == x);

    RandomStream rng(5);
    const PowerAllocation pa = PowerAllocation::from_alphas({0.0261, 0.1948, 0.7791});
    const std::vector<Constellation> cs = qams({4, 4, 4});
    double acc = 0.0;
    const int n = 200000;
    for (int t = 0; t < n; ++t) {
        std::vector<cplx> sym;
        for (int i = 0; i < 3; ++i) sym.push_back(cs[i].points()[rng.below(4)]);
        acc += std::norm(superpose(sym, pa));
    }
    CHECK(acc / n == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("composite symbols stay inside the strongest device's quadrant") {
    const PowerAllocation pa = PowerAllocation::from_alphas({0.0261, 0.1948, 0.7791});
    const std::vector<Constellation> cs = qams({4, 4, 4});
    for (unsigned a = 0; a < 4; ++a)
        for (unsigned b = 0; b < 4; ++b)
            for (unsigned c = 0; c < 4; ++c) {
                const std::vector<cplx> sym = {cs[0].points()[a], cs[1].points()[b],
                                               cs[2].points()[c]};
                const cplx composite = superpose(sym, pa);
                CHECK(composite.real() * sym[2].real() > 0.0);
                CHECK(composite.imag() * sym[2].imag() > 0.0);
            }
}

TEST_CASE("zero-noise SIC is exact under feasible allocations") {
    CHECK(zero_noise_failures({0.0261, 0.1948, 0.7791}, {4, 4, 4}) == 0);
    CHECK(zero_noise_failures({0.0012, 0.0588, 0.9400}, {16, 16, 16}) == 0);
}

TEST_CASE("zero-noise SIC fails somewhere under the infeasible allocation") {
    CHECK(zero_noise_failures({0.05, 0.25, 0.7}, {16, 16, 16}) > 0);
}

TEST_CASE("device L runs zero cancellation stages") {
    const PowerAllocation pa = PowerAllocation::from_alphas({0.0261, 0.1948, 0.7791});
    const std::vector<Constellation> cs = qams({4, 4, 4});
    const SicResult r = sic_receive(cplx(0.1, 0.1), cplx(1.0, 0.0), pa, cs, 3);
    CHECK(r.trace.detected_symbols.empty());
    CHECK_THROWS_AS(sic_receive(cplx(0.1, 0.1), cplx(0.0, 0.0), pa, cs, 1), std::domain_error);
}

TEST_CASE("stage residual energies live on the constellation distance set") {
    // For 4-QAM the pairwise squared distances are {0, 2, 4}.
    RandomStream rng(777);
    const PowerAllocation pa = PowerAllocation::from_alphas({0.0261, 0.1948, 0.7791});
    const std::vector<Constellation> cs = qams({4, 4, 4});
    const std::set<int> allowed = {0, 2, 4};
    for (int t = 0; t < 3000; ++t) {
        std::vector<cplx> sym(3);
        std::vector<std::size_t> idx(3);
        for (int i = 0; i < 3; ++i) {
            idx[i] = rng.below(4);
            sym[i] = cs[i].points()[idx[i]];
        }
        const cplx gain(1.0, 0.3);
        const cplx noise(0.3 * rng.normal(), 0.3 * rng.normal());
        const cplx y = gain * superpose(sym, pa) + noise;
        SicResult r = sic_receive(y, gain, pa, cs, 1);
        annotate_deltas(r.trace, sym);
        for (double d : r.trace.deltas) {
            const int rounded = static_cast<int>(std::lround(d));
            CHECK(allowed.count(rounded) == 1);
            CHECK(d == doctest::Approx(double(rounded)).epsilon(1e-9));
        }
    }
}

TEST_CASE("post-SIC SINR structure") {
    const PowerAllocation pa = PowerAllocation::from_alphas({0.2, 0.8});
    // Perfect cancellation at the first device leaves no residual terms.
    CHECK(sinr_conventional(pa, 1, 1.7, 10.0, {}) == doctest::Approx(10.0 * 0.2 * 1.7));
    // Last device: interference from all lower-order devices.
    const double g = 0.9, rho = 25.0;
    CHECK(sinr_conventional(pa, 2, g, rho, {}) ==
          doctest::Approx(rho * 0.8 * g / (rho * g * 0.2 + 1.0)));
    // Towards infinite SNR the last device saturates at alpha_L / (1-alpha_L).
    CHECK(sinr_conventional(pa, 2, 1.0, 1e12, {}) == doctest::Approx(4.0).epsilon(1e-6));
    CHECK(conv_rate_ceiling(pa, 2) == doctest::Approx(std::log2(5.0)));
    // Residuals lower the rate monotonically.
    const std::vector<double> worst = {4.0};
    CHECK(conv_rate(pa, 1, 1.0, 100.0, worst) < conv_rate(pa, 1, 1.0, 100.0, {}));
}
