#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "bimasim/constellation.hpp"
#include "bimasim/rng.hpp"
#include "bimasim/special.hpp"

using namespace bimasim;

TEST_CASE("order validation") {
    CHECK_THROWS_AS(Constellation::qam(0), std::invalid_argument);
    CHECK_THROWS_AS(Constellation::qam(1), std::invalid_argument);
    CHECK_THROWS_AS(Constellation::qam(12), std::invalid_argument);
}

TEST_CASE("bpsk and qpsk layouts") {
    const Constellation b = Constellation::qam(2);
    CHECK(b.map_bits({0}) == cplx(-1.0, 0.0));
    CHECK(b.map_bits({1}) == cplx(1.0, 0.0));

    const Constellation q = Constellation::qam(4);
    std::multiset<std::pair<double, double>> got, want;
    const double a = 1.0 / std::sqrt(2.0);
    for (unsigned l = 0; l < 4; ++l) {
        const cplx p = q.map_label(l);
        got.insert({p.real(), p.imag()});
        CHECK(std::abs(p) == doctest::Approx(1.0));
    }
    for (double re : {-a, a})
        for (double im : {-a, a}) want.insert({re, im});
    auto it = want.begin();
    for (const auto& g : got) {
        CHECK(g.first == doctest::Approx(it->first));
        CHECK(g.second == doctest::Approx(it->second));
        ++it;
    }
}

TEST_CASE("unit average energy") {
    for (unsigned m : {2u, 4u, 8u, 16u, 64u, 256u, 1024u}) {
        const Constellation c = Constellation::qam(m);
        double e = 0.0;
        for (const cplx& p : c.points()) e += std::norm(p);
        CHECK(e / m == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("gray labels: unique, axis-adjacent differ in one bit") {
    for (unsigned m : {4u, 8u, 16u, 64u}) {
        const Constellation c = Constellation::qam(m);
        std::set<std::uint32_t> seen;
        for (std::size_t k = 0; k < m; ++k) seen.insert(c.label_of(k));
        CHECK(seen.size() == m);

        const int mi = 1 << c.i_bits();
        const int mq = 1 << c.q_bits();
        auto label_at = [&](int ki, int kq) { return c.label_of(std::size_t(ki) * mq + kq); };
        for (int ki = 0; ki < mi; ++ki)
            for (int kq = 0; kq < mq; ++kq) {
                if (ki + 1 < mi)
                    CHECK(std::popcount(label_at(ki, kq) ^ label_at(ki + 1, kq)) == 1);
                if (kq + 1 < mq)
                    CHECK(std::popcount(label_at(ki, kq) ^ label_at(ki, kq + 1)) == 1);
            }
    }
}

TEST_CASE("16-QAM minimum distance by exhaustive scan") {
    const Constellation c = Constellation::qam(16);
    double dmin = 1e9;
    for (std::size_t a = 0; a < 16; ++a)
        for (std::size_t b = a + 1; b < 16; ++b)
            dmin = std::min(dmin, std::abs(c.points()[a] - c.points()[b]));
    CHECK(dmin == doctest::Approx(2.0 / std::sqrt(10.0)).epsilon(1e-12));
    CHECK(dmin == doctest::Approx(2.0 * std::sqrt(3.0 / (2.0 * 15.0))).epsilon(1e-12));
}

TEST_CASE("map/detect round trip at zero noise") {
    for (unsigned m : {2u, 4u, 16u, 64u}) {
        const Constellation c = Constellation::qam(m);
        const cplx gain(0.3, -1.1);
        for (std::uint32_t label = 0; label < m; ++label) {
            const BitVec bits = label_to_bits(label, c.bit_count());
            const cplx x = c.map_bits(bits);
            const Detection det = c.ml_detect(gain * x, gain);
            CHECK(det.label == label);
            CHECK(c.slice(gain * x, gain).label == label);
        }
    }
}

TEST_CASE("map_bits length check and detect degenerate gain") {
    const Constellation c = Constellation::qam(16);
    CHECK_THROWS_AS(c.map_bits({0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(c.ml_detect(cplx(1, 0), cplx(0, 0)), std::domain_error);
    CHECK_THROWS_AS(c.slice(cplx(1, 0), cplx(0, 0)), std::domain_error);
}

TEST_CASE("tie breaks toward the lowest point index") {
    const Constellation c = Constellation::qam(4);
    const cplx mid = 0.5 * (c.points()[0] + c.points()[1]);
    CHECK(c.ml_detect(mid, cplx(1.0, 0.0)).index == 0);
}

TEST_CASE("slicer equals exhaustive detection on noisy samples") {
    RandomStream rng(7123);
    for (unsigned m : {2u, 8u, 16u, 64u, 256u}) {
        const Constellation c = Constellation::qam(m);
        const cplx gain(1.4, 0.7);
        for (int t = 0; t < 2000; ++t) {
            const cplx x = c.points()[rng.below(m)];
            const cplx y = gain * x + cplx(0.4 * rng.normal(), 0.4 * rng.normal());
            CHECK(c.slice(y, gain).index == c.ml_detect(y, gain).index);
        }
    }
}

TEST_CASE("gray adjacency: nearest-neighbor decision errors flip one bit") {
    const Constellation c = Constellation::qam(64);
    const double dmin = 2.0 * c.scale();
    for (std::size_t a = 0; a < 64; ++a)
        for (std::size_t b = 0; b < 64; ++b) {
            if (a == b) continue;
            if (std::abs(c.points()[a] - c.points()[b]) < dmin * 1.001)
                CHECK(std::popcount(c.label_of(a) ^ c.label_of(b)) == 1);
        }
}

TEST_CASE("empirical energy over random labels") {
    RandomStream rng(99);
    const Constellation c = Constellation::qam(64);
    double acc = 0.0;
    const int n = 200000;
    for (int t = 0; t < n; ++t) acc += std::norm(c.map_label(rng.label_bits(6)));
    CHECK(acc / n == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("noisy 4-QAM symbol error rate matches the Q-function expression") {
    // SER = 2 Q(sqrt(rho)) - Q(sqrt(rho))^2 at unit symbol energy, unit-power
    // noise split across the two dimensions.
    RandomStream rng(2024);
    const Constellation c = Constellation::qam(4);
    const double rho = 4.0;
    const double g = std::sqrt(rho);
    const int n = 100000;
    int errors = 0;
    for (int t = 0; t < n; ++t) {
        const std::size_t idx = rng.below(4);
        const cplx y = g * c.points()[idx] +
                       cplx(std::sqrt(0.5) * rng.normal(), std::sqrt(0.5) * rng.normal());
        if (c.slice(y, cplx(g, 0.0)).index != idx) ++errors;
    }
    const double q = gaussian_q(std::sqrt(rho));
    const double want = 2.0 * q - q * q;
    const double got = double(errors) / n;
    const double sigma = std::sqrt(want * (1.0 - want) / n);
    CHECK(std::fabs(got - want) < 3.0 * sigma);
}
