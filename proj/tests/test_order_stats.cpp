#include <doctest.h>

#include <cmath>
#include <vector>
#include <stdexcept>

#include "bimasim/order_stats.hpp"

using namespace bimasim;

namespace {

double simpson01(const std::vector<double>& f, double h) {
    double acc = f.front() + f.back();
    for (std::size_t k = 1; k + 1 < f.size(); ++k) acc += f[k] * (k % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

}  // namespace

TEST_CASE("pdf reduces to the exponential for one device") {
    for (double g : {0.0, 0.3, 1.7, 6.0})
        CHECK(ith_max_pdf(1, 1, 1.0, g) == doctest::Approx(std::exp(-g)).epsilon(1e-14));
}

TEST_CASE("pdf normalizes") {
    for (int L : {2, 3, 5, 6})
        for (int i = 1; i <= L; ++i) {
            const int n = 4000;
            const double cap = 60.0;
            std::vector<double> f(n + 1);
            for (int k = 0; k <= n; ++k) f[k] = ith_max_pdf(L, i, 1.0, cap * k / n);
            CHECK(simpson01(f, cap / n) == doctest::Approx(1.0).epsilon(1e-9));
        }
}

TEST_CASE("pdf matches a histogram of sampled order statistics") {
    // 2nd largest of 3 exponentials, 1e6 draws.
    RandomStream rng(555);
    const GainModel m = GainModel::ico(3, 1.0);
    const int trials = 1000000;
    const double width = 0.25;
    const int nbins = 16;
    std::vector<int> counts(nbins, 0);
    std::vector<double> gains;
    for (int t = 0; t < trials; ++t) {
        sample_gains(m, rng, gains);
        const int b = static_cast<int>(gains[1] / width);
        if (b < nbins) ++counts[b];
    }
    for (int b = 0; b < nbins; ++b) {
        // Expected mass from the cdf difference; Poisson-ish 3 sigma.
        const double p = ith_max_cdf(3, 2, 1.0, (b + 1) * width) - ith_max_cdf(3, 2, 1.0, b * width);
        const double sigma = std::sqrt(p * (1.0 - p) * trials);
        CHECK(std::fabs(counts[b] - p * trials) < 3.5 * sigma);
        // And the midpoint density agrees with the histogram density.
        const double mid_pdf = ith_max_pdf(3, 2, 1.0, (b + 0.5) * width);
        CHECK(mid_pdf == doctest::Approx(p / width).epsilon(0.02));
    }
}

TEST_CASE("cdf basics and sampled check") {
    CHECK(ith_max_cdf(1, 1, 2.0, 1.0) == doctest::Approx(1.0 - std::exp(-0.5)).epsilon(1e-14));
    for (int L : {1, 2, 4})
        for (int i = 1; i <= L; ++i) CHECK(ith_max_cdf(L, i, 1.0, 0.0) == 0.0);

    RandomStream rng(808);
    const GainModel m = GainModel::ico(4, 1.0);
    const int trials = 1000000;
    int below = 0;
    std::vector<double> gains;
    for (int t = 0; t < trials; ++t) {
        sample_gains(m, rng, gains);
        if (gains[2] < 1.0) ++below;  // 3rd largest of 4
    }
    const double want = ith_max_cdf(4, 3, 1.0, 1.0);
    const double sigma = std::sqrt(want * (1.0 - want) / trials);
    CHECK(std::fabs(double(below) / trials - want) < 3.0 * sigma);
}

TEST_CASE("cdf is the integral of the pdf (finite differences)") {
    for (int L : {2, 3, 5})
        for (int i = 1; i <= L; ++i)
            for (double g : {0.2, 0.7, 1.5, 3.0}) {
                const double h = 1e-5;
                const double diff =
                    (ith_max_cdf(L, i, 1.3, g + h) - ith_max_cdf(L, i, 1.3, g - h)) / (2 * h);
                CHECK(diff == doctest::Approx(ith_max_pdf(L, i, 1.3, g)).epsilon(1e-6));
            }
}

TEST_CASE("uniformly chosen order index mixes back to the exponential") {
    for (double g : {0.1, 0.9, 2.4}) {
        const int L = 5;
        double acc = 0.0;
        for (int i = 1; i <= L; ++i) acc += ith_max_pdf(L, i, 1.0, g);
        CHECK(acc / L == doctest::Approx(std::exp(-g)).epsilon(1e-11));
    }
}

TEST_CASE("mgf at the origin and the exponential special case") {
    for (int L : {1, 2, 4, 6})
        for (int i = 1; i <= L; ++i)
            CHECK(ith_max_mgf(L, i, 0.7, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ith_max_mgf(1, 1, 1.0, -1.0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK_THROWS_AS(ith_max_mgf(2, 1, 1.0, 1.1), std::domain_error);
}

TEST_CASE("mgf matches the sample mean of exp(s gamma)") {
    RandomStream rng(4242);
    const GainModel m = GainModel::ico(3, 1.0);
    const double s = -0.5;
    const int trials = 1000000;
    double acc = 0.0, accsq = 0.0;
    std::vector<double> gains;
    for (int t = 0; t < trials; ++t) {
        sample_gains(m, rng, gains);
        const double v = std::exp(s * gains[0]);  // maximum of 3
        acc += v;
        accsq += v * v;
    }
    const double mean = acc / trials;
    const double se = std::sqrt((accsq / trials - mean * mean) / trials);
    CHECK(std::fabs(mean - ith_max_mgf(3, 1, 1.0, s)) < 3.0 * se);
}

TEST_CASE("sampling: descending order, known mean of the larger of two") {
    RandomStream rng(31337);
    const GainModel m = GainModel::ico(2, 2.0);
    const int trials = 1000000;
    double acc = 0.0;
    std::vector<double> gains;
    for (int t = 0; t < trials; ++t) {
        sample_gains(m, rng, gains);
        REQUIRE(gains[0] >= gains[1]);
        acc += gains[0];
    }
    // E[max of two] = sigma2 * (1 + 1/2); sigma of the mean ~ sigma2 * 1.1/sqrt(n)
    CHECK(acc / trials == doctest::Approx(3.0).epsilon(0.01));
}

TEST_CASE("SCO sampling hits the per-device means") {
    RandomStream rng(99);
    const GainModel m = GainModel::sco({4.0, 2.0, 1.0});
    const int trials = 400000;
    std::vector<double> sums(3, 0.0), gains;
    for (int t = 0; t < trials; ++t) {
        sample_gains(m, rng, gains);
        for (int i = 0; i < 3; ++i) sums[i] += gains[i];
    }
    for (int i = 0; i < 3; ++i)
        CHECK(sums[i] / trials == doctest::Approx(m.sigma2_per_device[i]).epsilon(0.01));
}

TEST_CASE("model validation") {
    CHECK_THROWS_AS(GainModel::ico(0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(GainModel::ico(2, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(GainModel::sco({1.0, 2.0}), std::invalid_argument);  // increasing
    CHECK_NOTHROW(GainModel::sco({1.0, 1.0}));                           // equal allowed
    CHECK_THROWS_AS(ith_max_pdf(3, 2, 1.0, -0.1), std::domain_error);
    CHECK_THROWS_AS(ith_max_cdf(3, 4, 1.0, 0.1), std::invalid_argument);
}
