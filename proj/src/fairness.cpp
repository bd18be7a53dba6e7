#include "bimasim/fairness.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace bimasim {

namespace {

void require_common_length(std::size_t a, std::size_t b) {
    if (a != b || a == 0) throw std::invalid_argument("fairness: vectors must share a positive length");
}

}  // namespace

double jfi_capacity(std::span<const double> rates) {
    if (rates.empty()) throw std::invalid_argument("fairness: empty input");
    double sum = 0.0, sumsq = 0.0;
    for (double r : rates) {
        if (r < 0.0) throw std::invalid_argument("fairness: rates must be >= 0");
        sum += r;
        sumsq += r * r;
    }
    if (sumsq == 0.0) return 1.0;  // all-zero vector is trivially even
    return sum * sum / (rates.size() * sumsq);
}

double jfi_outage(std::span<const double> outage_probs, std::span<const double> target_rates) {
    require_common_length(outage_probs.size(), target_rates.size());
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < outage_probs.size(); ++k) {
        num += (1.0 - outage_probs[k]) * target_rates[k];
        den += target_rates[k] * target_rates[k];
    }
    if (den == 0.0) throw std::invalid_argument("fairness: zero target rates");
    return num * num / den;
}

double jfi_ber(std::span<const double> bit_error_probs, std::span<const double> bit_loads) {
    require_common_length(bit_error_probs.size(), bit_loads.size());
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < bit_error_probs.size(); ++k) {
        num += (1.0 - bit_error_probs[k]) * bit_loads[k];
        den += bit_loads[k] * bit_loads[k];
    }
    if (den == 0.0) throw std::invalid_argument("fairness: zero bit loads");
    return num * num / den;
}

double pfi(std::span<const double> values, Sense sense) {
    if (values.empty()) throw std::invalid_argument("fairness: empty input");
    std::vector<double> v(values.begin(), values.end());
    if (sense == Sense::LowerBetter)
        for (double& x : v) x = 1.0 - x;
    const auto [mn, mx] = std::minmax_element(v.begin(), v.end());
    if (*mx + *mn == 0.0) return 0.0;
    return 1.0 - (*mx - *mn) / (*mx + *mn);
}

}  // namespace bimasim
