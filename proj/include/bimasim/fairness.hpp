#pragma once

#include <span>

// Jain's fairness index in capacity, outage, and BER flavors, and the
// proportional (worst-vs-best) fairness index. The outage and BER Jain
// variants are kept in their literal form with range [0, L] for equal
// weights; normalized variants (divided by L) are emitted alongside by the
// sweep writer for plotting comparability.

namespace bimasim {

/// (sum R)^2 / (L sum R^2), in [1/L, 1].
double jfi_capacity(std::span<const double> rates);

/// (sum (1-P_i) R'_i)^2 / sum R'_i^2, literal (not divided by L).
double jfi_outage(std::span<const double> outage_probs, std::span<const double> target_rates);

/// (sum (1-P_i) log2 M_i)^2 / sum (log2 M_i)^2, literal.
double jfi_ber(std::span<const double> bit_error_probs, std::span<const double> bit_loads);

enum class Sense { HigherBetter, LowerBetter };

/// 1 - (max - min)/(max + min) over the values (LowerBetter values v are
/// first mapped to 1 - v). Defined as 0 when max + min == 0.
double pfi(std::span<const double> values, Sense sense = Sense::HigherBetter);

}  // namespace bimasim
