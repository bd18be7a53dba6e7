#pragma once

#include <optional>
#include <span>
#include <vector>

#include "bimasim/noma.hpp"
#include "bimasim/order_stats.hpp"

// Closed-form KPI evaluators for both schemes. The joint-symbol scheme has
// exact ergodic-capacity and outage forms and an MGF-based average BER built
// on the standard nearest-neighbor Gray-QAM approximation; the conventional
// benchmark has the per-realization rate and the two-user 4-QAM BER form.

namespace bimasim {

enum class Scheme { Bima, Conv };
enum class Metric { Ec, Op, Ber };

/// Fraction of the joint symbol's bits belonging to one device.
double bit_fraction(int device, const std::vector<unsigned>& orders);

unsigned joint_order(const std::vector<unsigned>& orders);

/// Per-realization achievable rate, bit_fraction * log2(1 + snr).
double bima_rate(int device, const std::vector<unsigned>& orders, double snr_term);

/// Ergodic capacity (bits/s/Hz). Returns 0 when rho*sigma2 underflows 1e-10.
double bima_ec(const GainModel& gains, int device, const std::vector<unsigned>& orders,
               double rho);

/// Rate threshold on the gain: outage iff gamma < this value.
double bima_outage_threshold(int device, const std::vector<unsigned>& orders, double rho,
                             double target_rate);

/// Outage probability for a target rate (bits/s/Hz).
double bima_op(const GainModel& gains, int device, const std::vector<unsigned>& orders,
               double rho, double target_rate);

/// Average bit error probability, closed form.
double bima_ber(const GainModel& gains, int device, const std::vector<unsigned>& orders,
                double rho);

/// Same quantity via the finite-angle MGF integral; used to cross-check the
/// closed-form integration step.
double bima_ber_by_quadrature(const GainModel& gains, int device,
                              const std::vector<unsigned>& orders, double rho,
                              int quadrature_points = 200);

/// Sum of per-device ergodic capacities.
double sum_ec(const GainModel& gains, const std::vector<unsigned>& orders, double rho);

/// Conventional per-realization rate log2(1 + SINR) with residual terms.
double conv_rate(const PowerAllocation& pa, int device, double gamma, double rho,
                 std::span<const double> deltas);

/// Interference-limited rate ceiling of device i as rho grows.
double conv_rate_ceiling(const PowerAllocation& pa, int device);

/// Average BER of the two-device 4-QAM conventional downlink with SIC,
/// exact for that configuration. alphas = {alpha_1, alpha_2}, alpha_1 may be
/// 0 for the degenerate single-signal check. Throws std::domain_error for
/// any other (L, M) combination.
double conv_ber_2user_4qam(int device, const std::vector<double>& alphas,
                           const GainModel& gains, double rho);

/// Request record used by the sweep orchestrator; evaluate() dispatches to
/// the closed forms above and throws std::domain_error where no closed form
/// exists (conventional EC/OP, conventional BER beyond two 4-QAM devices).
struct KpiRequest {
    Scheme scheme = Scheme::Bima;
    Metric metric = Metric::Ec;
    GainModel gains;
    int device = 1;
    std::vector<unsigned> orders;
    double rho = 1.0;
    double target_rate = 0.0;                  // OP only
    std::optional<std::vector<double>> alphas; // Conv only
};

double evaluate(const KpiRequest& request);

}  // namespace bimasim
