#pragma once

#include <cstdint>
#include <vector>

#include "bimasim/scenario.hpp"

// Waveform-level Monte Carlo engine. One trial draws a fading realization
// (fast-fading convention: fresh ordered gains per symbol), random source
// bits, and pushes one symbol through the selected transceiver chain.
// Points of the SNR grid run independently on deterministic sub-streams, so
// sweeps parallelize without changing results. The channel stream is seeded
// independently of the scheme, so paired scheme comparisons see identical
// gain sequences.

namespace bimasim {

enum class Provenance { Analytic, Simulated };

struct KpiPoint {
    double rho_db = 0.0;
    double value = 0.0;
    double std_error = 0.0;
    std::uint64_t trials = 0;
    bool low_confidence = false;
};

struct KpiCurve {
    Scheme scheme = Scheme::Bima;
    Metric metric = Metric::Ec;
    Ordering ordering = Ordering::Ico;
    Provenance provenance = Provenance::Simulated;
    int device = 1;
    std::uint64_t seed = 0;
    std::vector<KpiPoint> points;
};

struct SweepPlan {
    ScenarioConfig scenario;
    Scheme scheme = Scheme::Bima;
};

/// Bit error rate per device: full transmit/receive chains, errors counted
/// on each device's own bits, binomial standard errors. Adaptive stop: a
/// point ends once every device reached budget.min_error_events, or at the
/// trial/bit caps; devices still short are flagged low-confidence.
std::vector<KpiCurve> simulate_ber(const SweepPlan& plan);

/// Outage probability per device: indicator of the per-realization rate
/// falling below the device target. The conventional chain derives its
/// residual terms from actual noisy SIC stage decisions.
std::vector<KpiCurve> simulate_op(const SweepPlan& plan);

/// Ergodic capacity per device: sample mean of the per-realization rate.
std::vector<KpiCurve> simulate_ec(const SweepPlan& plan);

/// Negated least-squares slope of log10(value) against log10(rho) over the
/// top decade of the grid. Throws std::runtime_error when the fit range has
/// nonpositive values or fewer than two points.
double estimate_diversity(const KpiCurve& curve);

}  // namespace bimasim
