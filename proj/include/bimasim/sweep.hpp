#pragma once

#include <string>
#include <vector>

#include "bimasim/montecarlo.hpp"

// Batch orchestration: analytic + simulated curves side by side, fairness
// curves derived per SNR point, complexity report, CSV/JSON emission with
// provenance (config hash, seed, artifact version) embedded in every file.

namespace bimasim {

struct SweepOutputs {
    std::vector<std::string> files;
    bool low_confidence = false;
};

/// Analytic per-device curves where a closed form exists; empty otherwise
/// (conventional EC/OP always, conventional BER beyond two 4-QAM devices).
std::vector<KpiCurve> analytic_curves(const ScenarioConfig& cfg, Scheme scheme, Metric metric);

/// Runs every requested (scheme, metric) sweep and writes, under
/// cfg.output_dir: one CSV per (scheme, metric), one fairness CSV per
/// scheme, complexity.json/.md, and manifest.json. Deterministic per seed.
SweepOutputs run_sweep(const ScenarioConfig& cfg);

struct PaReportRow {
    int device = 0;
    double alpha = 0.0;
    double bound = 0.0;
    double margin = 0.0;
    double penalty_db = 0.0;  // power shortfall vs interference-free use
};

struct PaReport {
    bool feasible = false;
    std::vector<PaReportRow> rows;
};

PaReport make_pa_report(const std::vector<double>& alphas, const std::vector<unsigned>& orders);
std::string render_pa_report(const PaReport& report);

/// CSV writers are exposed for tests; files are rewritten atomically enough
/// for batch use (truncate + write).
void write_curves_csv(const std::string& path, const std::vector<KpiCurve>& curves,
                      const std::string& hash_hex, std::uint64_t seed);

}  // namespace bimasim
