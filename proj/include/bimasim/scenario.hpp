#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bimasim/analytic.hpp"

// Scenario description shared by the simulation engine and the batch
// orchestrator. Parsing/validation from JSON lives in config_io.

namespace bimasim {

enum class PaSource { Table, Generated, Explicit };

struct TrialBudget {
    std::uint64_t max_trials = 1'000'000;
    std::uint64_t max_bits = 100'000'000;
    std::uint64_t min_error_events = 100;
};

struct ScenarioConfig {
    int device_count = 1;
    std::vector<unsigned> orders;            // M_i, device order
    Ordering ordering = Ordering::Ico;
    double sigma2_db = 0.0;                  // common variance, ICO
    std::vector<double> sigma2_db_per_device;  // SCO; empty selects the 3 dB ladder
    std::vector<double> target_rates;        // empty selects M_i / L
    PaSource pa_source = PaSource::Table;
    double pa_margin = 2.0;
    std::vector<double> pa_alphas;           // explicit source
    std::vector<double> rho_grid_db;
    std::uint64_t seed = 1;
    TrialBudget budget;
    std::vector<Scheme> schemes = {Scheme::Bima, Scheme::Conv};
    std::vector<Metric> metrics = {Metric::Ec, Metric::Op, Metric::Ber};
    std::string output_dir = "out";

    GainModel gain_model() const;
    std::vector<double> resolved_target_rates() const;
    /// Resolves the conventional-scheme allocation from the configured
    /// source. Throws when the table has no row for (L, orders).
    PowerAllocation resolve_pa() const;
};

/// Default SCO variance ladder: device L at 0 dB, +3 dB per step toward
/// device 1 (strongest).
std::vector<double> default_sco_ladder_db(int device_count);

/// Published allocation presets keyed by (L, common order M). "proposed"
/// rows satisfy the detectability constraint (one misprinted duplicate row
/// does not); "common" rows are the constellation-agnostic choices.
const std::vector<double>* table_proposed_pa(int device_count, unsigned order);
const std::vector<double>* table_common_pa(int device_count, unsigned order);

double db_to_linear(double db);
double linear_to_db(double value);

}  // namespace bimasim
