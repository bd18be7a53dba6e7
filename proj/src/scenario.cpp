#include "bimasim/scenario.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

#include "bimasim/special.hpp"

namespace bimasim {

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double value) { return 10.0 * std::log10(value); }

std::vector<double> default_sco_ladder_db(int device_count) {
    std::vector<double> out(device_count);
    for (int i = 1; i <= device_count; ++i) out[i - 1] = 3.0 * (device_count - i);
    return out;
}

GainModel ScenarioConfig::gain_model() const {
    if (ordering == Ordering::Ico) return GainModel::ico(device_count, db_to_linear(sigma2_db));
    std::vector<double> ladder =
        sigma2_db_per_device.empty() ? default_sco_ladder_db(device_count) : sigma2_db_per_device;
    std::vector<double> linear(ladder.size());
    for (std::size_t k = 0; k < ladder.size(); ++k) linear[k] = db_to_linear(ladder[k]);
    return GainModel::sco(std::move(linear));
}

std::vector<double> ScenarioConfig::resolved_target_rates() const {
    if (!target_rates.empty()) return target_rates;
    std::vector<double> out(device_count);
    for (int i = 0; i < device_count; ++i) out[i] = double(orders[i]) / device_count;
    return out;
}

PowerAllocation ScenarioConfig::resolve_pa() const {
    switch (pa_source) {
        case PaSource::Explicit:
            return PowerAllocation::from_alphas(pa_alphas);
        case PaSource::Generated:
            return generate_pa(orders, pa_margin);
        case PaSource::Table: {
            for (unsigned m : orders)
                if (m != orders.front())
                    throw std::invalid_argument("pa table rows assume a common order; use generated/explicit");
            const std::vector<double>* row = table_proposed_pa(device_count, orders.front());
            if (!row)
                throw std::invalid_argument("no preset allocation for this (L, M); use generated/explicit");
            return PowerAllocation::from_alphas(*row);
        }
    }
    throw std::logic_error("unreachable");
}

namespace {

const std::map<std::pair<int, unsigned>, std::vector<double>> kProposedPa = {
    {{3, 4}, {0.0261, 0.1948, 0.7791}},
    {{3, 16}, {0.0012, 0.0588, 0.9400}},
    {{3, 64}, {0.0001, 0.0154, 0.9845}},
    {{4, 4}, {0.0063, 0.0473, 0.1893, 0.7571}},
    {{4, 16}, {0.0001, 0.0037, 0.0586, 0.9377}},
    // Published duplicate of the 16-QAM row; fails the detectability bound.
    {{4, 64}, {0.0001, 0.0037, 0.0586, 0.9377}},
};

const std::map<std::pair<int, unsigned>, std::vector<double>> kCommonPa = {
    {{3, 4}, {0.1667, 0.3333, 0.5}},
    {{3, 16}, {0.05, 0.25, 0.7}},
    {{3, 64}, {0.05, 0.25, 0.7}},
    {{4, 4}, {0.1, 0.2, 0.3, 0.4}},
    {{4, 16}, {0.02, 0.05, 0.18, 0.75}},
    {{4, 64}, {0.02, 0.05, 0.18, 0.75}},
};

}  // namespace

const std::vector<double>* table_proposed_pa(int device_count, unsigned order) {
    auto it = kProposedPa.find({device_count, order});
    return it == kProposedPa.end() ? nullptr : &it->second;
}

const std::vector<double>* table_common_pa(int device_count, unsigned order) {
    auto it = kCommonPa.find({device_count, order});
    return it == kCommonPa.end() ? nullptr : &it->second;
}

}  // namespace bimasim
