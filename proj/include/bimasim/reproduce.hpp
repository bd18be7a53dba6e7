#pragma once

#include <map>
#include <string>
#include <vector>

// Bundled scenario recipes behind the `reproduce` CLI verb: the KPI and
// fairness sweeps (fig5..fig15), the allocation comparisons (fig2..fig4,
// table1) and the receiver complexity table (table3).

namespace bimasim {

/// Recipe ids: fig2..fig15, table1, table3.
std::vector<std::string> reproduce_ids();

/// Config texts for one recipe id; multi-entry recipes (the allocation
/// comparisons) return one config per variant, keyed by file stem.
std::map<std::string, std::string> reproduce_configs(const std::string& id);

}  // namespace bimasim
