#pragma once

#include <string>
#include <vector>

#include "vendor_json_fwd.hpp"

// Receiver complexity accounting in complex operations: 4*M per ML
// detection, plus 2 per cancellation stage for the iterative receiver.

namespace bimasim {

struct ComplexityReport {
    std::string scheme;
    int device_count = 0;
    std::vector<unsigned> orders;
    std::vector<long long> per_device;
    long long total = 0;
    long long max_device = 0;
    long long min_device = 0;
};

/// Joint-detection receiver: every device pays 4*M_bw.
ComplexityReport bima_complexity(int device_count, const std::vector<unsigned>& orders);

/// SIC receiver: device i pays 4*M_i plus sum_{j>i} (4*M_j + 2).
ComplexityReport conv_complexity(int device_count, const std::vector<unsigned>& orders);

nlohmann::json to_json(const ComplexityReport& report);

/// Markdown table with one row per (L, M) pair, equal orders per row:
/// BIMA per-device/total and conventional first/last/total columns.
std::string complexity_markdown_table(const std::vector<std::pair<int, unsigned>>& rows);

}  // namespace bimasim
