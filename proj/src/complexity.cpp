#include "bimasim/complexity.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "bimasim/special.hpp"

namespace bimasim {

namespace {

void check_orders(int device_count, const std::vector<unsigned>& orders) {
    if (device_count < 1 || static_cast<int>(orders.size()) != device_count)
        throw std::invalid_argument("complexity: order list must match device count");
    for (unsigned m : orders)
        if (m < 2 || !is_power_of_two(m))
            throw std::invalid_argument("complexity: orders must be powers of two >= 2");
}

void finish(ComplexityReport& r) {
    r.total = 0;
    for (long long v : r.per_device) r.total += v;
    r.max_device = *std::max_element(r.per_device.begin(), r.per_device.end());
    r.min_device = *std::min_element(r.per_device.begin(), r.per_device.end());
}

}  // namespace

ComplexityReport bima_complexity(int device_count, const std::vector<unsigned>& orders) {
    check_orders(device_count, orders);
    long long mbw = 1;
    for (unsigned m : orders) mbw *= m;
    ComplexityReport r;
    r.scheme = "BIMA";
    r.device_count = device_count;
    r.orders = orders;
    r.per_device.assign(device_count, 4 * mbw);
    finish(r);
    return r;
}

ComplexityReport conv_complexity(int device_count, const std::vector<unsigned>& orders) {
    check_orders(device_count, orders);
    ComplexityReport r;
    r.scheme = "CONV";
    r.device_count = device_count;
    r.orders = orders;
    r.per_device.resize(device_count);
    for (int i = 1; i <= device_count; ++i) {
        long long ops = 4LL * orders[i - 1];
        for (int j = i + 1; j <= device_count; ++j) ops += 4LL * orders[j - 1] + 2;
        r.per_device[i - 1] = ops;
    }
    finish(r);
    return r;
}

nlohmann::json to_json(const ComplexityReport& report) {
    return nlohmann::json{{"scheme", report.scheme},
                          {"devices", report.device_count},
                          {"orders", report.orders},
                          {"per_device", report.per_device},
                          {"total", report.total},
                          {"max_device", report.max_device},
                          {"min_device", report.min_device}};
}

std::string complexity_markdown_table(const std::vector<std::pair<int, unsigned>>& rows) {
    std::ostringstream os;
    os << "| L | M | BIMA each dev. | BIMA total | Conv 1st dev. | Conv Lth dev. | Conv total |\n";
    os << "|---|---|---------------:|-----------:|--------------:|--------------:|-----------:|\n";
    for (const auto& [L, M] : rows) {
        const std::vector<unsigned> orders(L, M);
        const ComplexityReport b = bima_complexity(L, orders);
        const ComplexityReport c = conv_complexity(L, orders);
        os << "| " << L << " | " << M << " | " << b.per_device.front() << " | " << b.total
           << " | " << c.per_device.front() << " | " << c.per_device.back() << " | " << c.total
           << " |\n";
    }
    return os.str();
}

}  // namespace bimasim
