#include "bimasim/config_io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "bimasim/special.hpp"

namespace bimasim {

std::uint64_t fnv1a64(std::string_view text) {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001B3ull;
    }
    return h;
}

std::string to_string(Scheme s) { return s == Scheme::Bima ? "BIMA" : "CONV"; }
std::string to_string(Metric m) {
    switch (m) {
        case Metric::Ec: return "EC";
        case Metric::Op: return "OP";
        case Metric::Ber: return "BER";
    }
    return "?";
}
std::string to_string(Ordering o) { return o == Ordering::Ico ? "ICO" : "SCO"; }

namespace {

const std::set<std::string> kKnownKeys = {
    "devices", "orders", "ordering", "sigma2_db", "sigma2_db_per_device", "target_rates",
    "pa", "rho_db", "seed", "schemes", "metrics", "trials", "output_dir"};

bool positive_number(const nlohmann::json& v) { return v.is_number() && v.get<double>() > 0.0; }

}  // namespace

ConfigParse parse_scenario(const nlohmann::json& j) {
    ConfigParse out;
    auto issue = [&](const std::string& field, const std::string& message) {
        out.issues.push_back({field, message});
    };
    if (!j.is_object()) {
        issue("", "config root must be a JSON object");
        return out;
    }
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& key = it.key();
        if (!key.empty() && key[0] == '_') continue;  // comment keys
        if (!kKnownKeys.count(key)) issue(key, "unknown field");
    }

    ScenarioConfig cfg;

    if (!j.contains("devices") || !j["devices"].is_number_integer() || j["devices"].get<int>() < 1)
        issue("devices", "required integer >= 1");
    else
        cfg.device_count = j["devices"].get<int>();

    if (!j.contains("orders")) {
        issue("orders", "required: common order or per-device list");
    } else if (j["orders"].is_number_integer()) {
        cfg.orders.assign(std::max(cfg.device_count, 1), j["orders"].get<unsigned>());
    } else if (j["orders"].is_array()) {
        for (const auto& v : j["orders"]) {
            if (!v.is_number_integer()) {
                issue("orders", "entries must be integers");
                break;
            }
            cfg.orders.push_back(v.get<unsigned>());
        }
    } else {
        issue("orders", "must be an integer or an array of integers");
    }
    if (!cfg.orders.empty()) {
        if (static_cast<int>(cfg.orders.size()) != cfg.device_count)
            issue("orders", "length must equal devices");
        for (unsigned m : cfg.orders)
            if (m < 2 || !is_power_of_two(m)) {
                issue("orders", "each order must be a power of two >= 2");
                break;
            }
    }

    if (j.contains("ordering")) {
        const std::string s = j["ordering"].is_string() ? j["ordering"].get<std::string>() : "";
        if (s == "ICO")
            cfg.ordering = Ordering::Ico;
        else if (s == "SCO")
            cfg.ordering = Ordering::Sco;
        else
            issue("ordering", "must be \"ICO\" or \"SCO\"");
    }

    if (j.contains("sigma2_db")) {
        if (!j["sigma2_db"].is_number())
            issue("sigma2_db", "must be a number (dB)");
        else
            cfg.sigma2_db = j["sigma2_db"].get<double>();
    }
    if (j.contains("sigma2_db_per_device")) {
        if (!j["sigma2_db_per_device"].is_array())
            issue("sigma2_db_per_device", "must be an array (dB)");
        else {
            for (const auto& v : j["sigma2_db_per_device"]) {
                if (!v.is_number()) {
                    issue("sigma2_db_per_device", "entries must be numbers");
                    break;
                }
                cfg.sigma2_db_per_device.push_back(v.get<double>());
            }
            if (static_cast<int>(cfg.sigma2_db_per_device.size()) != cfg.device_count)
                issue("sigma2_db_per_device", "length must equal devices");
            for (std::size_t k = 1; k < cfg.sigma2_db_per_device.size(); ++k)
                if (cfg.sigma2_db_per_device[k] > cfg.sigma2_db_per_device[k - 1] + 1e-12) {
                    issue("sigma2_db_per_device", "variances must be non-increasing (device 1 strongest)");
                    break;
                }
        }
    }

    if (j.contains("target_rates")) {
        if (!j["target_rates"].is_array())
            issue("target_rates", "must be an array (bits/s/Hz)");
        else {
            for (const auto& v : j["target_rates"]) {
                if (!positive_number(v)) {
                    issue("target_rates", "entries must be positive numbers");
                    break;
                }
                cfg.target_rates.push_back(v.get<double>());
            }
            if (!cfg.target_rates.empty() &&
                static_cast<int>(cfg.target_rates.size()) != cfg.device_count)
                issue("target_rates", "length must equal devices");
        }
    }

    if (j.contains("pa")) {
        const auto& p = j["pa"];
        if (!p.is_object()) {
            issue("pa", "must be an object {source, margin?, alphas?}");
        } else {
            const std::string src = p.value("source", "table");
            if (src == "table")
                cfg.pa_source = PaSource::Table;
            else if (src == "generated")
                cfg.pa_source = PaSource::Generated;
            else if (src == "explicit")
                cfg.pa_source = PaSource::Explicit;
            else
                issue("pa.source", "must be table | generated | explicit");
            if (p.contains("margin")) {
                if (!positive_number(p["margin"]) || p["margin"].get<double>() <= 1.0)
                    issue("pa.margin", "must be a number > 1");
                else
                    cfg.pa_margin = p["margin"].get<double>();
            }
            if (p.contains("alphas")) {
                if (!p["alphas"].is_array())
                    issue("pa.alphas", "must be an array");
                else
                    for (const auto& v : p["alphas"]) cfg.pa_alphas.push_back(v.get<double>());
            }
            if (cfg.pa_source == PaSource::Explicit) {
                if (static_cast<int>(cfg.pa_alphas.size()) != cfg.device_count)
                    issue("pa.alphas", "explicit source needs one coefficient per device");
                else {
                    double sum = 0.0;
                    bool shape_ok = true;
                    for (std::size_t k = 0; k < cfg.pa_alphas.size(); ++k) {
                        if (!(cfg.pa_alphas[k] > 0.0)) shape_ok = false;
                        if (k > 0 && !(cfg.pa_alphas[k] > cfg.pa_alphas[k - 1])) shape_ok = false;
                        sum += cfg.pa_alphas[k];
                    }
                    if (!shape_ok)
                        issue("pa.alphas", "must be positive and strictly increasing");
                    else if (std::fabs(sum - 1.0) > 1e-3)
                        issue("pa.alphas", "must sum to 1 (within 1e-3)");
                }
            }
        }
    }

    if (!j.contains("rho_db")) {
        issue("rho_db", "required: {start, stop, step} or an array (dB)");
    } else if (j["rho_db"].is_array()) {
        for (const auto& v : j["rho_db"]) cfg.rho_grid_db.push_back(v.get<double>());
    } else if (j["rho_db"].is_object()) {
        const auto& g = j["rho_db"];
        if (!g.contains("start") || !g.contains("stop") || !g.contains("step") ||
            !g["start"].is_number() || !g["stop"].is_number() || !positive_number(g["step"])) {
            issue("rho_db", "grid object needs numeric start, stop and positive step");
        } else {
            const double start = g["start"].get<double>();
            const double stop = g["stop"].get<double>();
            const double step = g["step"].get<double>();
            for (double x = start; x <= stop + 1e-9; x += step) cfg.rho_grid_db.push_back(x);
        }
    } else {
        issue("rho_db", "must be an object {start, stop, step} or an array");
    }
    if (cfg.rho_grid_db.empty() && !j.contains("rho_db"))
        ;  // already reported
    else if (cfg.rho_grid_db.empty())
        issue("rho_db", "grid is empty");
    for (std::size_t k = 1; k < cfg.rho_grid_db.size(); ++k)
        if (cfg.rho_grid_db[k] <= cfg.rho_grid_db[k - 1]) {
            issue("rho_db", "grid must be strictly increasing");
            break;
        }

    if (j.contains("seed")) {
        if (!j["seed"].is_number_integer())
            issue("seed", "must be an integer");
        else
            cfg.seed = j["seed"].get<std::uint64_t>();
    }

    if (j.contains("schemes")) {
        cfg.schemes.clear();
        if (!j["schemes"].is_array()) issue("schemes", "must be an array");
        else
            for (const auto& v : j["schemes"]) {
                const std::string s = v.is_string() ? v.get<std::string>() : "";
                if (s == "BIMA") cfg.schemes.push_back(Scheme::Bima);
                else if (s == "CONV") cfg.schemes.push_back(Scheme::Conv);
                else issue("schemes", "entries must be \"BIMA\" or \"CONV\"");
            }
        if (cfg.schemes.empty()) issue("schemes", "need at least one scheme");
    }
    if (j.contains("metrics")) {
        cfg.metrics.clear();
        if (!j["metrics"].is_array()) issue("metrics", "must be an array");
        else
            for (const auto& v : j["metrics"]) {
                const std::string s = v.is_string() ? v.get<std::string>() : "";
                if (s == "EC") cfg.metrics.push_back(Metric::Ec);
                else if (s == "OP") cfg.metrics.push_back(Metric::Op);
                else if (s == "BER") cfg.metrics.push_back(Metric::Ber);
                else issue("metrics", "entries must be EC | OP | BER");
            }
        if (cfg.metrics.empty()) issue("metrics", "need at least one metric");
    }

    if (j.contains("trials")) {
        const auto& t = j["trials"];
        if (!t.is_object()) issue("trials", "must be an object");
        else {
            if (t.contains("max_per_point")) cfg.budget.max_trials = t["max_per_point"].get<std::uint64_t>();
            if (t.contains("max_bits")) cfg.budget.max_bits = t["max_bits"].get<std::uint64_t>();
            if (t.contains("min_error_events"))
                cfg.budget.min_error_events = t["min_error_events"].get<std::uint64_t>();
            if (cfg.budget.max_trials < 1) issue("trials.max_per_point", "must be >= 1");
        }
    }

    if (j.contains("output_dir")) {
        if (!j["output_dir"].is_string()) issue("output_dir", "must be a string");
        else cfg.output_dir = j["output_dir"].get<std::string>();
    }

    // Cross-field checks that need a structurally complete config.
    if (out.issues.empty()) {
        bool conv = false;
        for (Scheme s : cfg.schemes) conv |= (s == Scheme::Conv);
        if (conv) {
            try {
                (void)cfg.resolve_pa();
            } catch (const std::exception& e) {
                issue("pa", e.what());
            }
        }
        try {
            (void)cfg.gain_model();
        } catch (const std::exception& e) {
            issue("sigma2", e.what());
        }
    }

    if (out.issues.empty()) out.config = std::move(cfg);
    return out;
}

ConfigParse load_scenario_file(const std::string& path) {
    ConfigParse out;
    std::ifstream in(path);
    if (!in) {
        out.issues.push_back({path, "cannot open config file"});
        return out;
    }
    nlohmann::json j = nlohmann::json::parse(in, nullptr, false, true);
    if (j.is_discarded()) {
        out.issues.push_back({path, "invalid JSON"});
        return out;
    }
    return parse_scenario(j);
}

nlohmann::json scenario_to_json(const ScenarioConfig& cfg) {
    nlohmann::json j;
    j["devices"] = cfg.device_count;
    j["orders"] = cfg.orders;
    j["ordering"] = to_string(cfg.ordering);
    j["sigma2_db"] = cfg.sigma2_db;
    if (!cfg.sigma2_db_per_device.empty()) j["sigma2_db_per_device"] = cfg.sigma2_db_per_device;
    j["target_rates"] = cfg.resolved_target_rates();
    nlohmann::json pa;
    pa["source"] = cfg.pa_source == PaSource::Table
                       ? "table"
                       : (cfg.pa_source == PaSource::Generated ? "generated" : "explicit");
    pa["margin"] = cfg.pa_margin;
    if (!cfg.pa_alphas.empty()) pa["alphas"] = cfg.pa_alphas;
    j["pa"] = pa;
    j["rho_db"] = cfg.rho_grid_db;
    j["seed"] = cfg.seed;
    nlohmann::json schemes = nlohmann::json::array();
    for (Scheme s : cfg.schemes) schemes.push_back(to_string(s));
    j["schemes"] = schemes;
    nlohmann::json metrics = nlohmann::json::array();
    for (Metric m : cfg.metrics) metrics.push_back(to_string(m));
    j["metrics"] = metrics;
    j["trials"] = {{"max_per_point", cfg.budget.max_trials},
                   {"max_bits", cfg.budget.max_bits},
                   {"min_error_events", cfg.budget.min_error_events}};
    j["output_dir"] = cfg.output_dir;
    return j;
}

std::string config_hash_hex(const ScenarioConfig& cfg) {
    const std::string dump = scenario_to_json(cfg).dump();
    std::ostringstream os;
    os << std::hex << fnv1a64(dump);
    return os.str();
}

}  // namespace bimasim
