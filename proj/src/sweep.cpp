#include "bimasim/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "bimasim/complexity.hpp"
#include "bimasim/config_io.hpp"
#include "bimasim/fairness.hpp"
#include "bimasim/special.hpp"
#include "bimasim/version.hpp"

namespace bimasim {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

}  // namespace

std::vector<KpiCurve> analytic_curves(const ScenarioConfig& cfg, Scheme scheme, Metric metric) {
    std::vector<KpiCurve> out;
    const GainModel gains = cfg.gain_model();
    const std::vector<double> targets = cfg.resolved_target_rates();

    if (scheme == Scheme::Conv) {
        const bool two_user_qpsk =
            cfg.device_count == 2 && cfg.orders.size() == 2 && cfg.orders[0] == 4 && cfg.orders[1] == 4;
        if (metric != Metric::Ber || !two_user_qpsk) return out;  // no closed form
        const std::vector<double> alphas = cfg.resolve_pa().alphas();
        for (int i = 1; i <= cfg.device_count; ++i) {
            KpiCurve c{scheme, metric, cfg.ordering, Provenance::Analytic, i, cfg.seed, {}};
            for (double db : cfg.rho_grid_db) {
                KpiPoint p;
                p.rho_db = db;
                p.value = conv_ber_2user_4qam(i, alphas, gains, db_to_linear(db));
                c.points.push_back(p);
            }
            out.push_back(std::move(c));
        }
        return out;
    }

    for (int i = 1; i <= cfg.device_count; ++i) {
        KpiCurve c{scheme, metric, cfg.ordering, Provenance::Analytic, i, cfg.seed, {}};
        for (double db : cfg.rho_grid_db) {
            const double rho = db_to_linear(db);
            KpiPoint p;
            p.rho_db = db;
            switch (metric) {
                case Metric::Ec: p.value = bima_ec(gains, i, cfg.orders, rho); break;
                case Metric::Op: p.value = bima_op(gains, i, cfg.orders, rho, targets[i - 1]); break;
                case Metric::Ber: p.value = bima_ber(gains, i, cfg.orders, rho); break;
            }
            c.points.push_back(p);
        }
        out.push_back(std::move(c));
    }
    return out;
}

void write_curves_csv(const std::string& path, const std::vector<KpiCurve>& curves,
                      const std::string& hash_hex, std::uint64_t seed) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write " + path);
    os << "# bimasim " << kVersion << "\n";
    os << "# config_hash=" << hash_hex << " seed=" << seed << "\n";
    os << "rho_db,device,value,stderr,trials,provenance\n";
    // Row order: analytic curves first, then simulated, device-major.
    for (int pass = 0; pass < 2; ++pass) {
        for (const KpiCurve& c : curves) {
            const bool analytic = c.provenance == Provenance::Analytic;
            if ((pass == 0) != analytic) continue;
            for (const KpiPoint& p : c.points) {
                os << fmt(p.rho_db) << ',' << c.device << ',' << fmt(p.value) << ','
                   << fmt(p.std_error) << ',' << p.trials << ','
                   << (analytic ? "analytic" : "simulated") << "\n";
            }
        }
    }
}

namespace {

struct FairnessRow {
    double rho_db;
    std::string basis;  // analytic | simulated
    std::string flavor;
    double value;
};

/// Per-rho fairness flavors from per-device curve sets (indexed [device-1]).
void fairness_rows(std::vector<FairnessRow>& rows, const ScenarioConfig& cfg,
                   const std::string& basis, const std::vector<KpiCurve>* ec,
                   const std::vector<KpiCurve>* op, const std::vector<KpiCurve>* ber) {
    const std::vector<double> targets = cfg.resolved_target_rates();
    std::vector<double> loads;
    for (unsigned m : cfg.orders) loads.push_back(int_log2(m));
    const std::size_t npoints = cfg.rho_grid_db.size();
    for (std::size_t k = 0; k < npoints; ++k) {
        const double db = cfg.rho_grid_db[k];
        auto device_values = [&](const std::vector<KpiCurve>& set) {
            std::vector<double> v;
            for (const KpiCurve& c : set) v.push_back(c.points[k].value);
            return v;
        };
        if (ec && !ec->empty()) {
            const std::vector<double> r = device_values(*ec);
            rows.push_back({db, basis, "jfi_ec", jfi_capacity(r)});
            rows.push_back({db, basis, "pfi_ec", pfi(r, Sense::HigherBetter)});
        }
        if (op && !op->empty()) {
            const std::vector<double> p = device_values(*op);
            const double lit = jfi_outage(p, targets);
            rows.push_back({db, basis, "jfi_op", lit});
            rows.push_back({db, basis, "jfi_op_normalized", lit / cfg.device_count});
            rows.push_back({db, basis, "pfi_op", pfi(p, Sense::LowerBetter)});
        }
        if (ber && !ber->empty()) {
            const std::vector<double> p = device_values(*ber);
            const double lit = jfi_ber(p, loads);
            rows.push_back({db, basis, "jfi_ber", lit});
            rows.push_back({db, basis, "jfi_ber_normalized", lit / cfg.device_count});
            rows.push_back({db, basis, "pfi_ber", pfi(p, Sense::LowerBetter)});
        }
    }
}

void write_fairness_csv(const std::string& path, const std::vector<FairnessRow>& rows,
                        const std::string& hash_hex, std::uint64_t seed) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write " + path);
    os << "# bimasim " << kVersion << "\n";
    os << "# config_hash=" << hash_hex << " seed=" << seed << "\n";
    os << "rho_db,basis,flavor,value\n";
    for (const FairnessRow& r : rows)
        os << fmt(r.rho_db) << ',' << r.basis << ',' << r.flavor << ',' << fmt(r.value) << "\n";
}

}  // namespace

SweepOutputs run_sweep(const ScenarioConfig& cfg) {
    namespace fs = std::filesystem;
    SweepOutputs out;
    fs::create_directories(cfg.output_dir);
    const std::string hash = config_hash_hex(cfg);

    bool wants_conv = false;
    for (Scheme s : cfg.schemes) wants_conv |= (s == Scheme::Conv);
    if (wants_conv) {
        const PowerAllocation pa = cfg.resolve_pa();
        const PaCheck check = check_pa_feasible(pa.alphas(), cfg.orders);
        if (!check.feasible)
            std::fprintf(stderr,
                         "warning: conventional allocation violates the detectability bound; "
                         "degraded reception is expected\n");
    }

    for (Scheme scheme : cfg.schemes) {
        SweepPlan plan{cfg, scheme};
        std::vector<KpiCurve> ec_sim, op_sim, ber_sim;
        std::vector<KpiCurve> ec_ana, op_ana, ber_ana;
        for (Metric metric : cfg.metrics) {
            std::vector<KpiCurve> ana = analytic_curves(cfg, scheme, metric);
            std::vector<KpiCurve> sim;
            switch (metric) {
                case Metric::Ec: sim = simulate_ec(plan); break;
                case Metric::Op: sim = simulate_op(plan); break;
                case Metric::Ber: sim = simulate_ber(plan); break;
            }
            for (const KpiCurve& c : sim)
                for (const KpiPoint& p : c.points) out.low_confidence |= p.low_confidence;

            std::vector<KpiCurve> both = ana;
            both.insert(both.end(), sim.begin(), sim.end());
            const std::string path = cfg.output_dir + "/" + lower(to_string(scheme)) + "_" +
                                     lower(to_string(metric)) + ".csv";
            write_curves_csv(path, both, hash, cfg.seed);
            out.files.push_back(path);

            if (metric == Metric::Ec) { ec_sim = std::move(sim); ec_ana = std::move(ana); }
            if (metric == Metric::Op) { op_sim = std::move(sim); op_ana = std::move(ana); }
            if (metric == Metric::Ber) { ber_sim = std::move(sim); ber_ana = std::move(ana); }
        }

        std::vector<FairnessRow> rows;
        if (scheme == Scheme::Bima)
            fairness_rows(rows, cfg, "analytic", &ec_ana, &op_ana, &ber_ana);
        fairness_rows(rows, cfg, "simulated", &ec_sim, &op_sim, &ber_sim);
        const std::string fpath =
            cfg.output_dir + "/fairness_" + lower(to_string(scheme)) + ".csv";
        write_fairness_csv(fpath, rows, hash, cfg.seed);
        out.files.push_back(fpath);
    }

    {
        nlohmann::json creport;
        creport["version"] = kVersion;
        creport["config_hash"] = hash;
        creport["seed"] = cfg.seed;
        creport["bima"] = to_json(bima_complexity(cfg.device_count, cfg.orders));
        creport["conv"] = to_json(conv_complexity(cfg.device_count, cfg.orders));
        const std::string cpath = cfg.output_dir + "/complexity.json";
        std::ofstream os(cpath);
        os << creport.dump(2) << "\n";
        out.files.push_back(cpath);
    }

    {
        nlohmann::json manifest;
        manifest["version"] = kVersion;
        manifest["config_hash"] = hash;
        manifest["seed"] = cfg.seed;
        manifest["scenario"] = scenario_to_json(cfg);
        manifest["files"] = out.files;
        manifest["low_confidence"] = out.low_confidence;
        const std::string mpath = cfg.output_dir + "/manifest.json";
        std::ofstream os(mpath);
        os << manifest.dump(2) << "\n";
        out.files.push_back(mpath);
    }
    return out;
}

PaReport make_pa_report(const std::vector<double>& alphas, const std::vector<unsigned>& orders) {
    const PaCheck check = check_pa_feasible(alphas, orders);
    PaReport report;
    report.feasible = check.feasible;
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        PaReportRow row;
        row.device = static_cast<int>(i) + 1;
        row.alpha = alphas[i];
        row.bound = check.bounds[i];
        row.margin = check.margins[i];
        row.penalty_db = -10.0 * std::log10(alphas[i]);
        report.rows.push_back(row);
    }
    return report;
}

std::string render_pa_report(const PaReport& report) {
    std::string out;
    out += "device  alpha        bound        margin       penalty_dB\n";
    char buf[128];
    for (const PaReportRow& r : report.rows) {
        std::snprintf(buf, sizeof buf, "%-7d %-12.6g %-12.6g %-12.6g %-10.2f\n", r.device, r.alpha,
                      r.bound, r.margin, r.penalty_db);
        out += buf;
    }
    out += report.feasible ? "verdict: feasible\n" : "verdict: infeasible\n";
    return out;
}

}  // namespace bimasim
