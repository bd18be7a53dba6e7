#include "bimasim/reproduce.hpp"

#include <stdexcept>

namespace bimasim {

namespace {

// SNR axes are not part of the published scenario descriptions; the 0-50 dB
// range below is read off the reference plots, as the _comment fields note.

std::string kpi_config(int devices, const std::string& orders, const std::string& ordering,
                       const std::string& pa, const std::string& outdir,
                       const std::string& extra = "") {
    std::string s = "{\n";
    s += "  \"_comment\": \"SNR range 0-50 dB read from the reference axes, not specified\",\n";
    s += "  \"devices\": " + std::to_string(devices) + ",\n";
    s += "  \"orders\": " + orders + ",\n";
    s += "  \"ordering\": \"" + ordering + "\",\n";
    s += "  \"pa\": " + pa + ",\n";
    s += "  \"rho_db\": {\"start\": 0, \"stop\": 50, \"step\": 2.5},\n";
    s += "  \"seed\": 20260810,\n";
    s += "  \"trials\": {\"max_per_point\": 200000, \"max_bits\": 100000000, \"min_error_events\": 100},\n";
    if (!extra.empty()) s += extra;
    s += "  \"output_dir\": \"" + outdir + "\"\n";
    s += "}\n";
    return s;
}

std::string pa_comparison(int devices, unsigned order, const std::string& variant,
                          const std::string& alphas, const std::string& outdir) {
    std::string pa;
    if (variant == "proposed")
        pa = "{\"source\": \"table\"}";
    else
        pa = "{\"source\": \"explicit\", \"alphas\": " + alphas + "}";
    std::string orders = "[";
    for (int i = 0; i < devices; ++i) orders += (i ? "," : "") + std::to_string(order);
    orders += "]";
    // Equal 0 dB variances with statistical ordering, per the reference
    // allocation study setup.
    return kpi_config(devices, orders, "SCO", pa, outdir,
                      "  \"sigma2_db_per_device\": [" +
                          [&] {
                              std::string v;
                              for (int i = 0; i < devices; ++i) v += (i ? ",0" : "0");
                              return v;
                          }() +
                          "],\n  \"schemes\": [\"CONV\"],\n");
}

}  // namespace

std::vector<std::string> reproduce_ids() {
    return {"fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8",
            "fig9", "fig10", "fig11", "fig12", "fig13", "fig14", "fig15",
            "table1", "table3"};
}

std::map<std::string, std::string> reproduce_configs(const std::string& id) {
    std::map<std::string, std::string> out;
    auto table_pa = std::string("{\"source\": \"table\"}");
    auto gen_pa = std::string("{\"source\": \"generated\", \"margin\": 2.0}");

    if (id == "fig2") {
        out["fig2_proposed"] = pa_comparison(3, 4, "proposed", "", "out/fig2/proposed");
        out["fig2_common"] = pa_comparison(3, 4, "common", "[0.1667, 0.3333, 0.5]", "out/fig2/common");
    } else if (id == "fig3") {
        out["fig3_proposed"] = pa_comparison(4, 4, "proposed", "", "out/fig3/proposed");
        out["fig3_common"] = pa_comparison(4, 4, "common", "[0.1, 0.2, 0.3, 0.4]", "out/fig3/common");
    } else if (id == "fig4") {
        out["fig4_proposed"] = pa_comparison(3, 16, "proposed", "", "out/fig4/proposed");
        out["fig4_common"] = pa_comparison(3, 16, "common", "[0.05, 0.25, 0.7]", "out/fig4/common");
    } else if (id == "fig5") {
        out["fig5"] = kpi_config(3, "[4,4,4]", "ICO", table_pa, "out/fig5");
    } else if (id == "fig6") {
        out["fig6"] = kpi_config(3, "[16,16,16]", "ICO", table_pa, "out/fig6");
    } else if (id == "fig7") {
        out["fig7"] = kpi_config(4, "[4,4,4,4]", "SCO", table_pa, "out/fig7");
    } else if (id == "fig8") {
        out["fig8"] = kpi_config(4, "[16,16,16,16]", "ICO", table_pa, "out/fig8");
    } else if (id == "fig9") {
        out["fig9"] = kpi_config(4, "[16,16,16,16]", "SCO", table_pa, "out/fig9");
    } else if (id == "fig10") {
        // No published five-device allocation exists; the generated one with
        // the default margin stands in.
        out["fig10"] = kpi_config(5, "[4,4,4,4,4]", "ICO", gen_pa, "out/fig10");
    } else if (id == "fig11") {
        out["fig11"] = kpi_config(3, "[4,4,4]", "SCO", table_pa, "out/fig11");
    } else if (id == "fig12") {
        out["fig12"] = kpi_config(3, "[16,16,16]", "SCO", table_pa, "out/fig12");
    } else if (id == "fig13") {
        out["fig13"] = kpi_config(4, "[4,4,4,4]", "ICO", table_pa, "out/fig13");
    } else if (id == "fig14") {
        out["fig14"] = kpi_config(4, "[16,16,16,16]", "ICO", table_pa, "out/fig14");
    } else if (id == "fig15") {
        out["fig15"] = kpi_config(5, "[4,4,4,4,4]", "SCO", gen_pa, "out/fig15");
    } else if (id == "table1" || id == "table3") {
        // Handled directly by the CLI verb; no sweep config involved.
    } else {
        throw std::invalid_argument("unknown reproduce id: " + id);
    }
    return out;
}

}  // namespace bimasim
