#include <CLI11.hpp>
#include <iostream>

#include "symqfi/cli.hpp"
#include "symqfi/kernels.hpp"
#include "symqfi/report.hpp"

int main(int argc, char** argv) {
    CLI::App app{"symqfi: quantum Fisher information for symmetric source constellations"};
    app.require_subcommand(1, 1);

    std::string config_path;
    std::vector<std::string> overrides;
    std::string csv, json, netlist, simd;
    int threads = 0;
    bool check = false;
    double tolerance = -1.0;

    app.add_option("-c,--config", config_path, "INI config file")->check(CLI::ExistingFile);
    app.add_option("-s,--set", overrides, "override, section.key=value (repeatable)");
    app.add_option("--csv", csv, "write the result table as CSV");
    app.add_option("--json", json, "write the result as JSON");
    app.add_option("--netlist-out", netlist, "write the netlist text (decompose)");
    app.add_option("--threads", threads, "worker threads for simulate")->check(CLI::PositiveNumber);
    app.add_flag("--check", check, "self-check mode: exit 4 if a comparison exceeds the tolerance");
    app.add_option("--tolerance", tolerance, "self-check tolerance (default depends on the subcommand)");
    app.add_option("--simd", simd, "kernel variant")->check(CLI::IsMember({"auto", "none", "avx2"}));

    app.add_subcommand("qfi", "numeric QFIM next to the closed form");
    app.add_subcommand("eigen", "density-matrix eigenvalues next to character weights");
    app.add_subcommand("simulate", "photon-counting Monte Carlo and MLE against the Cramer-Rao bound");
    app.add_subcommand("decompose", "beamsplitter/phaseshifter netlist for a preset or a unitary");
    app.add_subcommand("sweep", "tabulate QFI or eigenvalues over a parameter range");
    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : symqfi::kExitConfigError;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        if (!simd.empty() && simd != "auto")
            symqfi::force_simd_level(simd == "avx2" ? symqfi::SimdLevel::avx2 : symqfi::SimdLevel::none);
        symqfi::RunConfig cfg =
            config_path.empty() ? symqfi::RunConfig::defaults(command) : symqfi::RunConfig::load(command, config_path);
        for (const auto& o : overrides) cfg.apply_override(o);
        if (!csv.empty()) cfg.set("output.csv", csv);
        if (!json.empty()) cfg.set("output.json", json);
        if (!netlist.empty()) cfg.set("output.netlist", netlist);
        if (threads > 0) cfg.set("study.threads", std::to_string(threads));
        if (check) cfg.set("check.enabled", "true");
        if (tolerance >= 0.0) cfg.set("check.tolerance", symqfi::format_number(tolerance));
        return symqfi::run(cfg, std::cout, std::cerr);
    } catch (const symqfi::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return symqfi::kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return symqfi::kExitConfigError;
    }
}
