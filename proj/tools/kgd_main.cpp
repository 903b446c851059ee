#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kgd/experiment.hpp"

namespace {

int do_run(const std::string& config_path, const std::string& preset,
           const std::string& out_dir) {
    kgd::SimConfig config = kgd::parse_config_file(config_path);
    if (!preset.empty()) {
        config.preset = preset;
        config.psi0_modes.clear();
        config.v0_modes.clear();
        config.dim = kgd::preset_dim(preset);
    }
    if (!out_dir.empty()) config.output_dir = out_dir;
    config.validate();

    kgd::RunResult result = kgd::run_experiment(config);
    std::printf("wrote %s (%zu records)\n", result.series_path.c_str(),
                result.records.size());
    if (!result.records.empty()) {
        const auto& r = result.records.back();
        std::printf("final: t=%.6g e_psi=%.10g e_phi=%.6g q=%.10g gap=%.6g\n", r.t, r.e_psi,
                    r.e_phi, r.q, r.gap);
    }
    for (const auto& entry : result.fits) {
        if (entry.ok) {
            std::printf("fit %s: alpha=%.6g c=%.6g r2=%.6g window=[%.6g,%.6g]\n",
                        entry.name.c_str(), entry.fit.alpha, entry.fit.c, entry.fit.r2,
                        entry.fit.window_lo, entry.fit.window_hi);
        } else {
            std::printf("fit %s: failed (%s)\n", entry.name.c_str(), entry.error.c_str());
        }
    }
    return 0;
}

int do_verify(const std::string& which) {
    bool ok = false;
    if (which == "semigroup") {
        ok = kgd::verify_semigroup(std::cout);
    } else if (which == "conservation") {
        ok = kgd::verify_conservation(std::cout);
    } else if (which == "convergence") {
        ok = kgd::verify_convergence(std::cout);
    }
    std::printf("verify %s: %s\n", which.c_str(), ok ? "PASS" : "FAIL");
    return ok ? 0 : 2;
}

int do_sweep(const std::string& config_path, const std::string& axis,
             const std::string& values_csv) {
    kgd::SimConfig base = kgd::parse_config_file(config_path);
    std::vector<double> values;
    std::size_t start = 0;
    while (start <= values_csv.size()) {
        std::size_t pos = values_csv.find(',', start);
        std::string part = values_csv.substr(
            start, pos == std::string::npos ? std::string::npos : pos - start);
        if (!part.empty()) values.push_back(std::stod(part));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    std::vector<kgd::SweepRow> rows = kgd::sweep(base, axis, values);
    for (const auto& row : rows) {
        std::printf("%s=%.6g: %s", axis.c_str(), row.value, row.status.c_str());
        if (row.status == "ok") {
            std::printf(" alpha=%.6g r2=%.6g q_final=%.10g", row.alpha, row.r2, row.q_final);
        }
        std::printf("\n");
    }
    std::printf("wrote %s/summary.csv\n", base.output_dir.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "pseudo-spectral simulator for the strongly damped nonlinear Klein-Gordon "
        "equation on the torus"};
    app.require_subcommand(1);

    std::string config_path, preset, out_dir;
    auto* run_cmd = app.add_subcommand("run", "integrate one configuration");
    run_cmd->add_option("--config", config_path, "config file")->required();
    run_cmd->add_option("--preset", preset,
                        "override initial data with a named preset "
                        "(fig1_left, fig1_right, fig2_left, fig2_right)");
    run_cmd->add_option("--out", out_dir, "override the output directory");

    std::string which;
    auto* verify_cmd = app.add_subcommand("verify", "run a built-in self check");
    verify_cmd->add_option("check", which, "semigroup, conservation or convergence")
        ->required()
        ->check(CLI::IsMember({"semigroup", "conservation", "convergence"}));

    std::string sweep_config, axis, values_csv;
    auto* sweep_cmd = app.add_subcommand("sweep", "repeat a run over one parameter axis");
    sweep_cmd->add_option("--config", sweep_config, "base config file")->required();
    sweep_cmd->add_option("--axis", axis, "dt, n, p or amplitude")
        ->required()
        ->check(CLI::IsMember({"dt", "n", "p", "amplitude"}));
    sweep_cmd->add_option("--values", values_csv, "comma-separated values")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (run_cmd->parsed()) return do_run(config_path, preset, out_dir);
        if (verify_cmd->parsed()) return do_verify(which);
        if (sweep_cmd->parsed()) return do_sweep(sweep_config, axis, values_csv);
    } catch (const kgd::BlowUpError& err) {
        std::fprintf(stderr, "error: %s\n", err.what());
        return 1;
    } catch (const std::exception& err) {
        std::fprintf(stderr, "error: %s\n", err.what());
        return 1;
    }
    return 0;
}
