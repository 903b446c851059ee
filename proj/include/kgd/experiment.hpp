#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "kgd/config.hpp"
#include "kgd/integrator.hpp"
#include "kgd/io.hpp"

namespace kgd {

struct InitialState {
    TorusGrid grid;
    Field psi0;
    Field v0;
};

/// Exact spectral initial data for the four named experiments.
InitialState preset_state(const std::string& name, int n);

/// Initial data from a validated config (preset or explicit mode list),
/// scaled by config.amplitude.
InitialState initial_state(const SimConfig& config);

struct RunResult {
    std::vector<EnergyRecord> records;
    std::vector<FitReportEntry> fits;  // e_phi and gap fits, when emit_plots is set
    bool imag_warning = false;         // imaginary part grew on real input
    std::string series_path;
};

/// Full pipeline: run the scheme, evaluate records on the observed levels,
/// write series.csv (and energies.svg + fit.txt when emit_plots) under
/// config.output_dir. BlowUpError propagates to the caller.
RunResult run_experiment(const SimConfig& config);

struct SweepRow {
    double value = 0.0;
    double alpha = 0.0;
    double c = 0.0;
    double r2 = 0.0;
    double q_final = 0.0;
    std::string status;  // "ok" or an error description
};

/// One run per value of the chosen axis (dt, n, p or amplitude), each into
/// output_dir/<axis>_<value>, executed by a thread pool with per-run kernels
/// forced serial. Failures are recorded in the row, not rethrown. Writes
/// output_dir/summary.csv and returns the rows in value order.
std::vector<SweepRow> sweep(const SimConfig& base, const std::string& axis,
                            const std::vector<double>& values);

// Self-checks for the CLI; print one line per check and return overall pass.
bool verify_semigroup(std::ostream& out);
bool verify_conservation(std::ostream& out);
bool verify_convergence(std::ostream& out);

}  // namespace kgd
