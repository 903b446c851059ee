#pragma once

#include <string>
#include <vector>

#include "kgd/diagnostics.hpp"

namespace kgd {

inline constexpr const char* kSeriesHeader = "step,t,e_psi,e_phi,q,j,e_eps,h2,gap";

/// Writes the diagnostic series with the fixed header above, doubles as
/// %.17g so a read round-trips bit for bit.
void write_series_csv(const std::string& path, const std::vector<EnergyRecord>& records);

/// Strict reader: the header line must match kSeriesHeader exactly and every
/// row must have 9 fields. Errors carry path and line number.
std::vector<EnergyRecord> read_series_csv(const std::string& path);

struct FitReportEntry {
    std::string name;   // series the fit ran on, e.g. "e_phi"
    bool ok = false;
    DecayFit fit;
    std::string error;  // set when ok is false
};

/// Plain-text stanzas, one per entry: alpha/c/r2/window lines, or a single
/// error line when the fit failed.
void write_fit_report(const std::string& path, const std::vector<FitReportEntry>& entries);

/// Two stacked panels: total and mean-mode energy on a linear scale, then
/// the oscillation energy on a log scale.
void write_series_svg(const std::string& path, const std::vector<EnergyRecord>& records);

}  // namespace kgd
