#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace kgd {

/// One initial-data mode from the config: wavevector components as written
/// (count must match dim) and a complex amplitude.
struct ModeEntry {
    std::vector<int> k;
    double re = 0.0;
    double im = 0.0;
    bool operator==(const ModeEntry&) const = default;
};

struct SimConfig {
    int dim = 1;
    int n = 64;
    double dt = 0.005;
    double t_final = 50.0;
    double p = 2.0;
    bool damped = true;
    bool dealias = false;
    bool linear = false;
    double eps = 0.1;
    int observe_stride = 20;
    double amplitude = 1.0;
    bool emit_plots = false;
    std::string output_dir = "out";
    std::string preset;  // empty = explicit modes
    std::vector<ModeEntry> psi0_modes;
    std::vector<ModeEntry> v0_modes;
    bool operator==(const SimConfig&) const = default;

    /// Cross-field constraints; throws ConfigError on violation.
    void validate() const;
};

/// Parse/validation failure. line == 0 means the error is not tied to a
/// single line.
class ConfigError : public std::runtime_error {
  public:
    ConfigError(int line, const std::string& message);
    int line;
};

/// Flat key=value text, one pair per line. '#' starts a comment, blank lines
/// are skipped, psi0_mode/v0_mode repeat and accumulate. The returned config
/// is already validated.
SimConfig parse_config(const std::string& text);

/// Reads the file and delegates to parse_config.
SimConfig parse_config_file(const std::string& path);

/// Inverse of parse_config: parse_config(render_config(c)) == c.
std::string render_config(const SimConfig& config);

/// Grid dimension implied by a preset name; throws ConfigError on an unknown
/// name.
int preset_dim(const std::string& name);

}  // namespace kgd
