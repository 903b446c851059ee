#include "kgd/config.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace kgd {

namespace {

std::string trim(const std::string& s) {
    std::size_t lo = s.find_first_not_of(" \t\r");
    if (lo == std::string::npos) return "";
    std::size_t hi = s.find_last_not_of(" \t\r");
    return s.substr(lo, hi - lo + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = s.find(sep, start);
        if (pos == std::string::npos) {
            parts.push_back(s.substr(start));
            break;
        }
        parts.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
    return parts;
}

int parse_int(int line, const std::string& key, const std::string& value) {
    const std::string v = trim(value);
    char* end = nullptr;
    errno = 0;
    long out = std::strtol(v.c_str(), &end, 10);
    if (v.empty() || end != v.c_str() + v.size() || errno == ERANGE) {
        throw ConfigError(line, key + ": expected an integer, got '" + value + "'");
    }
    return static_cast<int>(out);
}

double parse_double(int line, const std::string& key, const std::string& value) {
    const std::string v = trim(value);
    char* end = nullptr;
    errno = 0;
    double out = std::strtod(v.c_str(), &end);
    if (v.empty() || end != v.c_str() + v.size()) {
        throw ConfigError(line, key + ": expected a number, got '" + value + "'");
    }
    return out;
}

bool parse_bool(int line, const std::string& key, const std::string& value) {
    const std::string v = trim(value);
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw ConfigError(line, key + ": expected true/false, got '" + value + "'");
}

ModeEntry parse_mode(int line, const std::string& key, const std::string& value) {
    std::vector<std::string> halves = split(value, ':');
    if (halves.size() != 2) {
        throw ConfigError(line, key + ": expected 'k1[,k2]:re[,im]', got '" + value + "'");
    }
    ModeEntry mode;
    std::vector<std::string> ks = split(halves[0], ',');
    if (ks.empty() || ks.size() > 2) {
        throw ConfigError(line, key + ": expected 1 or 2 wavevector components");
    }
    for (const auto& part : ks) mode.k.push_back(parse_int(line, key, part));
    std::vector<std::string> amps = split(halves[1], ',');
    if (amps.empty() || amps.size() > 2) {
        throw ConfigError(line, key + ": expected amplitude 're' or 're,im'");
    }
    mode.re = parse_double(line, key, amps[0]);
    if (amps.size() == 2) mode.im = parse_double(line, key, amps[1]);
    return mode;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string format_mode(const ModeEntry& mode) {
    std::string out;
    for (std::size_t i = 0; i < mode.k.size(); ++i) {
        if (i > 0) out += ',';
        out += std::to_string(mode.k[i]);
    }
    out += ':';
    out += format_double(mode.re);
    if (mode.im != 0.0) {
        out += ',';
        out += format_double(mode.im);
    }
    return out;
}

}  // namespace

ConfigError::ConfigError(int line_number, const std::string& message)
    : std::runtime_error(line_number > 0
                             ? "config line " + std::to_string(line_number) + ": " + message
                             : "config: " + message),
      line(line_number) {}

int preset_dim(const std::string& name) {
    if (name == "fig1_left" || name == "fig1_right") return 1;
    if (name == "fig2_left" || name == "fig2_right") return 2;
    throw ConfigError(0, "unknown preset '" + name +
                             "' (expected fig1_left, fig1_right, fig2_left, fig2_right)");
}

void SimConfig::validate() const {
    if (dim != 1 && dim != 2) {
        throw ConfigError(0, "dim must be 1 or 2, got " + std::to_string(dim));
    }
    if (n < 8 || (n & (n - 1)) != 0) {
        throw ConfigError(0, "n must be a power of two >= 8, got " + std::to_string(n));
    }
    if (!(dt > 0.0)) throw ConfigError(0, "dt must be positive");
    if (!(t_final >= dt)) throw ConfigError(0, "t_final must be at least dt");
    if (!(p >= 0.0) || !std::isfinite(p)) throw ConfigError(0, "p must be finite and >= 0");
    if (!(eps > 0.0 && eps < 1.0)) throw ConfigError(0, "eps must lie in (0, 1)");
    if (observe_stride < 1) throw ConfigError(0, "observe_stride must be >= 1");
    if (!std::isfinite(amplitude)) throw ConfigError(0, "amplitude must be finite");

    const bool has_modes = !psi0_modes.empty() || !v0_modes.empty();
    if (!preset.empty() && has_modes) {
        throw ConfigError(0, "preset and explicit psi0_mode/v0_mode lines are exclusive");
    }
    if (preset.empty() && !has_modes) {
        throw ConfigError(0, "no initial data: set preset or at least one psi0_mode/v0_mode");
    }
    if (!preset.empty() && preset_dim(preset) != dim) {
        throw ConfigError(0, "preset '" + preset + "' needs dim " +
                                 std::to_string(preset_dim(preset)) + ", config has dim " +
                                 std::to_string(dim));
    }
    auto check_modes = [&](const std::vector<ModeEntry>& modes, const char* key) {
        for (const auto& mode : modes) {
            if (static_cast<int>(mode.k.size()) != dim) {
                throw ConfigError(0, std::string(key) + ": wavevector has " +
                                         std::to_string(mode.k.size()) +
                                         " components, dim is " + std::to_string(dim));
            }
            for (int ki : mode.k) {
                if (std::abs(ki) >= n / 2) {
                    throw ConfigError(0, std::string(key) + ": |k| must be below n/2 = " +
                                             std::to_string(n / 2) + ", got " +
                                             std::to_string(ki));
                }
            }
            if (!std::isfinite(mode.re) || !std::isfinite(mode.im)) {
                throw ConfigError(0, std::string(key) + ": amplitude must be finite");
            }
        }
    };
    check_modes(psi0_modes, "psi0_mode");
    check_modes(v0_modes, "v0_mode");
}

SimConfig parse_config(const std::string& text) {
    SimConfig config;
    bool dim_explicit = false;
    int preset_line = 0;

    std::istringstream stream(text);
    std::string raw;
    int line = 0;
    while (std::getline(stream, raw)) {
        ++line;
        std::size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        std::string body = trim(raw);
        if (body.empty()) continue;

        std::size_t eq = body.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(line, "expected key=value, got '" + body + "'");
        }
        std::string key = trim(body.substr(0, eq));
        std::string value = trim(body.substr(eq + 1));
        if (key.empty()) throw ConfigError(line, "missing key before '='");
        if (value.empty()) throw ConfigError(line, key + ": missing value");

        if (key == "dim") {
            config.dim = parse_int(line, key, value);
            dim_explicit = true;
        } else if (key == "n") {
            config.n = parse_int(line, key, value);
        } else if (key == "dt") {
            config.dt = parse_double(line, key, value);
        } else if (key == "t_final") {
            config.t_final = parse_double(line, key, value);
        } else if (key == "p") {
            config.p = parse_double(line, key, value);
        } else if (key == "damped") {
            config.damped = parse_bool(line, key, value);
        } else if (key == "dealias") {
            config.dealias = parse_bool(line, key, value);
        } else if (key == "linear") {
            config.linear = parse_bool(line, key, value);
        } else if (key == "eps") {
            config.eps = parse_double(line, key, value);
        } else if (key == "observe_stride") {
            config.observe_stride = parse_int(line, key, value);
        } else if (key == "amplitude") {
            config.amplitude = parse_double(line, key, value);
        } else if (key == "emit_plots") {
            config.emit_plots = parse_bool(line, key, value);
        } else if (key == "output_dir") {
            config.output_dir = value;
        } else if (key == "preset") {
            config.preset = value;
            preset_line = line;
        } else if (key == "psi0_mode") {
            config.psi0_modes.push_back(parse_mode(line, key, value));
        } else if (key == "v0_mode") {
            config.v0_modes.push_back(parse_mode(line, key, value));
        } else {
            throw ConfigError(line, "unknown key '" + key + "'");
        }
    }

    if (!config.preset.empty()) {
        int implied;
        try {
            implied = preset_dim(config.preset);
        } catch (const ConfigError&) {
            throw ConfigError(preset_line, "unknown preset '" + config.preset + "'");
        }
        if (!dim_explicit) config.dim = implied;
    }
    config.validate();
    return config;
}

SimConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(0, "cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

std::string render_config(const SimConfig& config) {
    std::ostringstream out;
    out << "dim = " << config.dim << '\n';
    out << "n = " << config.n << '\n';
    out << "dt = " << format_double(config.dt) << '\n';
    out << "t_final = " << format_double(config.t_final) << '\n';
    out << "p = " << format_double(config.p) << '\n';
    out << "damped = " << (config.damped ? "true" : "false") << '\n';
    out << "dealias = " << (config.dealias ? "true" : "false") << '\n';
    out << "linear = " << (config.linear ? "true" : "false") << '\n';
    out << "eps = " << format_double(config.eps) << '\n';
    out << "observe_stride = " << config.observe_stride << '\n';
    out << "amplitude = " << format_double(config.amplitude) << '\n';
    out << "emit_plots = " << (config.emit_plots ? "true" : "false") << '\n';
    out << "output_dir = " << config.output_dir << '\n';
    if (!config.preset.empty()) out << "preset = " << config.preset << '\n';
    for (const auto& mode : config.psi0_modes) {
        out << "psi0_mode = " << format_mode(mode) << '\n';
    }
    for (const auto& mode : config.v0_modes) {
        out << "v0_mode = " << format_mode(mode) << '\n';
    }
    return out.str();
}

}  // namespace kgd
