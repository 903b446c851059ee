#include "kgd/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace kgd {

namespace {

std::string g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

[[noreturn]] void fail(const std::string& path, int line, const std::string& message) {
    throw std::runtime_error(path + ":" + std::to_string(line) + ": " + message);
}

double parse_field(const std::string& path, int line, const std::string& text) {
    char* end = nullptr;
    double v = std::strtod(text.c_str(), &end);
    if (text.empty() || end != text.c_str() + text.size()) {
        fail(path, line, "bad numeric field '" + text + "'");
    }
    return v;
}

}  // namespace

void write_series_csv(const std::string& path, const std::vector<EnergyRecord>& records) {
    std::FILE* out = std::fopen(path.c_str(), "w");
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    std::fprintf(out, "%s\n", kSeriesHeader);
    for (const auto& r : records) {
        std::fprintf(out, "%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.step, r.t,
                     r.e_psi, r.e_phi, r.q, r.j, r.e_eps, r.h2, r.gap);
    }
    if (std::fclose(out) != 0) throw std::runtime_error("close failed for '" + path + "'");
}

std::vector<EnergyRecord> read_series_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) fail(path, 1, "missing header");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kSeriesHeader) fail(path, 1, "unexpected header '" + line + "'");

    std::vector<EnergyRecord> records;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> parts;
        std::size_t start = 0;
        while (true) {
            std::size_t pos = line.find(',', start);
            if (pos == std::string::npos) {
                parts.push_back(line.substr(start));
                break;
            }
            parts.push_back(line.substr(start, pos - start));
            start = pos + 1;
        }
        if (parts.size() != 9) {
            fail(path, line_no, "expected 9 fields, got " + std::to_string(parts.size()));
        }
        EnergyRecord r;
        r.step = static_cast<int>(parse_field(path, line_no, parts[0]));
        r.t = parse_field(path, line_no, parts[1]);
        r.e_psi = parse_field(path, line_no, parts[2]);
        r.e_phi = parse_field(path, line_no, parts[3]);
        r.q = parse_field(path, line_no, parts[4]);
        r.j = parse_field(path, line_no, parts[5]);
        r.e_eps = parse_field(path, line_no, parts[6]);
        r.h2 = parse_field(path, line_no, parts[7]);
        r.gap = parse_field(path, line_no, parts[8]);
        records.push_back(r);
    }
    return records;
}

void write_fit_report(const std::string& path, const std::vector<FitReportEntry>& entries) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    for (const auto& entry : entries) {
        out << '[' << entry.name << "]\n";
        if (entry.ok) {
            out << "alpha = " << g17(entry.fit.alpha) << '\n';
            out << "c = " << g17(entry.fit.c) << '\n';
            out << "r2 = " << g17(entry.fit.r2) << '\n';
            out << "window = " << g17(entry.fit.window_lo) << ',' << g17(entry.fit.window_hi)
                << '\n';
            if (entry.fit.degenerate) out << "degenerate = true\n";
        } else {
            out << "error = " << entry.error << '\n';
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

namespace {

struct PanelFrame {
    double x0, y0, w, h;   // plot rectangle in svg coords
    double t_lo, t_hi;     // data range, x
    double v_lo, v_hi;     // data range, y (already log10 for log panels)

    double map_x(double t) const {
        return x0 + (t - t_lo) / (t_hi - t_lo) * w;
    }
    double map_y(double v) const {
        return y0 + h - (v - v_lo) / (v_hi - v_lo) * h;
    }
};

std::string fmt_coord(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string fmt_tick(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

void emit_polyline(std::ostream& out, const PanelFrame& frame,
                   const std::vector<std::pair<double, double>>& pts, const char* color,
                   const char* dash) {
    if (pts.size() < 2) return;
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\"";
    if (dash) out << " stroke-dasharray=\"" << dash << "\"";
    out << " points=\"";
    for (const auto& [t, v] : pts) {
        out << fmt_coord(frame.map_x(t)) << ',' << fmt_coord(frame.map_y(v)) << ' ';
    }
    out << "\"/>\n";
}

void emit_frame(std::ostream& out, const PanelFrame& frame, const std::string& title,
                bool log_scale) {
    out << "<rect x=\"" << frame.x0 << "\" y=\"" << frame.y0 << "\" width=\"" << frame.w
        << "\" height=\"" << frame.h << "\" fill=\"none\" stroke=\"#444\"/>\n";
    out << "<text x=\"" << frame.x0 << "\" y=\"" << frame.y0 - 8
        << "\" font-family=\"sans-serif\" font-size=\"14\">" << title << "</text>\n";
    for (int i = 0; i <= 5; ++i) {
        double t = frame.t_lo + (frame.t_hi - frame.t_lo) * i / 5.0;
        double x = frame.map_x(t);
        out << "<line x1=\"" << fmt_coord(x) << "\" y1=\"" << frame.y0 + frame.h << "\" x2=\""
            << fmt_coord(x) << "\" y2=\"" << frame.y0 + frame.h + 5 << "\" stroke=\"#444\"/>\n";
        out << "<text x=\"" << fmt_coord(x) << "\" y=\"" << frame.y0 + frame.h + 18
            << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">"
            << fmt_tick(t) << "</text>\n";
    }
    for (int i = 0; i <= 4; ++i) {
        double v = frame.v_lo + (frame.v_hi - frame.v_lo) * i / 4.0;
        double y = frame.map_y(v);
        out << "<line x1=\"" << frame.x0 - 5 << "\" y1=\"" << fmt_coord(y) << "\" x2=\""
            << frame.x0 << "\" y2=\"" << fmt_coord(y) << "\" stroke=\"#444\"/>\n";
        out << "<line x1=\"" << frame.x0 << "\" y1=\"" << fmt_coord(y) << "\" x2=\""
            << frame.x0 + frame.w << "\" y2=\"" << fmt_coord(y)
            << "\" stroke=\"#ddd\" stroke-width=\"0.5\"/>\n";
        std::string label = log_scale ? ("1e" + fmt_tick(v)) : fmt_tick(v);
        out << "<text x=\"" << frame.x0 - 8 << "\" y=\"" << fmt_coord(y + 4)
            << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">" << label
            << "</text>\n";
    }
}

}  // namespace

void write_series_svg(const std::string& path, const std::vector<EnergyRecord>& records) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");

    double t_lo = 0.0, t_hi = 1.0;
    if (!records.empty()) {
        t_lo = records.front().t;
        t_hi = records.back().t;
        if (t_hi <= t_lo) t_hi = t_lo + 1.0;
    }

    std::vector<std::pair<double, double>> e_psi_pts, q_pts, e_phi_pts;
    double lin_hi = 0.0;
    double log_lo = 0.0, log_hi = 0.0;
    bool any_log = false;
    for (const auto& r : records) {
        e_psi_pts.emplace_back(r.t, r.e_psi);
        q_pts.emplace_back(r.t, r.q);
        lin_hi = std::max({lin_hi, r.e_psi, r.q});
        if (r.e_phi > 0.0 && std::isfinite(r.e_phi)) {
            double lv = std::log10(r.e_phi);
            e_phi_pts.emplace_back(r.t, lv);
            if (!any_log) {
                log_lo = log_hi = lv;
                any_log = true;
            } else {
                log_lo = std::min(log_lo, lv);
                log_hi = std::max(log_hi, lv);
            }
        }
    }
    if (lin_hi <= 0.0) lin_hi = 1.0;
    if (!any_log) {
        log_lo = -1.0;
        log_hi = 1.0;
    }
    if (log_hi - log_lo < 1.0) {
        double mid = 0.5 * (log_lo + log_hi);
        log_lo = mid - 0.5;
        log_hi = mid + 0.5;
    }

    PanelFrame top{80, 40, 760, 250, t_lo, t_hi, 0.0, 1.08 * lin_hi};
    PanelFrame bottom{80, 390, 760, 250, t_lo, t_hi, log_lo - 0.5, log_hi + 0.5};

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"900\" height=\"700\" "
           "viewBox=\"0 0 900 700\">\n";
    out << "<rect width=\"900\" height=\"700\" fill=\"white\"/>\n";

    emit_frame(out, top, "energy (linear scale)", false);
    emit_polyline(out, top, e_psi_pts, "#1f77b4", nullptr);
    emit_polyline(out, top, q_pts, "#d62728", "6,4");
    out << "<text x=\"700\" y=\"60\" font-family=\"sans-serif\" font-size=\"12\" "
           "fill=\"#1f77b4\">total</text>\n";
    out << "<text x=\"700\" y=\"76\" font-family=\"sans-serif\" font-size=\"12\" "
           "fill=\"#d62728\">mean mode</text>\n";

    emit_frame(out, bottom, "oscillation energy (log scale)", true);
    emit_polyline(out, bottom, e_phi_pts, "#2ca02c", nullptr);
    out << "<text x=\"450\" y=\"690\" font-family=\"sans-serif\" font-size=\"12\" "
           "text-anchor=\"middle\">t</text>\n";
    out << "</svg>\n";
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace kgd
