#include "kgd/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "kgd/fft.hpp"

namespace kgd {

namespace {

double pow_abs(cd z, double q) {
    // |z|^q via norm to avoid an abs/sqrt round-trip; q is p+2 >= 2.
    double n2 = std::norm(z);
    if (q == 4.0) return n2 * n2;
    if (q == 2.0) return n2;
    return std::pow(n2, 0.5 * q);
}

// cell-weighted sum of |f|^{p+2} / (p+2)
double potential_integral(const Field& f, double p) {
    Field g = with_physical(f);
    const auto& v = g.values();
    const std::size_t total = v.size();
    std::vector<double> terms(total);
    const double q = p + 2.0;
    const bool par = detail::parallel_enabled() && total >= 4096;
#pragma omp parallel for schedule(static) if (par)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(total); ++i) {
        terms[static_cast<std::size_t>(i)] = pow_abs(v[static_cast<std::size_t>(i)], q);
    }
    return g.grid().cell_measure * pairwise_sum(terms.data(), terms.size()) / q;
}

double volume_factor(const TorusGrid& grid) {
    double vol = 1.0;
    for (int d = 0; d < grid.dim; ++d) vol *= kTwoPi;
    return vol;
}

void require_same_grid(const Field& a, const Field& b, const char* what) {
    if (!(a.grid() == b.grid())) {
        throw std::invalid_argument(std::string(what) + ": fields live on different grids");
    }
}

}  // namespace

double discrete_energy(const StatePair& state, double dt, double p, bool with_potential) {
    if (dt <= 0.0) throw std::invalid_argument("discrete_energy: dt must be positive");
    require_same_grid(state.curr, state.prev, "discrete_energy");
    Field curr = with_spectral(state.curr);
    Field prev = with_spectral(state.prev);
    const auto& cc = curr.coefficients();
    const auto& cp = prev.coefficients();
    const TorusGrid& grid = curr.grid();
    const std::size_t total = cc.size();
    std::vector<double> terms(total);
    const double inv_dt = 1.0 / dt;
    const bool par = detail::parallel_enabled() && total >= 4096;
#pragma omp parallel for schedule(static) if (par)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(total); ++i) {
        const std::size_t idx = static_cast<std::size_t>(i);
        cd diff = (cc[idx] - cp[idx]) * inv_dt;
        cd avg = 0.5 * (cc[idx] + cp[idx]);
        double k2 = grid.k_squared(idx);
        terms[idx] = 0.5 * std::norm(diff) + 0.5 * (1.0 + k2) * std::norm(avg);
    }
    double energy = volume_factor(grid) * pairwise_sum(terms.data(), terms.size());
    if (with_potential) {
        Field avg = linear_combination(0.5, state.curr, 0.5, state.prev);
        energy += potential_integral(avg, p);
    }
    return energy;
}

double discrete_quadratic_energy(const StatePair& state, double dt) {
    return discrete_energy(state, dt, 0.0, false);
}

double discrete_q(cd theta_curr, cd theta_prev, double dt, double p, int dim,
                  bool with_potential) {
    if (dt <= 0.0) throw std::invalid_argument("discrete_q: dt must be positive");
    if (dim != 1 && dim != 2) throw std::invalid_argument("discrete_q: dim must be 1 or 2");
    double vol = 1.0;
    for (int d = 0; d < dim; ++d) vol *= kTwoPi;
    cd diff = (theta_curr - theta_prev) / dt;
    cd avg = 0.5 * (theta_curr + theta_prev);
    double value = 0.5 * std::norm(diff) + 0.5 * std::norm(avg);
    if (with_potential) value += pow_abs(avg, p + 2.0) / (p + 2.0);
    return vol * value;
}

double continuous_energy(const Field& psi, const Field& v, double p, bool with_potential) {
    require_same_grid(psi, v, "continuous_energy");
    Field cpsi = with_spectral(psi);
    Field cv = with_spectral(v);
    const auto& a = cpsi.coefficients();
    const auto& b = cv.coefficients();
    const TorusGrid& grid = cpsi.grid();
    const std::size_t total = a.size();
    std::vector<double> terms(total);
    const bool par = detail::parallel_enabled() && total >= 4096;
#pragma omp parallel for schedule(static) if (par)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(total); ++i) {
        const std::size_t idx = static_cast<std::size_t>(i);
        double k2 = grid.k_squared(idx);
        terms[idx] = 0.5 * std::norm(b[idx]) + 0.5 * (1.0 + k2) * std::norm(a[idx]);
    }
    double energy = volume_factor(grid) * pairwise_sum(terms.data(), terms.size());
    if (with_potential) energy += potential_integral(psi, p);
    return energy;
}

double modified_energy(const Field& psi, const Field& v, double p, double eps,
                       bool with_potential) {
    if (!(eps > 0.0 && eps < 1.0)) {
        throw std::invalid_argument("modified_energy: eps must lie in (0, 1), got " +
                                    std::to_string(eps));
    }
    require_same_grid(psi, v, "modified_energy");
    Field cpsi = with_spectral(psi);
    Field cv = with_spectral(v);
    const auto& a = cpsi.coefficients();
    const auto& b = cv.coefficients();
    const std::size_t total = a.size();
    std::vector<double> terms(total);
    const bool par = detail::parallel_enabled() && total >= 4096;
#pragma omp parallel for schedule(static) if (par)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(total); ++i) {
        const std::size_t idx = static_cast<std::size_t>(i);
        terms[idx] = std::real(std::conj(a[idx]) * b[idx]);
    }
    double cross = volume_factor(cpsi.grid()) * pairwise_sum(terms.data(), terms.size());
    return continuous_energy(psi, v, p, with_potential) + eps * cross;
}

double j_functional(const Field& psi, const Field& v, double p, bool with_potential) {
    require_same_grid(psi, v, "j_functional");
    Field cpsi = with_spectral(psi);
    Field cv = with_spectral(v);
    const auto& a = cpsi.coefficients();
    const auto& b = cv.coefficients();
    const TorusGrid& grid = cpsi.grid();
    const std::size_t total = a.size();
    std::vector<double> terms(total);
    const bool par = detail::parallel_enabled() && total >= 4096;
#pragma omp parallel for schedule(static) if (par)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(total); ++i) {
        const std::size_t idx = static_cast<std::size_t>(i);
        double k2 = grid.k_squared(idx);
        cd lap_minus_v = -k2 * a[idx] - b[idx];
        terms[idx] = 0.5 * std::norm(lap_minus_v) + 0.5 * (1.0 + k2) * std::norm(a[idx]);
    }
    double value = volume_factor(grid) * pairwise_sum(terms.data(), terms.size());
    if (with_potential) value += potential_integral(psi, p);
    return value;
}

Field zero_mean_part(const Field& f) {
    Field g = with_spectral(f);
    std::vector<cd> coeffs = g.coefficients();
    coeffs[0] = cd(0.0, 0.0);
    return Field::from_coefficients(g.grid(), std::move(coeffs));
}

SplitState split_state(const StatePair& state) {
    Field curr = with_spectral(state.curr);
    Field prev = with_spectral(state.prev);
    SplitState out{
        StatePair{zero_mean_part(prev), zero_mean_part(curr), state.step_index},
        prev.coefficients()[0],
        curr.coefficients()[0],
    };
    return out;
}

DecayFit fit_decay_rate(const std::vector<std::pair<double, double>>& series) {
    if (series.empty()) throw std::invalid_argument("fit_decay_rate: empty series");
    const double t_final = series.back().first;
    const double window_lo = 0.5 * t_final;
    const double floor = std::max(1e-12 * series.front().second, 1e-300);

    std::vector<double> ts;
    std::vector<double> ys;
    for (const auto& [t, value] : series) {
        if (t < window_lo - 1e-12 * std::abs(t_final)) continue;
        if (!(value > floor)) continue;
        ts.push_back(t);
        ys.push_back(std::log(value));
    }
    if (ts.size() < 10) {
        throw std::invalid_argument("fit_decay_rate: only " + std::to_string(ts.size()) +
                                    " usable samples in the fit window, need at least 10");
    }

    const std::size_t m = ts.size();
    double t_mean = 0.0, y_mean = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        t_mean += ts[i];
        y_mean += ys[i];
    }
    t_mean /= static_cast<double>(m);
    y_mean /= static_cast<double>(m);

    double stt = 0.0, sty = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        double dt_i = ts[i] - t_mean;
        double dy_i = ys[i] - y_mean;
        stt += dt_i * dt_i;
        sty += dt_i * dy_i;
        syy += dy_i * dy_i;
    }

    DecayFit fit;
    fit.window_lo = window_lo;
    fit.window_hi = t_final;
    if (stt <= 0.0) throw std::invalid_argument("fit_decay_rate: degenerate time axis");

    double slope = sty / stt;
    double intercept = y_mean - slope * t_mean;
    fit.alpha = -slope;
    fit.c = std::exp(intercept);
    if (syy < 1e-20) {
        fit.alpha = 0.0;
        fit.c = std::exp(y_mean);
        fit.r2 = 1.0;
        fit.degenerate = true;
        return fit;
    }
    double ss_res = syy - slope * sty;
    fit.r2 = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
    return fit;
}

EnergyRecord evaluate_record(const StatePair& state, double dt, double p, double eps,
                             bool linear) {
    const bool with_potential = !linear;
    EnergyRecord rec;
    rec.step = state.step_index;
    rec.t = state.step_index * dt;
    rec.e_psi = discrete_energy(state, dt, p, with_potential);

    SplitState split = split_state(state);
    rec.e_phi = discrete_energy(split.phi, dt, p, with_potential);
    rec.q = discrete_q(split.theta_curr, split.theta_prev, dt, p, state.curr.grid().dim,
                       with_potential);

    Field vel = linear_combination(1.0 / dt, state.curr, -1.0 / dt, state.prev);
    rec.j = j_functional(state.curr, vel, p, with_potential);
    rec.e_eps = modified_energy(state.curr, vel, p, eps, with_potential);
    rec.h2 = sobolev_norm(state.curr, 2.0);
    rec.gap = std::abs(rec.e_psi - rec.q);
    return rec;
}

}  // namespace kgd
