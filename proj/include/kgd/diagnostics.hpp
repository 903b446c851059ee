#pragma once

#include <utility>
#include <vector>

#include "kgd/integrator.hpp"

namespace kgd {

/// Diagnostics evaluated on one observed level pair.
struct EnergyRecord {
    int step = 0;
    double t = 0.0;
    double e_psi = 0.0;  // discrete energy of the full field
    double e_phi = 0.0;  // discrete energy of the zero-mean part
    double q = 0.0;      // mean-mode energy
    double j = 0.0;      // Lyapunov functional on (psi_n, discrete velocity)
    double e_eps = 0.0;  // perturbed energy
    double h2 = 0.0;     // H^2 norm of psi_n
    double gap = 0.0;    // |e_psi - q|
};

/// E_n: backward-difference velocity, averaged positions
/// (psi_n + psi_{n-1})/2 in the quadratic and potential terms.
double discrete_energy(const StatePair& state, double dt, double p, bool with_potential = true);

/// Quadratic part only (the exact invariant of the linear undamped scheme).
double discrete_quadratic_energy(const StatePair& state, double dt);

/// Mean-mode energy Q_n = (2pi)^d (|u|^2/2 + |(theta_n - theta_prev)/dt|^2/2
/// + |u|^{p+2}/(p+2)) with u = (theta_n + theta_prev)/2, the same averaged
/// quadrature as discrete_energy, so a spatially constant state has
/// discrete_energy == discrete_q identically.
double discrete_q(cd theta_curr, cd theta_prev, double dt, double p, int dim,
                  bool with_potential = true);

/// E(psi, v) = (|v|^2 + |psi|^2 + |grad psi|^2)/2 + |psi|^{p+2}/(p+2), with
/// a spectral gradient and grid quadrature for the potential term.
double continuous_energy(const Field& psi, const Field& v, double p, bool with_potential = true);

/// E + eps * Re int conj(psi) v; requires 0 < eps < 1.
double modified_energy(const Field& psi, const Field& v, double p, double eps,
                       bool with_potential = true);

/// J = ||Lap psi - v||^2/2 + ||psi||_{H^1}^2/2 + ||psi||_{p+2}^{p+2}/(p+2).
double j_functional(const Field& psi, const Field& v, double p, bool with_potential = true);

struct SplitState {
    StatePair phi;   // zero-mean levels, same step index
    cd theta_prev;
    cd theta_curr;
};

/// Splits both levels into mean and oscillation.
SplitState split_state(const StatePair& state);

/// Field minus its mean.
Field zero_mean_part(const Field& f);

struct DecayFit {
    double alpha = 0.0;      // negated slope of the log-linear fit (positive = decay)
    double c = 0.0;          // exp(intercept at t = 0)
    double r2 = 0.0;
    double window_lo = 0.0;  // window actually used
    double window_hi = 0.0;
    bool degenerate = false; // flat series, r2 forced to 1
};

/// Least-squares line through (t, log value) over [t_final/2, t_final],
/// excluding samples at or below max(1e-12 * first value, 1e-300). Throws
/// when fewer than 10 usable samples remain.
DecayFit fit_decay_rate(const std::vector<std::pair<double, double>>& series);

/// All record columns for one observed level pair. eps feeds e_eps; linear
/// drops every potential term.
EnergyRecord evaluate_record(const StatePair& state, double dt, double p, double eps,
                             bool linear);

}  // namespace kgd
