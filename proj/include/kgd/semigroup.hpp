#pragma once

#include <array>
#include <vector>

#include "kgd/field.hpp"

namespace kgd {

/// First-order-system state (psi, d/dt psi).
struct PhaseState {
    Field psi;
    Field velocity;
};

/// 2x2 propagator block for one Fourier mode, row-major entries.
/// Acts on the coefficient pair (psi_k, v_k).
struct ModeMatrix {
    std::array<cd, 4> m{};  // [a11 a12; a21 a22]
    double k2 = 0.0;
    double t = 0.0;

    cd det() const { return m[0] * m[3] - m[1] * m[2]; }
};

struct ModeEigenpair {
    cd lambda_plus;
    cd lambda_minus;
};

/// Exact exponential of the per-mode generator [[0, 1], [-(1+k2), -k2]]
/// evaluated at time t >= 0. Uses a series for the sinh(tA)/A factor when
/// |tA| is small and exponent-factored closed forms otherwise, so entries
/// stay finite for k2*t in the thousands.
ModeMatrix mode_matrix(double k2, double t);

/// Roots of lambda^2 + k2*lambda + (1 + k2) = 0.
ModeEigenpair mode_eigenvalues(double k2);

/// Largest singular value (spectral norm).
double spectral_norm(const ModeMatrix& m);

/// Multiplies every mode's coefficient pair by mode_matrix(|k|^2, t).
PhaseState apply_semigroup(const PhaseState& state, double t);

/// max over 1 <= k2 <= k2_max and t in t_samples of ||mode_matrix|| * e^{t/2}:
/// an empirical constant for the decay bound on zero-mean data.
double measure_decay_constant(int k2_max, const std::vector<double>& t_samples);

}  // namespace kgd
