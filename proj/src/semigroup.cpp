#include "kgd/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "kgd/fft.hpp"

namespace kgd {

ModeEigenpair mode_eigenvalues(double k2) {
    if (k2 < 0) throw std::invalid_argument("mode_eigenvalues: k2 must be >= 0");
    cd disc = std::sqrt(cd(k2 * k2 - 4.0 * k2 - 4.0, 0.0));
    return {(-k2 + disc) / 2.0, (-k2 - disc) / 2.0};
}

ModeMatrix mode_matrix(double k2, double t) {
    if (k2 < 0) throw std::invalid_argument("mode_matrix: k2 must be >= 0");
    if (t < 0) throw std::invalid_argument("mode_matrix: t must be >= 0");
    ModeMatrix out;
    out.k2 = k2;
    out.t = t;

    // A = sqrt(k2^2 - 4 k2 - 4)/2; propagator entries are combinations of
    // e^{-t k2/2} cosh(tA) and S = e^{-t k2/2} sinh(tA)/A.
    const double disc = k2 * k2 - 4.0 * k2 - 4.0;
    const cd A = 0.5 * std::sqrt(cd(disc, 0.0));
    const double tA2 = t * t * disc / 4.0;  // (tA)^2, real

    cd cosh_term, s_term;
    if (std::abs(tA2) < 1e-4) {
        // |tA| < 1e-2: even series, no cancellation; prefactor applied whole
        double pre = std::exp(-0.5 * t * k2);
        double c = 1.0 + tA2 / 2.0 + tA2 * tA2 / 24.0 + tA2 * tA2 * tA2 / 720.0;
        double s = 1.0 + tA2 / 6.0 + tA2 * tA2 / 120.0 + tA2 * tA2 * tA2 / 5040.0;
        cosh_term = pre * c;
        s_term = pre * t * s;
    } else {
        // exponents t*lambda_pm = -t k2/2 +- tA computed before exponentiating;
        // both have non-positive real part, so no overflow
        cd zp = -0.5 * t * k2 + t * A;
        cd zm = -0.5 * t * k2 - t * A;
        cd ep = std::exp(zp), em = std::exp(zm);
        cosh_term = 0.5 * (ep + em);
        s_term = (ep - em) / (2.0 * A);
    }

    out.m[0] = cosh_term + 0.5 * k2 * s_term;
    out.m[1] = s_term;
    out.m[2] = -(k2 + 1.0) * s_term;
    out.m[3] = cosh_term - 0.5 * k2 * s_term;
    return out;
}

double spectral_norm(const ModeMatrix& mm) {
    // sqrt of the larger eigenvalue of M^H M
    double g11 = std::norm(mm.m[0]) + std::norm(mm.m[2]);
    double g22 = std::norm(mm.m[1]) + std::norm(mm.m[3]);
    cd g12 = std::conj(mm.m[0]) * mm.m[1] + std::conj(mm.m[2]) * mm.m[3];
    double tr = g11 + g22;
    double det = g11 * g22 - std::norm(g12);
    double rad = std::max(tr * tr - 4.0 * det, 0.0);
    return std::sqrt(0.5 * (tr + std::sqrt(rad)));
}

PhaseState apply_semigroup(const PhaseState& state, double t) {
    if (!(state.psi.grid() == state.velocity.grid()))
        throw std::invalid_argument("apply_semigroup: grid mismatch");
    Field ps = with_spectral(state.psi);
    Field vs = with_spectral(state.velocity);
    const auto& g = ps.grid();
    const int N = g.total_points();
    std::vector<cd> cp = ps.coefficients();
    std::vector<cd> cv = vs.coefficients();
    bool par = detail::parallel_enabled();
#pragma omp parallel for schedule(static) if (par && N >= 4096)
    for (int i = 0; i < N; ++i) {
        ModeMatrix mm = mode_matrix(g.k_squared(i), t);
        cd a = cp[i], b = cv[i];
        cp[i] = mm.m[0] * a + mm.m[1] * b;
        cv[i] = mm.m[2] * a + mm.m[3] * b;
    }
    return {Field::from_coefficients(g, std::move(cp)),
            Field::from_coefficients(g, std::move(cv))};
}

double measure_decay_constant(int k2_max, const std::vector<double>& t_samples) {
    if (k2_max < 1) throw std::invalid_argument("measure_decay_constant: k2_max must be >= 1");
    if (t_samples.empty())
        throw std::invalid_argument("measure_decay_constant: empty t grid");
    double best = 0.0;
    for (int k2 = 1; k2 <= k2_max; ++k2)
        for (double t : t_samples) {
            double v = spectral_norm(mode_matrix(double(k2), t)) * std::exp(0.5 * t);
            best = std::max(best, v);
        }
    return best;
}

}  // namespace kgd
