#include "kgd/integrator.hpp"

#include <cmath>
#include <string>

#include "kgd/fft.hpp"

namespace kgd {

void SimParams::validate() const {
    if (p < 0) throw std::invalid_argument("SimParams: p must be >= 0");
    if (!(dt > 0)) throw std::invalid_argument("SimParams: dt must be > 0");
    if (!(t_final >= dt)) throw std::invalid_argument("SimParams: t_final must be >= dt");
}

BlowUpError::BlowUpError(int step_, double t_)
    : std::runtime_error("solution blew up at step " + std::to_string(step_) +
                         " (t = " + std::to_string(t_) + ")"),
      step(step_),
      t(t_) {}

Field nonlinearity(const Field& f, double p, bool dealias) {
    if (p < 0) throw std::invalid_argument("nonlinearity: p must be >= 0");
    Field ph = with_physical(f);
    const auto& g = ph.grid();
    const int N = g.total_points();
    std::vector<cd> v = ph.values();
    bool par = detail::parallel_enabled();
    if (p == 2.0) {
#pragma omp parallel for schedule(static) if (par && N >= 4096)
        for (int i = 0; i < N; ++i) v[i] *= std::norm(v[i]);
    } else {
#pragma omp parallel for schedule(static) if (par && N >= 4096)
        for (int i = 0; i < N; ++i) v[i] *= std::pow(std::norm(v[i]), 0.5 * p);
    }
    Field out = Field::from_values(g, std::move(v));
    if (dealias) {
        double cut = g.n / 3.0;
        out = apply_multiplier(out, [cut](const std::array<int, 2>& k) {
            return (std::abs(k[0]) > cut || std::abs(k[1]) > cut) ? cd(0.0) : cd(1.0);
        });
        out = inverse_transform(out);
    }
    return out;
}

StatePair startup_step(const Field& psi0, const Field& v0, const SimParams& params) {
    params.validate();
    if (!(psi0.grid() == v0.grid()))
        throw std::invalid_argument("startup_step: grid mismatch");
    Field p0 = with_spectral(with_physical(psi0));
    Field w0 = with_spectral(v0);
    const auto& g = p0.grid();
    const int N = g.total_points();
    const double dt = params.dt;

    std::vector<cd> nl(N, cd(0.0));
    if (!params.linear) nl = with_spectral(nonlinearity(p0, params.p, params.dealias)).coefficients();

    const auto& c0 = p0.coefficients();
    const auto& cv = w0.coefficients();
    std::vector<cd> c1(N);
    for (int i = 0; i < N; ++i) {
        double k2 = g.k_squared(i);
        cd acc = -(k2 + 1.0) * c0[i] - nl[i];     // Lap psi0 - psi0 - |psi0|^p psi0
        if (params.damped) acc += -k2 * cv[i];    // Lap v0
        c1[i] = c0[i] + dt * cv[i] + 0.5 * dt * dt * acc;
    }
    Field curr = inverse_transform(Field::from_coefficients(g, std::move(c1)));
    return {inverse_transform(p0), curr, 1};
}

StatePair step(const StatePair& state, const SimParams& params) {
    params.validate();
    if (!(state.prev.grid() == state.curr.grid()))
        throw std::invalid_argument("step: grid mismatch");
    const auto& g = state.curr.grid();
    const int N = g.total_points();
    const double dt = params.dt;

    Field curr = with_spectral(with_physical(state.curr));
    Field prev = with_spectral(state.prev);

    std::vector<cd> nl(N, cd(0.0));
    if (!params.linear) nl = with_spectral(nonlinearity(curr, params.p, params.dealias)).coefficients();

    const auto& cn = curr.coefficients();
    const auto& cp = prev.coefficients();
    std::vector<cd> cnew(N);
    const double idt2 = 1.0 / (dt * dt);
    const double damp = params.damped ? 1.0 / dt : 0.0;
    bool par = detail::parallel_enabled();
#pragma omp parallel for schedule(static) if (par && N >= 4096)
    for (int i = 0; i < N; ++i) {
        double k2 = g.k_squared(i);
        double a = idt2 + 0.25 * (1.0 + k2) + k2 * damp;
        double b = 2.0 * idt2 - 0.5 * (1.0 + k2) + k2 * damp;
        double c = idt2 + 0.25 * (1.0 + k2);
        cnew[i] = (b * cn[i] - c * cp[i] - nl[i]) / a;
    }
    Field next = inverse_transform(Field::from_coefficients(g, std::move(cnew)));
    return {curr, next, state.step_index + 1};
}

PhaseState step_mild(const PhaseState& state, const SimParams& params) {
    params.validate();
    if (!(state.psi.grid() == state.velocity.grid()))
        throw std::invalid_argument("step_mild: grid mismatch");
    Field vs = with_spectral(state.velocity);
    if (params.linear) return apply_semigroup({with_spectral(state.psi), vs}, params.dt);

    Field nl = with_spectral(nonlinearity(with_physical(state.psi), params.p, params.dealias));
    Field kicked = linear_combination(1.0, vs, -params.dt, nl);
    return apply_semigroup({with_spectral(state.psi), kicked}, params.dt);
}

static bool finite(const std::vector<cd>& v) {
    for (const auto& z : v)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

StatePair run(const Field& psi0, const Field& v0, const SimParams& params,
              const Observer& observer, int observe_stride) {
    params.validate();
    if (observe_stride < 1) throw std::invalid_argument("run: observe_stride must be >= 1");
    const int levels = (int)std::ceil(params.t_final / params.dt - 1e-9);

    StatePair state = startup_step(psi0, v0, params);
    if (!finite(state.curr.coefficients())) throw BlowUpError(1, params.dt);
    auto want = [&](int idx) { return (idx - 1) % observe_stride == 0 || idx == levels; };
    if (observer && want(1)) observer(1, state);

    for (int idx = 2; idx <= levels; ++idx) {
        state = step(state, params);
        if (!finite(state.curr.coefficients())) throw BlowUpError(idx, idx * params.dt);
        if (observer && want(idx)) observer(idx, state);
    }
    return state;
}

}  // namespace kgd
