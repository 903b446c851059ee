#pragma once

#include <functional>

#include "kgd/semigroup.hpp"

namespace kgd {

struct SimParams {
    double p = 2.0;        // nonlinearity exponent, >= 0
    double dt = 0.005;     // > 0
    double t_final = 50.0; // >= dt
    bool damped = true;
    bool dealias = false;
    bool linear = false;   // drop the |psi|^p psi term entirely

    void validate() const;
};

/// Two consecutive time levels of the marching scheme.
struct StatePair {
    Field prev;      // psi_{n-1}
    Field curr;      // psi_n
    int step_index = 0;
};

class BlowUpError : public std::runtime_error {
public:
    BlowUpError(int step, double t);
    int step;
    double t;
};

/// |f|^p f evaluated pointwise on the grid. With dealias set and p = 2 the
/// product's coefficients with any |k_i| > n/3 are zeroed (2/3 rule).
Field nonlinearity(const Field& f, double p, bool dealias = false);

/// Builds (psi_0, psi_1) from initial data via a second-order Taylor start:
/// psi_1 = psi_0 + dt v_0 + dt^2/2 psi_tt(0), with psi_tt(0) read off the
/// equation (the damping term Lap v_0 enters only when damped).
StatePair startup_step(const Field& psi0, const Field& v0, const SimParams& params);

/// One step of the two-level scheme: second difference in time, (I - Lap)
/// acting on the (psi_{n+1} + 2 psi_n + psi_{n-1})/4 average, explicit
/// nonlinear term, and, when damped, -Lap (psi_{n+1} - psi_n)/dt. Solved
/// exactly per mode.
StatePair step(const StatePair& state, const SimParams& params);

/// First-order mild stepper Psi_{n+1} = e^{-dt A}(Psi_n - dt F(Psi_n)),
/// kept for cross-validation of the primary scheme.
PhaseState step_mild(const PhaseState& state, const SimParams& params);

using Observer = std::function<void(int step, const StatePair&)>;

/// startup_step then repeated step up to ceil(t_final/dt) levels, invoking
/// observer on levels with (step-1) % observe_stride == 0 and on the final
/// level. Throws BlowUpError when a level stops being finite.
StatePair run(const Field& psi0, const Field& v0, const SimParams& params,
              const Observer& observer = {}, int observe_stride = 1);

}  // namespace kgd
