#pragma once

#include <array>
#include <functional>
#include <vector>

#include "kgd/grid.hpp"

namespace kgd {

struct ModeAmplitude {
    std::array<int, 2> k{0, 0};  // k[1] ignored in 1-d
    cd amplitude{0.0, 0.0};
};

/// Complex scalar field on a TorusGrid holding a physical view (grid values)
/// and/or a spectral view (DFT coefficients), with flags saying which views
/// are current. Operations never mutate their inputs; they return new fields.
class Field {
public:
    Field() = default;

    static Field zero(const TorusGrid& g);
    static Field from_values(const TorusGrid& g, std::vector<cd> values);
    static Field from_coefficients(const TorusGrid& g, std::vector<cd> coeffs);
    static Field from_modes(const TorusGrid& g, const std::vector<ModeAmplitude>& modes);
    // sample a callable f(x) or f(x,y) on the grid
    static Field sample(const TorusGrid& g, const std::function<cd(double, double)>& f);

    const TorusGrid& grid() const { return grid_; }
    bool has_physical() const { return has_phys_; }
    bool has_spectral() const { return has_spec_; }

    // throw std::logic_error when the view is not current
    const std::vector<cd>& values() const;
    const std::vector<cd>& coefficients() const;

private:
    TorusGrid grid_;
    std::vector<cd> values_, coeffs_;
    bool has_phys_ = false, has_spec_ = false;

    friend Field forward_transform(const Field&);
    friend Field inverse_transform(const Field&);
    friend Field apply_multiplier(const Field&,
                                  const std::function<cd(const std::array<int, 2>&)>&);
    friend Field linear_combination(cd, const Field&, cd, const Field&);
};

/// Fills in the spectral view from the physical one. The input's physical
/// view is carried over, so the result has both views current.
Field forward_transform(const Field& f);

/// Fills in the physical view from the spectral one; both views current.
Field inverse_transform(const Field& f);

// copies with the requested view guaranteed current
Field with_physical(const Field& f);
Field with_spectral(const Field& f);

/// Multiplies coefficient k by m(k). Result is spectral-only.
Field apply_multiplier(const Field& f, const std::function<cd(const std::array<int, 2>&)>& m);

/// a*f + b*g on a shared grid. Combines whichever views both operands have.
Field linear_combination(cd a, const Field& f, cd b, const Field& g);

/// Spatial mean: coefficient k=0 when spectral is current, grid average otherwise.
cd mean(const Field& f);

/// cell_measure * sum of grid values; exact for trig polynomials the grid resolves.
cd integrate(const Field& f);

/// ((2pi)^dim sum_k (1+|k|^2)^s |c_k|^2)^(1/2); s >= 0.
double sobolev_norm(const Field& f, double s);

/// (integral of |f|^q)^(1/q) by grid quadrature; q >= 1.
double lp_norm(const Field& f, double q);

// deterministic pairwise reduction used by all quadrature sums
double pairwise_sum(const double* x, std::size_t n);

}  // namespace kgd
