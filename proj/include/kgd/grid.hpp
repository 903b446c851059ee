#pragma once

#include <array>
#include <complex>
#include <stdexcept>
#include <vector>

namespace kgd {

using cd = std::complex<double>;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Uniform periodic grid on [0,2pi)^dim with the usual DFT wavenumber layout
/// 0, 1, ..., n/2-1, -n/2, ..., -1 along each axis.
struct TorusGrid {
    int dim = 1;
    int n = 0;                      // points per axis, power of two
    std::vector<int> wavenumbers;   // per-axis layout, size n
    double cell_measure = 0.0;      // (2pi/n)^dim

    int total_points() const { return dim == 1 ? n : n * n; }
    double volume() const { return dim == 1 ? kTwoPi : kTwoPi * kTwoPi; }

    // wavevector of a linear index; second component is 0 in 1-d
    std::array<int, 2> wavevector(int idx) const {
        if (dim == 1) return {wavenumbers[idx], 0};
        return {wavenumbers[idx / n], wavenumbers[idx % n]};
    }
    double k_squared(int idx) const {
        auto k = wavevector(idx);
        return double(k[0]) * k[0] + double(k[1]) * k[1];
    }
    // grid point of a linear index; second component is 0 in 1-d
    std::array<double, 2> point(int idx) const {
        if (dim == 1) return {kTwoPi * idx / n, 0.0};
        return {kTwoPi * (idx / n) / n, kTwoPi * (idx % n) / n};
    }

    bool operator==(const TorusGrid&) const = default;
};

/// Validates dim in {1,2} and n a power of two >= 8.
TorusGrid make_grid(int dim, int n);

}  // namespace kgd
