#pragma once

#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "kgd/field.hpp"
#include "kgd/semigroup.hpp"

namespace testsup {

// Real 2x2 matrix in long double, row-major.
struct Mat2 {
    long double m[4];
};

inline Mat2 mat_mul(const Mat2& a, const Mat2& b) {
    return {{a.m[0] * b.m[0] + a.m[1] * b.m[2], a.m[0] * b.m[1] + a.m[1] * b.m[3],
             a.m[2] * b.m[0] + a.m[3] * b.m[2], a.m[2] * b.m[1] + a.m[3] * b.m[3]}};
}

// e^{t G} for G = [[0, 1], [-(1+k2), -k2]] by scaling and squaring with a
// long double Taylor series. Independent of the closed forms under test.
inline Mat2 expm_oracle(double k2, double t) {
    long double g[4] = {0.0L, 1.0L, -(1.0L + (long double)k2), -(long double)k2};
    long double norm = 0.0L;
    for (int r = 0; r < 2; ++r) {
        long double row = std::fabs(g[2 * r] * t) + std::fabs(g[2 * r + 1] * t);
        if (row > norm) norm = row;
    }
    int s = 0;
    while (norm > 0.25L) {
        norm *= 0.5L;
        ++s;
    }
    long double scale = std::ldexp((long double)t, -s);
    Mat2 a{{g[0] * scale, g[1] * scale, g[2] * scale, g[3] * scale}};
    Mat2 sum{{1.0L, 0.0L, 0.0L, 1.0L}};
    Mat2 term = sum;
    for (int j = 1; j <= 28; ++j) {
        term = mat_mul(term, a);
        long double inv = 1.0L / j;
        for (int i = 0; i < 4; ++i) term.m[i] *= inv;
        for (int i = 0; i < 4; ++i) sum.m[i] += term.m[i];
    }
    for (int i = 0; i < s; ++i) sum = mat_mul(sum, sum);
    return sum;
}

inline double entry_gap(const kgd::ModeMatrix& m, const Mat2& oracle) {
    double worst = 0.0;
    for (int i = 0; i < 4; ++i) {
        double gap = std::abs(m.m[i] - kgd::cd((double)oracle.m[i], 0.0));
        if (gap > worst) worst = gap;
    }
    return worst;
}

// theta'' + theta + |theta|^p theta = 0 solved by classic RK4 with step h.
// Returns theta at 0, h, 2h, ..., nsteps*h.
inline std::vector<double> duffing_oracle(double theta0, double v0, double p, double h,
                                          int nsteps) {
    auto acc = [p](double th) { return -th - std::pow(std::fabs(th), p) * th; };
    std::vector<double> out;
    out.reserve(nsteps + 1);
    double th = theta0, w = v0;
    out.push_back(th);
    for (int i = 0; i < nsteps; ++i) {
        double k1t = w, k1w = acc(th);
        double k2t = w + 0.5 * h * k1w, k2w = acc(th + 0.5 * h * k1t);
        double k3t = w + 0.5 * h * k2w, k3w = acc(th + 0.5 * h * k2t);
        double k4t = w + h * k3w, k4w = acc(th + h * k3t);
        th += h / 6.0 * (k1t + 2.0 * k2t + 2.0 * k3t + k4t);
        w += h / 6.0 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w);
        out.push_back(th);
    }
    return out;
}

// Random band-limited field, |k_i| <= kmax. With real_valued the spectrum is
// Hermitian, so grid values are real up to rounding.
inline kgd::Field random_field(std::mt19937& rng, const kgd::TorusGrid& grid, int kmax,
                               bool real_valued) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    const int n = grid.n;
    const int total = grid.total_points();
    std::vector<kgd::cd> coeffs(total, kgd::cd(0.0));

    auto conj_index = [&](int idx) {
        if (grid.dim == 1) return (n - idx) % n;
        int ix = idx / n, iy = idx % n;
        return ((n - ix) % n) * n + (n - iy) % n;
    };

    for (int idx = 0; idx < total; ++idx) {
        auto k = grid.wavevector(idx);
        if (std::abs(k[0]) > kmax || std::abs(k[1]) > kmax) continue;
        if (!real_valued) {
            coeffs[idx] = kgd::cd(dist(rng), dist(rng));
            continue;
        }
        int cidx = conj_index(idx);
        if (idx < cidx) {
            kgd::cd z(dist(rng), dist(rng));
            coeffs[idx] = z;
            coeffs[cidx] = std::conj(z);
        } else if (idx == cidx) {
            coeffs[idx] = kgd::cd(dist(rng), 0.0);
        }
    }
    return kgd::Field::from_coefficients(grid, std::move(coeffs));
}

inline double max_coeff_gap(const kgd::Field& a, const kgd::Field& b) {
    kgd::Field as = kgd::with_spectral(a);
    kgd::Field bs = kgd::with_spectral(b);
    const auto& ca = as.coefficients();
    const auto& cb = bs.coefficients();
    double worst = 0.0;
    for (std::size_t i = 0; i < ca.size(); ++i) worst = std::max(worst, std::abs(ca[i] - cb[i]));
    return worst;
}

}  // namespace testsup
