#include "kgd/fft.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace kgd {
namespace detail {

namespace {
thread_local bool g_parallel = true;
}

bool parallel_enabled() { return g_parallel; }
void set_parallel(bool on) { g_parallel = on; }

std::vector<cd> twiddle_table(int n, int sign) {
    std::vector<cd> w(n / 2);
    for (int j = 0; j < n / 2; ++j) {
        double ang = sign * kTwoPi * j / n;
        w[j] = cd(std::cos(ang), std::sin(ang));
    }
    return w;
}

void fft_line(cd* a, int n, int /*sign*/, const std::vector<cd>& twiddle) {
    // bit reversal
    for (int i = 1, j = 0; i < n; ++i) {
        int bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    // butterflies; twiddle stride shrinks as the block length grows
    for (int len = 2; len <= n; len <<= 1) {
        int stride = n / len;
        for (int i = 0; i < n; i += len) {
            const cd* w = twiddle.data();
            for (int j = 0; j < len / 2; ++j, w += stride) {
                cd u = a[i + j];
                cd v = a[i + j + len / 2] * (*w);
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
            }
        }
    }
}

}  // namespace detail

using detail::fft_line;
using detail::twiddle_table;

static void transform_2d(std::vector<cd>& data, int n, int sign) {
    auto tw = twiddle_table(n, sign);
    bool par = detail::parallel_enabled();
#pragma omp parallel for schedule(static) if (par)
    for (int r = 0; r < n; ++r) fft_line(data.data() + std::size_t(r) * n, n, sign, tw);
#pragma omp parallel for schedule(static) if (par)
    for (int c = 0; c < n; ++c) {
        std::vector<cd> col(n);
        for (int r = 0; r < n; ++r) col[r] = data[std::size_t(r) * n + c];
        fft_line(col.data(), n, sign, tw);
        for (int r = 0; r < n; ++r) data[std::size_t(r) * n + c] = col[r];
    }
}

void dft_forward(std::vector<cd>& data, const TorusGrid& grid) {
    if ((int)data.size() != grid.total_points())
        throw std::invalid_argument("dft_forward: size mismatch");
    if (grid.dim == 1) {
        auto tw = twiddle_table(grid.n, -1);
        fft_line(data.data(), grid.n, -1, tw);
    } else {
        transform_2d(data, grid.n, -1);
    }
    double scale = 1.0 / grid.total_points();
    for (auto& z : data) z *= scale;
}

void dft_inverse(std::vector<cd>& data, const TorusGrid& grid) {
    if ((int)data.size() != grid.total_points())
        throw std::invalid_argument("dft_inverse: size mismatch");
    if (grid.dim == 1) {
        auto tw = twiddle_table(grid.n, +1);
        fft_line(data.data(), grid.n, +1, tw);
    } else {
        transform_2d(data, grid.n, +1);
    }
}

}  // namespace kgd
