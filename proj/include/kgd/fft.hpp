#pragma once

#include <complex>
#include <vector>

#include "kgd/grid.hpp"

namespace kgd {
namespace detail {

// Thread-local switch for the OpenMP kernel paths. Serial and parallel paths
// produce bitwise-identical results (no reduction reordering); the switch
// exists for the benchmark and for sweep workers that are already one thread
// per run.
bool parallel_enabled();
void set_parallel(bool on);

// In-place radix-2 transform of a single length-n line, n a power of two.
// sign = -1 forward kernel (no scaling), sign = +1 inverse kernel.
void fft_line(cd* a, int n, int sign, const std::vector<cd>& twiddle);

// Twiddle table e^{sign * 2*pi*i*j/n}, j < n/2.
std::vector<cd> twiddle_table(int n, int sign);

}  // namespace detail

// Forward DFT with the 1/n^dim normalization, so coefficient k=0 equals the
// grid mean. data is overwritten (row-major for dim = 2).
void dft_forward(std::vector<cd>& data, const TorusGrid& grid);

// Unscaled inverse: f(x) = sum_k c_k e^{i k.x}.
void dft_inverse(std::vector<cd>& data, const TorusGrid& grid);

}  // namespace kgd
