#pragma once

#include <vector>

#include "kgd/grid.hpp"

namespace kgd::ref {

// Serial O(N^2) discrete Fourier transforms, kept as an independent check on
// the radix-2 kernels and as the benchmark baseline. Same conventions as
// dft_forward / dft_inverse.
std::vector<cd> naive_forward(const std::vector<cd>& values, const TorusGrid& grid);
std::vector<cd> naive_inverse(const std::vector<cd>& coeffs, const TorusGrid& grid);

}  // namespace kgd::ref
