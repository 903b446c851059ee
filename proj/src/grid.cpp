#include "kgd/grid.hpp"

#include <cmath>
#include <string>

namespace kgd {

static bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

TorusGrid make_grid(int dim, int n) {
    if (dim != 1 && dim != 2)
        throw std::invalid_argument("make_grid: dim must be 1 or 2, got " + std::to_string(dim));
    if (n < 8 || !power_of_two(n))
        throw std::invalid_argument("make_grid: n must be a power of two >= 8, got " +
                                    std::to_string(n));
    TorusGrid g;
    g.dim = dim;
    g.n = n;
    g.wavenumbers.resize(n);
    for (int i = 0; i < n; ++i) g.wavenumbers[i] = i < n / 2 ? i : i - n;
    g.cell_measure = std::pow(kTwoPi / n, dim);
    return g;
}

}  // namespace kgd
