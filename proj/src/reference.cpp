#include "kgd/reference.hpp"

#include <cmath>

namespace kgd::ref {

// c_k = (1/N) sum_x f(x) e^{-i k.x}
std::vector<cd> naive_forward(const std::vector<cd>& values, const TorusGrid& grid) {
    const int N = grid.total_points();
    std::vector<cd> out(N);
    for (int ki = 0; ki < N; ++ki) {
        auto k = grid.wavevector(ki);
        cd acc = 0.0;
        for (int xi = 0; xi < N; ++xi) {
            auto x = grid.point(xi);
            double phase = -(k[0] * x[0] + k[1] * x[1]);
            acc += values[xi] * cd(std::cos(phase), std::sin(phase));
        }
        out[ki] = acc / double(N);
    }
    return out;
}

std::vector<cd> naive_inverse(const std::vector<cd>& coeffs, const TorusGrid& grid) {
    const int N = grid.total_points();
    std::vector<cd> out(N);
    for (int xi = 0; xi < N; ++xi) {
        auto x = grid.point(xi);
        cd acc = 0.0;
        for (int ki = 0; ki < N; ++ki) {
            auto k = grid.wavevector(ki);
            double phase = k[0] * x[0] + k[1] * x[1];
            acc += coeffs[ki] * cd(std::cos(phase), std::sin(phase));
        }
        out[xi] = acc;
    }
    return out;
}

}  // namespace kgd::ref
