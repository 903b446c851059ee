#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#include "kgd/fft.hpp"
#include "kgd/field.hpp"
#include "kgd/integrator.hpp"
#include "kgd/reference.hpp"

namespace {

double g_sink = 0.0;

std::vector<kgd::cd> random_data(std::size_t n, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<kgd::cd> out(n);
    for (auto& v : out) v = kgd::cd(dist(rng), dist(rng));
    return out;
}

template <typename Fn>
double time_ms(Fn&& fn, int reps) {
    using clock = std::chrono::steady_clock;
    fn();  // warm up
    auto t0 = clock::now();
    for (int i = 0; i < reps; ++i) fn();
    auto t1 = clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

void report(const char* name, double serial_ms, double parallel_ms) {
    std::printf("%-34s %12.4f %12.4f %8.2fx\n", name, serial_ms, parallel_ms,
                serial_ms / parallel_ms);
}

void bench_transform(int dim, int n, int reps, bool include_naive) {
    kgd::TorusGrid grid = kgd::make_grid(dim, n);
    std::vector<kgd::cd> input = random_data(grid.total_points(), 1234u + n);

    auto run_fft = [&] {
        std::vector<kgd::cd> data = input;
        kgd::dft_forward(data, grid);
        g_sink += data[1].real();
    };

    char label[64];
    if (include_naive) {
        double naive_ms = time_ms(
            [&] {
                std::vector<kgd::cd> out = kgd::ref::naive_forward(input, grid);
                g_sink += out[1].real();
            },
            1);
        kgd::detail::set_parallel(false);
        double fft_ms = time_ms(run_fft, reps);
        kgd::detail::set_parallel(true);
        std::snprintf(label, sizeof(label), "naive dft vs fft, %dd n=%d", dim, n);
        report(label, naive_ms, fft_ms);
    }

    kgd::detail::set_parallel(false);
    double serial_ms = time_ms(run_fft, reps);
    kgd::detail::set_parallel(true);
    double parallel_ms = time_ms(run_fft, reps);
    std::snprintf(label, sizeof(label), "fft serial vs parallel, %dd n=%d", dim, n);
    report(label, serial_ms, parallel_ms);
}

void bench_nonlinearity(int n, int reps) {
    kgd::TorusGrid grid = kgd::make_grid(2, n);
    kgd::Field f = kgd::Field::from_values(grid, random_data(grid.total_points(), 77u));
    auto body = [&] {
        kgd::Field g = kgd::nonlinearity(f, 2.0);
        g_sink += g.values()[1].real();
    };
    kgd::detail::set_parallel(false);
    double serial_ms = time_ms(body, reps);
    kgd::detail::set_parallel(true);
    double parallel_ms = time_ms(body, reps);
    char label[64];
    std::snprintf(label, sizeof(label), "nonlinearity p=2, 2d n=%d", n);
    report(label, serial_ms, parallel_ms);
}

void bench_step(int n, int reps) {
    kgd::TorusGrid grid = kgd::make_grid(2, n);
    kgd::Field psi0 = kgd::Field::from_modes(
        grid, {{{0, 0}, 1.0}, {{1, 0}, 0.25}, {{0, 1}, 0.25}, {{3, -2}, 0.05}});
    kgd::Field v0 = kgd::Field::from_modes(grid, {});
    kgd::SimParams params;
    kgd::StatePair start = kgd::startup_step(psi0, v0, params);

    auto body = [&] {
        kgd::StatePair next = kgd::step(start, params);
        g_sink += next.curr.coefficients()[1].real();
    };
    kgd::detail::set_parallel(false);
    double serial_ms = time_ms(body, reps);
    kgd::detail::set_parallel(true);
    double parallel_ms = time_ms(body, reps);
    char label[64];
    std::snprintf(label, sizeof(label), "scheme step, 2d n=%d", n);
    report(label, serial_ms, parallel_ms);
}

}  // namespace

int main() {
    std::printf("%-34s %12s %12s %8s\n", "kernel", "serial ms", "parallel ms", "speedup");
    bench_transform(1, 1024, 200, true);
    bench_transform(1, 65536, 20, false);
    bench_transform(2, 32, 200, true);
    bench_transform(2, 256, 10, false);
    bench_nonlinearity(256, 10);
    bench_step(256, 10);
    std::printf("(checksum %g)\n", g_sink);
    return 0;
}
