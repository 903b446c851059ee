#include "kgd/field.hpp"

#include <cmath>
#include <stdexcept>

#include "kgd/fft.hpp"

namespace kgd {

double pairwise_sum(const double* x, std::size_t n) {
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += x[i];
        return s;
    }
    std::size_t h = n / 2;
    return pairwise_sum(x, h) + pairwise_sum(x + h, n - h);
}

Field Field::zero(const TorusGrid& g) {
    Field f;
    f.grid_ = g;
    f.values_.assign(g.total_points(), cd(0.0));
    f.coeffs_.assign(g.total_points(), cd(0.0));
    f.has_phys_ = f.has_spec_ = true;
    return f;
}

Field Field::from_values(const TorusGrid& g, std::vector<cd> values) {
    if ((int)values.size() != g.total_points())
        throw std::invalid_argument("Field::from_values: size mismatch");
    Field f;
    f.grid_ = g;
    f.values_ = std::move(values);
    f.has_phys_ = true;
    return f;
}

Field Field::from_coefficients(const TorusGrid& g, std::vector<cd> coeffs) {
    if ((int)coeffs.size() != g.total_points())
        throw std::invalid_argument("Field::from_coefficients: size mismatch");
    Field f;
    f.grid_ = g;
    f.coeffs_ = std::move(coeffs);
    f.has_spec_ = true;
    return f;
}

Field Field::from_modes(const TorusGrid& g, const std::vector<ModeAmplitude>& modes) {
    std::vector<cd> coeffs(g.total_points(), cd(0.0));
    for (const auto& m : modes) {
        for (int axis = 0; axis < g.dim; ++axis)
            if (m.k[axis] < -g.n / 2 || m.k[axis] >= g.n / 2)
                throw std::invalid_argument("Field::from_modes: wavevector not on grid");
        if (g.dim == 1 && m.k[1] != 0)
            throw std::invalid_argument("Field::from_modes: second component in 1-d");
        int i0 = m.k[0] >= 0 ? m.k[0] : m.k[0] + g.n;
        int idx = i0;
        if (g.dim == 2) {
            int i1 = m.k[1] >= 0 ? m.k[1] : m.k[1] + g.n;
            idx = i0 * g.n + i1;
        }
        coeffs[idx] += m.amplitude;
    }
    return from_coefficients(g, std::move(coeffs));
}

Field Field::sample(const TorusGrid& g, const std::function<cd(double, double)>& fn) {
    std::vector<cd> v(g.total_points());
    for (int i = 0; i < g.total_points(); ++i) {
        auto x = g.point(i);
        v[i] = fn(x[0], x[1]);
    }
    return from_values(g, std::move(v));
}

const std::vector<cd>& Field::values() const {
    if (!has_phys_) throw std::logic_error("Field: physical view not current");
    return values_;
}

const std::vector<cd>& Field::coefficients() const {
    if (!has_spec_) throw std::logic_error("Field: spectral view not current");
    return coeffs_;
}

Field forward_transform(const Field& f) {
    if (!f.has_phys_) throw std::logic_error("forward_transform: physical view not current");
    Field out = f;
    out.coeffs_ = f.values_;
    dft_forward(out.coeffs_, out.grid_);
    out.has_spec_ = true;
    return out;
}

Field inverse_transform(const Field& f) {
    if (!f.has_spec_) throw std::logic_error("inverse_transform: spectral view not current");
    Field out = f;
    out.values_ = f.coeffs_;
    dft_inverse(out.values_, out.grid_);
    out.has_phys_ = true;
    return out;
}

Field with_physical(const Field& f) { return f.has_physical() ? f : inverse_transform(f); }
Field with_spectral(const Field& f) { return f.has_spectral() ? f : forward_transform(f); }

Field apply_multiplier(const Field& f, const std::function<cd(const std::array<int, 2>&)>& m) {
    Field s = with_spectral(f);
    const auto& g = s.grid();
    std::vector<cd> c = s.coefficients();
    const int N = g.total_points();
    bool par = detail::parallel_enabled();
#pragma omp parallel for schedule(static) if (par && N >= 4096)
    for (int i = 0; i < N; ++i) c[i] *= m(g.wavevector(i));
    return Field::from_coefficients(g, std::move(c));
}

Field linear_combination(cd a, const Field& f, cd b, const Field& g) {
    if (!(f.grid() == g.grid()))
        throw std::invalid_argument("linear_combination: grid mismatch");
    const int N = f.grid().total_points();
    Field out;
    out.grid_ = f.grid();
    bool both_spec = f.has_spec_ && g.has_spec_;
    bool both_phys = f.has_phys_ && g.has_phys_;
    if (!both_spec && !both_phys) {
        // no shared view; fall back to spectral
        return linear_combination(a, with_spectral(f), b, with_spectral(g));
    }
    if (both_spec) {
        out.coeffs_.resize(N);
        for (int i = 0; i < N; ++i) out.coeffs_[i] = a * f.coeffs_[i] + b * g.coeffs_[i];
        out.has_spec_ = true;
    }
    if (both_phys) {
        out.values_.resize(N);
        for (int i = 0; i < N; ++i) out.values_[i] = a * f.values_[i] + b * g.values_[i];
        out.has_phys_ = true;
    }
    return out;
}

cd mean(const Field& f) {
    if (f.has_spectral()) return f.coefficients()[0];
    const auto& v = f.values();
    const std::size_t N = v.size();
    std::vector<double> re(N), im(N);
    for (std::size_t i = 0; i < N; ++i) {
        re[i] = v[i].real();
        im[i] = v[i].imag();
    }
    return cd(pairwise_sum(re.data(), N), pairwise_sum(im.data(), N)) / double(N);
}

cd integrate(const Field& f) {
    Field p = with_physical(f);
    const auto& v = p.values();
    const std::size_t N = v.size();
    std::vector<double> re(N), im(N);
    for (std::size_t i = 0; i < N; ++i) {
        re[i] = v[i].real();
        im[i] = v[i].imag();
    }
    return f.grid().cell_measure *
           cd(pairwise_sum(re.data(), N), pairwise_sum(im.data(), N));
}

double sobolev_norm(const Field& f, double s) {
    if (s < 0) throw std::invalid_argument("sobolev_norm: s must be >= 0");
    Field sp = with_spectral(f);
    const auto& c = sp.coefficients();
    const auto& g = sp.grid();
    const std::size_t N = c.size();
    std::vector<double> terms(N);
    for (std::size_t i = 0; i < N; ++i)
        terms[i] = std::pow(1.0 + g.k_squared((int)i), s) * std::norm(c[i]);
    return std::sqrt(g.volume() * pairwise_sum(terms.data(), N));
}

double lp_norm(const Field& f, double q) {
    if (q < 1) throw std::invalid_argument("lp_norm: q must be >= 1");
    Field p = with_physical(f);
    const auto& v = p.values();
    const std::size_t N = v.size();
    std::vector<double> terms(N);
    for (std::size_t i = 0; i < N; ++i) terms[i] = std::pow(std::abs(v[i]), q);
    return std::pow(f.grid().cell_measure * pairwise_sum(terms.data(), N), 1.0 / q);
}

}  // namespace kgd
