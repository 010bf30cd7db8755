#include "dms/propagator.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fft.hpp"

namespace dms {

namespace {

constexpr double kSeriesFloor = 1e-16;

Complex unit_i_power(int n) {
    switch (((n % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

// J_n(x) for integer n of either sign and real x of either sign.
double bessel_j_int(int n, double x) {
    double sign = 1.0;
    if (n < 0) {
        n = -n;
        if (n % 2 == 1) sign = -sign;
    }
    if (x < 0.0) {
        x = -x;
        if (n % 2 == 1) sign = -sign;
    }
    if (x == 0.0) return n == 0 ? sign : 0.0;
    return sign * std::cyl_bessel_j(static_cast<double>(n), x);
}

}  // namespace

PropagatorMethod propagator_method_from_string(const std::string& s) {
    if (s == "taylor") return PropagatorMethod::taylor;
    if (s == "spectral") return PropagatorMethod::spectral;
    if (s == "bessel") return PropagatorMethod::bessel;
    throw std::invalid_argument("unknown propagator method: " + s);
}

std::string to_string(PropagatorMethod m) {
    switch (m) {
        case PropagatorMethod::taylor: return "taylor";
        case PropagatorMethod::spectral: return "spectral";
        default: return "bessel";
    }
}

int factorial_tail_cutoff(double c, double tol) {
    const double log_tol = std::log(tol);
    for (int g = 1; g <= 2000; ++g) {
        double log_tail = c + g * std::log(c) - std::lgamma(g + 1.0);
        if (log_tail < log_tol) return g;
    }
    throw std::runtime_error("factorial_tail_cutoff: no cutoff below 2000 terms");
}

PropagatorEngine::PropagatorEngine(int dim, int radius, PropagatorSettings settings)
    : dim_(dim), radius_(radius), settings_(settings) {
    if (dim < 1 || dim > 3) throw std::invalid_argument("PropagatorEngine: dim must be 1..3");
    if (radius < 1) throw std::invalid_argument("PropagatorEngine: radius must be positive");
    if (settings_.method == PropagatorMethod::bessel && dim != 1)
        throw std::invalid_argument("PropagatorEngine: bessel method is one-dimensional");
    if (!(settings_.max_theta > 0.0))
        throw std::invalid_argument("PropagatorEngine: max_theta must be positive");

    guard_ = factorial_tail_cutoff(4.0 * dim_ * settings_.max_theta, settings_.tolerance);
    ring_ = detail::next_smooth(2 * radius_ + 1 + guard_);
}

void PropagatorEngine::check_theta(double theta) const {
    if (!(std::abs(theta) <= settings_.max_theta))
        throw std::domain_error("PropagatorEngine: |theta| exceeds validated range");
}

int PropagatorEngine::taylor_terms(double theta) const {
    double c = 4.0 * dim_ * std::abs(theta);
    if (c == 0.0) return 0;
    return factorial_tail_cutoff(c, kSeriesFloor);
}

std::vector<Complex> PropagatorEngine::taylor_row(double theta, int max_offset) const {
    // Series sum_m (i*theta)^m/m! L^m delta_0 on an array wide enough that
    // mass never reaches the edge: truncation is exact, not approximate.
    const double c = 4.0 * std::abs(theta);
    const int terms = c == 0.0 ? 0 : factorial_tail_cutoff(c, kSeriesFloor);
    const int w = max_offset + terms + 1;
    std::vector<double> cur(2 * w + 1, 0.0), next(2 * w + 1, 0.0);
    cur[w] = 1.0;

    std::vector<Complex> acc(2 * w + 1, Complex(0.0, 0.0));
    Complex coef(1.0, 0.0);
    acc[w] = coef;
    const Complex itheta(0.0, theta);
    for (int m = 1; m <= terms; ++m) {
        for (int i = 0; i <= 2 * w; ++i) {
            double left = i > 0 ? cur[i - 1] : 0.0;
            double right = i < 2 * w ? cur[i + 1] : 0.0;
            next[i] = left + right - 2.0 * cur[i];
        }
        cur.swap(next);
        coef *= itheta / static_cast<double>(m);
        for (int i = 0; i <= 2 * w; ++i) acc[i] += coef * cur[i];
    }

    std::vector<Complex> row(2 * max_offset + 1);
    for (int n = -max_offset; n <= max_offset; ++n) row[n + max_offset] = acc[n + w];
    return row;
}

std::vector<Complex> PropagatorEngine::bessel_row(double theta, int max_offset) const {
    // <n|e^{i theta L}|0> = e^{-2 i theta} i^n J_n(2 theta) in one dimension.
    const Complex phase = std::exp(Complex(0.0, -2.0 * theta));
    std::vector<Complex> row(2 * max_offset + 1);
    for (int n = -max_offset; n <= max_offset; ++n)
        row[n + max_offset] = phase * unit_i_power(n) * bessel_j_int(n, 2.0 * theta);
    return row;
}

std::vector<Complex> PropagatorEngine::spectral_row(double theta, int max_offset) const {
    const int m = detail::next_smooth(2 * max_offset + 1 + guard_);
    std::vector<Complex> mult(m), full(m);
    for (int k = 0; k < m; ++k) {
        double omega = 2.0 * std::numbers::pi * k / m;
        mult[k] = std::exp(Complex(0.0, theta * (2.0 * std::cos(omega) - 2.0)));
    }
    detail::dft({m}, +1, mult.data(), full.data());
    std::vector<Complex> row(2 * max_offset + 1);
    for (int n = -max_offset; n <= max_offset; ++n)
        row[n + max_offset] = full[((n % m) + m) % m] / static_cast<double>(m);
    return row;
}

std::vector<Complex> PropagatorEngine::kernel_row(double theta, int max_offset) const {
    check_theta(theta);
    if (theta == 0.0) {
        std::vector<Complex> row(2 * max_offset + 1, Complex(0.0, 0.0));
        row[max_offset] = Complex(1.0, 0.0);
        return row;
    }
    switch (settings_.method) {
        case PropagatorMethod::taylor: return taylor_row(theta, max_offset);
        case PropagatorMethod::bessel: return bessel_row(theta, max_offset);
        default: return spectral_row(theta, max_offset);
    }
}

Complex PropagatorEngine::kernel(double theta, const Point& x, const Point& y) const {
    int max_offset = 0;
    for (int j = 0; j < dim_; ++j)
        max_offset = std::max(max_offset, std::abs(x[j] - y[j]));
    std::vector<Complex> row = kernel_row(theta, max_offset);
    Complex v(1.0, 0.0);
    for (int j = 0; j < dim_; ++j) v *= row[x[j] - y[j] + max_offset];
    return v;
}

GridFunction PropagatorEngine::evolve(const GridFunction& f, double theta) const {
    if (f.dim() != dim_ || f.radius() != radius_)
        throw std::invalid_argument("PropagatorEngine::evolve: field not on engine box");
    if (theta == 0.0) return f;
    check_theta(theta);
    switch (settings_.method) {
        case PropagatorMethod::taylor: return evolve_taylor(f, theta);
        case PropagatorMethod::bessel: return evolve_bessel(f, theta);
        default: return evolve_spectral(f, theta);
    }
}

GridFunction PropagatorEngine::evolve_managed(const DiffractionProfile& p,
                                              const GridFunction& f, double t) const {
    return evolve(f, p.integral(t));
}

GridFunction PropagatorEngine::evolve_spectral(const GridFunction& f, double theta) const {
    const int m = ring_;
    std::vector<int> dims(dim_, m);
    std::size_t total = 1;
    for (int j = 0; j < dim_; ++j) total *= static_cast<std::size_t>(m);

    std::vector<Complex> grid(total, Complex(0.0, 0.0)), freq(total);

    const int side = f.side();
    const std::size_t n = f.size();
    auto ring_index = [&](const Point& x) {
        std::size_t idx = 0;
        for (int j = 0; j < dim_; ++j)
            idx = idx * m + static_cast<std::size_t>(((x[j] % m) + m) % m);
        return idx;
    };
    (void)side;
    for (std::size_t i = 0; i < n; ++i) grid[ring_index(f.point(i))] = f[i];

    detail::dft(dims, -1, grid.data(), freq.data());

    // Multiplier e^{i theta symbol(k)}, symbol(k) = sum_j (2 cos(2 pi k_j / m) - 2).
    std::vector<double> axis_symbol(m);
    for (int k = 0; k < m; ++k)
        axis_symbol[k] = 2.0 * std::cos(2.0 * std::numbers::pi * k / m) - 2.0;
    const double norm = 1.0 / static_cast<double>(total);
    for (std::size_t i = 0; i < total; ++i) {
        std::size_t rest = i;
        double symbol = 0.0;
        for (int j = dim_ - 1; j >= 0; --j) {
            symbol += axis_symbol[rest % m];
            rest /= m;
        }
        freq[i] *= std::exp(Complex(0.0, theta * symbol)) * norm;
    }

    detail::dft(dims, +1, freq.data(), grid.data());

    GridFunction out(dim_, radius_);
    for (std::size_t i = 0; i < n; ++i) out[i] = grid[ring_index(out.point(i))];
    return out;
}

GridFunction PropagatorEngine::evolve_taylor(const GridFunction& f, double theta) const {
    const int terms = taylor_terms(theta);
    const int rad = radius_ + terms + 1;  // mass cannot reach the edge
    const int side = 2 * rad + 1;
    std::size_t total = 1;
    for (int j = 0; j < dim_; ++j) total *= static_cast<std::size_t>(side);

    std::vector<Complex> cur(total, Complex(0.0, 0.0));
    std::vector<Complex> next(total), acc(total);

    std::vector<std::size_t> stride(dim_);
    stride[dim_ - 1] = 1;
    for (int j = dim_ - 2; j >= 0; --j) stride[j] = stride[j + 1] * side;

    auto big_index = [&](const Point& x) {
        std::size_t idx = 0;
        for (int j = 0; j < dim_; ++j)
            idx = idx * side + static_cast<std::size_t>(x[j] + rad);
        return idx;
    };

    const std::size_t n = f.size();
    for (std::size_t i = 0; i < n; ++i) cur[big_index(f.point(i))] = f[i];
    acc = cur;

    const Complex itheta(0.0, theta);
    const double diag = -2.0 * dim_;
    Complex coef(1.0, 0.0);
    for (int m = 1; m <= terms; ++m) {
        for (std::size_t i = 0; i < total; ++i) {
            Complex s = diag * cur[i];
            std::size_t rest = i;
            for (int j = dim_ - 1; j >= 0; --j) {
                int c = static_cast<int>(rest % side);
                rest /= side;
                if (c > 0) s += cur[i - stride[j]];
                if (c < side - 1) s += cur[i + stride[j]];
            }
            next[i] = s;
        }
        cur.swap(next);
        coef *= itheta / static_cast<double>(m);
        for (std::size_t i = 0; i < total; ++i) acc[i] += coef * cur[i];
    }

    GridFunction out(dim_, radius_);
    for (std::size_t i = 0; i < n; ++i) out[i] = acc[big_index(out.point(i))];
    return out;
}

GridFunction PropagatorEngine::evolve_bessel(const GridFunction& f, double theta) const {
    const double c = 4.0 * std::abs(theta);
    const int w = factorial_tail_cutoff(c, kSeriesFloor);
    std::vector<Complex> row = bessel_row(theta, w);
    GridFunction out(dim_, radius_);
    for (int x = -radius_; x <= radius_; ++x) {
        Complex acc(0.0, 0.0);
        for (int j = -w; j <= w; ++j) {
            int src = x - j;
            if (src < -radius_ || src > radius_) continue;
            acc += row[j + w] * f[static_cast<std::size_t>(src + radius_)];
        }
        out[static_cast<std::size_t>(x + radius_)] = acc;
    }
    return out;
}

}  // namespace dms
