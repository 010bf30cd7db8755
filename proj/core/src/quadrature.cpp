#include "dms/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dms {

std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n) {
    if (n < 1 || n > 256) throw std::invalid_argument("gauss_legendre: order out of range");
    std::vector<double> x(n), w(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Tricomi initial guess for the i-th root of P_n, then Newton.
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int k = 0; k < n; ++k) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * k + 1.0) * z * p1 - k * p2) / (k + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        w[n - 1 - i] = w[i];
    }
    if (n % 2 == 1) x[n / 2] = 0.0;
    return {x, w};
}

QuadratureRule::QuadratureRule(const DiffractionProfile& profile, int order_per_segment)
    : order_(order_per_segment) {
    auto [x, w] = gauss_legendre(order_per_segment);
    const auto& bp = profile.breakpoints();
    for (std::size_t s = 0; s + 1 < bp.size(); ++s) {
        const double a = bp[s], b = bp[s + 1];
        const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
        for (int i = 0; i < order_per_segment; ++i)
            nodes_.push_back({mid + half * x[i], half * w[i]});
    }
}

}  // namespace dms
