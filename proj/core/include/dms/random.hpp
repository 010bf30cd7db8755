#pragma once

#include <cstdint>
#include <random>

#include "dms/lattice.hpp"

namespace dms {

// Seeded generator for verification inputs. mt19937_64 plus a shift-based
// uniform keeps streams identical across platforms and runs.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }
    int uniform_int(int a, int b) {
        return a + static_cast<int>(gen_() % static_cast<std::uint64_t>(b - a + 1));
    }
    Complex complex_in_disc() { return {uniform(-1.0, 1.0), uniform(-1.0, 1.0)}; }

private:
    std::mt19937_64 gen_;
};

// Dense random values on |x|_inf <= support_radius, zero outside.
GridFunction random_field(Rng& rng, int dim, int radius, int support_radius);

// Random values on an axis-aligned window [lo, hi] per coordinate.
GridFunction random_window_field(Rng& rng, int dim, int radius,
                                 const Point& lo, const Point& hi);

}  // namespace dms
