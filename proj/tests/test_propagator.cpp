#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "dms/propagator.hpp"
#include "dms/random.hpp"

using namespace dms;

namespace {

PropagatorEngine make_engine(int dim, int radius, PropagatorMethod m,
                             double max_theta = 2.0) {
    PropagatorSettings s;
    s.method = m;
    s.max_theta = max_theta;
    return PropagatorEngine(dim, radius, s);
}

}  // namespace

TEST_CASE("kernel at t = 0 is the identity") {
    for (auto m : {PropagatorMethod::taylor, PropagatorMethod::spectral,
                   PropagatorMethod::bessel}) {
        PropagatorEngine e = make_engine(1, 16, m);
        CHECK(e.kernel(0.0, {0, 0, 0}, {0, 0, 0}) == Complex(1.0, 0.0));
        CHECK(e.kernel(0.0, {3, 0, 0}, {0, 0, 0}) == Complex(0.0, 0.0));
    }
}

TEST_CASE("diagonal kernel matches e^{-2it} J_0(2t)") {
    PropagatorEngine e = make_engine(1, 8, PropagatorMethod::taylor);
    for (double t : {0.1, 0.5, 1.0}) {
        Complex expected = std::exp(Complex(0.0, -2.0 * t)) * std::cyl_bessel_j(0.0, 2.0 * t);
        Complex got = e.kernel(t, {0, 0, 0}, {0, 0, 0});
        CHECK(std::abs(got - expected) < 1e-12);
    }
}

TEST_CASE("three kernel algorithms agree pointwise") {
    PropagatorEngine taylor = make_engine(1, 8, PropagatorMethod::taylor);
    PropagatorEngine spectral = make_engine(1, 8, PropagatorMethod::spectral);
    PropagatorEngine bessel = make_engine(1, 8, PropagatorMethod::bessel);
    for (double t : {0.1, 0.5, 1.0}) {
        auto rt = taylor.kernel_row(t, 30);
        auto rs = spectral.kernel_row(t, 30);
        auto rb = bessel.kernel_row(t, 30);
        for (int i = 0; i < 61; ++i) {
            CHECK(std::abs(rt[i] - rs[i]) < 1e-10);
            CHECK(std::abs(rt[i] - rb[i]) < 1e-10);
        }
    }
}

TEST_CASE("kernel depends on the offset only") {
    PropagatorEngine e = make_engine(2, 6, PropagatorMethod::spectral);
    Complex a = e.kernel(0.4, {2, 1, 0}, {0, 0, 0});
    Complex b = e.kernel(0.4, {4, 2, 0}, {2, 1, 0});
    CHECK(std::abs(a - b) < 1e-13);
}

TEST_CASE("evolution is unitary on interior fields") {
    Rng rng(17);
    for (auto m : {PropagatorMethod::taylor, PropagatorMethod::spectral,
                   PropagatorMethod::bessel}) {
        PropagatorEngine e = make_engine(1, 32, m, 1.0);
        for (int k = 0; k < 20; ++k) {
            GridFunction f = random_field(rng, 1, 32, 12);
            double theta = rng.uniform(-0.5, 0.5);
            GridFunction g = e.evolve(f, theta);
            CHECK(std::abs(l2_norm(g) - l2_norm(f)) < 1e-12 * std::max(1.0, l2_norm(f)));
        }
    }
}

TEST_CASE("evolve with theta = 0 returns the field unchanged") {
    Rng rng(23);
    GridFunction f = random_field(rng, 1, 16, 10);
    for (auto m : {PropagatorMethod::taylor, PropagatorMethod::spectral,
                   PropagatorMethod::bessel}) {
        PropagatorEngine e = make_engine(1, 16, m);
        CHECK(l2_distance(e.evolve(f, 0.0), f) == 0.0);
    }
}

TEST_CASE("group law") {
    Rng rng(29);
    PropagatorEngine e = make_engine(1, 32, PropagatorMethod::spectral, 2.0);
    for (int k = 0; k < 10; ++k) {
        GridFunction f = random_field(rng, 1, 32, 10);
        double t1 = rng.uniform(-0.5, 0.5), t2 = rng.uniform(-0.5, 0.5);
        GridFunction a = e.evolve(e.evolve(f, t1), t2);
        GridFunction b = e.evolve(f, t1 + t2);
        CHECK(l2_distance(a, b) < 1e-10);
    }
}

TEST_CASE("translation covariance") {
    Rng rng(31);
    PropagatorEngine e = make_engine(1, 32, PropagatorMethod::spectral, 1.0);
    for (int k = 0; k < 10; ++k) {
        GridFunction f = random_field(rng, 1, 32, 8);
        Point xi{rng.uniform_int(-4, 4), 0, 0};
        GridFunction a = e.evolve(shift(f, xi), 0.37);
        GridFunction b = shift_truncating(e.evolve(f, 0.37), xi);
        // the shifted evolution differs only at the factorial-tail level
        CHECK(l2_distance(a, b) < 1e-12);
    }
}

TEST_CASE("methods cross-validate on evolve") {
    PropagatorEngine taylor = make_engine(1, 24, PropagatorMethod::taylor);
    PropagatorEngine spectral = make_engine(1, 24, PropagatorMethod::spectral);
    PropagatorEngine bessel = make_engine(1, 24, PropagatorMethod::bessel);
    GridFunction f = GridFunction::delta(1, 24);
    for (double t : {0.1, 0.5, 1.0}) {
        GridFunction a = taylor.evolve(f, t);
        GridFunction b = spectral.evolve(f, t);
        GridFunction c = bessel.evolve(f, t);
        CHECK(l2_distance(a, b) < 1e-10);
        CHECK(l2_distance(a, c) < 1e-10);
    }
}

TEST_CASE("two-dimensional kernel factorizes and evolves consistently") {
    PropagatorEngine taylor = make_engine(2, 10, PropagatorMethod::taylor, 1.0);
    PropagatorEngine spectral = make_engine(2, 10, PropagatorMethod::spectral, 1.0);
    GridFunction f = GridFunction::delta(2, 10);
    for (double t : {0.3, 0.7}) {
        GridFunction a = taylor.evolve(f, t);
        GridFunction b = spectral.evolve(f, t);
        CHECK(l2_distance(a, b) < 1e-10);
        // evolve of a delta reproduces the kernel
        Complex k = taylor.kernel(t, {2, -1, 0}, {0, 0, 0});
        CHECK(std::abs(a.at({2, -1, 0}) - k) < 1e-12);
    }
}

TEST_CASE("three-dimensional evolution stays consistent") {
    PropagatorEngine taylor = make_engine(3, 5, PropagatorMethod::taylor, 0.5);
    PropagatorEngine spectral = make_engine(3, 5, PropagatorMethod::spectral, 0.5);
    Rng rng(41);
    GridFunction f = random_field(rng, 3, 5, 2);
    GridFunction a = taylor.evolve(f, 0.3);
    GridFunction b = spectral.evolve(f, 0.3);
    CHECK(l2_distance(a, b) < 1e-10);
    CHECK(std::abs(l2_norm(b) - l2_norm(f)) < 1e-12);

    GridFunction kd = spectral.evolve(GridFunction::delta(3, 5), 0.3);
    Complex k = spectral.kernel(0.3, {1, -1, 2}, {0, 0, 0});
    CHECK(std::abs(kd.at({1, -1, 2}) - k) < 1e-12);
}

TEST_CASE("managed evolution follows the profile integral") {
    DiffractionProfile p = DiffractionProfile::two_step();
    PropagatorEngine e = make_engine(1, 24, PropagatorMethod::spectral, 1.0);
    Rng rng(37);
    GridFunction f = random_field(rng, 1, 24, 8);

    CHECK(l2_distance(e.evolve_managed(p, f, 0.25), e.evolve(f, 0.25)) == 0.0);
    CHECK(l2_distance(e.evolve_managed(p, f, 1.0), f) < 1e-12);  // D(1) = 0

    DiffractionProfile z = DiffractionProfile::zero();
    for (double t : {0.0, 0.4, 1.0}) CHECK(l2_distance(e.evolve_managed(z, f, t), f) == 0.0);
}

TEST_CASE("kernel bound of the factorial tail holds on a grid") {
    PropagatorEngine e = make_engine(1, 8, PropagatorMethod::taylor, 1.0);
    const double tau = 0.5;
    for (int i = 0; i <= 16; ++i) {
        double t = -tau + 2 * tau * i / 16.0;
        auto row = e.kernel_row(t, 40);
        for (int n = -40; n <= 40; ++n) {
            double bound = std::min(
                1.0, std::exp(4.0 * tau + std::abs(n) * std::log(4.0 * tau) -
                              std::lgamma(std::abs(n) + 1.0)));
            CHECK(std::abs(row[n + 40]) <= bound);
        }
    }
}

TEST_CASE("range validation") {
    PropagatorEngine e = make_engine(1, 8, PropagatorMethod::spectral, 1.0);
    GridFunction f = GridFunction::delta(1, 8);
    CHECK_THROWS_AS(e.evolve(f, 1.5), std::domain_error);
    CHECK_THROWS_AS(make_engine(2, 8, PropagatorMethod::bessel), std::invalid_argument);
}
