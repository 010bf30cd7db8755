#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "dms/dynamics.hpp"
#include "dms/random.hpp"
#include "dms/solver.hpp"

using namespace dms;

namespace {

struct DynLab {
    DiffractionProfile profile = DiffractionProfile::two_step();
    PropagatorEngine engine;
    QuadratureRule rule;

    explicit DynLab(int radius = 48)
        : engine(1, radius, PropagatorSettings{PropagatorMethod::spectral, 1.5, 1e-14}),
          rule(profile) {}
};

}  // namespace

TEST_CASE("linear flow returns after one period") {
    DynLab lab;
    GridFunction u0 = gaussian_seed(1, 48, 4.0, 1.0);
    EvolutionConfig cfg;
    cfg.eps = 0.0;
    cfg.t_end = 1.0;
    cfg.record_stride = 16;
    Trajectory t = integrate_full(u0, cfg, lab.profile, lab.engine);
    CHECK(l2_distance(t.fields.back(), u0) < 1e-10);
    for (double v : t.l2_trace) CHECK(std::abs(v - 1.0) < 1e-12);
}

TEST_CASE("single-site cubic phase rotation is exact") {
    DiffractionProfile z = DiffractionProfile::zero();
    PropagatorEngine engine(1, 8, {});
    GridFunction u0 = GridFunction::delta(1, 8);
    EvolutionConfig cfg;
    cfg.eps = 0.05;
    cfg.t_end = 2.0;
    Trajectory t = integrate_full(u0, cfg, z, engine);
    Complex expected = std::exp(Complex(0.0, cfg.eps * cfg.t_end));
    CHECK(std::abs(t.fields.back().at({0, 0, 0}) - expected) < 1e-12);
}

TEST_CASE("full flow conserves mass") {
    DynLab lab;
    GridFunction u0 = gaussian_seed(1, 48, 4.0, 1.0);
    EvolutionConfig cfg;
    cfg.eps = 0.05;
    cfg.t_end = 4.0;
    cfg.record_stride = 8;
    Trajectory t = integrate_full(u0, cfg, lab.profile, lab.engine);
    for (double v : t.l2_trace) CHECK(std::abs(v - 1.0) <= 1e-11);
}

TEST_CASE("averaged flow: eps = 0 freezes the state") {
    DynLab lab;
    GridFunction v0 = gaussian_seed(1, 48, 4.0, 1.0);
    EvolutionConfig cfg;
    cfg.eps = 0.0;
    cfg.t_end = 1.0;
    Trajectory t = integrate_averaged(v0, cfg, lab.profile, lab.engine, lab.rule);
    CHECK(l2_distance(t.fields.back(), v0) == 0.0);
}

TEST_CASE("averaged flow conserves mass and energy") {
    DynLab lab;
    GridFunction v0 = gaussian_seed(1, 48, 4.0, 1.0);
    EvolutionConfig cfg;
    cfg.eps = 0.05;
    cfg.t_end = 1.0 / cfg.eps;  // one slow unit
    cfg.record_stride = 32;
    Trajectory t = integrate_averaged(v0, cfg, lab.profile, lab.engine, lab.rule);
    for (double v : t.l2_trace) CHECK(std::abs(v - t.l2_trace[0]) <= 1e-8);
    for (double h : t.hamiltonian_trace)
        CHECK(std::abs(h - t.hamiltonian_trace[0]) <= 1e-6);
}

TEST_CASE("gauge covariance of both flows") {
    DynLab lab;
    GridFunction u0 = gaussian_seed(1, 48, 4.0, 1.0);
    EvolutionConfig cfg;
    cfg.eps = 0.05;
    cfg.t_end = 0.5;
    const Complex phase(0.0, 1.0);  // exact quarter turn

    Trajectory base = integrate_full(u0, cfg, lab.profile, lab.engine);
    Trajectory rot = integrate_full(phase * u0, cfg, lab.profile, lab.engine);
    CHECK(l2_distance(rot.fields.back(), phase * base.fields.back()) < 1e-13);

    Trajectory abase = integrate_averaged(u0, cfg, lab.profile, lab.engine, lab.rule);
    Trajectory arot = integrate_averaged(phase * u0, cfg, lab.profile, lab.engine, lab.rule);
    CHECK(l2_distance(arot.fields.back(), phase * abase.fields.back()) < 1e-13);
}

TEST_CASE("strang steps converge at second order") {
    DynLab lab;
    GridFunction u0 = gaussian_seed(1, 48, 4.0, 1.0);
    EvolutionConfig cfg;
    cfg.eps = 0.1;
    cfg.t_end = 2.0;

    cfg.step = 1.0 / 16.0;
    GridFunction a = integrate_full(u0, cfg, lab.profile, lab.engine).fields.back();
    cfg.step = 1.0 / 32.0;
    GridFunction b = integrate_full(u0, cfg, lab.profile, lab.engine).fields.back();
    cfg.step = 1.0 / 64.0;
    GridFunction c = integrate_full(u0, cfg, lab.profile, lab.engine).fields.back();

    double e1 = l2_distance(a, b);
    double e2 = l2_distance(b, c);
    double ratio = e1 / e2;
    CHECK(ratio >= 3.0);
    CHECK(ratio <= 5.0);
}

TEST_CASE("soliton initial data stays on its phase orbit under the averaged flow") {
    DiffractionProfile p = DiffractionProfile::two_step();
    PropagatorEngine engine(1, 48, PropagatorSettings{PropagatorMethod::spectral, 1.0, 1e-14});
    QuadratureRule rule(p);
    SolverConfig scfg;
    scfg.method = SolveMethod::fixed_point;
    SolitonResult sol = maximize(scfg, p, engine, rule);

    EvolutionConfig cfg;
    cfg.eps = 0.05;
    cfg.t_end = 1.0 / cfg.eps;
    cfg.record_stride = 64;
    Trajectory t = integrate_averaged(sol.field, cfg, p, engine, rule);
    Complex phase = std::exp(Complex(0.0, cfg.eps * sol.omega * cfg.t_end));
    CHECK(l2_distance(t.fields.back(), phase * sol.field) <= 1e-6);
}

TEST_CASE("comparison run: eps = 0 gives zero deviation") {
    DynLab lab;
    GridFunction u0 = gaussian_seed(1, 48, 4.0, 1.0);
    AveragingRun run =
        compare_averaging(u0, 0.0, 1.0, lab.profile, lab.engine, lab.rule, 0.0, 1.0 / 32.0, 4);
    CHECK(run.max_deviation < 1e-10);
}

TEST_CASE("step validation") {
    DynLab lab;
    GridFunction u0 = gaussian_seed(1, 48, 4.0, 1.0);
    EvolutionConfig cfg;
    cfg.step = 0.75;  // wider than a segment
    CHECK_THROWS_AS(integrate_full(u0, cfg, lab.profile, lab.engine), std::invalid_argument);
    cfg.step = -1.0;
    CHECK_THROWS_AS(integrate_full(u0, cfg, lab.profile, lab.engine), std::invalid_argument);
}
