#include "dms/dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace dms {

namespace {

struct SubStep {
    double length;
    double profile_value;  // local diffraction on the containing segment
};

// One period cut into sub-steps that respect segment breakpoints.
std::vector<SubStep> period_schedule(const DiffractionProfile& p, double step) {
    if (!(step > 0.0)) throw std::invalid_argument("dynamics: step must be positive");
    std::vector<SubStep> plan;
    for (const ProfileSegment& seg : p.segments()) {
        if (step > seg.length + 1e-12)
            throw std::invalid_argument("dynamics: step exceeds a profile segment");
        int n = static_cast<int>(std::ceil(seg.length / step - 1e-12));
        double h = seg.length / n;
        for (int i = 0; i < n; ++i) plan.push_back({h, seg.value});
    }
    return plan;
}

void cubic_phase(GridFunction& u, double angle_scale) {
    for (Complex& v : u.data()) v *= std::exp(Complex(0.0, angle_scale * std::norm(v)));
}

void full_step(GridFunction& u, const SubStep& s, double eps, double d_av,
               const PropagatorEngine& engine) {
    cubic_phase(u, 0.5 * eps * s.length);
    const double theta = s.profile_value * s.length + eps * d_av * s.length;
    u = engine.evolve(u, theta);
    cubic_phase(u, 0.5 * eps * s.length);
}

GridFunction cubic_rhs(const GridFunction& v, double eps, const DiffractionProfile& p,
                       const QuadratureRule& rule, const PropagatorEngine& engine) {
    GridFunction q = averaged_cubic(v, v, v, p, rule, engine);
    for (Complex& w : q.data()) w *= Complex(0.0, eps);
    return q;
}

void averaged_step(GridFunction& v, double h, double eps, double d_av,
                   const DiffractionProfile& p, const QuadratureRule& rule,
                   const PropagatorEngine& engine) {
    if (d_av != 0.0) v = engine.evolve(v, 0.5 * eps * d_av * h);

    // classical 4th-order step on v' = i eps Q(v,v,v)
    GridFunction k1 = cubic_rhs(v, eps, p, rule, engine);

    GridFunction tmp = v;
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i) tmp[i] = v[i] + 0.5 * h * k1[i];
    GridFunction k2 = cubic_rhs(tmp, eps, p, rule, engine);

    for (std::size_t i = 0; i < n; ++i) tmp[i] = v[i] + 0.5 * h * k2[i];
    GridFunction k3 = cubic_rhs(tmp, eps, p, rule, engine);

    for (std::size_t i = 0; i < n; ++i) tmp[i] = v[i] + h * k3[i];
    GridFunction k4 = cubic_rhs(tmp, eps, p, rule, engine);

    for (std::size_t i = 0; i < n; ++i)
        v[i] += (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);

    if (d_av != 0.0) v = engine.evolve(v, 0.5 * eps * d_av * h);
}

void validate(const EvolutionConfig& cfg) {
    if (!(cfg.t_end > 0.0)) throw std::invalid_argument("dynamics: t_end must be positive");
    if (cfg.record_stride < 1) throw std::invalid_argument("dynamics: record_stride >= 1");
    if (cfg.eps < 0.0) throw std::invalid_argument("dynamics: eps must be nonnegative");
    if (cfg.eps * cfg.t_end > cfg.slow_time_cap)
        throw std::invalid_argument("dynamics: eps * t_end exceeds the slow-time cap");
}

template <typename StepFn, typename RecordFn>
void run_schedule(const DiffractionProfile& p, const EvolutionConfig& cfg, StepFn step,
                  RecordFn record) {
    const std::vector<SubStep> plan = period_schedule(p, cfg.step);
    double t = 0.0;
    long step_count = 0;
    record(t, true);
    bool done = false;
    while (!done) {
        for (const SubStep& s : plan) {
            SubStep use = s;
            if (t + s.length >= cfg.t_end - 1e-12) {
                use.length = cfg.t_end - t;
                done = true;
            }
            if (use.length > 0.0) step(use);
            t = done ? cfg.t_end : t + use.length;
            ++step_count;
            record(t, done || step_count % cfg.record_stride == 0);
            if (done) break;
        }
    }
}

}  // namespace

Trajectory integrate_full(const GridFunction& u0, const EvolutionConfig& cfg,
                          const DiffractionProfile& p, const PropagatorEngine& engine) {
    validate(cfg);
    Trajectory traj;
    GridFunction u = u0;
    run_schedule(p, cfg,
                 [&](const SubStep& s) { full_step(u, s, cfg.eps, cfg.d_av, engine); },
                 [&](double t, bool rec) {
                     if (!rec) return;
                     traj.times.push_back(t);
                     traj.l2_trace.push_back(l2_norm(u));
                     if (cfg.record_fields) traj.fields.push_back(u);
                 });
    if (!cfg.record_fields) traj.fields.push_back(u);
    return traj;
}

Trajectory integrate_averaged(const GridFunction& v0, const EvolutionConfig& cfg,
                              const DiffractionProfile& p, const PropagatorEngine& engine,
                              const QuadratureRule& rule) {
    validate(cfg);
    Trajectory traj;
    GridFunction v = v0;
    run_schedule(p, cfg,
                 [&](const SubStep& s) {
                     averaged_step(v, s.length, cfg.eps, cfg.d_av, p, rule, engine);
                 },
                 [&](double t, bool rec) {
                     if (!rec) return;
                     traj.times.push_back(t);
                     traj.l2_trace.push_back(l2_norm(v));
                     traj.hamiltonian_trace.push_back(
                         averaged_hamiltonian(v, p, rule, engine, cfg.d_av, cfg.eps));
                     if (cfg.record_fields) traj.fields.push_back(v);
                 });
    if (!cfg.record_fields) traj.fields.push_back(v);
    return traj;
}

AveragingRun compare_averaging(const GridFunction& u0, double eps, double t_end,
                               const DiffractionProfile& p, const PropagatorEngine& engine,
                               const QuadratureRule& rule, double d_av, double step,
                               int record_stride) {
    EvolutionConfig cfg;
    cfg.eps = eps;
    cfg.d_av = d_av;
    cfg.t_end = t_end;
    cfg.step = step;
    cfg.record_stride = record_stride;
    validate(cfg);

    AveragingRun run;
    run.eps = eps;
    GridFunction u = u0, v = u0;
    const double n0 = l2_norm(u0);
    const double h0 = averaged_hamiltonian(u0, p, rule, engine, d_av, eps);

    run_schedule(p, cfg,
                 [&](const SubStep& s) {
                     full_step(u, s, eps, d_av, engine);
                     averaged_step(v, s.length, eps, d_av, p, rule, engine);
                 },
                 [&](double t, bool rec) {
                     if (!rec) return;
                     // the averaged state describes the slow envelope; dress it
                     // with the fast linear sweep before comparing (both states
                     // coincide undressed at period boundaries, where D = 0)
                     double tm = t - std::floor(t);
                     double theta = p.integral(std::min(tm, 1.0));
                     double dev = theta == 0.0 ? l2_distance(u, v)
                                               : l2_distance(u, engine.evolve(v, theta));
                     run.times.push_back(t);
                     run.deviations.push_back(dev);
                     run.max_deviation = std::max(run.max_deviation, dev);
                     run.full_l2_drift =
                         std::max(run.full_l2_drift, std::abs(l2_norm(u) - n0));
                     run.averaged_l2_drift =
                         std::max(run.averaged_l2_drift, std::abs(l2_norm(v) - n0));
                     run.averaged_h_drift = std::max(
                         run.averaged_h_drift,
                         std::abs(averaged_hamiltonian(v, p, rule, engine, d_av, eps) - h0));
                 });
    run.ratio = eps > 0.0 ? run.max_deviation / eps : 0.0;
    return run;
}

}  // namespace dms
