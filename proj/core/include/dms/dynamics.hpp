#pragma once

#include <vector>

#include "dms/functional.hpp"

namespace dms {

struct EvolutionConfig {
    double eps = 0.05;     // nonlinearity strength
    double d_av = 0.0;     // average diffraction
    double t_end = 1.0;    // in fast-variable units (periods of the profile)
    double step = 1.0 / 64.0;
    int record_stride = 1;
    bool record_fields = false;   // keep every recorded field, not just the last
    double slow_time_cap = 100.0; // reject runs with eps * t_end beyond this
};

struct Trajectory {
    std::vector<double> times;
    std::vector<double> l2_trace;
    std::vector<double> hamiltonian_trace;  // filled for the averaged flow
    std::vector<GridFunction> fields;       // all records, or just the final state
};

// Full non-autonomous flow: Strang steps alternating the exact pointwise
// cubic phase with the exact linear propagator over one sub-step. Sub-steps
// are cut from the profile segments, so a step never straddles a breakpoint.
// Throws if step exceeds the shortest segment.
Trajectory integrate_full(const GridFunction& u0, const EvolutionConfig& cfg,
                          const DiffractionProfile& p, const PropagatorEngine& engine);

// Averaged autonomous flow: exact linear half-steps for the d_av part and a
// classical 4th-order step for the nonlocal cubic term.
Trajectory integrate_averaged(const GridFunction& v0, const EvolutionConfig& cfg,
                              const DiffractionProfile& p, const PropagatorEngine& engine,
                              const QuadratureRule& rule);

struct AveragingRun {
    double eps = 0.0;
    std::vector<double> times;
    // |u(t) - e^{iD(t)L} v(t)|_2 at records: the averaged state carries the
    // slow envelope, so it is dressed with the fast sweep before comparing.
    // At period boundaries D = 0 and this is the plain distance.
    std::vector<double> deviations;
    double max_deviation = 0.0;
    double ratio = 0.0;              // max_deviation / eps
    double full_l2_drift = 0.0;      // max | |u|_2 - |u0|_2 |
    double averaged_l2_drift = 0.0;
    double averaged_h_drift = 0.0;   // max |H(v) - H(v0)|
};

// Co-integrates both flows from the same initial state over [0, t_end].
AveragingRun compare_averaging(const GridFunction& u0, double eps, double t_end,
                               const DiffractionProfile& p, const PropagatorEngine& engine,
                               const QuadratureRule& rule, double d_av = 0.0,
                               double step = 1.0 / 64.0, int record_stride = 1);

}  // namespace dms
