#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "dms/functional.hpp"

namespace dms {

enum class SolveMethod { gradient_ascent, fixed_point };

SolveMethod solve_method_from_string(const std::string& s);
std::string to_string(SolveMethod m);

struct SolverConfig {
    double lambda = 1.0;           // constraint |f|_2^2 = lambda
    SolveMethod method = SolveMethod::gradient_ascent;
    double tolerance = 1e-8;       // relative residual target
    int max_iterations = 5000;
    double initial_width = 4.0;    // Gaussian seed width
    double armijo_backtrack = 0.5;
    double armijo_slope = 1e-4;
};

struct SolitonResult {
    GridFunction field;  // gauge fixed: modulus peak at the origin, f(0) real positive
    double lambda = 0.0;
    double p_lambda = 0.0;  // achieved objective
    double omega = 0.0;     // Lagrange multiplier, p_lambda / lambda at convergence
    double residual = 0.0;  // |Q(f,f,f) - omega f|_2 / |f|_2
    int iterations = 0;
    bool converged = false;
    std::vector<double> objective_trace;

    SolitonResult() : field(1, 1) {}
};

// Raised when the iteration hits max_iterations above tolerance;
// carries the partial result including the objective trace.
struct NonConvergence : std::runtime_error {
    SolitonResult partial;
    explicit NonConvergence(SolitonResult r)
        : std::runtime_error("solver did not reach tolerance"), partial(std::move(r)) {}
};

// Normalized Gaussian exp(-|x|^2/sigma^2) scaled to |f|_2^2 = lambda.
GridFunction gaussian_seed(int dim, int radius, double sigma, double lambda);

// Remove translation and phase freedom: move the modulus peak to the origin
// (lexicographically smallest peak on ties) and rotate f(0) real positive.
GridFunction gauge_fix(const GridFunction& f);

// |averaged_cubic(f,f,f) - omega f|_2 / max(|f|_2, 1e-30).
double relative_residual(const GridFunction& f, double omega,
                         const DiffractionProfile& p, const QuadratureRule& rule,
                         const PropagatorEngine& engine);

// Maximize the objective on the sphere |f|_2^2 = lambda. Gradient ascent
// takes Armijo-backtracked steps along the tangent gradient followed by
// retraction to the sphere, so the objective trace is non-decreasing.
// Fixed point renormalizes the cubic image and falls back to a gradient
// step whenever that would decrease the objective.
SolitonResult maximize(const SolverConfig& cfg, const DiffractionProfile& p,
                       const PropagatorEngine& engine, const QuadratureRule& rule);

}  // namespace dms
