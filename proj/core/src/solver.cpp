#include "dms/solver.hpp"

#include <algorithm>
#include <cmath>

namespace dms {

SolveMethod solve_method_from_string(const std::string& s) {
    if (s == "gradient_ascent") return SolveMethod::gradient_ascent;
    if (s == "fixed_point") return SolveMethod::fixed_point;
    throw std::invalid_argument("unknown solve method: " + s);
}

std::string to_string(SolveMethod m) {
    return m == SolveMethod::gradient_ascent ? "gradient_ascent" : "fixed_point";
}

GridFunction gaussian_seed(int dim, int radius, double sigma, double lambda) {
    GridFunction f(dim, radius);
    const std::size_t n = f.size();
    for (std::size_t i = 0; i < n; ++i) {
        Point x = f.point(i);
        double r2 = 0.0;
        for (int j = 0; j < dim; ++j) r2 += static_cast<double>(x[j]) * x[j];
        f[i] = Complex(std::exp(-r2 / (sigma * sigma)), 0.0);
    }
    double nrm = l2_norm(f);
    const double scale = std::sqrt(lambda) / nrm;
    for (Complex& v : f.data()) v *= scale;
    return f;
}

GridFunction gauge_fix(const GridFunction& f) {
    const std::size_t n = f.size();
    double best = -1.0;
    std::size_t best_idx = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double a = std::abs(f[i]);
        if (a > best) {  // index order = lexicographic order, so ties keep the smallest point
            best = a;
            best_idx = i;
        }
    }
    if (best <= 0.0) throw std::domain_error("gauge_fix: zero field");

    Point peak = f.point(best_idx);
    Point offset{0, 0, 0};
    for (int j = 0; j < f.dim(); ++j) offset[j] = -peak[j];
    GridFunction out = shift_truncating(f, offset);

    Complex v0 = out.at({0, 0, 0});
    Complex phase = std::conj(v0) / std::abs(v0);
    for (Complex& v : out.data()) v *= phase;
    // pin the exact invariant
    out.set({0, 0, 0}, Complex(std::abs(v0), 0.0));
    return out;
}

double relative_residual(const GridFunction& f, double omega,
                         const DiffractionProfile& p, const QuadratureRule& rule,
                         const PropagatorEngine& engine) {
    GridFunction qf = averaged_cubic(f, f, f, p, rule, engine);
    const std::size_t n = f.size();
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += std::norm(qf[i] - omega * f[i]);
    return std::sqrt(acc) / std::max(l2_norm(f), 1e-30);
}

namespace {

GridFunction retract(const GridFunction& h, double lambda) {
    double nrm = l2_norm(h);
    if (nrm == 0.0) throw std::domain_error("retract: zero direction");
    GridFunction out = h;
    const double scale = std::sqrt(lambda) / nrm;
    for (Complex& v : out.data()) v *= scale;
    return out;
}

struct IterationState {
    GridFunction f{1, 1};
    GridFunction cubic{1, 1};  // averaged_cubic(f,f,f)
    double phi = 0.0;
    double omega = 0.0;
    double residual = 0.0;
};

void refresh(IterationState& s, double lambda, const DiffractionProfile& p,
             const QuadratureRule& rule, const PropagatorEngine& engine) {
    s.cubic = averaged_cubic(s.f, s.f, s.f, p, rule, engine);
    // evaluate the objective through the same route the line search uses;
    // mixing it with the duality value stalls the search at the rounding floor
    s.phi = objective(s.f, p, rule, engine);
    s.omega = inner_product(s.f, s.cubic).real() / lambda;
    double acc = 0.0;
    const std::size_t n = s.f.size();
    for (std::size_t i = 0; i < n; ++i) acc += std::norm(s.cubic[i] - s.omega * s.f[i]);
    s.residual = std::sqrt(acc) / std::max(l2_norm(s.f), 1e-30);
}

// One Armijo-backtracked ascent step along the tangent gradient.
// Returns false when no sufficient increase is certifiable: near the
// maximum the margin drops below the objective's floating-point resolution.
bool ascent_step(IterationState& s, double& eta, const SolverConfig& cfg,
                 const DiffractionProfile& p, const QuadratureRule& rule,
                 const PropagatorEngine& engine) {
    GridFunction grad = s.cubic;
    for (Complex& v : grad.data()) v *= 4.0;

    const double radial = inner_product(s.f, grad).real() / cfg.lambda;
    GridFunction tangent = grad;
    const std::size_t n = tangent.size();
    for (std::size_t i = 0; i < n; ++i) tangent[i] -= radial * s.f[i];

    double g2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) g2 += std::norm(tangent[i]);
    if (g2 == 0.0) return false;

    eta = std::min(eta * 2.0, 1e6);
    while (eta > 1e-18) {
        GridFunction trial = s.f;
        for (std::size_t i = 0; i < n; ++i) trial[i] += eta * tangent[i];
        trial = retract(trial, cfg.lambda);
        double phi_trial = objective(trial, p, rule, engine);
        if (phi_trial >= s.phi + cfg.armijo_slope * eta * g2) {
            s.f = std::move(trial);
            return true;
        }
        eta *= cfg.armijo_backtrack;
    }
    return false;
}

}  // namespace

SolitonResult maximize(const SolverConfig& cfg, const DiffractionProfile& p,
                       const PropagatorEngine& engine, const QuadratureRule& rule) {
    if (!(cfg.lambda > 0.0)) throw std::invalid_argument("maximize: lambda must be positive");
    if (!(cfg.tolerance > 0.0)) throw std::invalid_argument("maximize: tolerance must be positive");

    IterationState s;
    s.f = gaussian_seed(engine.dim(), engine.radius(), cfg.initial_width, cfg.lambda);
    refresh(s, cfg.lambda, p, rule, engine);

    SolitonResult result;
    result.lambda = cfg.lambda;
    double eta = 1.0;
    bool converged = false;
    int iter = 0;
    for (; iter < cfg.max_iterations; ++iter) {
        result.objective_trace.push_back(s.phi);
        if (s.residual <= cfg.tolerance) {
            converged = true;
            break;
        }

        bool moved = false;
        if (cfg.method == SolveMethod::fixed_point) {
            double qnorm = l2_norm(s.cubic);
            if (qnorm == 0.0) throw std::domain_error("maximize: cubic image vanished");
            GridFunction trial = retract(s.cubic, cfg.lambda);
            double phi_trial = objective(trial, p, rule, engine);
            if (phi_trial >= s.phi) {
                s.f = std::move(trial);
                moved = true;
            }
        }
        if (moved) {
            refresh(s, cfg.lambda, p, rule, engine);
        } else if (ascent_step(s, eta, cfg, p, rule, engine)) {
            moved = true;
            refresh(s, cfg.lambda, p, rule, engine);
        } else {
            // Sufficient increase is below the objective's rounding floor.
            // The renormalized cubic image still contracts the residual, and
            // the residual is measurable at this scale, so certify progress
            // on it; the objective moves by at most a few ulp per such step.
            IterationState polish;
            polish.f = retract(s.cubic, cfg.lambda);
            refresh(polish, cfg.lambda, p, rule, engine);
            if (polish.residual <= 0.9 * s.residual) {
                s = std::move(polish);
                moved = true;
            }
        }
        if (!moved) break;  // stationary to rounding but above tolerance
    }

    result.field = gauge_fix(s.f);
    // Gauge operations leave the objective and the residual invariant; the
    // certificate values are recomputed at the reported field.
    GridFunction cubic = averaged_cubic(result.field, result.field, result.field, p, rule, engine);
    result.p_lambda = objective(result.field, p, rule, engine);
    result.omega = inner_product(result.field, cubic).real() / cfg.lambda;
    {
        double acc = 0.0;
        const std::size_t n = result.field.size();
        for (std::size_t i = 0; i < n; ++i)
            acc += std::norm(cubic[i] - result.omega * result.field[i]);
        result.residual = std::sqrt(acc) / std::max(l2_norm(result.field), 1e-30);
    }
    result.iterations = iter;
    result.converged = converged && result.residual <= cfg.tolerance;

    if (!result.converged) throw NonConvergence(std::move(result));
    return result;
}

}  // namespace dms
