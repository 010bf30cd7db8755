// Acceptance suite: one pass/fail line per criterion, nonzero exit on failure.
// argv[1] (optional) is the path to the command-line binary, used by the
// byte-determinism criterion; without it that criterion fails.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "dms/analysis.hpp"
#include "dms/dynamics.hpp"
#include "dms/io.hpp"
#include "dms/random.hpp"
#include "dms/solver.hpp"

using namespace dms;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail = "") {
    std::cout << (pass ? "PASS" : "FAIL") << "  criterion " << id << ": " << name;
    if (!detail.empty()) std::cout << "  [" << detail << "]";
    std::cout << std::endl;
    if (!pass) ++g_failures;
}

std::string fmt(double v) {
    std::ostringstream ss;
    ss.precision(6);
    ss << v;
    return ss.str();
}

bool suite_cases_pass(const VerificationReport& rep, const std::string& prefix) {
    bool any = false, ok = true;
    for (const VerificationCase& c : rep.cases) {
        if (c.name.rfind(prefix, 0) != 0) continue;
        any = true;
        if (c.hard && !c.pass) ok = false;
    }
    return any && ok;
}

double suite_constant(const VerificationReport& rep, const std::string& name) {
    for (const auto& [k, v] : rep.constants)
        if (k == name) return v;
    return std::nan("");
}

}  // namespace

int main(int argc, char** argv) {
    const std::string cli = argc > 1 ? argv[1] : "";
    const DiffractionProfile profile = DiffractionProfile::two_step();
    const double tau = profile.max_integral();

    // --- 1: propagator cross-validation -----------------------------------
    {
        PropagatorSettings st;
        st.max_theta = 1.5;
        st.method = PropagatorMethod::taylor;
        PropagatorEngine taylor(1, 40, st);
        st.method = PropagatorMethod::spectral;
        PropagatorEngine spectral(1, 40, st);
        st.method = PropagatorMethod::bessel;
        PropagatorEngine bessel(1, 40, st);

        double worst_kernel = 0.0;
        for (double t : {0.1, 0.5, 1.0}) {
            auto rt = taylor.kernel_row(t, 30);
            auto rs = spectral.kernel_row(t, 30);
            auto rb = bessel.kernel_row(t, 30);
            for (int i = 0; i < 61; ++i) {
                worst_kernel = std::max(worst_kernel, std::abs(rt[i] - rs[i]));
                worst_kernel = std::max(worst_kernel, std::abs(rt[i] - rb[i]));
                worst_kernel = std::max(worst_kernel, std::abs(rs[i] - rb[i]));
            }
        }

        Rng rng(101);
        double worst_unit = 0.0;
        for (int k = 0; k < 10; ++k) {
            GridFunction f = random_field(rng, 1, 40, 16);
            double n0 = l2_norm(f);
            for (double t : {0.1, 0.5, 1.0})
                for (const PropagatorEngine* e : {&taylor, &spectral, &bessel})
                    worst_unit = std::max(worst_unit,
                                          std::abs(l2_norm(e->evolve(f, t)) - n0) / n0);
        }
        report(1, "propagator cross-validation",
               worst_kernel <= 1e-10 && worst_unit <= 1e-12,
               "kernel diff " + fmt(worst_kernel) + ", unitarity " + fmt(worst_unit));
    }

    // --- 2 & 3: kernel bound and propagation-speed sum ---------------------
    {
        VerifyOptions opt;
        opt.tau = tau;
        opt.time_grid = 64;
        opt.kernel_max_offset = 128;
        opt.speed_max_s = 12;
        opt.dims = {1, 2};
        VerificationReport rep = verify_kernel_bounds(opt);
        report(2, "kernel factorial bound, d in {1,2}",
               suite_cases_pass(rep, "kernel_pointwise_bound"));
        report(3, "propagation-speed sum with explicit constant",
               suite_cases_pass(rep, "propagation_speed"),
               "max lhs/rhs d1 " + fmt(suite_constant(rep, "speed_max_ratio_d1")) +
                   ", d2 " + fmt(suite_constant(rep, "speed_max_ratio_d2")));
    }

    // --- 4 & 5: a-priori form bound; embedding and Lipschitz ----------------
    {
        VerifyOptions opt;
        opt.seed = 11;
        opt.sample_count = 1000;
        opt.tau = tau;
        VerificationReport rep = verify_norm_inequalities(profile, opt);
        report(4, "a-priori form bound over 1000 quadruples",
               suite_cases_pass(rep, "form_a_priori_bound"));
        report(5, "norm embedding and objective Lipschitz bound",
               suite_cases_pass(rep, "embedding_lq_le_lp") &&
                   suite_cases_pass(rep, "objective_lipschitz"));
    }

    // --- 6: enhanced multilinear envelope ----------------------------------
    {
        VerifyOptions opt;
        opt.seed = 13;
        opt.separation_min = 2;
        opt.separation_max = 20;
        VerificationReport rep = verify_multilinear(profile, opt);
        double constant = suite_constant(rep, "multilinear_constant");
        report(6, "enhanced multilinear envelope constant",
               suite_cases_pass(rep, "multilinear_") && std::isfinite(constant),
               "constant " + fmt(constant));
    }

    // shared desk-scale machinery
    PropagatorSettings desk;
    desk.max_theta = 1.0;
    PropagatorEngine engine(1, 64, desk);
    QuadratureRule rule(profile);

    // --- 7: gradient against central differences ---------------------------
    {
        Rng rng(17);
        double worst = 0.0;
        const double fd_eps = 1e-5;
        for (int k = 0; k < 20; ++k) {
            GridFunction f = random_field(rng, 1, 64, 20);
            GridFunction h = random_field(rng, 1, 64, 20);
            f = (1.0 / l2_norm(f)) * f;
            h = (1.0 / l2_norm(h)) * h;
            GridFunction grad = objective_gradient(f, profile, rule, engine);
            double analytic = inner_product(h, grad).real();
            double numeric = (objective(f + fd_eps * h, profile, rule, engine) -
                              objective(f - fd_eps * h, profile, rule, engine)) /
                             (2.0 * fd_eps);
            worst = std::max(worst,
                             std::abs(numeric - analytic) / std::max(1.0, std::abs(analytic)));
        }
        report(7, "gradient matches central differences", worst <= 1e-6,
               "max rel err " + fmt(worst));
    }

    // --- 8: solver certificate ---------------------------------------------
    SolverConfig scfg;
    SolitonResult soliton = maximize(scfg, profile, engine, rule);
    {
        bool ok = soliton.converged && soliton.residual <= 1e-8 &&
                  std::abs(soliton.omega - soliton.p_lambda / soliton.lambda) <= 1e-10;
        Rng rng(19);
        double worst_weak = 0.0;
        for (int k = 0; k < 100; ++k) {
            GridFunction g = random_field(rng, 1, 64, 24);
            g = (1.0 / l2_norm(g)) * g;
            Complex lhs = quad_form(g, soliton.field, soliton.field, soliton.field,
                                    profile, rule, engine);
            Complex rhs = soliton.omega * inner_product(g, soliton.field);
            worst_weak = std::max(worst_weak, std::abs(lhs - rhs));
        }
        ok = ok && worst_weak <= 1e-6;
        report(8, "solver residual, multiplier, weak form", ok,
               "residual " + fmt(soliton.residual) + ", weak " + fmt(worst_weak));
    }

    // --- 9: scaling law ------------------------------------------------------
    {
        double p_half, p_two;
        {
            SolverConfig c;
            c.lambda = 0.5;
            p_half = maximize(c, profile, engine, rule).p_lambda;
        }
        {
            SolverConfig c;
            c.lambda = 2.0;
            p_two = maximize(c, profile, engine, rule).p_lambda;
        }
        double r_half = p_half / 0.25, r_one = soliton.p_lambda, r_two = p_two / 4.0;
        double spread = std::max({r_half, r_one, r_two}) - std::min({r_half, r_one, r_two});

        DiffractionProfile flat = DiffractionProfile::zero();
        PropagatorEngine flat_engine(1, 32, {});
        QuadratureRule flat_rule(flat);
        SolverConfig fc;
        fc.method = SolveMethod::fixed_point;  // the degenerate case favors power iteration
        SolitonResult delta_sol = maximize(fc, flat, flat_engine, flat_rule);
        bool flat_ok = std::abs(delta_sol.p_lambda - 1.0) <= 1e-7 &&
                       std::abs(delta_sol.field.at({0, 0, 0}) - Complex(1.0, 0.0)) < 1e-4;
        report(9, "scaling law and flat-profile degenerate case", spread <= 1e-6 && flat_ok,
               "P_lambda/lambda^2 spread " + fmt(spread));
    }

    // --- 10: super-exponential tail of the computed soliton -----------------
    TailDistribution alpha = tail_distribution(soliton.field);
    {
        bool ok = true;
        std::string note;
        try {
            DecayFit fit = fit_decay(alpha, tau, 1e-12);
            ok = fit.mu > 0.0 && fit.super_exponential && std::isfinite(fit.envelope_constant);
            note = "mu " + fmt(fit.mu) + ", C " + fmt(fit.envelope_constant);
        } catch (const InsufficientDecayRange&) {
            ok = false;
            note = "insufficient range";
        }
        report(10, "tail decay envelope and positive fitted rate", ok, note);
    }

    // --- 11: self-consistency constants --------------------------------------
    {
        VerificationReport rep = verify_self_consistency(alpha, tau, 0.25, 1e-12);
        double c1 = suite_constant(rep, "C1");
        report(11, "self-consistency constant finite", rep.passed() && std::isfinite(c1),
               "C1 " + fmt(c1));
    }

    // --- 12: factorial weight suite ------------------------------------------
    {
        VerificationReport rep = verify_weight_properties();
        report(12, "factorial weight algebra", rep.passed(),
               "sup " + fmt(suite_constant(rep, "doubling_ratio_sup")));
    }

    // --- 13: conservation and step order --------------------------------------
    {
        const double eps = 0.05;
        EvolutionConfig cfg;
        cfg.eps = eps;
        cfg.t_end = 1.0 / eps;  // one slow unit
        cfg.record_stride = 16;
        Trajectory full = integrate_full(soliton.field, cfg, profile, engine);
        double l2_drift = 0.0;
        for (double v : full.l2_trace) l2_drift = std::max(l2_drift, std::abs(v - full.l2_trace[0]));

        Trajectory avg = integrate_averaged(soliton.field, cfg, profile, engine, rule);
        double h_drift = 0.0;
        for (double h : avg.hamiltonian_trace)
            h_drift = std::max(h_drift, std::abs(h - avg.hamiltonian_trace[0]));

        EvolutionConfig oc;
        oc.eps = 0.1;
        oc.t_end = 2.0;
        oc.step = 1.0 / 16.0;
        GridFunction a = integrate_full(soliton.field, oc, profile, engine).fields.back();
        oc.step = 1.0 / 32.0;
        GridFunction b = integrate_full(soliton.field, oc, profile, engine).fields.back();
        oc.step = 1.0 / 64.0;
        GridFunction c = integrate_full(soliton.field, oc, profile, engine).fields.back();
        double ratio = l2_distance(a, b) / l2_distance(b, c);

        report(13, "conservation and Strang order",
               l2_drift <= 1e-9 && h_drift <= 1e-6 && ratio >= 3.0 && ratio <= 5.0,
               "l2 drift " + fmt(l2_drift) + ", H drift " + fmt(h_drift) + ", ratio " +
                   fmt(ratio));
    }

    // --- 14: averaging closeness (slow) ----------------------------------------
    {
        bool ok = true;
        double prev = std::numeric_limits<double>::infinity();
        std::string note;
        for (double eps : {0.1, 0.05, 0.025}) {
            AveragingRun run = compare_averaging(soliton.field, eps, 1.0 / eps, profile,
                                                 engine, rule, 0.0, 1.0 / 64.0, 4);
            note += "eps " + fmt(eps) + " ratio " + fmt(run.ratio) + "; ";
            if (run.ratio > 10.0) ok = false;
            // no growth as eps shrinks; 5% allows for the longer horizon
            // sampling more oscillation peaks, while a 1/eps failure mode
            // would double the ratio per halving
            if (run.ratio > prev * 1.05) ok = false;
            prev = run.ratio;
        }
        report(14, "averaging closeness over 1/eps horizons", ok, note);
    }

    // --- 15: byte determinism of the verification reports ------------------------
    {
        bool ok = false;
        std::string note;
        if (cli.empty()) {
            note = "cli binary path not supplied";
        } else {
            fs::path base = fs::temp_directory_path() / "dms_acceptance_determinism";
            fs::remove_all(base);
            fs::path d1 = base / "run1", d2 = base / "run2";
            fs::create_directories(d1);
            fs::create_directories(d2);
            std::string cmd1 = "\"" + cli + "\" verify --suite all --seed 7 --out \"" +
                               d1.string() + "\" > /dev/null 2>&1";
            std::string cmd2 = "\"" + cli + "\" verify --suite all --seed 7 --out \"" +
                               d2.string() + "\" > /dev/null 2>&1";
            int rc1 = std::system(cmd1.c_str());
            int rc2 = std::system(cmd2.c_str());
            ok = rc1 == 0 && rc2 == 0;
            int compared = 0;
            if (ok) {
                for (const auto& entry : fs::directory_iterator(d1)) {
                    std::ifstream a(entry.path(), std::ios::binary);
                    std::ifstream b(d2 / entry.path().filename(), std::ios::binary);
                    std::stringstream sa, sb;
                    sa << a.rdbuf();
                    sb << b.rdbuf();
                    if (sa.str() != sb.str() || sa.str().empty()) ok = false;
                    ++compared;
                }
                if (compared == 0) ok = false;
                note = std::to_string(compared) + " reports compared";
            } else {
                note = "verify run failed (exit " + std::to_string(rc1) + "/" +
                       std::to_string(rc2) + ")";
            }
            fs::remove_all(base);
        }
        report(15, "byte-identical verification reports", ok, note);
    }

    std::cout << (g_failures == 0 ? "ALL CRITERIA PASSED"
                                  : std::to_string(g_failures) + " CRITERIA FAILED")
              << std::endl;
    return g_failures == 0 ? 0 : 1;
}
