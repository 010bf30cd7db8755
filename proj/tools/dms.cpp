// Command-line front end: solve | verify | decay | evolve | compare | sweep.

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "dms/analysis.hpp"
#include "dms/dynamics.hpp"
#include "dms/io.hpp"
#include "dms/solver.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitFailed = 2;

fs::path resolve_out(std::string out) {
    if (out.empty()) {
        if (const char* env = std::getenv("DMS_OUT")) out = env;
    }
    if (out.empty()) out = ".";
    fs::path dir(out);
    fs::create_directories(dir);
    return dir;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open for writing: " + path.string());
    os << text;
}

std::string slurp(const fs::path& path) {
    std::ifstream is(path, std::ios::binary);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

// ---------------------------------------------------------------------------
// solve

struct SolveArgs {
    std::string profile;
    double lambda = 1.0;
    int radius = 64;
    double tol = 1e-8;
    int max_iter = 5000;
    double sigma = 4.0;
    int order = 16;
    std::string method = "gradient_ascent";
    std::string out;
};

int run_solve(const SolveArgs& a) {
    dms::DiffractionProfile profile = dms::load_profile(a.profile);
    const double tau = profile.max_integral();

    dms::PropagatorSettings ps;
    ps.max_theta = std::max(1.0, tau + 0.5);
    dms::PropagatorEngine engine(1, a.radius, ps);
    dms::QuadratureRule rule(profile, a.order);

    dms::SolverConfig cfg;
    cfg.lambda = a.lambda;
    cfg.tolerance = a.tol;
    cfg.max_iterations = a.max_iter;
    cfg.initial_width = a.sigma;
    cfg.method = dms::solve_method_from_string(a.method);

    json cj = {{"command", "solve"},   {"profile", a.profile}, {"lambda", a.lambda},
               {"radius", a.radius},   {"tol", a.tol},         {"max_iter", a.max_iter},
               {"sigma", a.sigma},     {"order", a.order},     {"method", a.method}};
    const std::string digest = dms::digest_hex(cj.dump());

    dms::SolitonResult result;
    bool converged = true;
    try {
        result = dms::maximize(cfg, profile, engine, rule);
    } catch (const dms::NonConvergence& e) {
        result = e.partial;
        converged = false;
    }

    fs::path dir = resolve_out(a.out);
    dms::save_field_csv((dir / "field.csv").string(), result.field);
    {
        std::ofstream os(dir / "objective-trace.csv");
        dms::write_objective_trace_csv(os, result.objective_trace);
    }
    write_text(dir / "soliton.json",
               dms::soliton_to_json(result, "field.csv",
                                    {{"config_digest", digest},
                                     {"version", dms::version_string()}},
                                    {{"tau", tau}, {"seed", 0.0}}));
    std::cout << (converged ? "converged" : "NOT converged") << ": p_lambda = "
              << result.p_lambda << ", omega = " << result.omega
              << ", residual = " << result.residual << ", iterations = "
              << result.iterations << "\n";
    return converged ? kExitOk : kExitFailed;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyArgs {
    std::string suite = "all";
    std::string dims = "1,2";
    std::uint64_t seed = 1;
    int count = 1000;
    std::string profile;  // empty: built-in two-step
    int radius = 64;
    std::string out;
};

std::vector<int> parse_dims(const std::string& s) {
    std::vector<int> dims;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) dims.push_back(std::stoi(tok));
    if (dims.empty()) throw std::invalid_argument("no dims given");
    return dims;
}

int run_verify(const VerifyArgs& a) {
    const std::vector<std::string> known = {"norms",      "kernel",          "bilinear",
                                            "multilinear", "selfconsistency", "F"};
    std::vector<std::string> suites;
    if (a.suite == "all")
        suites = known;
    else if (std::find(known.begin(), known.end(), a.suite) != known.end())
        suites = {a.suite};
    else {
        std::cerr << "unknown suite: " << a.suite << "\n";
        return kExitConfig;
    }

    dms::DiffractionProfile profile =
        a.profile.empty() ? dms::DiffractionProfile::two_step() : dms::load_profile(a.profile);
    const double tau = profile.max_integral();

    dms::VerifyOptions opt;
    opt.seed = a.seed;
    opt.dims = parse_dims(a.dims);
    opt.sample_count = a.count;
    opt.tau = tau;

    json cj = {{"command", "verify"}, {"suite", a.suite}, {"dims", a.dims},
               {"seed", a.seed},      {"count", a.count}, {"profile", a.profile},
               {"radius", a.radius}};
    const std::string digest = dms::digest_hex(cj.dump());
    const std::map<std::string, std::string> embeds = {
        {"config_digest", digest}, {"version", dms::version_string()}};

    fs::path dir = resolve_out(a.out);
    bool all_pass = true;
    for (const std::string& s : suites) {
        dms::VerificationReport rep;
        if (s == "norms") {
            rep = dms::verify_norm_inequalities(profile, opt);
        } else if (s == "kernel") {
            rep = dms::verify_kernel_bounds(opt);
        } else if (s == "bilinear") {
            rep = dms::verify_bilinear(opt);
        } else if (s == "multilinear") {
            rep = dms::verify_multilinear(profile, opt);
        } else if (s == "F") {
            rep = dms::verify_weight_properties();
            rep.seed = a.seed;
        } else {  // selfconsistency: solve at desk scale, then bound the tail
            dms::PropagatorSettings ps;
            ps.max_theta = std::max(1.0, tau + 0.5);
            dms::PropagatorEngine engine(1, a.radius, ps);
            dms::QuadratureRule rule(profile);
            dms::SolverConfig cfg;
            dms::SolitonResult sol = dms::maximize(cfg, profile, engine, rule);
            dms::TailDistribution alpha = dms::tail_distribution(sol.field);
            rep = dms::verify_self_consistency(alpha, tau);
            rep.seed = a.seed;
            dms::DecayFit fit = dms::fit_decay(alpha, tau);
            rep.add_constant("decay_mu_fit", fit.mu);
            rep.add_constant("decay_envelope_constant", fit.envelope_constant);
            dms::VerificationCase c{"decay_super_exponential", fit.mu, 0, 0, true,
                                    fit.super_exponential && fit.mu > 0.0, ""};
            rep.cases.push_back(c);
        }
        if (!rep.passed()) all_pass = false;
        write_text(dir / ("report-" + s + ".json"),
                   dms::report_to_json(rep, embeds, {{"tau", tau}}));
        std::cout << "suite " << s << ": " << (rep.passed() ? "pass" : "FAIL") << "\n";
    }
    return all_pass ? kExitOk : kExitFailed;
}

// ---------------------------------------------------------------------------
// decay

struct DecayArgs {
    std::string soliton;
    std::string field;
    double tau = -1.0;
    double floor = 1e-12;
    std::string out;
};

int run_decay(const DecayArgs& a) {
    dms::GridFunction field(1, 1);
    double tau = a.tau;
    if (!a.soliton.empty()) {
        dms::LoadedSoliton ls = dms::load_soliton(a.soliton);
        field = ls.result.field;
        if (tau < 0.0) tau = ls.tau;
    } else if (!a.field.empty()) {
        field = dms::load_field_csv(a.field);
    } else {
        std::cerr << "decay: need --soliton or --field\n";
        return kExitConfig;
    }
    if (tau < 0.0) {
        std::cerr << "decay: tau unknown; pass --tau\n";
        return kExitConfig;
    }
    if (field.dim() != 1) {
        std::cerr << "decay: one-dimensional fields only\n";
        return kExitConfig;
    }

    json cj = {{"command", "decay"}, {"soliton", a.soliton}, {"field", a.field},
               {"tau", tau},         {"floor", a.floor}};
    const std::string digest = dms::digest_hex(cj.dump());

    dms::TailDistribution alpha = dms::tail_distribution(field);
    const double c = 1.0 + std::log(8.0 * tau);

    fs::path dir = resolve_out(a.out);
    {
        std::ofstream os(dir / "decay.csv");
        dms::write_decay_csv(os, alpha, c);
    }
    write_text(dir / "decay.svg", dms::decay_svg(alpha, c));

    json fj;
    fj["config_digest"] = digest;
    fj["version"] = dms::version_string();
    fj["tau"] = tau;
    fj["c"] = c;
    fj["floor"] = a.floor;

    int exit_code = kExitOk;
    std::string status = "ok";
    try {
        dms::DecayFit fit = dms::fit_decay(alpha, tau, a.floor);
        fj["mu_fit"] = fit.mu;
        fj["intercept"] = fit.intercept;
        fj["envelope_constant"] = fit.envelope_constant;
        fj["super_exponential"] = fit.super_exponential;
        fj["rss_super"] = fit.rss_super;
        fj["rss_exponential"] = fit.rss_exponential;
        fj["points_used"] = fit.points_used;
        if (!fit.super_exponential) {
            status = "not super-exponential";
            exit_code = kExitFailed;
        }
    } catch (const dms::InsufficientDecayRange&) {
        status = "compact support or insufficient decaying range";
        exit_code = kExitFailed;
    }
    dms::VerificationReport sc = dms::verify_self_consistency(alpha, tau, 0.25, a.floor);
    for (const auto& [k, v] : sc.constants) fj["selfconsistency_" + k] = v;
    fj["status"] = status;
    write_text(dir / "fit.json", fj.dump(2) + "\n");
    std::cout << "decay: " << status << "\n";
    return exit_code;
}

// ---------------------------------------------------------------------------
// evolve / compare

struct EvolveArgs {
    std::string mode = "full";
    std::string profile;
    std::string init;  // soliton.json, field csv, or "gaussian"
    double eps = 0.05;
    double d_av = 0.0;
    double t_end = 1.0;
    double step = 1.0 / 64.0;
    int stride = 8;
    int radius = 64;
    double sigma = 4.0;
    bool snapshots = false;
    std::string out;
};

dms::GridFunction load_init(const std::string& init, int radius, double sigma) {
    if (init.empty() || init == "gaussian")
        return dms::gaussian_seed(1, radius, sigma, 1.0);
    if (init.size() > 5 && init.substr(init.size() - 5) == ".json")
        return dms::load_soliton(init).result.field;
    return dms::load_field_csv(init);
}

int run_evolve(const EvolveArgs& a) {
    if (a.mode != "full" && a.mode != "averaged") {
        std::cerr << "evolve: mode must be full or averaged\n";
        return kExitConfig;
    }
    dms::DiffractionProfile profile = dms::load_profile(a.profile);
    dms::GridFunction u0 = load_init(a.init, a.radius, a.sigma);

    dms::PropagatorSettings ps;
    ps.max_theta = std::max(1.0, 2.0 * profile.max_integral() + std::abs(a.d_av) + 0.5);
    dms::PropagatorEngine engine(u0.dim(), u0.radius(), ps);
    dms::QuadratureRule rule(profile);

    dms::EvolutionConfig cfg;
    cfg.eps = a.eps;
    cfg.d_av = a.d_av;
    cfg.t_end = a.t_end;
    cfg.step = a.step;
    cfg.record_stride = a.stride;
    cfg.record_fields = a.snapshots;

    json cj = {{"command", "evolve"}, {"mode", a.mode},   {"profile", a.profile},
               {"init", a.init},      {"eps", a.eps},     {"d_av", a.d_av},
               {"t_end", a.t_end},    {"step", a.step},   {"stride", a.stride}};
    const std::string digest = dms::digest_hex(cj.dump());

    dms::Trajectory traj = a.mode == "full"
                               ? dms::integrate_full(u0, cfg, profile, engine)
                               : dms::integrate_averaged(u0, cfg, profile, engine, rule);

    fs::path dir = resolve_out(a.out);
    {
        std::ofstream os(dir / "trajectory.csv");
        dms::write_trajectory_csv(os, traj);
    }
    if (a.snapshots) {
        for (std::size_t i = 0; i < traj.fields.size(); ++i) {
            std::ostringstream name;
            name << "field_" << i << ".csv";
            dms::save_field_csv((dir / name.str()).string(), traj.fields[i]);
        }
    }
    dms::save_field_csv((dir / "final.csv").string(), traj.fields.back());

    const double slow_units = std::max(1.0, a.eps * a.t_end);
    double l2_drift = 0.0;
    for (double v : traj.l2_trace) l2_drift = std::max(l2_drift, std::abs(v - traj.l2_trace[0]));
    double h_drift = 0.0;
    for (double v : traj.hamiltonian_trace)
        h_drift = std::max(h_drift, std::abs(v - traj.hamiltonian_trace[0]));

    bool pass = a.mode == "full" ? l2_drift <= 1e-9 * slow_units
                                 : (l2_drift <= 1e-8 * slow_units && h_drift <= 1e-6 * slow_units);

    json sj;
    sj["config_digest"] = digest;
    sj["version"] = dms::version_string();
    sj["tau"] = profile.max_integral();
    sj["l2_drift"] = l2_drift;
    if (a.mode == "averaged") sj["hamiltonian_drift"] = h_drift;
    sj["conservation_pass"] = pass;
    write_text(dir / "conservation.json", sj.dump(2) + "\n");
    std::cout << "evolve " << a.mode << ": l2 drift " << l2_drift
              << (a.mode == "averaged" ? " H drift " + dms::format_double17(h_drift) : "")
              << (pass ? " (pass)" : " (FAIL)") << "\n";
    return pass ? kExitOk : kExitFailed;
}

struct CompareArgs {
    std::string profile;
    std::string init;
    std::vector<double> eps = {0.1, 0.05, 0.025};
    double t_end_factor = 1.0;
    double step = 1.0 / 64.0;
    double ratio_bound = 10.0;
    int stride = 4;
    int radius = 64;
    std::string out;
};

int run_compare(const CompareArgs& a) {
    dms::DiffractionProfile profile = dms::load_profile(a.profile);
    dms::GridFunction u0 = load_init(a.init, a.radius, 4.0);

    dms::PropagatorSettings ps;
    ps.max_theta = std::max(1.0, 2.0 * profile.max_integral() + 0.5);
    dms::PropagatorEngine engine(u0.dim(), u0.radius(), ps);
    dms::QuadratureRule rule(profile);

    json cj = {{"command", "compare"},      {"profile", a.profile},
               {"init", a.init},            {"eps", a.eps},
               {"t_end_factor", a.t_end_factor}, {"step", a.step},
               {"ratio_bound", a.ratio_bound}};
    const std::string digest = dms::digest_hex(cj.dump());

    fs::path dir = resolve_out(a.out);
    json report;
    report["config_digest"] = digest;
    report["version"] = dms::version_string();
    report["tau"] = profile.max_integral();
    report["ratio_bound"] = a.ratio_bound;
    json runs = json::array();

    bool pass = true;
    double prev_ratio = std::numeric_limits<double>::infinity();
    for (double eps : a.eps) {
        const double t_end = a.t_end_factor / eps;
        dms::AveragingRun run = dms::compare_averaging(u0, eps, t_end, profile, engine, rule,
                                                       0.0, a.step, a.stride);
        {
            std::ostringstream name;
            name << "deviation_eps" << eps << ".csv";
            std::ofstream os(dir / name.str());
            dms::write_averaging_csv(os, run);
        }
        json rj = {{"eps", eps},
                   {"t_end", t_end},
                   {"max_deviation", run.max_deviation},
                   {"ratio", run.ratio},
                   {"full_l2_drift", run.full_l2_drift},
                   {"averaged_l2_drift", run.averaged_l2_drift},
                   {"averaged_h_drift", run.averaged_h_drift}};
        if (run.ratio > a.ratio_bound) pass = false;
        // must not grow as eps shrinks; 5% covers horizon-sampling wobble
        if (run.ratio > prev_ratio * 1.05) pass = false;
        prev_ratio = run.ratio;
        runs.push_back(rj);
        std::cout << "eps " << eps << ": max deviation " << run.max_deviation << " ratio "
                  << run.ratio << "\n";
    }
    report["runs"] = runs;
    report["pass"] = pass;
    write_text(dir / "closeness.json", report.dump(2) + "\n");
    return pass ? kExitOk : kExitFailed;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepArgs {
    std::vector<std::string> profiles;
    std::vector<double> lambdas = {1.0};
    std::vector<double> epsilons = {0.05};
    int radius = 64;
    double tol = 1e-8;
    unsigned jobs = 0;
    std::string out;
};

int run_sweep(const SweepArgs& a) {
    struct Task {
        std::string profile;
        double lambda;
        double eps;
        std::string status = "pending";
    };
    std::vector<Task> tasks;
    for (const std::string& pr : a.profiles)
        for (double lam : a.lambdas)
            for (double eps : a.epsilons) tasks.push_back({pr, lam, eps});
    if (tasks.empty()) {
        std::cerr << "sweep: no profiles given\n";
        return kExitConfig;
    }

    json cj = {{"command", "sweep"},   {"profiles", a.profiles}, {"lambdas", a.lambdas},
               {"epsilons", a.epsilons}, {"radius", a.radius},   {"tol", a.tol}};
    const std::string digest = dms::digest_hex(cj.dump());

    fs::path root = resolve_out(a.out);
    std::atomic<std::size_t> next{0};
    std::atomic<bool> ok{true};
    unsigned jobs = a.jobs ? a.jobs : std::max(1u, std::thread::hardware_concurrency());
    jobs = std::min<unsigned>(jobs, tasks.size());

    auto worker = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            Task& task = tasks[i];
            try {
                dms::DiffractionProfile profile = dms::load_profile(task.profile);
                std::ostringstream name;
                name << fs::path(task.profile).stem().string() << "_lam" << task.lambda
                     << "_eps" << task.eps;
                fs::path dir = root / name.str();
                fs::create_directories(dir);

                dms::PropagatorSettings ps;
                ps.max_theta = std::max(1.0, 2.0 * profile.max_integral() + 0.5);
                dms::PropagatorEngine engine(1, a.radius, ps);
                dms::QuadratureRule rule(profile);
                dms::SolverConfig cfg;
                cfg.lambda = task.lambda;
                cfg.tolerance = a.tol;
                dms::SolitonResult sol = dms::maximize(cfg, profile, engine, rule);
                dms::save_field_csv((dir / "field.csv").string(), sol.field);
                write_text(dir / "soliton.json",
                           dms::soliton_to_json(sol, "field.csv",
                                                {{"version", dms::version_string()},
                                                 {"config_digest", digest}},
                                                {{"tau", profile.max_integral()}}));
                dms::AveragingRun run =
                    dms::compare_averaging(sol.field, task.eps, 1.0 / task.eps, profile,
                                           engine, rule, 0.0, 1.0 / 64.0, 8);
                json rj = {{"eps", task.eps},
                           {"ratio", run.ratio},
                           {"max_deviation", run.max_deviation},
                           {"tau", profile.max_integral()},
                           {"config_digest", digest},
                           {"version", dms::version_string()}};
                write_text(dir / "closeness.json", rj.dump(2) + "\n");
                task.status = "ok";
            } catch (const std::exception& e) {
                task.status = std::string("failed: ") + e.what();
                ok = false;
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();

    json summary;
    summary["config_digest"] = digest;
    summary["version"] = dms::version_string();
    summary["runs"] = json::array();
    for (const Task& t : tasks)
        summary["runs"].push_back({{"profile", t.profile},
                                   {"lambda", t.lambda},
                                   {"eps", t.eps},
                                   {"status", t.status}});
    write_text(root / "sweep.json", summary.dump(2) + "\n");
    std::cout << "sweep: " << tasks.size() << " runs, " << (ok ? "all ok" : "with failures")
              << "\n";
    return ok ? kExitOk : kExitFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"diffraction-managed soliton laboratory"};
    app.require_subcommand(1);

    SolveArgs sa;
    CLI::App* solve = app.add_subcommand("solve", "compute a constrained maximizer");
    solve->add_option("--profile", sa.profile, "profile json")->required();
    solve->add_option("--lambda", sa.lambda, "constraint |f|^2 = lambda");
    solve->add_option("--radius", sa.radius, "box radius");
    solve->add_option("--tol", sa.tol, "residual tolerance");
    solve->add_option("--max-iter", sa.max_iter, "iteration cap");
    solve->add_option("--sigma", sa.sigma, "Gaussian seed width");
    solve->add_option("--order", sa.order, "quadrature order per segment");
    solve->add_option("--method", sa.method, "gradient_ascent | fixed_point");
    solve->add_option("--out", sa.out, "output directory");

    VerifyArgs va;
    CLI::App* verify = app.add_subcommand("verify", "run inequality verification suites");
    verify->add_option("--suite", va.suite,
                       "norms|kernel|bilinear|multilinear|selfconsistency|F|all");
    verify->add_option("--dims", va.dims, "dimensions, comma separated");
    verify->add_option("--seed", va.seed, "seed for randomized inputs");
    verify->add_option("--count", va.count, "random samples per hard case");
    verify->add_option("--profile", va.profile, "profile json (default two-step)");
    verify->add_option("--radius", va.radius, "box radius for the solve-backed suite");
    verify->add_option("--out", va.out, "output directory");

    DecayArgs da;
    CLI::App* decay = app.add_subcommand("decay", "tail decay analysis of a field");
    decay->add_option("--soliton", da.soliton, "soliton json");
    decay->add_option("--field", da.field, "field csv");
    decay->add_option("--tau", da.tau, "profile peak (needed with --field)");
    decay->add_option("--floor", da.floor, "numerical floor");
    decay->add_option("--out", da.out, "output directory");

    EvolveArgs ea;
    CLI::App* evolve = app.add_subcommand("evolve", "integrate the full or averaged flow");
    evolve->add_option("--mode", ea.mode, "full | averaged");
    evolve->add_option("--profile", ea.profile, "profile json")->required();
    evolve->add_option("--init", ea.init, "soliton json, field csv, or 'gaussian'");
    evolve->add_option("--eps", ea.eps, "nonlinearity strength");
    evolve->add_option("--d-av", ea.d_av, "average diffraction");
    evolve->add_option("--t-end", ea.t_end, "end time in fast units");
    evolve->add_option("--step", ea.step, "time step");
    evolve->add_option("--stride", ea.stride, "record stride");
    evolve->add_option("--radius", ea.radius, "box radius for gaussian init");
    evolve->add_flag("--snapshots", ea.snapshots, "write a field csv per record");
    evolve->add_option("--out", ea.out, "output directory");

    CompareArgs ca;
    CLI::App* compare = app.add_subcommand("compare", "full vs averaged closeness");
    compare->add_option("--profile", ca.profile, "profile json")->required();
    compare->add_option("--init", ca.init, "soliton json or field csv")->required();
    compare->add_option("--eps", ca.eps, "epsilon list");
    compare->add_option("--t-end-factor", ca.t_end_factor, "integrate to factor/eps");
    compare->add_option("--step", ca.step, "time step");
    compare->add_option("--ratio-bound", ca.ratio_bound, "deviation/eps bound");
    compare->add_option("--stride", ca.stride, "record stride");
    compare->add_option("--out", ca.out, "output directory");

    SweepArgs wa;
    CLI::App* sweep = app.add_subcommand("sweep", "fan out solve+compare over tuples");
    sweep->add_option("--profile", wa.profiles, "profile json (repeatable)")->required();
    sweep->add_option("--lambda", wa.lambdas, "lambda list");
    sweep->add_option("--eps", wa.epsilons, "epsilon list");
    sweep->add_option("--radius", wa.radius, "box radius");
    sweep->add_option("--tol", wa.tol, "solver tolerance");
    sweep->add_option("--jobs", wa.jobs, "worker count (default hardware)");
    sweep->add_option("--out", wa.out, "output root");

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) return run_solve(sa);
        if (verify->parsed()) return run_verify(va);
        if (decay->parsed()) return run_decay(da);
        if (evolve->parsed()) return run_evolve(ea);
        if (compare->parsed()) return run_compare(ca);
        if (sweep->parsed()) return run_sweep(wa);
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitConfig;
}
