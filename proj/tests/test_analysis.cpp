#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "dms/analysis.hpp"
#include "dms/random.hpp"

using namespace dms;

TEST_CASE("tail distribution basics") {
    GridFunction d0 = GridFunction::delta(1, 8);
    TailDistribution a = tail_distribution(d0);
    CHECK(a.values[0] == 1.0);
    for (std::size_t n = 1; n < a.length(); ++n) CHECK(a.values[n] == 0.0);

    GridFunction f(1, 8);
    f.set({-1, 0, 0}, 1.0);
    f.set({0, 0, 0}, 1.0);
    f.set({1, 0, 0}, 1.0);
    TailDistribution b = tail_distribution(f);
    CHECK(b.values[1] == doctest::Approx(std::sqrt(2.0)));

    Rng rng(1);
    for (int k = 0; k < 100; ++k) {
        GridFunction g = random_field(rng, 1, 16, 12);
        TailDistribution t = tail_distribution(g);
        CHECK(t.values[0] == doctest::Approx(l2_norm(g)).epsilon(1e-14));
        for (std::size_t n = 0; n + 1 < t.length(); ++n)
            CHECK(t.values[n + 1] <= t.values[n]);
    }

    CHECK_THROWS_AS(tail_distribution(GridFunction(2, 4)), std::invalid_argument);
}

TEST_CASE("factorial weight anchor values") {
    CHECK(factorial_weight(0) == 4.0);
    CHECK(factorial_weight(1) == 4.0);
    CHECK(factorial_weight(2) == 256.0);
    CHECK(factorial_weight(2) / std::pow(factorial_weight(1), 3) == 4.0);

    // mu = 0 collapses the weight
    WeightParams w{0.0, 0.7, 0};
    for (int n : {0, 5, 40}) CHECK(weight_power(n, w) == 1.0);
}

TEST_CASE("weighted norm against direct evaluation") {
    TailDistribution alpha;
    for (int n = 0; n <= 30; ++n) alpha.values.push_back(std::exp(-0.6 * n));

    WeightParams w{0.1, 0.2, 3};
    WeightedNorm got = weighted_sup_norm(alpha, w);
    double expected = 0.0;
    for (int n = 3; n <= 30; ++n)
        expected = std::max(expected, weight_power(n, w) * alpha.values[n]);
    CHECK(got.value == doctest::Approx(expected).epsilon(1e-12));

    // mu = 0: the sup is alpha(b) by monotonicity
    CHECK(weighted_sup_norm(alpha, {0.0, 0.0, 5}).value == alpha.values[5]);

    // beyond the support of a compact field the norm vanishes
    GridFunction d0 = GridFunction::delta(1, 10);
    TailDistribution t = tail_distribution(d0);
    CHECK(weighted_sup_norm(t, {0.3, 0.0, 2}).value == 0.0);

    // antitone in eps
    double v_half = weighted_sup_norm(alpha, {0.4, 0.5, 0}).value;
    double v_one = weighted_sup_norm(alpha, {0.4, 1.0, 0}).value;
    CHECK(v_half >= v_one);
}

TEST_CASE("weight properties suite passes") {
    VerificationReport rep = verify_weight_properties();
    for (const VerificationCase& c : rep.cases) {
        INFO(c.name);
        CHECK(c.pass);
    }
    CHECK(rep.passed());
    bool saw_sup = false;
    for (const auto& [k, v] : rep.constants)
        if (k == "doubling_ratio_sup") {
            saw_sup = true;
            CHECK(v == doctest::Approx(4.0).epsilon(1e-13));
        }
    CHECK(saw_sup);
}

TEST_CASE("self-consistency constants against a direct scan") {
    // synthetic geometric tail
    TailDistribution alpha;
    for (int n = 0; n <= 40; ++n) alpha.values.push_back(std::pow(2.0, -n));
    const double tau = 0.5;
    VerificationReport rep = verify_self_consistency(alpha, tau, 0.25, 1e-12);
    CHECK(rep.passed());

    double c1 = 0.0, c2 = 0.0;
    bool found1 = false;
    for (const auto& [k, v] : rep.constants) {
        if (k == "C1") {
            c1 = v;
            found1 = true;
        }
        if (k == "C2") c2 = v;
    }
    REQUIRE(found1);

    // independent scan oracle
    const double c = 1.0 + std::log(8.0 * tau);
    double expect1 = 0.0, expect2 = 0.0;
    for (int n = 0; 2 * n <= 40; ++n) {
        double a2n = alpha.values[2 * n];
        if (a2n <= 1e-12) continue;
        double an = alpha.values[n];
        double t1 = std::exp(-(n + 1.0) * (std::log(n + 1.0) - c) / 2.0);
        double t2 = std::pow(n + 1.0, -0.25 * (n + 1.0));
        expect1 = std::max(expect1, a2n / (an * an * an + t1));
        expect2 = std::max(expect2, a2n / (an * an * an + t2));
    }
    CHECK(c1 == doctest::Approx(expect1).epsilon(1e-12));
    CHECK(c2 == doctest::Approx(expect2).epsilon(1e-12));
}

TEST_CASE("self-consistency of a compact field is trivial") {
    GridFunction d0 = GridFunction::delta(1, 10);
    TailDistribution alpha = tail_distribution(d0);
    VerificationReport rep = verify_self_consistency(alpha, 0.5);
    CHECK(rep.passed());
    for (const auto& [k, v] : rep.constants)
        if (k == "C1") CHECK(v <= 1.0);  // alpha(0)/(alpha(0)^3 + tail) < 1
}

TEST_CASE("decay fit recovers exact synthetic exponents") {
    // alpha(n) = (n+1)^{-(n+1)/4}: the fitted rate must be 1/4
    TailDistribution alpha;
    for (int n = 0; n <= 50; ++n)
        alpha.values.push_back(std::exp(-0.25 * (n + 1.0) * std::log(n + 1.0)));
    DecayFit fit = fit_decay(alpha, 0.5, 1e-300);
    CHECK(fit.mu == doctest::Approx(0.25).epsilon(0.02));
    CHECK(fit.super_exponential);
    CHECK(std::isfinite(fit.envelope_constant));
}

TEST_CASE("pure exponential is flagged as not super-exponential") {
    TailDistribution alpha;
    for (int n = 0; n <= 50; ++n) alpha.values.push_back(std::exp(-static_cast<double>(n)));
    DecayFit fit = fit_decay(alpha, 0.5, 1e-300);
    CHECK_FALSE(fit.super_exponential);

    // the fitted rate shrinks as the window grows
    TailDistribution longer;
    for (int n = 0; n <= 120; ++n) longer.values.push_back(std::exp(-0.5 * n));
    TailDistribution shorter;
    for (int n = 0; n <= 20; ++n) shorter.values.push_back(std::exp(-0.5 * n));
    DecayFit f_long = fit_decay(longer, 0.5, 1e-300);
    DecayFit f_short = fit_decay(shorter, 0.5, 1e-300);
    CHECK(f_long.mu < f_short.mu);
}

TEST_CASE("decay fit needs a long enough range") {
    TailDistribution alpha;
    for (int n = 0; n < 5; ++n) alpha.values.push_back(1.0 / (n + 1.0));
    CHECK_THROWS_AS(fit_decay(alpha, 0.5), InsufficientDecayRange);
}

TEST_CASE("norm suite passes and reports") {
    DiffractionProfile p = DiffractionProfile::two_step();
    VerifyOptions opt;
    opt.seed = 7;
    opt.sample_count = 150;  // trimmed for unit-test time; acceptance runs 1000
    VerificationReport rep = verify_norm_inequalities(p, opt);
    for (const VerificationCase& c : rep.cases) {
        INFO(c.name);
        CHECK(c.pass);
    }
}

TEST_CASE("kernel suite passes in one and two dimensions") {
    VerifyOptions opt;
    opt.time_grid = 16;  // trimmed grid for unit-test time
    opt.kernel_max_offset = 48;
    opt.speed_max_s = 8;
    VerificationReport rep = verify_kernel_bounds(opt);
    for (const VerificationCase& c : rep.cases) {
        INFO(c.name);
        CHECK(c.pass);
    }
}

TEST_CASE("bilinear suite passes") {
    VerifyOptions opt;
    opt.time_grid = 16;
    opt.separation_max = 12;
    VerificationReport rep = verify_bilinear(opt);
    for (const VerificationCase& c : rep.cases) {
        INFO(c.name);
        CHECK(c.pass);
    }
}

TEST_CASE("multilinear suite passes") {
    DiffractionProfile p = DiffractionProfile::two_step();
    VerifyOptions opt;
    opt.separation_max = 14;
    VerificationReport rep = verify_multilinear(p, opt);
    for (const VerificationCase& c : rep.cases) {
        INFO(c.name);
        CHECK(c.pass);
    }
}

TEST_CASE("report json is stable and carries the schema") {
    VerificationReport rep = verify_weight_properties();
    std::string a = report_to_json(rep, {{"config_digest", "abc"}}, {{"tau", 0.5}});
    std::string b = report_to_json(rep, {{"config_digest", "abc"}}, {{"tau", 0.5}});
    CHECK(a == b);
    CHECK(a.find("\"suite\"") != std::string::npos);
    CHECK(a.find("\"verdict\"") != std::string::npos);
    CHECK(a.find("\"constants\"") != std::string::npos);
}
