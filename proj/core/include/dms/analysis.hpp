#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "dms/functional.hpp"
#include "dms/lattice.hpp"
#include "dms/profile.hpp"
#include "dms/propagator.hpp"

namespace dms {

// Tail mass alpha(n) = sqrt(sum_{|x| >= n} |f(x)|^2), n = 0..radius.
// Non-increasing with alpha(0) = |f|_2.
struct TailDistribution {
    std::vector<double> values;

    double at(std::size_t n) const { return n < values.size() ? values[n] : 0.0; }
    std::size_t length() const { return values.size(); }
};

// One-dimensional fields only; single reverse cumulative sweep.
TailDistribution tail_distribution(const GridFunction& f);

// Factorial weight: (n+2)^(n+2) for even n, (n+1)^(n+1) for odd n.
double factorial_weight_log(int n);
double factorial_weight(int n);
// Regularized weight 1/(F(n)^{-1} + eps).
double regularized_weight(int n, double eps);

struct WeightParams {
    double mu = 0.0;   // in [0,1]
    double eps = 0.0;  // in [0,1]
    int base = 0;      // sup taken over n >= base
};

// (F(n)^{-1} + eps)^{-mu}; may overflow to +inf for eps = 0 and large n,
// internal comparisons are done in log space.
double weight_power(int n, const WeightParams& w);

struct WeightedNorm {
    double value = 0.0;
    double log_value = 0.0;
    int argmax = 0;
    bool attained_at_end = false;  // sup hit the last stored index: range too short
};

WeightedNorm weighted_sup_norm(const TailDistribution& alpha, const WeightParams& w);

// ---------------------------------------------------------------------------
// Verification reports

struct VerificationCase {
    std::string name;
    double measured = 0.0;
    double bound = 0.0;
    double ratio = 0.0;
    bool hard = false;  // hard assertion vs reported-only measurement
    bool pass = true;
    std::string note;
};

struct VerificationReport {
    std::string suite;
    std::uint64_t seed = 0;
    std::vector<VerificationCase> cases;
    std::vector<std::pair<std::string, double>> constants;

    bool passed() const;
    const VerificationCase* worst_hard_case() const;
    void add_constant(const std::string& name, double v) { constants.emplace_back(name, v); }
};

std::string report_to_json(const VerificationReport& r,
                           const std::map<std::string, std::string>& embed_strings = {},
                           const std::map<std::string, double>& embed_numbers = {});

struct VerifyOptions {
    std::uint64_t seed = 1;
    std::vector<int> dims = {1, 2};
    int sample_count = 1000;
    double tau = 0.5;            // free-evolution verification window
    int time_grid = 64;          // grid density per unit time for sup_t
    int kernel_max_offset = 128;
    int speed_max_s = 12;
    int separation_min = 2;
    int separation_max = 20;
};

// Lemma-level suites. Hard inequalities (explicit constants) assert; implicit
// constants are measured and reported, never compared to invented thresholds.
VerificationReport verify_norm_inequalities(const DiffractionProfile& p,
                                            const VerifyOptions& opt);
VerificationReport verify_kernel_bounds(const VerifyOptions& opt);
VerificationReport verify_bilinear(const VerifyOptions& opt);
VerificationReport verify_multilinear(const DiffractionProfile& p,
                                      const VerifyOptions& opt);
VerificationReport verify_weight_properties();

// Minimal constants for the two tail self-consistency forms
//   alpha(2n) <= C1 (alpha(n)^3 + e^{-(n+1)(ln(n+1)-c)/2})
//   alpha(2n) <= C2 (alpha(n)^3 + (n+1)^{-delta(n+1)})
// over n with alpha(2n) above the floor; c = 1 + ln(8*tau).
VerificationReport verify_self_consistency(const TailDistribution& alpha, double tau,
                                           double delta = 0.25, double floor = 1e-12);

// log of e^{-(n+1)(ln((n+1)/2) - c)/...} envelopes
double decay_envelope_log(int n, double c);           // -(n+1)/4 (ln((n+1)/2) - c)
double selfconsistency_envelope_log(int n, double c); // -(n+1)/2 (ln(n+1) - c)

struct DecayFit {
    double mu = 0.0;          // slope of ln(alpha) against -(n+1)ln(n+1)
    double intercept = 0.0;
    double c = 0.0;           // 1 + ln(8 tau)
    double envelope_constant = 0.0;  // minimal C with alpha(n) <= C * envelope(n)
    bool super_exponential = false;  // model comparison against a pure exponential
    double rss_super = 0.0;
    double rss_exponential = 0.0;
    int points_used = 0;
    int n_max = 0;
};

struct InsufficientDecayRange : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Least-squares fit of ln(alpha) over entries above the floor; needs >= 8.
DecayFit fit_decay(const TailDistribution& alpha, double tau, double floor = 1e-12);

}  // namespace dms
