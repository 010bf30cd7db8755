#pragma once

#include <string>
#include <vector>

namespace dms {

struct ProfileSegment {
    double length;  // positive, lengths sum to 1 over the period
    double value;   // local diffraction on this segment
};

// Mean-zero piecewise-constant diffraction over one period [0,1].
// Carries the running integral D(t) and its peak tau = sup_t |D(t)|.
class DiffractionProfile {
public:
    explicit DiffractionProfile(std::vector<ProfileSegment> segments);

    static DiffractionProfile two_step();  // (1/2,+1),(1/2,-1)
    static DiffractionProfile zero();      // (1,0)

    const std::vector<ProfileSegment>& segments() const { return segments_; }

    // D(t) = int_0^t of the profile, exact piecewise-linear. t must be in [0,1].
    double integral(double t) const;

    // tau; attained at a segment breakpoint since D is piecewise linear.
    double max_integral() const { return tau_; }

    // Cumulative breakpoints 0 = b_0 < b_1 < ... < b_m = 1.
    const std::vector<double>& breakpoints() const { return breakpoints_; }

    // D at each breakpoint (exact partial sums).
    const std::vector<double>& breakpoint_integrals() const { return integrals_; }

private:
    std::vector<ProfileSegment> segments_;
    std::vector<double> breakpoints_;
    std::vector<double> integrals_;
    double tau_;
};

DiffractionProfile profile_from_json(const std::string& text);
std::string profile_to_json(const DiffractionProfile& p);
DiffractionProfile load_profile(const std::string& path);
void save_profile(const std::string& path, const DiffractionProfile& p);

}  // namespace dms
