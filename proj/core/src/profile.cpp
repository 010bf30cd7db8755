#include "dms/profile.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace dms {

DiffractionProfile::DiffractionProfile(std::vector<ProfileSegment> segments)
    : segments_(std::move(segments)) {
    if (segments_.empty())
        throw std::invalid_argument("DiffractionProfile: no segments");

    double total = 0.0;
    double mean = 0.0;
    breakpoints_.push_back(0.0);
    integrals_.push_back(0.0);
    for (const ProfileSegment& s : segments_) {
        if (!(s.length > 0.0))
            throw std::invalid_argument("DiffractionProfile: segment length must be positive");
        total += s.length;
        mean += s.length * s.value;
        breakpoints_.push_back(total);
        integrals_.push_back(mean);
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw std::invalid_argument("DiffractionProfile: segment lengths must sum to 1");
    if (std::abs(mean) > 1e-12)
        throw std::invalid_argument("DiffractionProfile: profile must have mean zero");
    breakpoints_.back() = 1.0;

    tau_ = 0.0;
    for (double v : integrals_) tau_ = std::max(tau_, std::abs(v));
}

DiffractionProfile DiffractionProfile::two_step() {
    return DiffractionProfile({{0.5, 1.0}, {0.5, -1.0}});
}

DiffractionProfile DiffractionProfile::zero() {
    return DiffractionProfile({{1.0, 0.0}});
}

double DiffractionProfile::integral(double t) const {
    if (!(t >= 0.0 && t <= 1.0))
        throw std::domain_error("DiffractionProfile::integral: t outside [0,1]");
    std::size_t i = 0;
    while (i + 1 < segments_.size() && t > breakpoints_[i + 1]) ++i;
    return integrals_[i] + (t - breakpoints_[i]) * segments_[i].value;
}

DiffractionProfile profile_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    if (!j.contains("segments") || !j["segments"].is_array())
        throw std::runtime_error("profile json: missing \"segments\" array");
    std::vector<ProfileSegment> segs;
    for (const auto& s : j["segments"]) {
        if (!s.contains("length") || !s.contains("value"))
            throw std::runtime_error("profile json: segment needs \"length\" and \"value\"");
        segs.push_back({s["length"].get<double>(), s["value"].get<double>()});
    }
    return DiffractionProfile(std::move(segs));
}

std::string profile_to_json(const DiffractionProfile& p) {
    nlohmann::json segs = nlohmann::json::array();
    for (const ProfileSegment& s : p.segments())
        segs.push_back({{"length", s.length}, {"value", s.value}});
    nlohmann::json j;
    j["segments"] = segs;
    j["tau"] = p.max_integral();
    return j.dump(2) + "\n";
}

DiffractionProfile load_profile(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open profile: " + path);
    std::stringstream ss;
    ss << is.rdbuf();
    return profile_from_json(ss.str());
}

void save_profile(const std::string& path, const DiffractionProfile& p) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    os << profile_to_json(p);
}

}  // namespace dms
