#include "dms/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace dms {

std::string version_string() { return "dmsoliton 0.1.0"; }

std::string format_double17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::uint64_t fnv1a(const std::string& text) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string digest_hex(const std::string& text) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a(text)));
    return buf;
}

std::string soliton_to_json(const SolitonResult& r, const std::string& field_csv_name,
                            const std::map<std::string, std::string>& embed_strings,
                            const std::map<std::string, double>& embed_numbers) {
    nlohmann::json j;
    j["lambda"] = r.lambda;
    j["p_lambda"] = r.p_lambda;
    j["omega"] = r.omega;
    j["residual"] = r.residual;
    j["iterations"] = r.iterations;
    j["converged"] = r.converged;
    j["objective_trace"] = r.objective_trace;
    j["field"] = field_csv_name;
    j["radius"] = r.field.radius();
    j["dim"] = r.field.dim();
    for (const auto& [k, v] : embed_strings) j[k] = v;
    for (const auto& [k, v] : embed_numbers) j[k] = v;
    return j.dump(2) + "\n";
}

LoadedSoliton load_soliton(const std::string& json_path) {
    std::ifstream is(json_path);
    if (!is) throw std::runtime_error("cannot open: " + json_path);
    nlohmann::json j = nlohmann::json::parse(is);

    LoadedSoliton out;
    out.result.lambda = j.at("lambda").get<double>();
    out.result.p_lambda = j.at("p_lambda").get<double>();
    out.result.omega = j.at("omega").get<double>();
    out.result.residual = j.at("residual").get<double>();
    out.result.iterations = j.at("iterations").get<int>();
    out.result.converged = j.value("converged", true);
    if (j.contains("objective_trace"))
        out.result.objective_trace = j["objective_trace"].get<std::vector<double>>();
    if (j.contains("tau")) out.tau = j["tau"].get<double>();

    std::filesystem::path base = std::filesystem::path(json_path).parent_path();
    std::string field_name = j.at("field").get<std::string>();
    out.result.field = load_field_csv((base / field_name).string());
    return out;
}

void write_objective_trace_csv(std::ostream& os, const std::vector<double>& trace) {
    os << "iteration,objective\n";
    for (std::size_t i = 0; i < trace.size(); ++i)
        os << i << "," << format_double17(trace[i]) << "\n";
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
    const bool has_h = !traj.hamiltonian_trace.empty();
    os << "t,l2" << (has_h ? ",hamiltonian" : "") << "\n";
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        os << format_double17(traj.times[i]) << "," << format_double17(traj.l2_trace[i]);
        if (has_h) os << "," << format_double17(traj.hamiltonian_trace[i]);
        os << "\n";
    }
}

void write_averaging_csv(std::ostream& os, const AveragingRun& run) {
    os << "t,deviation\n";
    for (std::size_t i = 0; i < run.times.size(); ++i)
        os << format_double17(run.times[i]) << "," << format_double17(run.deviations[i])
           << "\n";
}

void write_decay_csv(std::ostream& os, const TailDistribution& alpha, double c) {
    os << "n,alpha,envelope\n";
    for (std::size_t n = 0; n < alpha.length(); ++n)
        os << n << "," << format_double17(alpha.values[n]) << ","
           << format_double17(std::exp(decay_envelope_log(static_cast<int>(n), c))) << "\n";
}

std::string decay_svg(const TailDistribution& alpha, double c, double floor) {
    const int w = 640, h = 420, ml = 60, mr = 20, mt = 20, mb = 40;
    const int n_max = static_cast<int>(alpha.length()) - 1;

    double y_lo = 0.0, y_hi = 1.0;  // log10 range
    bool first = true;
    auto see = [&](double v) {
        if (v <= floor) return;
        double ly = std::log10(v);
        if (first) {
            y_lo = y_hi = ly;
            first = false;
        } else {
            y_lo = std::min(y_lo, ly);
            y_hi = std::max(y_hi, ly);
        }
    };
    for (double a : alpha.values) see(a);
    for (int n = 0; n <= n_max; ++n) see(std::exp(decay_envelope_log(n, c)));
    if (first) {
        y_lo = -16;
        y_hi = 0;
    }
    y_hi += 0.5;
    y_lo -= 0.5;

    auto px = [&](double n) { return ml + (w - ml - mr) * (n_max > 0 ? n / n_max : 0.0); };
    auto py = [&](double v) {
        double ly = std::log10(std::max(v, floor));
        return mt + (h - mt - mb) * (y_hi - ly) / (y_hi - y_lo);
    };

    auto polyline = [&](auto value, const char* color) {
        std::ostringstream ss;
        ss << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (int n = 0; n <= n_max; ++n) {
            double v = value(n);
            if (v <= floor) break;
            ss << px(n) << "," << py(v) << " ";
        }
        ss << "\"/>\n";
        return ss.str();
    };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
        << "\">\n";
    svg << "<rect width=\"" << w << "\" height=\"" << h << "\" fill=\"white\"/>\n";
    svg << "<line x1=\"" << ml << "\" y1=\"" << h - mb << "\" x2=\"" << w - mr << "\" y2=\""
        << h - mb << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << h - mb
        << "\" stroke=\"black\"/>\n";
    for (int dec = static_cast<int>(std::ceil(y_lo)); dec <= static_cast<int>(std::floor(y_hi));
         dec += 4) {
        double y = mt + (h - mt - mb) * (y_hi - dec) / (y_hi - y_lo);
        svg << "<text x=\"4\" y=\"" << y + 4 << "\" font-size=\"11\">1e" << dec << "</text>\n";
        svg << "<line x1=\"" << ml - 4 << "\" y1=\"" << y << "\" x2=\"" << ml << "\" y2=\"" << y
            << "\" stroke=\"black\"/>\n";
    }
    svg << "<text x=\"" << (w / 2) << "\" y=\"" << h - 10 << "\" font-size=\"12\">n</text>\n";
    svg << polyline([&](int n) { return alpha.at(n); }, "#1f77b4");
    svg << polyline([&](int n) { return std::exp(decay_envelope_log(n, c)); }, "#d62728");
    svg << "<text x=\"" << w - 200 << "\" y=\"" << mt + 14
        << "\" font-size=\"12\" fill=\"#1f77b4\">tail alpha(n)</text>\n";
    svg << "<text x=\"" << w - 200 << "\" y=\"" << mt + 30
        << "\" font-size=\"12\" fill=\"#d62728\">decay envelope</text>\n";
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace dms
