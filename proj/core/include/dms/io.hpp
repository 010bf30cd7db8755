#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>

#include "dms/analysis.hpp"
#include "dms/dynamics.hpp"
#include "dms/solver.hpp"

namespace dms {

std::string version_string();

std::string format_double17(double x);

// FNV-1a over the canonical text; used as the config digest in emitted files.
std::uint64_t fnv1a(const std::string& text);
std::string digest_hex(const std::string& text);

// Soliton result serialization. The field itself lives in a CSV file next to
// the JSON; the JSON stores the relative path.
std::string soliton_to_json(const SolitonResult& r, const std::string& field_csv_name,
                            const std::map<std::string, std::string>& embed_strings = {},
                            const std::map<std::string, double>& embed_numbers = {});

struct LoadedSoliton {
    SolitonResult result;
    double tau = 0.0;  // profile peak embedded at save time
};

LoadedSoliton load_soliton(const std::string& json_path);

void write_objective_trace_csv(std::ostream& os, const std::vector<double>& trace);

// Columns t,l2[,hamiltonian][,deviation] depending on what the trajectory carries.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);
void write_averaging_csv(std::ostream& os, const AveragingRun& run);

// (n, alpha, envelope) with the unit-constant decay envelope e^{...}.
void write_decay_csv(std::ostream& os, const TailDistribution& alpha, double c);

// Self-contained log-scale SVG of the tail against the decay envelope.
std::string decay_svg(const TailDistribution& alpha, double c, double floor = 1e-16);

}  // namespace dms
