#pragma once

// Experiment orchestration: a spec names the experiment kind and its
// parameters, run() dispatches it over seeded replicates, and results
// serialise to a versioned JSON summary plus a CSV of raw samples.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cubeperc/stats.hpp"

namespace cubeperc {

enum class ExperimentKind { percolate, ofpp, richardson, cover, btp, count, analytic, duality, conjecture };

std::string to_string(ExperimentKind kind);
/// InvalidInput for unknown names.
ExperimentKind parse_kind(const std::string& name);

inline constexpr int kResultSchema = 1;
const char* library_version();

struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::percolate;
  /// Numeric parameters: n, c, p, t, s, cap, u, k, eps, K4, ...
  std::map<std::string, double> params;
  /// Flags (oriented, first_hit) and strings (method, what).
  std::map<std::string, std::string> options;
  std::uint64_t reps = 1000;
  std::uint64_t seed = 0;
  int jobs = 1;
  std::string out = "-";
  std::string csv;

  /// InvalidInput unless reps >= 1 and the parameters the kind needs are
  /// present.
  void validate() const;
  double param(const std::string& key) const;
  double param_or(const std::string& key, double fallback) const;
  bool flag(const std::string& key) const;
  std::string option_or(const std::string& key, const std::string& fallback) const;

  bool operator==(const ExperimentSpec&) const = default;
};

struct ExperimentResult {
  ExperimentSpec spec;
  /// One value per replicate; +inf marks a run that never reached its
  /// event (serialised as null).
  std::vector<double> samples;
  /// Per-replicate censoring flags, empty when nothing is censored.
  std::vector<bool> censored;
  std::map<std::string, McEstimate> estimates;
  std::map<std::string, double> values;
  nlohmann::json extra = nlohmann::json::object();
  double wall_time_s = 0.0;
  std::string version;
  std::string rng;

  bool operator==(const ExperimentResult&) const = default;
};

/// Runs the experiment.  Replicate i uses streams derived from (seed, i),
/// so samples are identical for a fixed spec and version whatever the
/// worker count.  Errors from the modules propagate unchanged.
ExperimentResult run(const ExperimentSpec& spec);

nlohmann::json to_json(const ExperimentSpec& spec);
ExperimentSpec spec_from_json(const nlohmann::json& j);
nlohmann::json to_json(const McEstimate& e);
McEstimate estimate_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ExperimentResult& r);
ExperimentResult result_from_json(const nlohmann::json& j);

/// "replicate_id,value" header and one row per sample; values printed with
/// 17 significant digits, +inf as "inf".
std::string samples_csv(const ExperimentResult& r);

/// Writes to the spec's outputs: the count kind writes its table document,
/// other kinds the result summary; "-" means standard output.  The CSV is
/// written when spec.csv is set.
void write_outputs(const ExperimentResult& r);

/// {"n": N, "f": [decimal strings], "F": [decimal strings]}.
nlohmann::json overlap_table_json(int n, const std::string& method);

}  // namespace cubeperc
