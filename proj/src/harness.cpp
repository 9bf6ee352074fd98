#include "cubeperc/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "cubeperc/analytic.hpp"
#include "cubeperc/btp.hpp"
#include "cubeperc/combinatorics.hpp"
#include "cubeperc/errors.hpp"
#include "cubeperc/fpp.hpp"
#include "cubeperc/parallel.hpp"
#include "cubeperc/percolation.hpp"
#include "cubeperc/rng.hpp"

#ifndef CUBEPERC_VERSION
#define CUBEPERC_VERSION "0.0.0"
#endif

namespace cubeperc {

using nlohmann::json;

namespace {

constexpr std::pair<ExperimentKind, const char*> kKindNames[] = {
    {ExperimentKind::percolate, "percolate"}, {ExperimentKind::ofpp, "ofpp"},
    {ExperimentKind::richardson, "richardson"}, {ExperimentKind::cover, "cover"},
    {ExperimentKind::btp, "btp"},             {ExperimentKind::count, "count"},
    {ExperimentKind::analytic, "analytic"},   {ExperimentKind::duality, "duality"},
    {ExperimentKind::conjecture, "conjecture"},
};

json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }
double number_from(const json& j) {
  return j.is_null() ? std::numeric_limits<double>::infinity() : j.get<double>();
}

int dimension_param(const ExperimentSpec& spec) {
  const double n = spec.param("n");
  if (n != std::floor(n)) throw InvalidInput("n must be an integer");
  check_dimension(static_cast<int>(n));
  return static_cast<int>(n);
}

void summarise(ExperimentResult& r) {
  std::vector<double> finite;
  for (double x : r.samples) {
    if (std::isfinite(x)) finite.push_back(x);
  }
  r.values["finite_samples"] = static_cast<double>(finite.size());
  if (finite.empty()) return;
  const auto m = moments(finite);
  r.values["mean"] = m.mean;
  r.values["stderr"] = m.stderr_();
  r.values["median"] = median(r.samples);
  r.values["min"] = *std::min_element(finite.begin(), finite.end());
  r.values["max"] = *std::max_element(finite.begin(), finite.end());
}

std::uint64_t count_at_most(const std::vector<double>& xs, double bound) {
  return static_cast<std::uint64_t>(std::count_if(xs.begin(), xs.end(), [bound](double x) { return x <= bound; }));
}

void run_percolate(const ExperimentSpec& spec, ExperimentResult& r) {
  const int n = dimension_param(spec);
  const double c = spec.params.contains("c") ? spec.param("c") : spec.param("p") * n;
  const double p = c / n;
  if (!(p >= 0.0 && p <= 1.0)) throw RangeError("p = c/n must lie in [0, 1]");
  const bool oriented = spec.flag("oriented");
  const auto hits = replicate_map(spec.reps, spec.jobs, [&](std::uint64_t i) -> double {
    const Stream field = Stream::derive(spec.seed, i);
    return (oriented ? oriented_connected_lazy(n, p, field) : unoriented_connected_lazy(n, p, field)) ? 1.0 : 0.0;
  });
  r.samples = hits;
  r.estimates["connection"] = McEstimate::from_counts(
      count_at_most(hits, 2.0) - count_at_most(hits, 0.5), spec.reps, spec.seed,
      {{"n", n}, {"c", c}, {"p", p}, {"oriented", oriented ? 1.0 : 0.0}});
  r.values["p"] = p;
  if (n <= 3) r.values["exact"] = exact_connection_probability(n, p, oriented);
  if (!oriented && c > 0.0 && c < 1.0) r.values["subcritical_bound"] = subcritical_bound(n, c);
}

void run_ofpp(const ExperimentSpec& spec, ExperimentResult& r) {
  const int n = dimension_param(spec);
  const double eps = spec.param_or("eps", 0.2);
  r.samples = replicate_map(spec.reps, spec.jobs, [&](std::uint64_t i) {
    return oriented_fpp_time(WeightAssignment::exponential(n, true, Stream::derive(spec.seed, i)));
  });
  summarise(r);
  r.estimates["at_most_1_minus_eps"] =
      McEstimate::from_counts(count_at_most(r.samples, 1.0 - eps), spec.reps, spec.seed, {{"n", n}, {"eps", eps}});
  r.values["eps"] = eps;
  r.values["first_moment_bound"] = ofpp_first_moment_bound(n, eps, spec.param_or("K4", 0.0));
}

void run_richardson(const ExperimentSpec& spec, ExperimentResult& r) {
  const int n = dimension_param(spec);
  const double horizon = spec.param_or("t", kNeverInfected);
  r.samples = replicate_map(spec.reps, spec.jobs, [&](std::uint64_t i) {
    return richardson_simulate(n, Stream::derive(spec.seed, i), horizon).top();
  });
  if (std::any_of(r.samples.begin(), r.samples.end(), [](double x) { return std::isinf(x); })) {
    r.censored.resize(r.samples.size());
    for (std::size_t i = 0; i < r.samples.size(); ++i) r.censored[i] = std::isinf(r.samples[i]);
  }
  summarise(r);
  if (std::isfinite(horizon)) {
    r.estimates["top_infected_by_t"] =
        McEstimate::from_counts(count_at_most(r.samples, horizon), spec.reps, spec.seed, {{"n", n}, {"t", horizon}});
  }
}

void run_cover(const ExperimentSpec& spec, ExperimentResult& r) {
  const int n = dimension_param(spec);
  r.samples = replicate_map(spec.reps, spec.jobs, [&](std::uint64_t i) {
    return cover_time(richardson_simulate(n, Stream::derive(spec.seed, i)));
  });
  summarise(r);
  const auto constants = theorem_constants();
  const std::map<std::string, double> params{{"n", n}};
  r.estimates["below_cover_upper"] = McEstimate::from_counts(
      static_cast<std::uint64_t>(std::count_if(r.samples.begin(), r.samples.end(),
                                               [&](double x) { return x < constants.at("cover_upper"); })),
      spec.reps, spec.seed, params);
  r.estimates["below_cover_lower"] = McEstimate::from_counts(
      static_cast<std::uint64_t>(std::count_if(r.samples.begin(), r.samples.end(),
                                               [&](double x) { return x < constants.at("cover_lower"); })),
      spec.reps, spec.seed, params);
  r.values["cover_upper"] = constants.at("cover_upper");
  r.values["cover_lower"] = constants.at("cover_lower");
}

void run_btp(const ExperimentSpec& spec, ExperimentResult& r) {
  const int n = dimension_param(spec);
  const auto cap = static_cast<std::uint64_t>(spec.param_or("cap", static_cast<double>(kDefaultParticleCap)));
  const Mask top = full_mask(n);
  if (spec.flag("first_hit")) {
    const auto hits = replicate_map(spec.reps, spec.jobs, [&](std::uint64_t i) {
      return btp_first_hit(n, top, cap, Stream::derive(spec.seed, i));
    });
    r.samples.reserve(hits.size());
    bool any_censored = false;
    for (const FirstHit& h : hits) {
      r.samples.push_back(h.time);
      any_censored = any_censored || h.censored;
    }
    if (any_censored) {
      for (const FirstHit& h : hits) r.censored.push_back(h.censored);
    }
    summarise(r);
    r.values["censored"] = static_cast<double>(std::count(r.censored.begin(), r.censored.end(), true));
    if (spec.params.contains("t")) {
      const double t = spec.param("t");
      std::uint64_t hit_by_t = 0;
      for (const FirstHit& h : hits) hit_by_t += (!h.censored && h.time <= t) ? 1 : 0;
      r.estimates["hit_by_t"] = McEstimate::from_counts(hit_by_t, spec.reps, spec.seed, {{"n", n}, {"t", t}});
      r.values["m1_top"] = btp_mean(n, n, t);
    }
    return;
  }
  const double t = spec.param("t");
  const auto pops = replicate_map(spec.reps, spec.jobs, [&](std::uint64_t i) {
    const BtpPopulation pop = btp_simulate(n, t, cap, Stream::derive(spec.seed, i));
    return std::tuple<double, double, bool>(static_cast<double>(pop.at(top)), static_cast<double>(pop.total),
                                            pop.status == BtpStatus::overflow);
  });
  std::vector<double> totals;
  bool any_censored = false;
  for (const auto& [z_top, total, overflow] : pops) {
    r.samples.push_back(z_top);
    totals.push_back(total);
    any_censored = any_censored || overflow;
  }
  if (any_censored) {
    for (const auto& p : pops) r.censored.push_back(std::get<2>(p));
  }
  summarise(r);
  r.values["mean_total"] = moments(totals).mean;
  r.values["expected_total"] = std::exp(n * t);
  r.values["m1_top"] = btp_mean(n, n, t);
}

void run_analytic(const ExperimentSpec& spec, ExperimentResult& r) {
  const std::string what = spec.option_or("what", "constants");
  if (what == "extinction") {
    const auto e = extinction_probability(spec.param("c"));
    r.values = {{"c", e.c}, {"x", e.x}, {"limit_prob", e.limit_prob}};
  } else if (what == "constants") {
    r.values = theorem_constants();
  } else if (what == "erlang") {
    const int n = static_cast<int>(spec.param("n"));
    const double u = spec.param("u");
    const double lead = std::exp(-u + n * std::log(u) - std::lgamma(n + 1.0));
    r.values = {{"n", n}, {"u", u}, {"tail", erlang_tail(n, u)}, {"lower", lead},
                {"upper", (1.0 + std::exp(1.0) / (n + 1.0)) * lead}};
  } else if (what == "R") {
    const int n = static_cast<int>(spec.param("n"));
    const int k = static_cast<int>(spec.param("k"));
    const double lr = log_R(n, k);
    r.values = {{"n", n}, {"k", k}, {"log_R", lr}, {"R", std::exp(lr)}};
    if (k >= 2) r.values["ratio_times_n"] = std::exp(log_R(n, k - 1) - lr) * n;
  } else {
    throw InvalidInput("unknown analytic quantity '" + what + "' (extinction|constants|erlang|R)");
  }
}

void run_duality(const ExperimentSpec& spec, ExperimentResult& r) {
  const int n = dimension_param(spec);
  const double t = spec.param("t");
  const double s = spec.param("s");
  if (!(s >= 0.0 && s <= t)) throw RangeError("duality needs 0 <= s <= t");
  const auto outcomes = replicate_map(spec.reps, spec.jobs, [&](std::uint64_t i) {
    return duality_replicate(n, t, s, spec.seed, i);
  });
  std::uint64_t fwd = 0;
  std::uint64_t meet = 0;
  json meets = json::array();
  for (const auto& o : outcomes) {
    r.samples.push_back(o.forward ? 1.0 : 0.0);
    meets.push_back(o.meet ? 1 : 0);
    fwd += o.forward;
    meet += o.meet;
  }
  const std::map<std::string, double> params{{"n", n}, {"t", t}, {"s", s}};
  r.estimates["forward"] = McEstimate::from_counts(fwd, spec.reps, spec.seed, params);
  r.estimates["intersection"] = McEstimate::from_counts(meet, spec.reps, spec.seed, params);
  r.values["z"] = z_difference(r.estimates["forward"], r.estimates["intersection"]);
  r.extra["intersection_samples"] = std::move(meets);
}

void run_conjecture(const ExperimentSpec& spec, ExperimentResult& r) {
  const int n = dimension_param(spec);
  const auto report = conjecture_monotonicity_test(n, spec.reps, spec.seed, spec.jobs);
  r.samples = replicate_map(spec.reps, spec.jobs, [&](std::uint64_t i) {
    return unoriented_infection_times(WeightAssignment::exponential(n, false, Stream::derive(spec.seed, i))).top();
  });
  json rows = json::array();
  for (const auto& row : report.rows) {
    rows.push_back({{"y", row.y}, {"cdf_gap", row.cdf_gap}, {"mean0", row.mean0}, {"mean1", row.mean1},
                    {"mean_diff_se", row.mean_diff_se}, {"cdf_flagged", row.cdf_flagged},
                    {"mean_flagged", row.mean_flagged}});
  }
  r.extra["rows"] = std::move(rows);
  r.values["cdf_threshold"] = report.cdf_threshold;
  r.values["alpha"] = report.alpha;
  r.values["any_flagged"] = report.any_flagged ? 1.0 : 0.0;
}

}  // namespace

std::string to_string(ExperimentKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

ExperimentKind parse_kind(const std::string& name) {
  for (const auto& [k, label] : kKindNames) {
    if (name == label) return k;
  }
  throw InvalidInput("unknown experiment kind '" + name + "'");
}

const char* library_version() { return CUBEPERC_VERSION; }

double ExperimentSpec::param(const std::string& key) const {
  const auto it = params.find(key);
  if (it == params.end()) throw InvalidInput("missing parameter --" + key + " for " + to_string(kind));
  return it->second;
}

double ExperimentSpec::param_or(const std::string& key, double fallback) const {
  const auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

bool ExperimentSpec::flag(const std::string& key) const {
  const auto it = options.find(key);
  return it != options.end() && it->second != "false" && it->second != "0";
}

std::string ExperimentSpec::option_or(const std::string& key, const std::string& fallback) const {
  const auto it = options.find(key);
  return it == options.end() ? fallback : it->second;
}

void ExperimentSpec::validate() const {
  if (reps < 1) throw InvalidInput("reps must be at least 1");
  switch (kind) {
    case ExperimentKind::analytic:
      break;
    case ExperimentKind::percolate:
      param("n");
      if (!params.contains("c") && !params.contains("p")) throw InvalidInput("percolate needs --c or --p");
      break;
    case ExperimentKind::duality:
      param("n");
      param("t");
      param("s");
      break;
    case ExperimentKind::btp:
      param("n");
      if (!flag("first_hit")) param("t");
      break;
    default:
      param("n");
  }
}

ExperimentResult run(const ExperimentSpec& spec) {
  spec.validate();
  const auto start = std::chrono::steady_clock::now();
  ExperimentResult r;
  r.spec = spec;
  r.version = library_version();
  r.rng = kRngName;
  switch (spec.kind) {
    case ExperimentKind::percolate:
      run_percolate(spec, r);
      break;
    case ExperimentKind::ofpp:
      run_ofpp(spec, r);
      break;
    case ExperimentKind::richardson:
      run_richardson(spec, r);
      break;
    case ExperimentKind::cover:
      run_cover(spec, r);
      break;
    case ExperimentKind::btp:
      run_btp(spec, r);
      break;
    case ExperimentKind::count: {
      const int n = dimension_param(spec);
      r.extra = overlap_table_json(n, spec.option_or("method", "dp"));
      break;
    }
    case ExperimentKind::analytic:
      run_analytic(spec, r);
      break;
    case ExperimentKind::duality:
      run_duality(spec, r);
      break;
    case ExperimentKind::conjecture:
      run_conjecture(spec, r);
      break;
  }
  r.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

json to_json(const ExperimentSpec& spec) {
  return {{"kind", to_string(spec.kind)}, {"params", spec.params}, {"options", spec.options},
          {"reps", spec.reps},            {"seed", spec.seed},     {"jobs", spec.jobs},
          {"out", spec.out},              {"csv", spec.csv}};
}

ExperimentSpec spec_from_json(const json& j) {
  ExperimentSpec spec;
  spec.kind = parse_kind(j.at("kind").get<std::string>());
  spec.params = j.at("params").get<std::map<std::string, double>>();
  spec.options = j.at("options").get<std::map<std::string, std::string>>();
  spec.reps = j.at("reps").get<std::uint64_t>();
  spec.seed = j.at("seed").get<std::uint64_t>();
  spec.jobs = j.at("jobs").get<int>();
  spec.out = j.at("out").get<std::string>();
  spec.csv = j.at("csv").get<std::string>();
  return spec;
}

json to_json(const McEstimate& e) {
  return {{"successes", e.successes}, {"trials", e.trials}, {"point", e.point}, {"low", e.low},
          {"high", e.high},           {"seed", e.seed},     {"params", e.params}};
}

McEstimate estimate_from_json(const json& j) {
  McEstimate e;
  e.successes = j.at("successes").get<std::uint64_t>();
  e.trials = j.at("trials").get<std::uint64_t>();
  e.point = j.at("point").get<double>();
  e.low = j.at("low").get<double>();
  e.high = j.at("high").get<double>();
  e.seed = j.at("seed").get<std::uint64_t>();
  e.params = j.at("params").get<std::map<std::string, double>>();
  return e;
}

json to_json(const ExperimentResult& r) {
  json samples = json::array();
  for (double x : r.samples) samples.push_back(number_or_null(x));
  json estimates = json::object();
  for (const auto& [name, e] : r.estimates) estimates[name] = to_json(e);
  json values = json::object();
  for (const auto& [name, v] : r.values) values[name] = number_or_null(v);
  return {{"schema", kResultSchema}, {"spec", to_json(r.spec)},   {"samples", std::move(samples)},
          {"censored", r.censored},  {"estimates", std::move(estimates)}, {"values", std::move(values)},
          {"extra", r.extra},        {"wall_time_s", r.wall_time_s}, {"version", r.version},
          {"rng", r.rng}};
}

ExperimentResult result_from_json(const json& j) {
  if (j.at("schema").get<int>() != kResultSchema) throw InvalidInput("unsupported result schema");
  ExperimentResult r;
  r.spec = spec_from_json(j.at("spec"));
  for (const auto& x : j.at("samples")) r.samples.push_back(number_from(x));
  r.censored = j.at("censored").get<std::vector<bool>>();
  for (const auto& [name, e] : j.at("estimates").items()) r.estimates[name] = estimate_from_json(e);
  for (const auto& [name, v] : j.at("values").items()) r.values[name] = number_from(v);
  r.extra = j.at("extra");
  r.wall_time_s = j.at("wall_time_s").get<double>();
  r.version = j.at("version").get<std::string>();
  r.rng = j.at("rng").get<std::string>();
  return r;
}

std::string samples_csv(const ExperimentResult& r) {
  std::string out = "replicate_id,value\n";
  char buf[64];
  for (std::size_t i = 0; i < r.samples.size(); ++i) {
    const double x = r.samples[i];
    if (std::isinf(x)) {
      std::snprintf(buf, sizeof buf, "%zu,inf\n", i);
    } else {
      std::snprintf(buf, sizeof buf, "%zu,%.17g\n", i, x);
    }
    out += buf;
  }
  return out;
}

namespace {

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidInput("cannot open output file '" + path + "'");
  f << text;
}

}  // namespace

void write_outputs(const ExperimentResult& r) {
  if (!r.spec.out.empty()) {
    const json doc = r.spec.kind == ExperimentKind::count ? r.extra : to_json(r);
    write_text(r.spec.out, doc.dump(2) + "\n");
  }
  if (!r.spec.csv.empty()) write_text(r.spec.csv, samples_csv(r));
}

json overlap_table_json(int n, const std::string& method) {
  OverlapTable table;
  if (method == "brute") {
    table = overlap_table_bruteforce(n);
  } else if (method == "dp") {
    table = overlap_table_dp(n);
  } else {
    throw InvalidInput("unknown count method '" + method + "' (brute|dp)");
  }
  json f = json::array();
  json F = json::array();
  for (const auto& v : table.f) f.push_back(v.str());
  for (const auto& v : table.F) F.push_back(v.str());
  return {{"n", n}, {"f", std::move(f)}, {"F", std::move(F)}};
}

}  // namespace cubeperc
