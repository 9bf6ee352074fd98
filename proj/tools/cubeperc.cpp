// cubeperc: command-line front end for the experiment harness.
//
//   cubeperc <kind> --n N --reps R --seed S [--c C | --t T | --s S2 | --p P]
//            [--oriented] [--cap C] [--out PATH] [--csv PATH] [--jobs J]
//
// Exit codes: 0 success, 2 capacity error, 3 invalid parameters.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cubeperc/errors.hpp"
#include "cubeperc/harness.hpp"
#include "cubeperc/parallel.hpp"

namespace {

constexpr int kExitCapacity = 2;
constexpr int kExitInvalid = 3;

struct Args {
  std::optional<double> n, c, p, t, s, cap, eps, u, k, k4;
  std::uint64_t reps = 1000;
  std::uint64_t seed = 0;
  std::optional<int> jobs;
  bool oriented = false;
  bool first_hit = false;
  std::string method = "dp";
  std::string what = "constants";
  std::vector<std::string> extra_params;
  std::string out = "-";
  std::string csv;
};

void add_common(CLI::App* sub, Args& a) {
  sub->add_option("--n", a.n, "cube dimension");
  sub->add_option("--reps", a.reps, "number of replicates")->check(CLI::PositiveNumber);
  sub->add_option("--seed", a.seed, "base seed (default 0)");
  sub->add_option("--jobs", a.jobs, "worker threads (default $CUBEPERC_JOBS or 1)");
  sub->add_option("--out", a.out, "JSON output path, - for stdout");
  sub->add_option("--csv", a.csv, "raw sample CSV path");
  sub->add_option("--params", a.extra_params, "extra key=value parameters");
}

cubeperc::ExperimentSpec to_spec(const std::string& kind, const Args& a) {
  cubeperc::ExperimentSpec spec;
  spec.kind = cubeperc::parse_kind(kind);
  const std::pair<const char*, const std::optional<double>*> numeric[] = {
      {"n", &a.n}, {"c", &a.c},     {"p", &a.p}, {"t", &a.t}, {"s", &a.s},
      {"cap", &a.cap}, {"eps", &a.eps}, {"u", &a.u}, {"k", &a.k}, {"K4", &a.k4}};
  for (const auto& [key, value] : numeric) {
    if (value->has_value()) spec.params[key] = **value;
  }
  for (const std::string& kv : a.extra_params) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw cubeperc::InvalidInput("--params expects key=value, got '" + kv + "'");
    try {
      spec.params[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
    } catch (const std::exception&) {
      throw cubeperc::InvalidInput("non-numeric value in --params '" + kv + "'");
    }
  }
  if (a.oriented) spec.options["oriented"] = "true";
  if (a.first_hit) spec.options["first_hit"] = "true";
  spec.options["method"] = a.method;
  spec.options["what"] = a.what;
  spec.reps = a.reps;
  spec.seed = a.seed;
  if (a.jobs) {
    spec.jobs = *a.jobs;
  } else if (const char* env = std::getenv("CUBEPERC_JOBS")) {
    try {
      spec.jobs = std::stoi(env);
    } catch (const std::exception&) {
      throw cubeperc::InvalidInput("CUBEPERC_JOBS must be an integer");
    }
  }
  spec.jobs = cubeperc::resolve_jobs(spec.jobs);
  spec.out = a.out;
  spec.csv = a.csv;
  return spec;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Percolation and first-passage experiments on the n-cube"};
  app.set_version_flag("--version", std::string(cubeperc::library_version()));
  app.require_subcommand(1);

  Args a;
  const std::vector<std::pair<std::string, std::string>> kinds = {
      {"percolate", "Monte Carlo bottom-to-top connection probability at p = c/n"},
      {"ofpp", "oriented first-passage time with Exp(1) weights"},
      {"richardson", "Richardson model infection time of the top vertex"},
      {"cover", "Richardson model cover time"},
      {"btp", "branching translation process snapshot or first hit"},
      {"count", "path-overlap table f(n,k) and F(n,k)"},
      {"analytic", "closed-form quantities as JSON"},
      {"duality", "forward versus intersection duality check"},
      {"conjecture", "monotonicity check over B_{n-1} x {0,1}"},
  };
  for (const auto& [name, help] : kinds) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_common(sub, a);
    sub->add_option("--c", a.c, "edge density scale, p = c/n");
    sub->add_option("--p", a.p, "edge probability (alternative to --c)");
    sub->add_option("--t", a.t, "time horizon");
    sub->add_option("--s", a.s, "duality split time");
    sub->add_option("--cap", a.cap, "BTP particle cap");
    sub->add_option("--eps", a.eps, "OFPP deviation");
    sub->add_option("--u", a.u, "Erlang argument");
    sub->add_option("--k", a.k, "overlap index");
    sub->add_option("--K4", a.k4, "density Lipschitz constant");
    sub->add_flag("--oriented", a.oriented, "use the oriented cube");
    sub->add_flag("--first-hit", a.first_hit, "BTP: time to first reach the top");
    sub->add_option("--method", a.method, "count method: brute|dp");
    sub->add_option("--what", a.what, "analytic: extinction|constants|erlang|R");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalid;
  }

  const std::string kind = app.get_subcommands().front()->get_name();
  try {
    const cubeperc::ExperimentSpec spec = to_spec(kind, a);
    cubeperc::write_outputs(cubeperc::run(spec));
  } catch (const cubeperc::CapacityError& e) {
    std::cerr << "cubeperc " << kind << ": capacity exceeded: " << e.what() << '\n';
    return kExitCapacity;
  } catch (const std::invalid_argument& e) {
    std::cerr << "cubeperc " << kind << ": invalid parameters: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::out_of_range& e) {
    std::cerr << "cubeperc " << kind << ": invalid parameters: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "cubeperc " << kind << ": " << e.what() << '\n';
    return 1;
  }
  return 0;
}
