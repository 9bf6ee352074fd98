#include <doctest.h>

#include <cmath>

#include "cubeperc/errors.hpp"
#include "cubeperc/harness.hpp"
#include "cubeperc/percolation.hpp"

using namespace cubeperc;

namespace {

ExperimentSpec make(ExperimentKind kind, std::map<std::string, double> params, std::uint64_t reps,
                    std::uint64_t seed = 0) {
  ExperimentSpec s;
  s.kind = kind;
  s.params = std::move(params);
  s.reps = reps;
  s.seed = seed;
  s.out = "";
  return s;
}

}  // namespace

TEST_SUITE("harness") {

TEST_CASE("kind names round-trip") {
  for (auto k : {ExperimentKind::percolate, ExperimentKind::ofpp, ExperimentKind::richardson, ExperimentKind::cover,
                 ExperimentKind::btp, ExperimentKind::count, ExperimentKind::analytic, ExperimentKind::duality,
                 ExperimentKind::conjecture}) {
    CHECK(parse_kind(to_string(k)) == k);
  }
  CHECK_THROWS_AS(parse_kind("teleport"), InvalidInput);
}

TEST_CASE("percolate agrees with the exact oracle") {
  const auto r = run(make(ExperimentKind::percolate, {{"n", 3}, {"c", 1.5}}, 100000, 7));
  const double exact = exact_connection_probability(3, 0.5, false);
  CHECK(r.values.at("exact") == exact);
  const auto& e = r.estimates.at("connection");
  CHECK(std::abs(e.point - exact) < 3 * std::sqrt(exact * (1 - exact) / 1e5));
  CHECK(r.samples.size() == 100000);
}

TEST_CASE("single replicate") {
  const auto r = run(make(ExperimentKind::percolate, {{"n", 3}, {"c", 1.5}}, 1));
  CHECK(r.samples.size() == 1);
  const auto& e = r.estimates.at("connection");
  CHECK(e.low >= 0.0);
  CHECK(e.high <= 1.0);
  CHECK(e.low <= e.point);
  CHECK(e.point <= e.high);
}

TEST_CASE("determinism across worker counts") {
  auto spec = make(ExperimentKind::richardson, {{"n", 5}}, 200, 11);
  const auto a = run(spec);
  spec.jobs = 3;
  const auto b = run(spec);
  CHECK(a.samples == b.samples);
  CHECK(samples_csv(a) == samples_csv(b));
}

TEST_CASE("json round trip with censored samples") {
  auto spec = make(ExperimentKind::richardson, {{"n", 6}, {"t", 0.6}}, 50, 2);
  const auto r = run(spec);
  REQUIRE_FALSE(r.censored.empty());
  const auto back = result_from_json(nlohmann::json::parse(to_json(r).dump()));
  CHECK(back == r);
  CHECK(samples_csv(r).find("inf") != std::string::npos);
}

TEST_CASE("every kind runs and round-trips") {
  std::vector<ExperimentSpec> specs = {
      make(ExperimentKind::ofpp, {{"n", 6}}, 20),
      make(ExperimentKind::cover, {{"n", 5}}, 10),
      make(ExperimentKind::btp, {{"n", 4}, {"t", 0.5}}, 10),
      make(ExperimentKind::count, {{"n", 5}}, 1),
      make(ExperimentKind::duality, {{"n", 4}, {"t", 1.0}, {"s", 0.5}}, 30),
      make(ExperimentKind::conjecture, {{"n", 3}}, 50),
      make(ExperimentKind::analytic, {{"c", 2.0}}, 1),
  };
  specs.back().options["what"] = "extinction";
  auto first_hit = make(ExperimentKind::btp, {{"n", 4}, {"t", 0.5}}, 10);
  first_hit.options["first_hit"] = "true";
  specs.push_back(first_hit);
  for (const auto& s : specs) {
    CAPTURE(to_string(s.kind));
    const auto r = run(s);
    CHECK(result_from_json(nlohmann::json::parse(to_json(r).dump())) == r);
  }
}

TEST_CASE("count document") {
  const auto j = overlap_table_json(3, "dp");
  CHECK(j.dump() == R"({"F":["6","3","1","1"],"f":["3","2","0","1"],"n":3})");
  CHECK(overlap_table_json(5, "brute") == overlap_table_json(5, "dp"));
  CHECK_THROWS_AS(overlap_table_json(3, "guess"), InvalidInput);
}

TEST_CASE("analytic quantities") {
  auto s = make(ExperimentKind::analytic, {{"n", 5}, {"u", 1.0}}, 1);
  s.options["what"] = "erlang";
  const auto r = run(s);
  CHECK(r.values.at("tail") == doctest::Approx(0.003659846827343712));
  CHECK(r.values.at("lower") <= r.values.at("tail"));
  CHECK(r.values.at("tail") <= r.values.at("upper"));
  s.options["what"] = "unknown";
  CHECK_THROWS_AS(run(s), InvalidInput);
}

TEST_CASE("validation") {
  CHECK_THROWS_AS(run(make(ExperimentKind::percolate, {{"n", 3}}, 10)), InvalidInput);
  CHECK_THROWS_AS(run(make(ExperimentKind::ofpp, {{"n", 3}}, 0)), InvalidInput);
  CHECK_THROWS_AS(run(make(ExperimentKind::ofpp, {{"n", 2.5}}, 1)), InvalidInput);
  CHECK_THROWS_AS(run(make(ExperimentKind::ofpp, {{"n", 27}}, 1)), CapacityError);
  CHECK_THROWS_AS(run(make(ExperimentKind::duality, {{"n", 4}, {"t", 1.0}, {"s", 2.0}}, 1)), RangeError);
}

}
