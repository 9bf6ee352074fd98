#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cubeperc/analytic.hpp"
#include "cubeperc/combinatorics.hpp"
#include "cubeperc/errors.hpp"
#include "cubeperc/fpp.hpp"
#include "cubeperc/harness.hpp"
#include "cubeperc/percolation.hpp"
#include "cubeperc/stats.hpp"

namespace py = pybind11;
using namespace cubeperc;

namespace {

// Big integers cross the boundary as decimal strings; the Python side
// turns them into ints.
std::vector<std::string> decimal(const std::vector<BigInt>& xs) {
  std::vector<std::string> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back(x.str());
  return out;
}

}  // namespace

PYBIND11_MODULE(_cubeperc, m) {
  m.doc() = "native core of cubeperc";
  m.attr("__version__") = library_version();

  py::register_exception<CapacityError>(m, "CapacityError", PyExc_RuntimeError);
  py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);

  m.def("run_json", [](const std::string& spec) {
    const ExperimentSpec s = spec_from_json(nlohmann::json::parse(spec));
    ExperimentResult r;
    {
      py::gil_scoped_release release;
      r = run(s);
    }
    return to_json(r).dump();
  });
  m.def("samples_csv_json", [](const std::string& result) {
    return samples_csv(result_from_json(nlohmann::json::parse(result)));
  });

  m.def("overlap_table", [](int n, const std::string& method) {
    if (method != "brute" && method != "dp") throw InvalidInput("method must be brute or dp");
    const OverlapTable t = method == "brute" ? overlap_table_bruteforce(n) : overlap_table_dp(n);
    return py::make_tuple(decimal(t.f), decimal(t.F));
  }, py::arg("n"), py::arg("method") = "dp");

  m.def("exact_connection_probability", &exact_connection_probability, py::arg("n"), py::arg("p"),
        py::arg("oriented") = true);
  m.def("mc_connection_probability", [](int n, double c, std::uint64_t reps, bool oriented, std::uint64_t seed,
                                        int jobs) {
    McEstimate e;
    {
      py::gil_scoped_release release;
      e = mc_connection_probability(n, c, reps, oriented, seed, jobs);
    }
    return py::dict(py::arg("successes") = e.successes, py::arg("trials") = e.trials, py::arg("point") = e.point,
                    py::arg("low") = e.low, py::arg("high") = e.high);
  }, py::arg("n"), py::arg("c"), py::arg("reps"), py::arg("oriented") = true, py::arg("seed") = 0,
     py::arg("jobs") = 1);

  m.def("extinction_probability", [](double c) { return extinction_probability(c).x; }, py::arg("c"));
  m.def("erlang_tail", &erlang_tail, py::arg("n"), py::arg("u"));
  m.def("theorem_constants", &theorem_constants);
  m.def("btp_mean", py::overload_cast<int, int, double>(&btp_mean), py::arg("level"), py::arg("n"),
        py::arg("t"));
  m.def("oriented_fpp_time", [](int n, std::uint64_t seed, std::uint64_t replicate) {
    return oriented_fpp_time(WeightAssignment::exponential(n, true, Stream::derive(seed, replicate)));
  }, py::arg("n"), py::arg("seed") = 0, py::arg("replicate") = 0);
  m.def("richardson_top_time", [](int n, std::uint64_t seed, std::uint64_t replicate) {
    return richardson_simulate(n, Stream::derive(seed, replicate)).top();
  }, py::arg("n"), py::arg("seed") = 0, py::arg("replicate") = 0);

  m.def("wilson_interval", &wilson_interval, py::arg("successes"), py::arg("trials"), py::arg("level") = 0.95);
  m.def("ks_two_sample", [](std::vector<double> a, std::vector<double> b) {
    const KsResult r = ks_two_sample(a, b);
    return py::make_tuple(r.statistic, r.p_value);
  }, py::arg("a"), py::arg("b"));
}
