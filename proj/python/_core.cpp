#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "metaplectic/cli.hpp"
#include "metaplectic/errors.hpp"
#include "metaplectic/exchange.hpp"
#include "metaplectic/jacquet.hpp"
#include "metaplectic/json_io.hpp"
#include "metaplectic/torus_cover.hpp"

namespace py = pybind11;
using namespace metaplectic;

namespace {

Partition composition(const std::vector<int>& parts) { return Partition::composition(parts); }

std::string semi_whittaker_json(int n, long long q, int c, const std::vector<int>& lambda, bool first) {
  const auto res = semi_whittaker_dim(n, q, c, composition(lambda), first);
  Json out = to_json(res.dim);
  out["numerators"] = res.numerators;
  out["denominator"] = res.denominator;
  if (res.first_numerators) {
    out["first_numerators"] = *res.first_numerators;
    out["first_denominator"] = *res.first_denominator;
  }
  return out.dump();
}

std::int64_t subgroup_index(int n, long long q, int c, int r, const std::string& a, const std::string& b,
                            const std::optional<std::vector<int>>& levi) {
  CoverGroup g(CocycleParams(FieldModel(n, q), c, r));
  std::optional<Partition> m;
  if (levi) m = composition(*levi);
  return index(named_subgroup(g, a, m), named_subgroup(g, b, m));
}

std::vector<std::string> check_trace_json(const std::string& text) {
  std::vector<std::string> out;
  for (const auto& d : check_trace(trace_from_json(Json::parse(text))).diagnostics) out.push_back(d.message);
  return out;
}

py::tuple run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  static py::exception<Error> error(m, "MetaplecticError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetString(error.ptr(), (std::string(to_string(e.code())) + ": " + e.what()).c_str());
    }
  });

  m.def("theta_orbit", [](int n, int r) { return theta_orbit(n, r).parts(); }, py::arg("n"), py::arg("r"));
  m.def("hilbert", [](int n, long long q, std::pair<int, int> x, std::pair<int, int> y) {
    return hilbert_classes(FieldModel(n, q), x, y);
  }, py::arg("n"), py::arg("q"), py::arg("x"), py::arg("y"));
  m.def("tame_primes", &tame_primes, py::arg("n"), py::arg("count"));
  m.def("semi_whittaker_dim", &semi_whittaker_json, py::arg("n"), py::arg("q"), py::arg("c"),
        py::arg("lambda_"), py::arg("first_formula") = false);
  m.def("vanishes", [](int n, const std::vector<int>& lambda) { return vanishes(n, composition(lambda)); },
        py::arg("n"), py::arg("lambda_"));
  m.def("subgroup_index", &subgroup_index, py::arg("n"), py::arg("q"), py::arg("c"), py::arg("r"),
        py::arg("num"), py::arg("den"), py::arg("levi") = std::nullopt);
  m.def("derive_orbit_trace", [](int n, const std::vector<int>& orbit) {
    return to_json(derive_orbit_trace(n, Partition(orbit))).dump();
  }, py::arg("n"), py::arg("orbit"));
  m.def("check_trace", &check_trace_json, py::arg("trace_json"));
  m.def("run_cli", &run_cli, py::arg("args"));
}
