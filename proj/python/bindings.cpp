#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sunit/arith.hpp"
#include "sunit/characters.hpp"
#include "sunit/circle.hpp"
#include "sunit/errors.hpp"
#include "sunit/exponents.hpp"
#include "sunit/oracle.hpp"
#include "sunit/pipelines.hpp"
#include "sunit/report.hpp"
#include "sunit/siegel.hpp"
#include "sunit/smooth.hpp"

namespace py = pybind11;
using sunit::Int;

// 128-bit integers cross the boundary as Python ints via their decimal form.
namespace pybind11::detail {
template <>
struct type_caster<__int128> {
  PYBIND11_TYPE_CASTER(__int128, const_name("int"));

  bool load(handle src, bool) {
    if (!src || !PyLong_Check(src.ptr())) return false;
    try {
      value = sunit::parse_int(py::str(src).cast<std::string>());
    } catch (const sunit::Error&) {
      return false;
    }
    return true;
  }

  static handle cast(__int128 v, return_value_policy, handle) {
    return PyLong_FromString(sunit::to_string(v).c_str(), nullptr, 10);
  }
};
}  // namespace pybind11::detail

namespace {

std::vector<Int> to_vector(const sunit::PrimeSet& s) { return {s.begin(), s.end()}; }

py::object json_to_py(const sunit::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "S-unit harvests, character sums and the exponent algebra";

  py::register_exception<sunit::Error>(m, "Error", PyExc_ValueError);
  py::register_exception<sunit::ResourceLimit>(m, "ResourceLimit", PyExc_RuntimeError);
  py::register_exception<sunit::ConstraintViolation>(m, "ConstraintViolation", PyExc_ValueError);
  py::register_exception<sunit::EmptyHarvest>(m, "EmptyHarvest", PyExc_RuntimeError);

  m.def("is_prime", &sunit::is_prime, py::arg("n"));
  m.def("primes_in_range", [](sunit::u64 lo, sunit::u64 hi) { return to_vector(sunit::primes_in_range(lo, hi)); },
        py::arg("lo"), py::arg("hi"));
  m.def(
      "factorize",
      [](Int n) {
        std::vector<std::pair<sunit::u64, int>> out;
        for (const auto& pp : sunit::factorize(n).factors) out.emplace_back(pp.prime, pp.exponent);
        return out;
      },
      py::arg("n"));
  m.def("mod_inverse", &sunit::mod_inverse, py::arg("a"), py::arg("m"));
  m.def(
      "squarefree_smooth",
      [](const std::vector<sunit::u64>& primes, Int lo, Int hi) {
        return sunit::enumerate_squarefree_smooth(sunit::PrimeSet::from_unsorted(primes), lo, hi).values();
      },
      py::arg("primes"), py::arg("lo"), py::arg("hi"));

  m.def("lambda0", &sunit::lambda0);
  m.def("lambda1", &sunit::lambda1);
  m.def(
      "feasible",
      [](const std::string& t, const std::string& v, double alpha) {
        return sunit::feasible(sunit::parse_theorem(t), sunit::parse_variant(v), alpha);
      },
      py::arg("theorem"), py::arg("variant"), py::arg("alpha"));
  m.def(
      "regime_exponents",
      [](const std::string& t, const std::string& v, double alpha) {
        const auto r = sunit::regime_exponents(sunit::parse_theorem(t), sunit::parse_variant(v), alpha);
        py::dict d;
        d["z"] = r.z_exp;
        d["w"] = r.w_exp;
        d["y"] = r.y_exp;
        d["q"] = r.q_exp;
        d["r"] = r.r_exp;
        return d;
      },
      py::arg("theorem"), py::arg("variant"), py::arg("alpha"));

  m.def(
      "siegel_small_solution",
      [](const std::vector<std::int64_t>& alpha, std::int64_t B) { return sunit::siegel_small_solution(alpha, B).z; },
      py::arg("alpha"), py::arg("B"));

  m.def(
      "brute_sunit_pairs",
      [](const std::vector<sunit::u64>& primes, Int bound) {
        return sunit::brute_sunit_pairs(sunit::PrimeSet::from_unsorted(primes), bound).solutions;
      },
      py::arg("primes"), py::arg("bound"));
  m.def(
      "verify_sunit_solution",
      [](const std::vector<Int>& t, const std::string& eq, const std::vector<sunit::u64>& primes) {
        return sunit::verify_sunit_solution(t, sunit::parse_equation(eq), sunit::PrimeSet::from_unsorted(primes));
      },
      py::arg("values"), py::arg("equation"), py::arg("primes"));

  m.def(
      "gauss_sums",
      [](sunit::u64 q) {
        std::vector<std::pair<std::complex<double>, sunit::u64>> out;
        for (const auto& chi : sunit::all_characters(q)) {
          const auto g = sunit::gauss_sum_and_conductor(chi);
          out.emplace_back(g.tau, g.conductor);
        }
        return out;
      },
      py::arg("q"));
  m.def("kloosterman_sum", &sunit::kloosterman_sum, py::arg("m"), py::arg("n"), py::arg("c"));

  m.def(
      "run",
      [](const std::string& subcommand, const std::map<std::string, std::string>& params, unsigned threads,
         std::uint64_t seed) {
        sunit::RunConfig rc;
        rc.subcommand = subcommand;
        rc.params = params;
        rc.threads = threads;
        rc.seed = seed;
        sunit::RunReport r;
        {
          py::gil_scoped_release nogil;
          r = sunit::run(rc);
        }
        return py::make_tuple(r.exit_code, json_to_py(r.report), r.csv);
      },
      py::arg("subcommand"), py::arg("params") = std::map<std::string, std::string>{}, py::arg("threads") = 1,
      py::arg("seed") = 20240601);
}
