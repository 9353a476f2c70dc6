#include "platoon/bidir.hpp"
#include "platoon/cascade.hpp"
#include "platoon/synthesis.hpp"
#include "platoon/text_format.hpp"

#include <pybind11/complex.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace platoon;

namespace {

py::object to_python(const nlohmann::ordered_json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

std::vector<std::string> coeff_strings(const ExactPolynomial& p) {
  std::vector<std::string> out;
  for (const auto& c : p.coeffs()) out.push_back(to_string(c));
  return out;
}

template <class E>
void register_error(py::module_& m, const char* name, py::handle base) {
  py::register_exception<E>(m, name, base);
}

}  // namespace

PYBIND11_MODULE(_platoon, m) {
  m.doc() = "Exact-arithmetic analysis and synthesis for heterogeneous vehicle platoons";

  auto base = py::register_exception<Error>(m, "PlatoonError", PyExc_RuntimeError);
  register_error<ZeroDenominator>(m, "ZeroDenominator", base);
  register_error<ZeroPolynomial>(m, "ZeroPolynomial", base);
  register_error<PoleAtPoint>(m, "PoleAtPoint", base);
  register_error<IllPosed>(m, "IllPosed", base);
  register_error<NonPositiveParameter>(m, "NonPositiveParameter", base);
  register_error<ParseError>(m, "ParseError", base);
  register_error<StabilityCheckFailed>(m, "StabilityCheckFailed", base);
  register_error<PeakExceedsBudget>(m, "PeakExceedsBudget", base);
  register_error<SearchExhausted>(m, "SearchExhausted", base);
  register_error<BandwidthViolation>(m, "BandwidthViolation", base);
  register_error<SingularDiagonal>(m, "SingularDiagonal", base);
  register_error<UnstableEntry>(m, "UnstableEntry", base);
  register_error<DivergentAtOrigin>(m, "DivergentAtOrigin", base);
  register_error<InvalidRange>(m, "InvalidRange", base);
  register_error<DimensionMismatch>(m, "DimensionMismatch", base);

  py::class_<ExactRF>(m, "RationalFunction", "Exact rational function in s, kept reduced with a monic denominator.")
      .def(py::init([](const std::string& text) { return parse_rational_function(text); }), py::arg("text"))
      .def_static("from_json", [](const std::string& j) { return rational_function_from_json(nlohmann::json::parse(j)); })
      .def("to_json", [](const ExactRF& f) { return to_python(to_json(f)); })
      .def_property_readonly("num", [](const ExactRF& f) { return coeff_strings(f.num()); })
      .def_property_readonly("den", [](const ExactRF& f) { return coeff_strings(f.den()); })
      .def_property_readonly("relative_degree", &ExactRF::relative_degree)
      .def("is_proper", &ExactRF::is_proper)
      .def("__call__", [](const ExactRF& f, std::complex<double> z) { return f.evaluate(z); })
      .def("magnitude", [](const ExactRF& f, double w) { return f.evaluator().magnitude(w); }, py::arg("omega"))
      .def("scaled", [](const ExactRF& f, const std::string& g) { return f.scaled(parse_rational(g)); })
      .def("__pow__", &ExactRF::pow)
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(py::self * py::self)
      .def(py::self / py::self)
      .def(-py::self)
      .def(py::self == py::self)
      .def("__str__", &format_rational_function)
      .def("__repr__", [](const ExactRF& f) { return "RationalFunction('" + format_rational_function(f) + "')"; });

  m.def(
      "hurwitz_stable",
      [](const std::vector<std::string>& ascending) {
        std::vector<Rational> c;
        for (const auto& s : ascending) c.push_back(parse_rational(s));
        return hurwitz_stable(ExactPolynomial(std::move(c)));
      },
      py::arg("coefficients"), "Routh-Hurwitz test; coefficients ascending, as rational strings.");

  m.def(
      "internal_stability",
      [](const ExactRF& p, const ExactRF& c) {
        const auto r = internal_stability(p, c);
        py::dict maps;
        for (std::size_t i = 0; i < 4; ++i) {
          py::dict e;
          e["function"] = r.gang_of_four[i];
          e["stable"] = r.each_stable[i];
          e["proper"] = r.each_proper[i];
          maps[py::str(std::string(StabilityReport<Rational>::kNames[i]))] = e;
        }
        py::dict out;
        out["internally_stable"] = r.internally_stable;
        out["all_proper"] = r.all_proper;
        out["maps"] = maps;
        return out;
      },
      py::arg("plant"), py::arg("controller"));

  m.def("integrator_loop_t", &integrator_loop_t, py::arg("controller"), py::arg("m"), "c/(s^m + c)");

  m.def(
      "hinf_norm",
      [](const ExactRF& f, double wmin, double wmax, int ppd) {
        const auto h = hinf_norm(f, FrequencyGrid::log_uniform(wmin, wmax, ppd));
        return py::make_tuple(h.norm, h.argmax_omega);
      },
      py::arg("f"), py::arg("wmin") = 1e-4, py::arg("wmax") = 1e4, py::arg("ppd") = 200);

  m.def(
      "youla_coprime",
      [](int mm) {
        const auto d = synthesis::youla_coprime(mm);
        py::dict out;
        out["N"] = d.N;
        out["M"] = d.M;
        out["X"] = d.X;
        out["Y"] = d.Y;
        return out;
      },
      py::arg("m"));

  m.def(
      "candidate_controller",
      [](int mm, const std::string& ga, const std::string& gb) {
        return synthesis::candidate_controller(mm, parse_rational(ga), parse_rational(gb));
      },
      py::arg("m"), py::arg("gamma_a"), py::arg("gamma_b"));

  m.def(
      "search_parameters",
      [](int mm, double eps) {
        const auto r = synthesis::search_parameters(mm, eps);
        py::dict out;
        out["gamma_a"] = r.gamma_a;
        out["gamma_b"] = r.gamma_b;
        out["controller"] = r.controller;
        out["certificate"] = to_python(synthesis::certificate_to_json(r.certificate));
        out["candidates_tried"] = r.candidates_tried;
        return out;
      },
      py::arg("m"), py::arg("epsilon"));

  m.def("lift_order", &synthesis::lift_order, py::arg("c_bar"), py::arg("l"), py::arg("m"));

  m.def(
      "synthesize",
      [](int mm, double eps, double bw, int count) {
        return to_python(synthesis::family_to_json(synthesis::synthesize(mm, eps, bw, count)));
      },
      py::arg("m"), py::arg("epsilon") = 0.1, py::arg("omega_bw") = 1.0, py::arg("count") = 10,
      "Family document as a dict (schema family/1).");

  m.def(
      "cascade_peak",
      [](const std::vector<ExactRF>& cs, int mm, double wmin, double wmax, int ppd) {
        const auto p = cascade::cascade_gain(cs, mm, FrequencyGrid::log_uniform(wmin, wmax, ppd));
        return py::make_tuple(p.peak, p.argmax_omega);
      },
      py::arg("controllers"), py::arg("m"), py::arg("wmin") = 1e-2, py::arg("wmax") = 1e2, py::arg("ppd") = 200);

  m.def(
      "middleton_integral", [](const ExactRF& t) { return cascade::middleton_integral(t).value; }, py::arg("t"));

  m.def(
      "homogeneous_growth",
      [](const ExactRF& c, int mm, int n) {
        const auto g = cascade::homogeneous_growth(c, mm, n);
        std::vector<double> norms;
        for (const auto& row : g.rows) norms.push_back(row.norm);
        py::dict out;
        out["peak"] = g.peak;
        out["omega0"] = g.omega0;
        out["exponential_growth"] = g.exponential_growth;
        out["norms"] = norms;
        return out;
      },
      py::arg("controller"), py::arg("m"), py::arg("n") = 20);

  m.def(
      "pd_mistune",
      [](int n, double kmin, double kmax, int trials, std::uint64_t seed, double wmin, double wmax, int ppd) {
        const auto r =
            cascade::pd_mistune_experiment(n, kmin, kmax, trials, seed, FrequencyGrid::log_uniform(wmin, wmax, ppd));
        std::vector<double> peaks;
        for (const auto& t : r.results) peaks.push_back(t.peak);
        py::dict out;
        out["peaks"] = peaks;
        out["median_peak"] = r.median_peak;
        out["max_peak"] = r.max_peak;
        return out;
      },
      py::arg("n") = 20, py::arg("kmin") = 0.5, py::arg("kmax") = 2.0, py::arg("trials") = 100, py::arg("seed") = 42,
      py::arg("wmin") = 1e-2, py::arg("wmax") = 1e2, py::arg("ppd") = 200);

  m.def("verify_factorization", &bidir::verify_factorization, py::arg("n"));

  m.def(
      "sensitivity_matrix",
      [](int n) {
        const auto s = bidir::sensitivity_matrix(n);
        std::vector<std::vector<ExactRF>> rows(s.rows());
        for (std::size_t i = 0; i < s.rows(); ++i) {
          for (std::size_t j = 0; j < s.cols(); ++j) rows[i].push_back(s(i, j));
        }
        return rows;
      },
      py::arg("n"), "Rows of S_n as RationalFunction objects.");

  m.def(
      "bode",
      [](int n, double wmin, double wmax, int ppd) {
        const auto t = bidir::bode_table(bidir::sensitivity_matrix(n), FrequencyGrid::log_uniform(wmin, wmax, ppd));
        py::dict out;
        out["omegas"] = t.grid.omegas();
        out["magnitudes"] = t.magnitudes;
        out["below_first_order_bound"] = t.below_first_order_bound;
        out["worst_excess"] = t.worst_excess;
        return out;
      },
      py::arg("n"), py::arg("wmin") = 1e-3, py::arg("wmax") = 1e3, py::arg("ppd") = 100,
      "Entry magnitudes of S_n, omega-major then row then column.");
}
