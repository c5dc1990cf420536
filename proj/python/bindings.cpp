#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>

#include "etacoh/cli.hpp"
#include "etacoh/config.hpp"
#include "etacoh/error.hpp"
#include "etacoh/eta.hpp"
#include "etacoh/exactnum.hpp"
#include "etacoh/glrverify.hpp"

namespace py = pybind11;
using namespace etacoh;

namespace {

py::int_ to_int(const mpz_class& z) { return py::int_(py::str(z.get_str())); }

Modulus modulus_of(const std::string& text) {
  if (text == "Z") return Modulus::Z;
  if (text == "2Z") return Modulus::TwoZ;
  throw Error(ErrorCode::InvalidArgument, "modulus must be Z or 2Z");
}

py::dict eta_dict(const EtaValue& v, double approx) {
  py::dict d;
  d["value"] = v.value.str();
  d["modulus"] = modulus_name(v.modulus);
  d["order"] = to_int(v.order());
  d["float"] = approx;
  return d;
}

py::dict eta_lens_py(unsigned l, const std::vector<long>& a, const std::string& rho,
                     const std::optional<std::vector<long>>& chern, const std::optional<std::string>& modulus) {
  const VirtualCharacter chi = parse_virtual_character(character_table("C" + std::to_string(l)), rho);
  const LensSpec spec = chern ? LensSpec::bundle(l, a, *chern) : LensSpec::sphere(l, a);
  const EtaValue v{eta_lens(spec, chi), modulus ? modulus_of(*modulus) : range_for(chi, spec.dimension())};
  return eta_dict(v, eta_lens_float(spec, chi));
}

py::dict eta_quaternion_py(unsigned k, const std::string& rho, const std::optional<std::string>& modulus) {
  const VirtualCharacter chi = parse_virtual_character(character_table("Q8"), rho);
  const FreeUnitaryRep tau = quaternion_free_rep(k);
  const EtaValue v{eta_donnelly(tau, chi), modulus ? modulus_of(*modulus) : range_for(chi, tau.manifold_dimension())};
  return eta_dict(v, eta_donnelly_float(tau, chi));
}

py::tuple run_cli_py(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return py::make_tuple(code, out.str(), err.str());
}

py::list verify_py(const std::vector<std::string>& suites, int q8_max, int sd16_max, int span_max) {
  ReportOptions options;
  options.q8_m_max = q8_max;
  options.sd16_m_max = sd16_max;
  options.span_n_max = span_max;
  const Report report = run_report(suites, options);
  py::list out;
  for (const auto& c : report.claims) {
    py::dict d;
    d["id"] = c.id;
    d["anchor"] = c.anchor;
    d["expected"] = c.expected;
    d["computed"] = c.computed;
    d["status"] = c.pass ? "pass" : "fail";
    out.append(d);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_etacoh, m) {
  static py::exception<Error> error(m, "EtacohError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, (std::string(e.name()) + ": " + e.what()).c_str());
    }
  });

  m.def("cyclotomic", [](const std::string& text) { return Cyclotomic::parse(text).str(); }, py::arg("text"),
        "Canonical text of a cyclotomic number.");
  m.def("order", [](const std::string& value, const std::string& modulus) {
        return to_int(eta_order(Rational::parse(value), modulus_of(modulus)));
      },
        py::arg("value"), py::arg("modulus") = "Z", "Order of a rational in R/Z or R/2Z.");
  m.def("eta_lens", &eta_lens_py, py::arg("l"), py::arg("a"), py::arg("rho"), py::arg("chern") = std::nullopt,
        py::arg("modulus") = std::nullopt, "Eta invariant of a lens space or lens space bundle.");
  m.def("eta_quaternion", &eta_quaternion_py, py::arg("k"), py::arg("rho"), py::arg("modulus") = std::nullopt,
        "Eta invariant of the quaternionic spherical space form.");
  m.def("normal_form", [](const std::string& algebra, const std::string& expr) {
        const auto a = resolve_config("").algebra(algebra);
        return a->parse(expr).str();
      },
        py::arg("algebra"), py::arg("expr"), "Normal form in a builtin or configured algebra.");
  m.def("verify", &verify_py, py::arg("suites") = std::vector<std::string>{"all"}, py::arg("q8_max") = 8,
        py::arg("sd16_max") = 3, py::arg("span_max") = 40, "Runs the verification suites.");
  m.def("run_cli", &run_cli_py, py::arg("args"), "Runs the command line; returns (status, stdout, stderr).");
}
