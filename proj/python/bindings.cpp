#include <optional>
#include <string>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "waring7/decomposer.hpp"
#include "waring7/errors.hpp"
#include "waring7/experiments.hpp"
#include "waring7/json_io.hpp"

namespace py = pybind11;
using namespace waring7;

namespace {

Tolerances tolerances(std::optional<double> verify_tol) {
  Tolerances tol;
  if (verify_tol) tol.verify = *verify_tol;
  return tol;
}

HomogeneousForm quartic(const std::string& text) {
  const HomogeneousForm f = form_from_json(Json::parse(text));
  if (f.side() != Side::Primal || f.nvars() != 3 || f.degree() != 4) {
    throw Error(ErrorKind::Parse, "expected a ternary primal quartic");
  }
  return f;
}

Frame frame_of(const std::optional<std::string>& frame, std::uint64_t seed) {
  return make_frame(frame ? frame_from_json(Json::parse(*frame)) : random_frame_matrix(seed, 0));
}

// {"decomposition": ...} or {"failure": ...}
std::string decompose(const std::string& form, const std::optional<std::string>& frame, std::uint64_t seed,
                      std::optional<double> tol) {
  const SevenResult r = decompose_seven(quartic(form), frame_of(frame, seed), tolerances(tol));
  if (!r.ok()) return Json{{"failure", failure_to_json(*r.failure)}}.dump();
  return Json{{"decomposition", decomposition_to_json(*r.decomposition, r.provenance)}}.dump();
}

std::string chain(const std::string& form, const std::optional<std::string>& frame, std::uint64_t seed) {
  const SevenResult r = decompose_seven(quartic(form), frame_of(frame, seed));
  if (!r.six.chain) return Json{{"failure", r.failure ? failure_to_json(*r.failure) : Json(nullptr)}}.dump();
  return Json{{"chain", chain_to_json(*r.six.chain)}}.dump();
}

double verify_json(const std::string& form, const std::string& dec) {
  return verify(quartic(form), decomposition_from_json(Json::parse(dec)));
}

std::string probe(const std::string& form, int trials, std::uint64_t seed, std::optional<double> tol) {
  return probe_report_to_json(probe_frames(quartic(form), trials, seed, tolerances(tol))).dump();
}

std::string experiments(std::uint64_t seed, int frames, std::optional<double> tol) {
  return experiment_report_to_json(experiment_special_cases(seed, frames, tolerances(tol))).dump();
}

std::string generate_json(const std::string& kind, std::uint64_t seed) {
  return form_to_json(generate({generator_kind_from_string(kind), seed, {}, {}, {}})).dump();
}

}  // namespace

PYBIND11_MODULE(_waring7, m) {
  m.doc() = "Seven-term Waring decompositions of ternary quartics (JSON-string interface)";

  static py::exception<Error> error(m, "Error", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, (std::string(to_string(e.kind())) + ": " + e.what()).c_str());
    } catch (const Json::exception& e) {
      py::set_error(error, (std::string("Parse: ") + e.what()).c_str());
    }
  });

  m.def("decompose", &decompose, py::arg("form"), py::arg("frame") = std::nullopt, py::arg("seed") = 0,
        py::arg("tol") = std::nullopt);
  m.def("chain", &chain, py::arg("form"), py::arg("frame") = std::nullopt, py::arg("seed") = 0);
  m.def("verify", &verify_json, py::arg("form"), py::arg("decomposition"));
  m.def("probe", &probe, py::arg("form"), py::arg("trials"), py::arg("seed"), py::arg("tol") = std::nullopt);
  m.def("experiments", &experiments, py::arg("seed"), py::arg("frames"), py::arg("tol") = std::nullopt);
  m.def("generate", &generate_json, py::arg("kind"), py::arg("seed") = 0);
}
