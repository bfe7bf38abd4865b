#include "jnum/errors.hpp"
#include "jnum/jumping.hpp"
#include "jnum/model.hpp"
#include "jnum/unloading.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <map>
#include <string>
#include <vector>

namespace py = pybind11;
using namespace jnum;

namespace {

using Coefficients = std::map<std::string, std::int64_t>;

Divisor to_divisor(const ResolutionData& r, const Coefficients& c) {
  Divisor d;
  for (const auto& [label, v] : c) {
    if (!r.has(label)) throw UnknownLabel(label);
    d.set(label, v);
  }
  return d;
}

ClosureOptions closure_options(const std::string& mode, std::uint64_t iteration_cap) {
  ClosureOptions o;
  if (mode == "sequential") {
    o.mode = UnloadMode::Sequential;
  } else if (mode != "batch") {
    throw py::value_error("mode must be 'batch' or 'sequential'");
  }
  o.iteration_cap = iteration_cap;
  return o;
}

std::vector<std::string> strs(const std::vector<Rational>& v) {
  std::vector<std::string> out;
  for (const auto& x : v) out.push_back(x.str());
  return out;
}

py::dict record_dict(const SupercandidateRecord& rec, bool certified) {
  py::dict d;
  d["lambda"] = rec.lambda.str();
  d["closure"] = rec.d_lambda.coefficients();
  d["g_lambda"] = rec.g_lambda;
  if (certified) {
    d["verdict"] = to_string(rec.status.verdict);
    d["rule"] = rec.status.rule ? py::object(py::str(to_string(*rec.status.rule))) : py::none();
    d["witness"] = rec.status.witness.coefficients();
    d["unresolved"] = rec.status.unresolved;
  }
  return d;
}

}  // namespace

PYBIND11_MODULE(_jnum, m) {
  m.doc() = "Jumping numbers of multiplier ideals from log-resolution lattice data";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<SchemaError>(m, "SchemaError", base.ptr());
  py::register_exception<ConsistencyError>(m, "ConsistencyError", base.ptr());
  py::register_exception<UnknownLabel>(m, "UnknownLabel", base.ptr());
  py::register_exception<UnknownEffectivity>(m, "UnknownEffectivity", base.ptr());

  py::class_<ResolutionData>(m, "Resolution")
      .def_property_readonly("labels", &ResolutionData::labels)
      .def_property_readonly("exceptional_labels", &ResolutionData::exceptional_labels)
      .def_property_readonly("ambient_dim", &ResolutionData::ambient_dim)
      .def_property_readonly("is_ideal",
                             [](const ResolutionData& r) { return r.input_kind() == InputKind::Ideal; })
      .def_property_readonly("multiplicities",
                             [](const ResolutionData& r) { return r.multiplicities().coefficients(); })
      .def_property_readonly("discrepancies",
                             [](const ResolutionData& r) { return r.discrepancies().coefficients(); })
      .def("validate",
           [](const ResolutionData& r) {
             auto rep = validate(r);
             py::dict d;
             std::vector<std::pair<std::string, std::string>> errors, warnings;
             for (const auto& f : rep.errors) errors.emplace_back(f.message, f.label);
             for (const auto& f : rep.warnings) warnings.emplace_back(f.message, f.label);
             d["errors"] = errors;
             d["warnings"] = warnings;
             return d;
           })
      .def("to_json", [](const ResolutionData& r) { return serialize(r); })
      .def("format", [](const ResolutionData& r, const Coefficients& c) { return r.format(to_divisor(r, c)); })
      .def("__eq__", [](const ResolutionData& a, const ResolutionData& b) { return a == b; });

  m.def("load", [](const std::filesystem::path& p, bool check) { return parse_resolution(p, check); },
        py::arg("path"), py::arg("check") = true);
  m.def("loads", [](const std::string& text, bool check) { return parse_resolution_text(text, check); },
        py::arg("text"), py::arg("check") = true);
  m.def("make_example2", &make_example2, py::arg("d"));

  m.def(
      "closure",
      [](const ResolutionData& r, const Coefficients& c, const std::string& mode, std::uint64_t cap) {
        return closure(r, to_divisor(r, c), closure_options(mode, cap)).coefficients();
      },
      py::arg("resolution"), py::arg("divisor"), py::arg("mode") = "batch",
      py::arg("iteration_cap") = 1'000'000);

  m.def(
      "is_antieffective",
      [](const ResolutionData& r, const Coefficients& c) {
        return to_string(is_antieffective(r, to_divisor(r, c)).verdict);
      },
      py::arg("resolution"), py::arg("divisor"));

  m.def("lct", [](const ResolutionData& r) { return lct(r).str(); });
  m.def("skoda_threshold", &skoda_threshold);
  m.def(
      "candidates", [](const ResolutionData& r, const std::string& bound) {
        return strs(candidates(r, Rational::parse(bound)));
      },
      py::arg("resolution"), py::arg("bound"));
  m.def(
      "brute_scan", [](const ResolutionData& r, const std::string& bound) {
        return strs(brute_scan(r, Rational::parse(bound)));
      },
      py::arg("resolution"), py::arg("bound"));

  m.def(
      "supercandidates",
      [](const ResolutionData& r, const std::string& bound, bool certify) {
        auto recs = supercandidates(r, Rational::parse(bound));
        if (certify) certify_all(r, recs);
        py::list out;
        for (const auto& rec : recs) out.append(record_dict(rec, certify));
        return out;
      },
      py::arg("resolution"), py::arg("bound"), py::arg("certify") = false);

  m.def(
      "jumping_numbers",
      [](const ResolutionData& r, const std::string& bound, const std::string& window) {
        Rational b = Rational::parse(bound), w = Rational::parse(window);
        auto recs = supercandidates(r, w);
        certify_all(r, recs);
        return strs(extend_by_periodicity(r, recs, b, w));
      },
      py::arg("resolution"), py::arg("bound"), py::arg("window"));
}
