// Python bindings. The surface is deliberately string-shaped: programs and
// signatures come in as text, reports go out as JSON text, and the pure
// Python wrapper in python/eclnl turns those into dicts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

#include "eclnl/diagram.hpp"
#include "eclnl/driver.hpp"
#include "eclnl/eval.hpp"
#include "eclnl/oracle.hpp"
#include "eclnl/parser.hpp"
#include "eclnl/signature.hpp"
#include "eclnl/typecheck.hpp"

namespace py = pybind11;
using namespace eclnl;

namespace {

Signature make_signature(const std::optional<std::string>& sig_json) {
  if (!sig_json) return Signature::demo();
  return Signature::from_json_text(*sig_json);
}

// Parses source against the signature so generator names resolve and wire
// names are validated.
SourceProgram parse_checked(const std::string& source, const Signature& sig) {
  return parse_program(source, sig);
}

std::string soundness_word(SoundnessVerdict v) {
  switch (v) {
    case SoundnessVerdict::Pass: return "pass";
    case SoundnessVerdict::Fail: return "fail";
    case SoundnessVerdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

std::string adequacy_word(AdequacyVerdict v) {
  switch (v) {
    case AdequacyVerdict::Pass: return "pass";
    case AdequacyVerdict::PassPresumedDivergent:
      return "pass-presumed-divergent";
    case AdequacyVerdict::Fail: return "fail";
    case AdequacyVerdict::Unsupported: return "unsupported";
  }
  return "unsupported";
}

}  // namespace

PYBIND11_MODULE(_eclnl, m) {
  m.doc() = "string-diagram lambda calculus: parser, linear typechecker, "
            "diagram-building evaluator and a finite order-theoretic oracle";

  auto parse_exc =
      py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  auto type_exc =
      py::register_exception<TypeError>(m, "TypeError", PyExc_ValueError);
  py::register_exception<SignatureError>(m, "SignatureError", PyExc_ValueError);
  (void)parse_exc;
  (void)type_exc;

  m.def(
      "format_term",
      [](const std::string& source, const std::optional<std::string>& sig) {
        Signature s = make_signature(sig);
        return print_term(desugar(parse_checked(source, s)));
      },
      py::arg("source"), py::arg("signature_json") = std::nullopt,
      "Parse a program and print its desugared term back as source text.");

  m.def(
      "check",
      [](const std::string& source, const std::optional<std::string>& sig) {
        Signature s = make_signature(sig);
        Term t = desugar(parse_checked(source, s));
        return print_type(check({}, {}, t, s).type);
      },
      py::arg("source"), py::arg("signature_json") = std::nullopt,
      "Typecheck a closed program and return its printed type.");

  m.def(
      "run_json",
      [](const std::string& source, const std::optional<std::string>& sig,
         uint64_t fuel) {
        Signature s = make_signature(sig);
        return run_report_json(run_program(parse_checked(source, s), s, fuel));
      },
      py::arg("source"), py::arg("signature_json") = std::nullopt,
      py::arg("fuel") = uint64_t{100000},
      "Typecheck and evaluate a closed program; returns the run report as a "
      "JSON string (type, outcome, steps, value or error, diagrams).");

  m.def(
      "oracle",
      [](const std::string& source, const std::optional<std::string>& sig,
         uint64_t fuel) {
        Signature s = make_signature(sig);
        Term t = desugar(parse_checked(source, s));
        std::string why;
        std::string sound = soundness_word(check_soundness(t, s, fuel, &why));
        std::string adeq = adequacy_word(check_adequacy(t, s, fuel));
        return py::make_tuple(sound, adeq, why);
      },
      py::arg("source"), py::arg("signature_json") = std::nullopt,
      py::arg("fuel") = uint64_t{100000},
      "Compare the evaluator against the finite order-theoretic model; "
      "returns (soundness, adequacy, detail).");

  m.def(
      "emit",
      [](const std::string& source, const std::optional<std::string>& sig,
         uint64_t fuel, const std::string& format) {
        Signature s = make_signature(sig);
        RunReport r = run_program(parse_checked(source, s), s, fuel);
        if (r.result.outcome.kind != Outcome::Kind::Value)
          throw std::runtime_error("program did not produce a value: " +
                                   r.result.outcome.detail);
        const LabelledDiagram* chosen = &r.result.diagram;
        if (!r.boxed_values.empty())
          chosen = &std::get<Term::BoxedDiag>(r.boxed_values.front().node())
                        .diagram;
        if (format == "dot") return diagram_to_dot(*chosen);
        if (format == "json") return diagram_to_json(*chosen);
        throw std::invalid_argument("format must be \"json\" or \"dot\"");
      },
      py::arg("source"), py::arg("signature_json") = std::nullopt,
      py::arg("fuel") = uint64_t{100000}, py::arg("format") = "json",
      "Run a program and render its first boxed diagram (or the ambient "
      "diagram) as JSON or Graphviz dot.");

  m.def(
      "demo_signature_json", [] { return Signature::demo().to_json_text(); },
      "The built-in demo signature as JSON text.");
}
