#include "eclnl/driver.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "eclnl/typecheck.hpp"
#include "json.hpp"

namespace eclnl {

namespace {

void collect_boxed(const Term& v, std::vector<Term>& out) {
  if (v.get_if<Term::BoxedDiag>()) {
    out.push_back(v);
    return;
  }
  if (auto* p = v.get_if<Term::Pair>()) {
    collect_boxed(p->first, out);
    collect_boxed(p->second, out);
    return;
  }
  if (auto* l = v.get_if<Term::InjLeft>()) collect_boxed(l->arg, out);
  if (auto* r = v.get_if<Term::InjRight>()) collect_boxed(r->arg, out);
}

}  // namespace

RunReport run_program(const SourceProgram& p, const Signature& sig,
                      uint64_t fuel) {
  Term whole = desugar(p);
  TypingDerivation d = check({}, {}, whole, sig);
  RunReport r;
  r.type = d.type;
  r.result = evaluate_closed(d.term, sig, fuel);
  if (r.result.outcome.kind == Outcome::Kind::Value)
    collect_boxed(r.result.outcome.value, r.boxed_values);
  return r;
}

std::string run_report_text(const RunReport& r) {
  std::ostringstream out;
  out << "type: " << print_type(r.type) << "\n";
  switch (r.result.outcome.kind) {
    case Outcome::Kind::Value:
      out << "value: " << print_term(r.result.outcome.value) << "\n";
      break;
    case Outcome::Kind::Error:
      out << "error: " << r.result.outcome.rule << ": "
          << r.result.outcome.detail << "\n";
      break;
    case Outcome::Kind::FuelExhausted:
      out << "error: out of fuel\n";
      break;
  }
  out << "steps: " << r.result.steps << "\n";
  const Diagram& d = r.result.diagram.d;
  out << "diagram: " << d.nodes.size()
      << (d.nodes.size() == 1 ? " node, " : " nodes, ") << d.input_wires.size()
      << " in, " << d.output_wires.size() << " out\n";
  return out.str();
}

std::string run_report_json(const RunReport& r) {
  nlohmann::json j;
  j["type"] = print_type(r.type);
  j["steps"] = r.result.steps;
  switch (r.result.outcome.kind) {
    case Outcome::Kind::Value:
      j["outcome"] = "value";
      j["value"] = print_term(r.result.outcome.value);
      break;
    case Outcome::Kind::Error:
      j["outcome"] = "error";
      j["error"] = {{"rule", r.result.outcome.rule},
                    {"detail", r.result.outcome.detail}};
      break;
    case Outcome::Kind::FuelExhausted:
      j["outcome"] = "fuel_exhausted";
      break;
  }
  j["diagram"] = nlohmann::json::parse(diagram_to_json(r.result.diagram));
  j["boxed"] = nlohmann::json::array();
  for (const Term& b : r.boxed_values) {
    const auto* n = b.get_if<Term::BoxedDiag>();
    nlohmann::json e;
    e["value"] = print_term(b);
    e["diagram"] = nlohmann::json::parse(diagram_to_json(n->diagram));
    j["boxed"].push_back(std::move(e));
  }
  return j.dump(2) + "\n";
}

Signature resolve_signature(const std::optional<std::string>& explicit_path,
                            const std::optional<std::string>& in_file_path,
                            const std::string& base_dir) {
  std::optional<std::filesystem::path> path;
  if (explicit_path) {
    path = *explicit_path;
  } else if (in_file_path) {
    std::filesystem::path p = *in_file_path;
    if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
    path = p;
  }
  if (!path) return Signature::demo();
  std::ifstream in(*path);
  if (!in)
    throw SignatureError("cannot open signature file " + path->string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return Signature::from_json_text(buf.str());
}

std::string parse_error_to_json(const ParseError& e) {
  nlohmann::json j;
  j["kind"] =
      e.kind == ParseError::Kind::UnknownWireType ? "UnknownWireType" : "Syntax";
  j["span"] = {{"line", e.span.line}, {"col", e.span.col}, {"len", e.span.len}};
  j["detail"] = e.what();
  return j.dump();
}

}  // namespace eclnl
