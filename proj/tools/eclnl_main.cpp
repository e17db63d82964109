#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "eclnl/driver.hpp"
#include "eclnl/oracle.hpp"
#include "eclnl/typecheck.hpp"
#include "json.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitTypeError = 1;   // includes syntax errors
constexpr int kExitStuck = 2;
constexpr int kExitFuel = 3;
constexpr int kExitUsage = 4;

struct Options {
  std::string file;
  std::string format = "text";
  std::optional<std::string> signature_path;
  std::optional<std::string> out_path;
  uint64_t fuel = 100000;
};

uint64_t default_fuel() {
  if (const char* env = std::getenv("ECLNL_FUEL")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
    std::cerr << "warning: ignoring invalid ECLNL_FUEL='" << env << "'\n";
  }
  return 100000;
}

// Writes to opts.out_path when set, otherwise to stdout.
bool deliver(const Options& opts, const std::string& text) {
  if (!opts.out_path) {
    std::cout << text;
    return true;
  }
  std::ofstream out(*opts.out_path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write " << *opts.out_path << "\n";
    return false;
  }
  out << text;
  return true;
}

struct Loaded {
  eclnl::SourceProgram program;
  eclnl::Signature signature = eclnl::Signature::demo();
};

// Reads, parses and signature-resolves a program file. On failure prints a
// diagnostic (JSON on stdout when asked) and returns the exit code instead.
std::variant<Loaded, int> load(const Options& opts) {
  std::ifstream in(opts.file);
  if (!in) {
    std::cerr << "error: cannot open " << opts.file << "\n";
    return kExitUsage;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const bool json = opts.format == "json";
  try {
    eclnl::SourceProgram skeleton = eclnl::parse_program(text);
    Loaded l;
    l.signature = eclnl::resolve_signature(
        opts.signature_path, skeleton.signature_path,
        std::filesystem::path(opts.file).parent_path().string());
    l.program = eclnl::parse_program(text, l.signature);
    return l;
  } catch (const eclnl::ParseError& e) {
    if (json)
      std::cout << eclnl::parse_error_to_json(e) << "\n";
    else
      std::cerr << opts.file << ":" << e.span.line << ":" << e.span.col
                << ": error: " << e.what() << "\n";
    return kExitTypeError;
  } catch (const eclnl::SignatureError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

int cmd_check(const Options& opts) {
  auto loaded = load(opts);
  if (auto* code = std::get_if<int>(&loaded)) return *code;
  auto& [program, sig] = std::get<Loaded>(loaded);
  const bool json = opts.format == "json";
  try {
    eclnl::TypingDerivation d =
        eclnl::check({}, {}, eclnl::desugar(program), sig);
    if (json) {
      nlohmann::json j{{"ok", true}, {"type", eclnl::print_type(d.type)}};
      if (!deliver(opts, j.dump() + "\n")) return kExitUsage;
    } else {
      if (!deliver(opts, eclnl::print_type(d.type) + "\n")) return kExitUsage;
    }
    return kExitOk;
  } catch (const eclnl::TypeError& e) {
    if (json)
      std::cout << eclnl::type_error_to_json(e) << "\n";
    else
      std::cerr << opts.file << ":" << e.span.line << ":" << e.span.col
                << ": error: " << eclnl::type_error_kind_name(e.kind) << ": "
                << e.what() << "\n";
    return kExitTypeError;
  }
}

int run_common(const Options& opts, eclnl::RunReport* out_report) {
  auto loaded = load(opts);
  if (auto* code = std::get_if<int>(&loaded)) return *code;
  auto& [program, sig] = std::get<Loaded>(loaded);
  const bool json = opts.format == "json";
  try {
    *out_report = eclnl::run_program(program, sig, opts.fuel);
    return -1;  // caller renders
  } catch (const eclnl::TypeError& e) {
    if (json)
      std::cout << eclnl::type_error_to_json(e) << "\n";
    else
      std::cerr << opts.file << ":" << e.span.line << ":" << e.span.col
                << ": error: " << eclnl::type_error_kind_name(e.kind) << ": "
                << e.what() << "\n";
    return kExitTypeError;
  }
}

int outcome_code(const eclnl::Outcome& o) {
  switch (o.kind) {
    case eclnl::Outcome::Kind::Value: return kExitOk;
    case eclnl::Outcome::Kind::Error: return kExitStuck;
    case eclnl::Outcome::Kind::FuelExhausted: return kExitFuel;
  }
  return kExitStuck;
}

int cmd_run(const Options& opts) {
  eclnl::RunReport report;
  if (int code = run_common(opts, &report); code >= 0) return code;
  const std::string text = opts.format == "json"
                               ? eclnl::run_report_json(report)
                               : eclnl::run_report_text(report);
  if (!deliver(opts, text)) return kExitUsage;
  return outcome_code(report.result.outcome);
}

int cmd_emit(const Options& opts) {
  eclnl::RunReport report;
  if (int code = run_common(opts, &report); code >= 0) return code;
  if (report.result.outcome.kind != eclnl::Outcome::Kind::Value) {
    if (report.result.outcome.kind == eclnl::Outcome::Kind::Error)
      std::cerr << "error: evaluation got stuck at " << report.result.outcome.rule
                << ": " << report.result.outcome.detail << "\n";
    else
      std::cerr << "error: out of fuel\n";
    return outcome_code(report.result.outcome);
  }
  // A boxed diagram value wins; otherwise the circuit the run built.
  const eclnl::LabelledDiagram* chosen = &report.result.diagram;
  if (!report.boxed_values.empty())
    chosen = &report.boxed_values.front().get_if<eclnl::Term::BoxedDiag>()->diagram;
  const std::string text = opts.format == "dot" ? eclnl::diagram_to_dot(*chosen)
                                                : eclnl::diagram_to_json(*chosen);
  if (!deliver(opts, text)) return kExitUsage;
  return kExitOk;
}

const char* soundness_name(eclnl::SoundnessVerdict v) {
  switch (v) {
    case eclnl::SoundnessVerdict::Pass: return "pass";
    case eclnl::SoundnessVerdict::Fail: return "fail";
    case eclnl::SoundnessVerdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

const char* adequacy_name(eclnl::AdequacyVerdict v) {
  switch (v) {
    case eclnl::AdequacyVerdict::Pass: return "pass";
    case eclnl::AdequacyVerdict::PassPresumedDivergent:
      return "pass-presumed-divergent";
    case eclnl::AdequacyVerdict::Fail: return "fail";
    case eclnl::AdequacyVerdict::Unsupported: return "unsupported";
  }
  return "unsupported";
}

int cmd_oracle(const Options& opts) {
  auto loaded = load(opts);
  if (auto* code = std::get_if<int>(&loaded)) return *code;
  auto& [program, sig] = std::get<Loaded>(loaded);
  const bool json = opts.format == "json";
  eclnl::Term whole = eclnl::desugar(program);
  try {
    eclnl::check({}, {}, whole, sig);
  } catch (const eclnl::TypeError& e) {
    if (json)
      std::cout << eclnl::type_error_to_json(e) << "\n";
    else
      std::cerr << opts.file << ":" << e.span.line << ":" << e.span.col
                << ": error: " << eclnl::type_error_kind_name(e.kind) << ": "
                << e.what() << "\n";
    return kExitTypeError;
  }
  std::string sound_why, adeq_why;
  eclnl::SoundnessVerdict sv =
      eclnl::check_soundness(whole, sig, opts.fuel, &sound_why);
  eclnl::AdequacyVerdict av =
      eclnl::check_adequacy(whole, sig, opts.fuel, &adeq_why);
  std::string text;
  if (json) {
    nlohmann::json j;
    j["soundness"] = soundness_name(sv);
    if (!sound_why.empty()) j["soundness_detail"] = sound_why;
    j["adequacy"] = adequacy_name(av);
    if (!adeq_why.empty()) j["adequacy_detail"] = adeq_why;
    text = j.dump(2) + "\n";
  } else {
    std::ostringstream o;
    o << "soundness: " << soundness_name(sv);
    if (!sound_why.empty()) o << " (" << sound_why << ")";
    o << "\nadequacy: " << adequacy_name(av);
    if (!adeq_why.empty()) o << " (" << adeq_why << ")";
    o << "\n";
    text = o.str();
  }
  if (!deliver(opts, text)) return kExitUsage;
  bool failed = sv == eclnl::SoundnessVerdict::Fail ||
                av == eclnl::AdequacyVerdict::Fail;
  return failed ? kExitStuck : kExitOk;
}

void add_common(CLI::App* sub, Options& opts, bool emit_formats) {
  sub->add_option("file", opts.file, "program file")->required();
  sub->add_option("--signature", opts.signature_path,
                  "signature JSON (overrides the program's signature line)");
  sub->add_option("--out", opts.out_path, "write output to a file");
  if (emit_formats)
    sub->add_option("--format", opts.format, "output format")
        ->check(CLI::IsMember({"json", "dot"}))
        ->default_val("json");
  else
    sub->add_option("--format", opts.format, "output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->default_val("text");
  sub->add_option("--fuel", opts.fuel, "evaluation step budget")
      ->default_val(default_fuel());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"string-diagram lambda calculus tools"};
  app.require_subcommand(1);

  Options check_opts, run_opts, oracle_opts, emit_opts;
  add_common(app.add_subcommand("check", "typecheck a program"), check_opts,
             false);
  add_common(app.add_subcommand("run", "evaluate a program"), run_opts, false);
  add_common(app.add_subcommand("oracle",
                                "compare evaluation with the finite model"),
             oracle_opts, false);
  add_common(app.add_subcommand("emit", "evaluate and print the diagram"),
             emit_opts, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (app.got_subcommand("check")) return cmd_check(check_opts);
  if (app.got_subcommand("run")) return cmd_run(run_opts);
  if (app.got_subcommand("oracle")) return cmd_oracle(oracle_opts);
  if (app.got_subcommand("emit")) return cmd_emit(emit_opts);
  return kExitUsage;
}
