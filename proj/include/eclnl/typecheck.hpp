#pragma once

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "eclnl/diagram.hpp"
#include "eclnl/signature.hpp"
#include "eclnl/span.hpp"
#include "eclnl/term.hpp"
#include "eclnl/types.hpp"

namespace eclnl {

struct TypeError : std::runtime_error {
  enum class Kind {
    UnknownVariable,
    UnknownConstant,
    DanglingLabel,
    TypeMismatch,
    NotAFunction,
    NotABang,
    NotADiag,
    LinearVarUnused,
    LinearVarReused,
    LabelUnused,
    LabelReused,
    LinearVarInIntuitionisticPosition,
    CaseBranchResourceMismatch,
  };
  TypeError(Kind k, Span s, const std::string& message)
      : std::runtime_error(message), kind(k), span(s) {}
  Kind kind;
  Span span;
};

const char* type_error_kind_name(TypeError::Kind k);
// {"kind": ..., "span": {"line", "col", "len"}, "detail": ...}
std::string type_error_to_json(const TypeError& e);

// Linear resources consumed by a subterm: linear variables and labels.
struct Usage {
  std::set<Name> vars;
  std::set<Name> labels;
  bool operator==(const Usage& o) const = default;
};

enum class Rule {
  Var, Const, Label, Star, Let, Initial, InjLeft, InjRight, Case, Seq,
  Pair, LetPair, Lambda, App, Lift, Force, Box, Apply, Rec, BoxedDiag,
};

// One node of a typing derivation. gamma and q are the contexts the node was
// checked under; term is the elaborated subterm (injection annotations
// filled in); kids follow subterm order.
struct DerivNode {
  Rule rule = Rule::Star;
  VarContext gamma;
  LabelContext q;
  Term term = Term::star();
  Type type = Type::unit();
  Usage usage;
  std::vector<DerivNode> kids;
};

using TypingDerivation = DerivNode;

// Checks gamma; q |- m : expected (or synthesizes the type when expected is
// absent), requiring every linear variable of gamma and every label of q to
// be consumed exactly once. The expected type is also used to fill in
// omitted left/right annotations. Throws TypeError.
TypingDerivation check(const VarContext& gamma, const LabelContext& q,
                       const Term& m, const Signature& sig,
                       std::optional<Type> expected = std::nullopt);

// Configuration judgement for a machine state (s, m) hanging in label
// context q: requires dom(s) = q, splits cod(s) into the labels m uses
// (checked as the label context of m at type a) and the unused rest.
struct ConfigCheck {
  LabelContext unused;  // Q'
  LabelContext used;    // Q''
  TypingDerivation deriv;
};

ConfigCheck check_configuration(const LabelContext& q, const LabelledDiagram& s,
                                const Term& m, const Type& a,
                                const Signature& sig);

}  // namespace eclnl
