#include "eclnl/typecheck.hpp"

#include <algorithm>

#include "json.hpp"

namespace eclnl {

const char* type_error_kind_name(TypeError::Kind k) {
  switch (k) {
    case TypeError::Kind::UnknownVariable: return "UnknownVariable";
    case TypeError::Kind::UnknownConstant: return "UnknownConstant";
    case TypeError::Kind::DanglingLabel: return "DanglingLabel";
    case TypeError::Kind::TypeMismatch: return "TypeMismatch";
    case TypeError::Kind::NotAFunction: return "NotAFunction";
    case TypeError::Kind::NotABang: return "NotABang";
    case TypeError::Kind::NotADiag: return "NotADiag";
    case TypeError::Kind::LinearVarUnused: return "LinearVarUnused";
    case TypeError::Kind::LinearVarReused: return "LinearVarReused";
    case TypeError::Kind::LabelUnused: return "LabelUnused";
    case TypeError::Kind::LabelReused: return "LabelReused";
    case TypeError::Kind::LinearVarInIntuitionisticPosition:
      return "LinearVarInIntuitionisticPosition";
    case TypeError::Kind::CaseBranchResourceMismatch:
      return "CaseBranchResourceMismatch";
  }
  return "Unknown";
}

std::string type_error_to_json(const TypeError& e) {
  nlohmann::json j;
  j["kind"] = type_error_kind_name(e.kind);
  j["span"] = {{"line", e.span.line}, {"col", e.span.col}, {"len", e.span.len}};
  j["detail"] = e.what();
  return j.dump();
}

namespace {

std::string mismatch_msg(const Type& expected, const Type& found) {
  return "expected " + print_type(expected) + ", found " + print_type(found);
}

struct Checker {
  const Signature& sig;

  [[noreturn]] static void err(TypeError::Kind k, Span sp, const std::string& msg) {
    throw TypeError(k, sp, msg);
  }

  // Disjoint union of sibling usages.
  static Usage merge(const Usage& a, const Usage& b, Span sp) {
    for (Name v : b.vars)
      if (a.vars.count(v))
        err(TypeError::Kind::LinearVarReused, sp,
            "linear variable '" + v.str() + "' is used more than once");
    for (Name l : b.labels)
      if (a.labels.count(l))
        err(TypeError::Kind::LabelReused, sp,
            "label #" + l.str() + " is used more than once");
    Usage u = a;
    u.vars.insert(b.vars.begin(), b.vars.end());
    u.labels.insert(b.labels.begin(), b.labels.end());
    return u;
  }

  // Discharges a binder after its scope was checked: a linear binder must
  // appear in the usage and is removed from it.
  static Usage discharge(Usage u, Name x, const Type& a, Span sp) {
    if (is_intuitionistic(a)) return u;
    if (!u.vars.erase(x))
      err(TypeError::Kind::LinearVarUnused, sp,
          "linear variable '" + x.str() + "' is never used");
    return u;
  }

  static void require_empty_usage(const Usage& u, Span sp, const char* where) {
    if (!u.vars.empty())
      err(TypeError::Kind::LinearVarInIntuitionisticPosition, sp,
          "linear variable '" + u.vars.begin()->str() + "' cannot be used under " +
              where);
    if (!u.labels.empty())
      err(TypeError::Kind::LinearVarInIntuitionisticPosition, sp,
          "label #" + u.labels.begin()->str() + " cannot be used under " +
              std::string(where));
  }

  static MType tuple_mtype(const LabelTuple& t, const LabelContext& wires, Span sp) {
    switch (t.kind()) {
      case LabelTuple::Kind::Star:
        return MType::unit();
      case LabelTuple::Kind::Label: {
        auto it = wires.find(t.label_name());
        if (it == wires.end())
          err(TypeError::Kind::TypeMismatch, sp,
              "boundary tuple mentions label #" + t.label_name().str() +
                  " which is not a diagram boundary label");
        return MType::wire(it->second);
      }
      case LabelTuple::Kind::Pair:
        return MType::tensor(tuple_mtype(t.first(), wires, sp),
                             tuple_mtype(t.second(), wires, sp));
    }
    err(TypeError::Kind::TypeMismatch, sp, "malformed label tuple");
  }

  DerivNode infer(const VarContext& gamma, const LabelContext& q, const Term& m,
                  const std::optional<Type>& expected) {
    Span sp = m.span();
    DerivNode node = std::visit(
        Overloaded{
            [&](const Term::Var& n) -> DerivNode {
              const Type* a = gamma.lookup(n.name);
              if (!a)
                err(TypeError::Kind::UnknownVariable, sp,
                    "unknown variable '" + n.name.str() + "'");
              Usage u;
              if (!is_intuitionistic(*a)) u.vars.insert(n.name);
              return {Rule::Var, gamma, q, m, *a, std::move(u), {}};
            },
            [&](const Term::Const& n) -> DerivNode {
              if (!sig.find(n.name))
                err(TypeError::Kind::UnknownConstant, sp,
                    "unknown generator '" + n.name.str() + "'");
              return {Rule::Const, gamma, q, m, sig.constant_type(n.name), {}, {}};
            },
            [&](const Term::Label& n) -> DerivNode {
              auto it = q.find(n.label);
              if (it == q.end())
                err(TypeError::Kind::DanglingLabel, sp,
                    "label #" + n.label.str() + " is not in scope");
              Usage u;
              u.labels.insert(n.label);
              return {Rule::Label, gamma, q, m, Type::wire(it->second), std::move(u), {}};
            },
            [&](const Term::Star&) -> DerivNode {
              return {Rule::Star, gamma, q, m, Type::unit(), {}, {}};
            },
            [&](const Term::Let& n) -> DerivNode {
              DerivNode bound = infer(gamma, q, n.bound, std::nullopt);
              VarContext inner = gamma.extend(n.var, bound.type);
              DerivNode body = infer(inner, q, n.body, expected);
              Usage ub = discharge(body.usage, n.var, bound.type, sp);
              Usage u = merge(bound.usage, ub, sp);
              Term elab = Term::let(n.var, bound.term, body.term, sp);
              Type ty = body.type;
              return {Rule::Let, gamma, q, elab, ty, std::move(u),
                      {std::move(bound), std::move(body)}};
            },
            [&](const Term::Initial& n) -> DerivNode {
              DerivNode arg = infer(gamma, q, n.arg, Type::zero());
              Term elab = Term::initial(n.target, arg.term, sp);
              Usage u = arg.usage;
              return {Rule::Initial, gamma, q, elab, n.target, std::move(u),
                      {std::move(arg)}};
            },
            [&](const Term::InjLeft& n) -> DerivNode {
              Type a = Type::zero(), b = Type::zero();
              if (n.left_type && n.right_type) {
                a = *n.left_type;
                b = *n.right_type;
              } else if (expected && expected->kind() == Type::Kind::Sum) {
                a = expected->left();
                b = expected->right();
              } else {
                err(TypeError::Kind::TypeMismatch, sp,
                    "cannot infer the sum type of an unannotated injection; "
                    "write left[A, B]");
              }
              DerivNode arg = infer(gamma, q, n.arg, a);
              Term elab = Term::make(Term::InjLeft{a, b, arg.term}, sp);
              Usage u = arg.usage;
              return {Rule::InjLeft, gamma, q, elab, Type::sum(a, b), std::move(u),
                      {std::move(arg)}};
            },
            [&](const Term::InjRight& n) -> DerivNode {
              Type a = Type::zero(), b = Type::zero();
              if (n.left_type && n.right_type) {
                a = *n.left_type;
                b = *n.right_type;
              } else if (expected && expected->kind() == Type::Kind::Sum) {
                a = expected->left();
                b = expected->right();
              } else {
                err(TypeError::Kind::TypeMismatch, sp,
                    "cannot infer the sum type of an unannotated injection; "
                    "write right[A, B]");
              }
              DerivNode arg = infer(gamma, q, n.arg, b);
              Term elab = Term::make(Term::InjRight{a, b, arg.term}, sp);
              Usage u = arg.usage;
              return {Rule::InjRight, gamma, q, elab, Type::sum(a, b), std::move(u),
                      {std::move(arg)}};
            },
            [&](const Term::Case& n) -> DerivNode {
              DerivNode scrut = infer(gamma, q, n.scrutinee, std::nullopt);
              if (scrut.type.kind() != Type::Kind::Sum)
                err(TypeError::Kind::TypeMismatch, n.scrutinee.span(),
                    "case scrutinee has type " + print_type(scrut.type) +
                        ", which is not a sum");
              VarContext gl = gamma.extend(n.left_var, scrut.type.left());
              DerivNode lb = infer(gl, q, n.left_body, expected);
              VarContext gr = gamma.extend(n.right_var, scrut.type.right());
              std::optional<Type> rexp = expected ? expected : std::optional<Type>(lb.type);
              DerivNode rb = infer(gr, q, n.right_body, rexp);
              if (lb.type != rb.type)
                err(TypeError::Kind::TypeMismatch, sp,
                    "case branches have different types: " + print_type(lb.type) +
                        " and " + print_type(rb.type));
              Usage ul = discharge(lb.usage, n.left_var, scrut.type.left(), sp);
              Usage ur = discharge(rb.usage, n.right_var, scrut.type.right(), sp);
              if (!(ul == ur)) {
                std::string detail = "case branches consume different linear resources";
                for (Name v : ul.vars)
                  if (!ur.vars.count(v))
                    detail += "; '" + v.str() + "' only in the left branch";
                for (Name v : ur.vars)
                  if (!ul.vars.count(v))
                    detail += "; '" + v.str() + "' only in the right branch";
                for (Name l : ul.labels)
                  if (!ur.labels.count(l))
                    detail += "; #" + l.str() + " only in the left branch";
                for (Name l : ur.labels)
                  if (!ul.labels.count(l))
                    detail += "; #" + l.str() + " only in the right branch";
                err(TypeError::Kind::CaseBranchResourceMismatch, sp, detail);
              }
              Usage u = merge(scrut.usage, ul, sp);
              Term elab = Term::case_of(scrut.term, n.left_var, lb.term,
                                        n.right_var, rb.term, sp);
              Type ty = lb.type;
              return {Rule::Case, gamma, q, elab, ty, std::move(u),
                      {std::move(scrut), std::move(lb), std::move(rb)}};
            },
            [&](const Term::Seq& n) -> DerivNode {
              DerivNode first = infer(gamma, q, n.first, Type::unit());
              DerivNode second = infer(gamma, q, n.second, expected);
              Usage u = merge(first.usage, second.usage, sp);
              Term elab = Term::seq(first.term, second.term, sp);
              Type ty = second.type;
              return {Rule::Seq, gamma, q, elab, ty, std::move(u),
                      {std::move(first), std::move(second)}};
            },
            [&](const Term::Pair& n) -> DerivNode {
              std::optional<Type> e1, e2;
              if (expected && expected->kind() == Type::Kind::Tensor) {
                e1 = expected->left();
                e2 = expected->right();
              }
              DerivNode first = infer(gamma, q, n.first, e1);
              DerivNode second = infer(gamma, q, n.second, e2);
              Usage u = merge(first.usage, second.usage, sp);
              Term elab = Term::pair(first.term, second.term, sp);
              Type ty = Type::tensor(first.type, second.type);
              return {Rule::Pair, gamma, q, elab, ty, std::move(u),
                      {std::move(first), std::move(second)}};
            },
            [&](const Term::LetPair& n) -> DerivNode {
              DerivNode bound = infer(gamma, q, n.bound, std::nullopt);
              if (bound.type.kind() != Type::Kind::Tensor)
                err(TypeError::Kind::TypeMismatch, n.bound.span(),
                    "let <,> needs a pair, found " + print_type(bound.type));
              Type a = bound.type.left(), b = bound.type.right();
              VarContext inner = gamma.extend(n.first_var, a).extend(n.second_var, b);
              DerivNode body = infer(inner, q, n.body, expected);
              // Innermost binder first, so a shadowing pair binder behaves
              // like two nested bindings.
              Usage ub = discharge(body.usage, n.second_var, b, sp);
              ub = discharge(std::move(ub), n.first_var, a, sp);
              Usage u = merge(bound.usage, ub, sp);
              Term elab = Term::let_pair(n.first_var, n.second_var, bound.term,
                                         body.term, sp);
              Type ty = body.type;
              return {Rule::LetPair, gamma, q, elab, ty, std::move(u),
                      {std::move(bound), std::move(body)}};
            },
            [&](const Term::Lambda& n) -> DerivNode {
              std::optional<Type> bexp;
              if (expected && expected->kind() == Type::Kind::Lolli &&
                  expected->domain() == n.annot)
                bexp = expected->codomain();
              VarContext inner = gamma.extend(n.var, n.annot);
              DerivNode body = infer(inner, q, n.body, bexp);
              Usage u = discharge(body.usage, n.var, n.annot, sp);
              Term elab = Term::lambda(n.var, n.annot, body.term, sp);
              Type ty = Type::lolli(n.annot, body.type);
              return {Rule::Lambda, gamma, q, elab, ty, std::move(u),
                      {std::move(body)}};
            },
            [&](const Term::App& n) -> DerivNode {
              DerivNode fn = infer(gamma, q, n.fn, std::nullopt);
              if (fn.type.kind() != Type::Kind::Lolli)
                err(TypeError::Kind::NotAFunction, n.fn.span(),
                    "cannot apply a value of type " + print_type(fn.type));
              DerivNode arg = infer(gamma, q, n.arg, fn.type.domain());
              Usage u = merge(fn.usage, arg.usage, sp);
              Term elab = Term::app(fn.term, arg.term, sp);
              Type ty = fn.type.codomain();
              return {Rule::App, gamma, q, elab, ty, std::move(u),
                      {std::move(fn), std::move(arg)}};
            },
            [&](const Term::Lift& n) -> DerivNode {
              std::optional<Type> iexp;
              if (expected && expected->kind() == Type::Kind::Bang)
                iexp = expected->inner();
              DerivNode inner = infer(gamma, q, n.inner, iexp);
              require_empty_usage(inner.usage, sp, "lift");
              Term elab = Term::lift(inner.term, sp);
              Type ty = Type::bang(inner.type);
              return {Rule::Lift, gamma, q, elab, ty, {}, {std::move(inner)}};
            },
            [&](const Term::Force& n) -> DerivNode {
              std::optional<Type> iexp;
              if (expected) iexp = Type::bang(*expected);
              DerivNode inner = infer(gamma, q, n.inner, iexp);
              if (inner.type.kind() != Type::Kind::Bang)
                err(TypeError::Kind::NotABang, n.inner.span(),
                    "force needs a ! value, found " + print_type(inner.type));
              Usage u = inner.usage;
              Term elab = Term::force(inner.term, sp);
              Type ty = inner.type.inner();
              return {Rule::Force, gamma, q, elab, ty, std::move(u),
                      {std::move(inner)}};
            },
            [&](const Term::Box& n) -> DerivNode {
              std::optional<Type> iexp;
              if (expected && expected->kind() == Type::Kind::Diag &&
                  expected->diag_in() == n.input)
                iexp = Type::bang(
                    Type::lolli(n.input.to_type(), expected->diag_out().to_type()));
              DerivNode inner = infer(gamma, q, n.inner, iexp);
              if (inner.type.kind() != Type::Kind::Bang)
                err(TypeError::Kind::NotABang, n.inner.span(),
                    "box needs a ! value, found " + print_type(inner.type));
              Type f = inner.type.inner();
              if (f.kind() != Type::Kind::Lolli)
                err(TypeError::Kind::TypeMismatch, n.inner.span(),
                    "box needs a suspended function, found !" + print_type(f));
              if (f.domain() != n.input.to_type())
                err(TypeError::Kind::TypeMismatch, sp,
                    "box annotation " + print_mtype(n.input) +
                        " does not match the function domain " +
                        print_type(f.domain()));
              auto out = MType::from_type(f.codomain());
              if (!out)
                err(TypeError::Kind::TypeMismatch, sp,
                    "boxed function must produce a wire type, found " +
                        print_type(f.codomain()));
              Usage u = inner.usage;
              Term elab = Term::box(n.input, inner.term, sp);
              Type ty = Type::diag(n.input, *out);
              return {Rule::Box, gamma, q, elab, ty, std::move(u),
                      {std::move(inner)}};
            },
            [&](const Term::Apply& n) -> DerivNode {
              DerivNode d = infer(gamma, q, n.diag, std::nullopt);
              if (d.type.kind() != Type::Kind::Diag)
                err(TypeError::Kind::NotADiag, n.diag.span(),
                    "apply needs a diagram, found " + print_type(d.type));
              DerivNode arg = infer(gamma, q, n.arg, d.type.diag_in().to_type());
              Usage u = merge(d.usage, arg.usage, sp);
              Term elab = Term::apply(d.term, arg.term, sp);
              Type ty = d.type.diag_out().to_type();
              return {Rule::Apply, gamma, q, elab, ty, std::move(u),
                      {std::move(d), std::move(arg)}};
            },
            [&](const Term::Rec& n) -> DerivNode {
              if (n.annot.kind() != Type::Kind::Bang)
                err(TypeError::Kind::TypeMismatch, sp,
                    "rec variable must have a ! type, found " + print_type(n.annot));
              VarContext inner = gamma.extend(n.var, n.annot);
              DerivNode body = infer(inner, q, n.body, n.annot.inner());
              require_empty_usage(body.usage, sp, "rec");
              Term elab = Term::rec(n.var, n.annot, body.term, sp);
              Type ty = n.annot.inner();
              return {Rule::Rec, gamma, q, elab, ty, {}, {std::move(body)}};
            },
            [&](const Term::BoxedDiag& n) -> DerivNode {
              try {
                n.diagram.validate();
              } catch (const DiagramError& e) {
                err(TypeError::Kind::TypeMismatch, sp,
                    std::string("malformed diagram value: ") + e.what());
              }
              LabelContext dom = n.diagram.dom(), cod = n.diagram.cod();
              std::vector<Name> dl = n.dom_tuple.labels(), cl = n.cod_tuple.labels();
              auto keys = [](const LabelContext& c) {
                std::set<Name> s;
                for (const auto& [k, v] : c) s.insert(k);
                return s;
              };
              if (std::set<Name>(dl.begin(), dl.end()) != keys(dom))
                err(TypeError::Kind::TypeMismatch, sp,
                    "input tuple labels do not match the diagram inputs");
              if (std::set<Name>(cl.begin(), cl.end()) != keys(cod))
                err(TypeError::Kind::TypeMismatch, sp,
                    "output tuple labels do not match the diagram outputs");
              MType in = tuple_mtype(n.dom_tuple, dom, sp);
              MType out = tuple_mtype(n.cod_tuple, cod, sp);
              return {Rule::BoxedDiag, gamma, q, m, Type::diag(in, out), {}, {}};
            },
        },
        m.node());
    if (expected && node.type != *expected)
      err(TypeError::Kind::TypeMismatch, sp, mismatch_msg(*expected, node.type));
    return node;
  }
};

}  // namespace

TypingDerivation check(const VarContext& gamma, const LabelContext& q,
                       const Term& m, const Signature& sig,
                       std::optional<Type> expected) {
  Checker c{sig};
  DerivNode root = c.infer(gamma, q, m, expected);
  for (const VarBinding& b : gamma.entries())
    if (!is_intuitionistic(b.type) && !root.usage.vars.count(b.name))
      Checker::err(TypeError::Kind::LinearVarUnused, m.span(),
                   "linear variable '" + b.name.str() + "' is never used");
  for (const auto& [l, w] : q)
    if (!root.usage.labels.count(l))
      Checker::err(TypeError::Kind::LabelUnused, m.span(),
                   "label #" + l.str() + " is never used");
  return root;
}

ConfigCheck check_configuration(const LabelContext& q, const LabelledDiagram& s,
                                const Term& m, const Type& a,
                                const Signature& sig) {
  if (s.dom() != q)
    Checker::err(TypeError::Kind::TypeMismatch, m.span(),
                 "configuration diagram inputs do not match the ambient labels");
  LabelContext scod = s.cod();
  std::set<Name> free = free_labels(m);
  ConfigCheck out;
  for (const auto& [l, w] : scod) {
    if (free.count(l))
      out.used.emplace(l, w);
    else
      out.unused.emplace(l, w);
  }
  for (Name l : free)
    if (!scod.count(l))
      Checker::err(TypeError::Kind::DanglingLabel, m.span(),
                   "label #" + l.str() + " is not an output of the diagram");
  out.deriv = check({}, out.used, m, sig, a);
  return out;
}

}  // namespace eclnl
