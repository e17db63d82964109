#include "eclnl/term.hpp"

#include <map>

namespace eclnl {

bool is_value(const Term& t) {
  return std::visit(
      Overloaded{
          [](const Term::Var&) { return true; },
          [](const Term::Const&) { return true; },
          [](const Term::Star&) { return true; },
          [](const Term::Label&) { return true; },
          [](const Term::Lambda&) { return true; },
          [](const Term::Lift&) { return true; },  // lift m for any m
          [](const Term::BoxedDiag&) { return true; },
          [](const Term::InjLeft& n) { return is_value(n.arg); },
          [](const Term::InjRight& n) { return is_value(n.arg); },
          [](const Term::Pair& n) { return is_value(n.first) && is_value(n.second); },
          [](const auto&) { return false; },
      },
      t.node());
}

namespace {

void free_vars_rec(const Term& t, std::set<Name>& bound, std::set<Name>& out) {
  std::visit(
      Overloaded{
          [&](const Term::Var& n) {
            if (!bound.count(n.name)) out.insert(n.name);
          },
          [&](const Term::Const&) {},
          [&](const Term::Star&) {},
          [&](const Term::Label&) {},
          [&](const Term::BoxedDiag&) {},
          [&](const Term::Let& n) {
            free_vars_rec(n.bound, bound, out);
            bool fresh = bound.insert(n.var).second;
            free_vars_rec(n.body, bound, out);
            if (fresh) bound.erase(n.var);
          },
          [&](const Term::Initial& n) { free_vars_rec(n.arg, bound, out); },
          [&](const Term::InjLeft& n) { free_vars_rec(n.arg, bound, out); },
          [&](const Term::InjRight& n) { free_vars_rec(n.arg, bound, out); },
          [&](const Term::Case& n) {
            free_vars_rec(n.scrutinee, bound, out);
            bool fl = bound.insert(n.left_var).second;
            free_vars_rec(n.left_body, bound, out);
            if (fl) bound.erase(n.left_var);
            bool fr = bound.insert(n.right_var).second;
            free_vars_rec(n.right_body, bound, out);
            if (fr) bound.erase(n.right_var);
          },
          [&](const Term::Seq& n) {
            free_vars_rec(n.first, bound, out);
            free_vars_rec(n.second, bound, out);
          },
          [&](const Term::Pair& n) {
            free_vars_rec(n.first, bound, out);
            free_vars_rec(n.second, bound, out);
          },
          [&](const Term::LetPair& n) {
            free_vars_rec(n.bound, bound, out);
            bool f1 = bound.insert(n.first_var).second;
            bool f2 = bound.insert(n.second_var).second;
            free_vars_rec(n.body, bound, out);
            if (f1) bound.erase(n.first_var);
            if (f2) bound.erase(n.second_var);
          },
          [&](const Term::Lambda& n) {
            bool f = bound.insert(n.var).second;
            free_vars_rec(n.body, bound, out);
            if (f) bound.erase(n.var);
          },
          [&](const Term::App& n) {
            free_vars_rec(n.fn, bound, out);
            free_vars_rec(n.arg, bound, out);
          },
          [&](const Term::Lift& n) { free_vars_rec(n.inner, bound, out); },
          [&](const Term::Force& n) { free_vars_rec(n.inner, bound, out); },
          [&](const Term::Box& n) { free_vars_rec(n.inner, bound, out); },
          [&](const Term::Apply& n) {
            free_vars_rec(n.diag, bound, out);
            free_vars_rec(n.arg, bound, out);
          },
          [&](const Term::Rec& n) {
            bool f = bound.insert(n.var).second;
            free_vars_rec(n.body, bound, out);
            if (f) bound.erase(n.var);
          },
      },
      t.node());
}

}  // namespace

std::set<Name> free_vars(const Term& t) {
  std::set<Name> bound, out;
  free_vars_rec(t, bound, out);
  return out;
}

namespace {

void free_labels_rec(const Term& t, std::set<Name>& out) {
  std::visit(
      Overloaded{
          [&](const Term::Label& n) { out.insert(n.label); },
          [&](const Term::BoxedDiag&) {},  // internal labels are not free
          [&](const Term::Var&) {},
          [&](const Term::Const&) {},
          [&](const Term::Star&) {},
          [&](const Term::Let& n) {
            free_labels_rec(n.bound, out);
            free_labels_rec(n.body, out);
          },
          [&](const Term::Initial& n) { free_labels_rec(n.arg, out); },
          [&](const Term::InjLeft& n) { free_labels_rec(n.arg, out); },
          [&](const Term::InjRight& n) { free_labels_rec(n.arg, out); },
          [&](const Term::Case& n) {
            free_labels_rec(n.scrutinee, out);
            free_labels_rec(n.left_body, out);
            free_labels_rec(n.right_body, out);
          },
          [&](const Term::Seq& n) {
            free_labels_rec(n.first, out);
            free_labels_rec(n.second, out);
          },
          [&](const Term::Pair& n) {
            free_labels_rec(n.first, out);
            free_labels_rec(n.second, out);
          },
          [&](const Term::LetPair& n) {
            free_labels_rec(n.bound, out);
            free_labels_rec(n.body, out);
          },
          [&](const Term::Lambda& n) { free_labels_rec(n.body, out); },
          [&](const Term::App& n) {
            free_labels_rec(n.fn, out);
            free_labels_rec(n.arg, out);
          },
          [&](const Term::Lift& n) { free_labels_rec(n.inner, out); },
          [&](const Term::Force& n) { free_labels_rec(n.inner, out); },
          [&](const Term::Box& n) { free_labels_rec(n.inner, out); },
          [&](const Term::Apply& n) {
            free_labels_rec(n.diag, out);
            free_labels_rec(n.arg, out);
          },
          [&](const Term::Rec& n) { free_labels_rec(n.body, out); },
      },
      t.node());
}

}  // namespace

std::set<Name> free_labels(const Term& t) {
  std::set<Name> out;
  free_labels_rec(t, out);
  return out;
}

Name fresh_name(Name base, const std::set<Name>& avoid) {
  if (!avoid.count(base)) return base;
  std::string stem = base.str();
  for (;;) {
    stem += '\'';
    Name candidate(stem);
    if (!avoid.count(candidate)) return candidate;
  }
}

namespace {

// Renames binder `var` (bound in `body`) so it cannot capture a free
// variable of v; returns the safe (var, body).
std::pair<Name, Term> avoid_capture(Name var, Term body, const std::set<Name>& fv_v,
                                    Name x) {
  if (var == x || !fv_v.count(var)) return {var, std::move(body)};
  std::set<Name> avoid = fv_v;
  avoid.insert(x);
  for (Name n : free_vars(body)) avoid.insert(n);
  Name renamed = fresh_name(var, avoid);
  return {renamed, substitute(body, Term::var(renamed), var)};
}

Term substitute_rec(const Term& m, const Term& v, Name x, const std::set<Name>& fv_v) {
  return std::visit(
      Overloaded{
          [&](const Term::Var& n) { return n.name == x ? v : m; },
          [&](const Term::Const&) { return m; },
          [&](const Term::Star&) { return m; },
          [&](const Term::Label&) { return m; },
          [&](const Term::BoxedDiag&) { return m; },
          [&](const Term::Let& n) {
            Term bound = substitute_rec(n.bound, v, x, fv_v);
            if (n.var == x) return Term::let(n.var, bound, n.body, m.span());
            auto [var, body] = avoid_capture(n.var, n.body, fv_v, x);
            return Term::let(var, bound, substitute_rec(body, v, x, fv_v), m.span());
          },
          [&](const Term::Initial& n) {
            return Term::initial(n.target, substitute_rec(n.arg, v, x, fv_v), m.span());
          },
          [&](const Term::InjLeft& n) {
            return Term::make(
                Term::InjLeft{n.left_type, n.right_type, substitute_rec(n.arg, v, x, fv_v)},
                m.span());
          },
          [&](const Term::InjRight& n) {
            return Term::make(
                Term::InjRight{n.left_type, n.right_type, substitute_rec(n.arg, v, x, fv_v)},
                m.span());
          },
          [&](const Term::Case& n) {
            Term scrut = substitute_rec(n.scrutinee, v, x, fv_v);
            Name lv = n.left_var;
            Term lb = n.left_body;
            if (lv != x) {
              std::tie(lv, lb) = avoid_capture(lv, lb, fv_v, x);
              lb = substitute_rec(lb, v, x, fv_v);
            }
            Name rv = n.right_var;
            Term rb = n.right_body;
            if (rv != x) {
              std::tie(rv, rb) = avoid_capture(rv, rb, fv_v, x);
              rb = substitute_rec(rb, v, x, fv_v);
            }
            return Term::case_of(scrut, lv, lb, rv, rb, m.span());
          },
          [&](const Term::Seq& n) {
            return Term::seq(substitute_rec(n.first, v, x, fv_v),
                             substitute_rec(n.second, v, x, fv_v), m.span());
          },
          [&](const Term::Pair& n) {
            return Term::pair(substitute_rec(n.first, v, x, fv_v),
                              substitute_rec(n.second, v, x, fv_v), m.span());
          },
          [&](const Term::LetPair& n) {
            Term bound = substitute_rec(n.bound, v, x, fv_v);
            if (n.first_var == x || n.second_var == x)
              return Term::let_pair(n.first_var, n.second_var, bound, n.body, m.span());
            auto [v1, body1] = avoid_capture(n.first_var, n.body, fv_v, x);
            auto [v2, body2] = avoid_capture(n.second_var, body1, fv_v, x);
            return Term::let_pair(v1, v2, bound, substitute_rec(body2, v, x, fv_v),
                                  m.span());
          },
          [&](const Term::Lambda& n) {
            if (n.var == x) return m;
            auto [var, body] = avoid_capture(n.var, n.body, fv_v, x);
            return Term::lambda(var, n.annot, substitute_rec(body, v, x, fv_v), m.span());
          },
          [&](const Term::App& n) {
            return Term::app(substitute_rec(n.fn, v, x, fv_v),
                             substitute_rec(n.arg, v, x, fv_v), m.span());
          },
          [&](const Term::Lift& n) {
            return Term::lift(substitute_rec(n.inner, v, x, fv_v), m.span());
          },
          [&](const Term::Force& n) {
            return Term::force(substitute_rec(n.inner, v, x, fv_v), m.span());
          },
          [&](const Term::Box& n) {
            return Term::box(n.input, substitute_rec(n.inner, v, x, fv_v), m.span());
          },
          [&](const Term::Apply& n) {
            return Term::apply(substitute_rec(n.diag, v, x, fv_v),
                               substitute_rec(n.arg, v, x, fv_v), m.span());
          },
          [&](const Term::Rec& n) {
            if (n.var == x) return m;
            auto [var, body] = avoid_capture(n.var, n.body, fv_v, x);
            return Term::rec(var, n.annot, substitute_rec(body, v, x, fv_v), m.span());
          },
      },
      m.node());
}

}  // namespace

Term substitute(const Term& m, const Term& v, Name x) {
  if (!free_vars(m).count(x)) return m;
  return substitute_rec(m, v, x, free_vars(v));
}

// ---------------------------------------------------------------------------
// Alpha-equivalence

namespace {

// Permutes boundary ports of a labelled diagram into the order given by the
// label lists; returns false when the labels do not enumerate the boundary.
bool reorder_boundary(const LabelledDiagram& s, const std::vector<Name>& in_order,
                      const std::vector<Name>& out_order, LabelledDiagram& out) {
  if (in_order.size() != s.dom_labels.size() ||
      out_order.size() != s.cod_labels.size())
    return false;
  std::vector<int> in_old(in_order.size()), out_new(s.cod_labels.size(), -1);
  for (size_t i = 0; i < in_order.size(); ++i) {
    int p = s.dom_port(in_order[i]);
    if (p < 0) return false;
    in_old[i] = p;
  }
  for (size_t j = 0; j < out_order.size(); ++j) {
    int p = s.cod_port(out_order[j]);
    if (p < 0) return false;
    out_new[static_cast<size_t>(p)] = static_cast<int>(j);
  }
  auto remap = [&](Endpoint e) {
    if (e.kind == Endpoint::Kind::Out)
      e.index = static_cast<uint32_t>(out_new[e.index]);
    return e;
  };
  out.d.nodes = s.d.nodes;
  out.d.input_wires.clear();
  out.dom_labels.clear();
  out.d.from_input.clear();
  for (size_t i = 0; i < in_order.size(); ++i) {
    out.dom_labels.push_back(in_order[i]);
    out.d.input_wires.push_back(s.d.input_wires[in_old[i]]);
    out.d.from_input.push_back(remap(s.d.from_input[in_old[i]]));
  }
  out.d.output_wires.assign(out_order.size(), Name());
  out.cod_labels.assign(out_order.size(), Name());
  for (size_t p = 0; p < s.cod_labels.size(); ++p) {
    out.d.output_wires[out_new[p]] = s.d.output_wires[p];
    out.cod_labels[out_new[p]] = s.cod_labels[p];
  }
  out.d.from_node.clear();
  for (const auto& pins : s.d.from_node) {
    std::vector<Endpoint> mapped;
    mapped.reserve(pins.size());
    for (const Endpoint& e : pins) mapped.push_back(remap(e));
    out.d.from_node.push_back(std::move(mapped));
  }
  return true;
}

bool boxed_eq(const Term::BoxedDiag& a, const Term::BoxedDiag& b) {
  if (!LabelTuple::same_shape(a.dom_tuple, b.dom_tuple) ||
      !LabelTuple::same_shape(a.cod_tuple, b.cod_tuple))
    return false;
  LabelledDiagram ra, rb;
  if (reorder_boundary(a.diagram, a.dom_tuple.labels(), a.cod_tuple.labels(), ra) &&
      reorder_boundary(b.diagram, b.dom_tuple.labels(), b.cod_tuple.labels(), rb))
    return diagram_eq(ra, rb);
  return diagram_eq(a.diagram, b.diagram);
}

struct BinderScope {
  std::map<Name, int> a, b;
  int depth = 0;
};

bool alpha_rec(const Term& ta, const Term& tb, BinderScope scope);

bool alpha_binder(const Term& ba, Name va, const Term& bb, Name vb, BinderScope scope) {
  scope.a[va] = scope.depth;
  scope.b[vb] = scope.depth;
  scope.depth++;
  return alpha_rec(ba, bb, std::move(scope));
}

bool alpha_rec(const Term& ta, const Term& tb, BinderScope scope) {
  if (ta.node().index() != tb.node().index()) return false;
  return std::visit(
      Overloaded{
          [&](const Term::Var& a) {
            const auto& b = std::get<Term::Var>(tb.node());
            auto ia = scope.a.find(a.name);
            auto ib = scope.b.find(b.name);
            if (ia != scope.a.end() || ib != scope.b.end())
              return ia != scope.a.end() && ib != scope.b.end() &&
                     ia->second == ib->second;
            return a.name == b.name;
          },
          [&](const Term::Const& a) {
            return a.name == std::get<Term::Const>(tb.node()).name;
          },
          [&](const Term::Star&) { return true; },
          [&](const Term::Label& a) {
            return a.label == std::get<Term::Label>(tb.node()).label;
          },
          [&](const Term::BoxedDiag& a) {
            return boxed_eq(a, std::get<Term::BoxedDiag>(tb.node()));
          },
          [&](const Term::Let& a) {
            const auto& b = std::get<Term::Let>(tb.node());
            return alpha_rec(a.bound, b.bound, scope) &&
                   alpha_binder(a.body, a.var, b.body, b.var, scope);
          },
          [&](const Term::Initial& a) {
            const auto& b = std::get<Term::Initial>(tb.node());
            return a.target == b.target && alpha_rec(a.arg, b.arg, scope);
          },
          [&](const Term::InjLeft& a) {
            const auto& b = std::get<Term::InjLeft>(tb.node());
            return a.left_type == b.left_type && a.right_type == b.right_type &&
                   alpha_rec(a.arg, b.arg, scope);
          },
          [&](const Term::InjRight& a) {
            const auto& b = std::get<Term::InjRight>(tb.node());
            return a.left_type == b.left_type && a.right_type == b.right_type &&
                   alpha_rec(a.arg, b.arg, scope);
          },
          [&](const Term::Case& a) {
            const auto& b = std::get<Term::Case>(tb.node());
            return alpha_rec(a.scrutinee, b.scrutinee, scope) &&
                   alpha_binder(a.left_body, a.left_var, b.left_body, b.left_var, scope) &&
                   alpha_binder(a.right_body, a.right_var, b.right_body, b.right_var,
                                scope);
          },
          [&](const Term::Seq& a) {
            const auto& b = std::get<Term::Seq>(tb.node());
            return alpha_rec(a.first, b.first, scope) &&
                   alpha_rec(a.second, b.second, scope);
          },
          [&](const Term::Pair& a) {
            const auto& b = std::get<Term::Pair>(tb.node());
            return alpha_rec(a.first, b.first, scope) &&
                   alpha_rec(a.second, b.second, scope);
          },
          [&](const Term::LetPair& a) {
            const auto& b = std::get<Term::LetPair>(tb.node());
            if (!alpha_rec(a.bound, b.bound, scope)) return false;
            BinderScope inner = scope;
            inner.a[a.first_var] = inner.depth;
            inner.b[b.first_var] = inner.depth;
            inner.depth++;
            inner.a[a.second_var] = inner.depth;
            inner.b[b.second_var] = inner.depth;
            inner.depth++;
            return alpha_rec(a.body, b.body, std::move(inner));
          },
          [&](const Term::Lambda& a) {
            const auto& b = std::get<Term::Lambda>(tb.node());
            return a.annot == b.annot &&
                   alpha_binder(a.body, a.var, b.body, b.var, scope);
          },
          [&](const Term::App& a) {
            const auto& b = std::get<Term::App>(tb.node());
            return alpha_rec(a.fn, b.fn, scope) && alpha_rec(a.arg, b.arg, scope);
          },
          [&](const Term::Lift& a) {
            return alpha_rec(a.inner, std::get<Term::Lift>(tb.node()).inner, scope);
          },
          [&](const Term::Force& a) {
            return alpha_rec(a.inner, std::get<Term::Force>(tb.node()).inner, scope);
          },
          [&](const Term::Box& a) {
            const auto& b = std::get<Term::Box>(tb.node());
            return a.input == b.input && alpha_rec(a.inner, b.inner, scope);
          },
          [&](const Term::Apply& a) {
            const auto& b = std::get<Term::Apply>(tb.node());
            return alpha_rec(a.diag, b.diag, scope) && alpha_rec(a.arg, b.arg, scope);
          },
          [&](const Term::Rec& a) {
            const auto& b = std::get<Term::Rec>(tb.node());
            return a.annot == b.annot &&
                   alpha_binder(a.body, a.var, b.body, b.var, scope);
          },
      },
      ta.node());
}

}  // namespace

bool alpha_eq(const Term& a, const Term& b) { return alpha_rec(a, b, BinderScope{}); }

Term tuple_to_term(const LabelTuple& t) {
  switch (t.kind()) {
    case LabelTuple::Kind::Star: return Term::star();
    case LabelTuple::Kind::Label: return Term::label(t.label_name());
    case LabelTuple::Kind::Pair:
      return Term::pair(tuple_to_term(t.first()), tuple_to_term(t.second()));
  }
  throw std::logic_error("unreachable");
}

std::optional<LabelTuple> term_to_tuple(const Term& t) {
  if (t.get_if<Term::Star>()) return LabelTuple::star();
  if (auto* l = t.get_if<Term::Label>()) return LabelTuple::label(l->label);
  if (auto* p = t.get_if<Term::Pair>()) {
    auto a = term_to_tuple(p->first);
    if (!a) return std::nullopt;
    auto b = term_to_tuple(p->second);
    if (!b) return std::nullopt;
    try {
      return LabelTuple::pair(*a, *b);
    } catch (const std::logic_error&) {
      return std::nullopt;  // duplicate label across the two halves
    }
  }
  return std::nullopt;
}

}  // namespace eclnl
