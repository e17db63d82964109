#pragma once

#include <memory>
#include <optional>
#include <set>
#include <variant>

#include "eclnl/diagram.hpp"
#include "eclnl/names.hpp"
#include "eclnl/span.hpp"
#include "eclnl/types.hpp"

namespace eclnl {

// Immutable term of the calculus. Terms are handles onto shared nodes, so
// copying is cheap and sharing across threads is safe. Pattern-match with
// std::visit / get_if on node().
class Term {
 public:
  struct Var;
  struct Const;
  struct Let;
  struct Initial;
  struct InjLeft;
  struct InjRight;
  struct Star;
  struct Case;
  struct Seq;
  struct Pair;
  struct LetPair;
  struct Lambda;
  struct App;
  struct Lift;
  struct Force;
  struct Box;
  struct Apply;
  struct Rec;
  struct Label;
  struct BoxedDiag;

  using Node = std::variant<Var, Const, Let, Initial, InjLeft, InjRight, Star,
                            Case, Seq, Pair, LetPair, Lambda, App, Lift, Force,
                            Box, Apply, Rec, Label, BoxedDiag>;

  static Term make(Node n, Span sp = {});

  static Term var(Name n, Span sp = {});
  static Term constant(Name n, Span sp = {});
  static Term let(Name x, Term m, Term n, Span sp = {});
  static Term initial(Type c, Term m, Span sp = {});
  static Term inj_left(Type a, Type b, Term m, Span sp = {});
  static Term inj_right(Type a, Type b, Term m, Span sp = {});
  static Term star(Span sp = {});
  static Term case_of(Term s, Name xl, Term nl, Name xr, Term nr, Span sp = {});
  static Term seq(Term m, Term n, Span sp = {});
  static Term pair(Term m, Term n, Span sp = {});
  static Term let_pair(Name x, Name y, Term m, Term n, Span sp = {});
  static Term lambda(Name x, Type a, Term m, Span sp = {});
  static Term app(Term f, Term a, Span sp = {});
  static Term lift(Term m, Span sp = {});
  static Term force(Term m, Span sp = {});
  static Term box(MType t, Term m, Span sp = {});
  static Term apply(Term d, Term a, Span sp = {});
  static Term rec(Name x, Type bang_a, Term m, Span sp = {});
  static Term label(Name l, Span sp = {});
  static Term boxed(LabelTuple dom, LabelledDiagram s, LabelTuple cod, Span sp = {});

  const Node& node() const;
  Span span() const;

  template <class T>
  const T* get_if() const;

 private:
  struct Data;
  explicit Term(std::shared_ptr<const Data> d) : data_(std::move(d)) {}
  std::shared_ptr<const Data> data_;
};

struct Term::Var { Name name; };
struct Term::Const { Name name; };
struct Term::Let { Name var; Term bound; Term body; };
struct Term::Initial { Type target; Term arg; };  // initial[C] m, with m : 0
// left[A,B] m / right[A,B] m. Annotations may be omitted in the surface
// syntax when the checker can fill them from an expected type.
struct Term::InjLeft { std::optional<Type> left_type, right_type; Term arg; };
struct Term::InjRight { std::optional<Type> left_type, right_type; Term arg; };
struct Term::Star {};
struct Term::Case {
  Term scrutinee;
  Name left_var; Term left_body;
  Name right_var; Term right_body;
};
struct Term::Seq { Term first; Term second; };
struct Term::Pair { Term first; Term second; };
struct Term::LetPair { Name first_var, second_var; Term bound; Term body; };
struct Term::Lambda { Name var; Type annot; Term body; };
struct Term::App { Term fn; Term arg; };
struct Term::Lift { Term inner; };
struct Term::Force { Term inner; };
struct Term::Box { MType input; Term inner; };
struct Term::Apply { Term diag; Term arg; };
struct Term::Rec { Name var; Type annot; Term body; };  // annot is the whole !A
struct Term::Label { Name label; };
// A boxed diagram value (l, S, l2); not writable in the surface syntax.
struct Term::BoxedDiag {
  LabelTuple dom_tuple;
  LabelledDiagram diagram;
  LabelTuple cod_tuple;
};

struct Term::Data {
  Span span;
  Node v;
};

inline Term Term::make(Node n, Span sp) {
  return Term(std::make_shared<const Data>(Data{sp, std::move(n)}));
}
inline const Term::Node& Term::node() const { return data_->v; }
inline Span Term::span() const { return data_->span; }

template <class T>
const T* Term::get_if() const {
  return std::get_if<T>(&data_->v);
}

inline Term Term::var(Name n, Span sp) { return make(Var{n}, sp); }
inline Term Term::constant(Name n, Span sp) { return make(Const{n}, sp); }
inline Term Term::let(Name x, Term m, Term n, Span sp) {
  return make(Let{x, std::move(m), std::move(n)}, sp);
}
inline Term Term::initial(Type c, Term m, Span sp) {
  return make(Initial{std::move(c), std::move(m)}, sp);
}
inline Term Term::inj_left(Type a, Type b, Term m, Span sp) {
  return make(InjLeft{std::move(a), std::move(b), std::move(m)}, sp);
}
inline Term Term::inj_right(Type a, Type b, Term m, Span sp) {
  return make(InjRight{std::move(a), std::move(b), std::move(m)}, sp);
}
inline Term Term::star(Span sp) { return make(Star{}, sp); }
inline Term Term::case_of(Term s, Name xl, Term nl, Name xr, Term nr, Span sp) {
  return make(Case{std::move(s), xl, std::move(nl), xr, std::move(nr)}, sp);
}
inline Term Term::seq(Term m, Term n, Span sp) {
  return make(Seq{std::move(m), std::move(n)}, sp);
}
inline Term Term::pair(Term m, Term n, Span sp) {
  return make(Pair{std::move(m), std::move(n)}, sp);
}
inline Term Term::let_pair(Name x, Name y, Term m, Term n, Span sp) {
  return make(LetPair{x, y, std::move(m), std::move(n)}, sp);
}
inline Term Term::lambda(Name x, Type a, Term m, Span sp) {
  return make(Lambda{x, std::move(a), std::move(m)}, sp);
}
inline Term Term::app(Term f, Term a, Span sp) {
  return make(App{std::move(f), std::move(a)}, sp);
}
inline Term Term::lift(Term m, Span sp) { return make(Lift{std::move(m)}, sp); }
inline Term Term::force(Term m, Span sp) { return make(Force{std::move(m)}, sp); }
inline Term Term::box(MType t, Term m, Span sp) {
  return make(Box{std::move(t), std::move(m)}, sp);
}
inline Term Term::apply(Term d, Term a, Span sp) {
  return make(Apply{std::move(d), std::move(a)}, sp);
}
inline Term Term::rec(Name x, Type bang_a, Term m, Span sp) {
  return make(Rec{x, std::move(bang_a), std::move(m)}, sp);
}
inline Term Term::label(Name l, Span sp) { return make(Label{l}, sp); }
inline Term Term::boxed(LabelTuple dom, LabelledDiagram s, LabelTuple cod, Span sp) {
  return make(BoxedDiag{std::move(dom), std::move(s), std::move(cod)}, sp);
}

// Helper for std::visit dispatch.
template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

// Values: x | c | left v | right v | * | <v, w> | \x. m | lift m | labels |
// boxed diagrams. lift m is a value for every m.
bool is_value(const Term& t);

std::set<Name> free_vars(const Term& t);

// Free labels. Labels inside a boxed diagram are internal: a BoxedDiag
// contributes none.
std::set<Name> free_labels(const Term& t);

// Capture-avoiding substitution m[v/x]; binders are renamed when they would
// capture a free variable of v.
Term substitute(const Term& m, const Term& v, Name x);

// Alpha-equivalence. Boxed diagrams compare up to label renaming via
// diagram_eq with boundaries aligned by tuple position.
bool alpha_eq(const Term& a, const Term& b);

// A label tuple as a term (labels, * and pairs).
Term tuple_to_term(const LabelTuple& t);
// Inverse, when the term is a tuple of labels; nullopt otherwise.
std::optional<LabelTuple> term_to_tuple(const Term& t);

// A name based on `base` not contained in `avoid`.
Name fresh_name(Name base, const std::set<Name>& avoid);

}  // namespace eclnl
