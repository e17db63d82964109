#include "eclnl/eval.hpp"

#include <optional>
#include <utility>
#include <variant>
#include <vector>

namespace eclnl {

namespace {

// Continuation frames. The machine alternates between evaluating a term and
// returning a value to the innermost frame.
struct LetK { Name var; Term body; };
struct InitialK {};
struct InjK { bool left; std::optional<Type> a, b; };
struct CaseK { Name left_var; Term left_body; Name right_var; Term right_body; };
struct SeqK { Term second; };
struct PairFirstK { Term second; };
struct PairSecondK { Term first_value; };
struct LetPairK { Name first_var; Name second_var; Term body; };
struct AppFunK { Term arg; };
struct AppArgK { Term fn_value; };
struct ForceK {};
struct BoxK { MType input; };
// Restores the ambient diagram saved around a box sub-evaluation.
struct BoxRestoreK { LabelledDiagram saved; LabelTuple dom_tuple; };
struct ApplyFunK { Term arg; };
struct ApplyArgK { Term diag_value; };

using Frame = std::variant<LetK, InitialK, InjK, CaseK, SeqK, PairFirstK,
                           PairSecondK, LetPairK, AppFunK, AppArgK, ForceK,
                           BoxK, BoxRestoreK, ApplyFunK, ApplyArgK>;

struct Machine {
  const Signature& sig;
  FreshSource& fresh;
  LabelledDiagram diagram;
  uint64_t fuel;
  uint64_t steps = 0;

  std::vector<Frame> stack;
  enum class Mode { Eval, Ret, Done };
  Mode mode = Mode::Eval;
  Term cur;
  Outcome result = Outcome::stuck("", "");

  Machine(const Signature& s, FreshSource& f, LabelledDiagram d, uint64_t fl,
          Term m)
      : sig(s), fresh(f), diagram(std::move(d)), fuel(fl), cur(std::move(m)) {}

  void finish(Outcome o) {
    result = std::move(o);
    mode = Mode::Done;
  }
  void stuck(const char* rule, std::string detail) {
    finish(Outcome::stuck(rule, std::move(detail)));
  }
  void eval(Term m) {
    cur = std::move(m);
    mode = Mode::Eval;
  }
  void ret(Term v) {
    cur = std::move(v);
    mode = Mode::Ret;
  }

  EvalResult run() {
    while (mode != Mode::Done) {
      if (mode == Mode::Eval)
        step_eval();
      else
        step_return();
    }
    return {std::move(result), std::move(diagram), steps};
  }

  void step_eval() {
    if (fuel == 0) {
      finish(Outcome::out_of_fuel());
      return;
    }
    fuel--;
    steps++;
    const Term m = cur;
    std::visit(
        Overloaded{
            [&](const Term::Var& n) {
              stuck("var", "unbound variable '" + n.name.str() + "' at runtime");
            },
            [&](const Term::Const&) { ret(m); },
            [&](const Term::Star&) { ret(m); },
            [&](const Term::Label&) { ret(m); },
            [&](const Term::Lambda&) { ret(m); },
            [&](const Term::Lift&) { ret(m); },
            [&](const Term::BoxedDiag&) { ret(m); },
            [&](const Term::Let& n) {
              stack.push_back(LetK{n.var, n.body});
              eval(n.bound);
            },
            [&](const Term::Initial& n) {
              stack.push_back(InitialK{});
              eval(n.arg);
            },
            [&](const Term::InjLeft& n) {
              if (is_value(m)) {
                ret(m);
                return;
              }
              stack.push_back(InjK{true, n.left_type, n.right_type});
              eval(n.arg);
            },
            [&](const Term::InjRight& n) {
              if (is_value(m)) {
                ret(m);
                return;
              }
              stack.push_back(InjK{false, n.left_type, n.right_type});
              eval(n.arg);
            },
            [&](const Term::Case& n) {
              stack.push_back(
                  CaseK{n.left_var, n.left_body, n.right_var, n.right_body});
              eval(n.scrutinee);
            },
            [&](const Term::Seq& n) {
              stack.push_back(SeqK{n.second});
              eval(n.first);
            },
            [&](const Term::Pair& n) {
              if (is_value(m)) {
                ret(m);
                return;
              }
              stack.push_back(PairFirstK{n.second});
              eval(n.first);
            },
            [&](const Term::LetPair& n) {
              stack.push_back(LetPairK{n.first_var, n.second_var, n.body});
              eval(n.bound);
            },
            [&](const Term::App& n) {
              stack.push_back(AppFunK{n.arg});
              eval(n.fn);
            },
            [&](const Term::Force& n) {
              stack.push_back(ForceK{});
              eval(n.inner);
            },
            [&](const Term::Box& n) {
              stack.push_back(BoxK{n.input});
              eval(n.inner);
            },
            [&](const Term::Apply& n) {
              stack.push_back(ApplyFunK{n.arg});
              eval(n.diag);
            },
            [&](const Term::Rec& n) {
              Term unrolled = Term::lift(m, m.span());
              eval(substitute(n.body, unrolled, n.var));
            },
        },
        m.node());
  }

  // Applies a generator constant to a value that must be a tuple of labels
  // on the current diagram's outputs; grows the diagram by one node.
  void apply_generator(Name g, const Term& arg) {
    const Generator* gen = sig.find(g);
    if (!gen) {
      stuck("app", "unknown generator '" + g.str() + "'");
      return;
    }
    std::optional<LabelTuple> k = term_to_tuple(arg);
    if (!k) {
      stuck("app", "generator '" + g.str() + "' applied to a non-label value");
      return;
    }
    auto [din, lin] = freshlabels(Signature::fold_mtensor(gen->ins), fresh);
    auto [dout, lout] = freshlabels(Signature::fold_mtensor(gen->outs), fresh);
    LabelledDiagram node = one_node(*gen, lin.labels(), lout.labels());
    auto grown = append(diagram, *k, lin, node, lout, fresh);
    if (!grown) {
      stuck("app", "generator '" + g.str() +
                       "' applied to labels that are not matching outputs "
                       "of the diagram");
      return;
    }
    diagram = std::move(grown->first);
    ret(tuple_to_term(grown->second));
  }

  void step_return() {
    if (stack.empty()) {
      finish(Outcome::ok(cur));
      return;
    }
    Frame f = std::move(stack.back());
    stack.pop_back();
    const Term v = cur;
    std::visit(
        Overloaded{
            [&](LetK& k) { eval(substitute(k.body, v, k.var)); },
            [&](InitialK&) {
              stuck("initial", "a value of the empty type appeared");
            },
            [&](InjK& k) {
              if (k.left)
                ret(Term::make(Term::InjLeft{k.a, k.b, v}, v.span()));
              else
                ret(Term::make(Term::InjRight{k.a, k.b, v}, v.span()));
            },
            [&](CaseK& k) {
              if (auto* l = v.get_if<Term::InjLeft>()) {
                eval(substitute(k.left_body, l->arg, k.left_var));
                return;
              }
              if (auto* r = v.get_if<Term::InjRight>()) {
                eval(substitute(k.right_body, r->arg, k.right_var));
                return;
              }
              stuck("case", "scrutinee is not an injection");
            },
            [&](SeqK& k) {
              if (!v.get_if<Term::Star>()) {
                stuck("seq", "left of ';' did not produce *");
                return;
              }
              eval(k.second);
            },
            [&](PairFirstK& k) {
              stack.push_back(PairSecondK{v});
              eval(k.second);
            },
            [&](PairSecondK& k) {
              ret(Term::pair(k.first_value, v, v.span()));
            },
            [&](LetPairK& k) {
              auto* p = v.get_if<Term::Pair>();
              if (!p) {
                stuck("let-pair", "bound value is not a pair");
                return;
              }
              Term body = substitute(k.body, p->first, k.first_var);
              eval(substitute(body, p->second, k.second_var));
            },
            [&](AppFunK& k) {
              stack.push_back(AppArgK{v});
              eval(k.arg);
            },
            [&](AppArgK& k) {
              if (auto* lam = k.fn_value.get_if<Term::Lambda>()) {
                eval(substitute(lam->body, v, lam->var));
                return;
              }
              if (auto* c = k.fn_value.get_if<Term::Const>()) {
                apply_generator(c->name, v);
                return;
              }
              stuck("app", "applied a non-function value");
            },
            [&](ForceK&) {
              if (auto* l = v.get_if<Term::Lift>()) {
                eval(l->inner);
                return;
              }
              stuck("force", "forced a value that is not lift");
            },
            [&](BoxK& k) {
              auto* l = v.get_if<Term::Lift>();
              if (!l) {
                stuck("box", "boxed a value that is not lift");
                return;
              }
              auto [q, ltuple] = freshlabels(k.input, fresh);
              stack.push_back(BoxRestoreK{std::move(diagram), ltuple});
              diagram = identity(q);
              eval(Term::app(l->inner, tuple_to_term(ltuple), v.span()));
            },
            [&](BoxRestoreK& k) {
              std::optional<LabelTuple> out = term_to_tuple(v);
              LabelledDiagram built = std::move(diagram);
              diagram = std::move(k.saved);
              if (!out) {
                stuck("box", "boxed function did not return a tuple of labels");
                return;
              }
              LabelContext cod = built.cod();
              std::vector<Name> outs = out->labels();
              bool covers = outs.size() == cod.size();
              for (Name n : outs) covers = covers && cod.count(n) != 0;
              if (!covers) {
                stuck("box",
                      "boxed function result does not enumerate the diagram "
                      "outputs");
                return;
              }
              ret(Term::boxed(k.dom_tuple, std::move(built), *out, v.span()));
            },
            [&](ApplyFunK& k) {
              stack.push_back(ApplyArgK{v});
              eval(k.arg);
            },
            [&](ApplyArgK& k) {
              auto* d = k.diag_value.get_if<Term::BoxedDiag>();
              if (!d) {
                stuck("apply", "applied something that is not a diagram");
                return;
              }
              std::optional<LabelTuple> karg = term_to_tuple(v);
              if (!karg) {
                stuck("apply", "diagram applied to a non-label value");
                return;
              }
              auto grown =
                  append(diagram, *karg, d->dom_tuple, d->diagram, d->cod_tuple, fresh);
              if (!grown) {
                stuck("apply",
                      "diagram applied to labels that are not matching "
                      "outputs of the machine diagram");
                return;
              }
              diagram = std::move(grown->first);
              ret(tuple_to_term(grown->second));
            },
        },
        f);
  }
};

}  // namespace

EvalResult evaluate(const LabelledDiagram& start, const Term& m,
                    const Signature& sig, uint64_t fuel, FreshSource& fresh) {
  Machine machine(sig, fresh, start, fuel, m);
  return machine.run();
}

EvalResult evaluate_closed(const Term& m, const Signature& sig, uint64_t fuel) {
  FreshSource fresh;
  return evaluate(identity({}), m, sig, fuel, fresh);
}

}  // namespace eclnl
