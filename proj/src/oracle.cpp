#include "eclnl/oracle.hpp"

#include <algorithm>
#include <cassert>

#include "eclnl/eval.hpp"
#include "eclnl/parser.hpp"

namespace eclnl {

namespace {

[[noreturn]] void too_large(const Type& t) {
  throw CarrierTooLarge("carrier for " + print_type(t) +
                        " exceeds the element budget");
}

// All strict monotone tables dom -> cod, lexicographic. Strictness pins
// table[0] = 0; monotonicity is checked against every earlier index, which
// covers the whole order because every pair is eventually compared.
std::vector<std::vector<size_t>> enumerate_tables(const TypeDen& dom,
                                                  const TypeDen& cod,
                                                  const Type& whole) {
  std::vector<std::vector<size_t>> out;
  std::vector<size_t> cur(dom.size, 0);
  uint64_t visited = 0;
  auto rec = [&](auto&& self, size_t i) -> void {
    if (++visited > 20000000) too_large(whole);
    if (i == dom.size) {
      out.push_back(cur);
      if (out.size() > kCarrierBudget) too_large(whole);
      return;
    }
    for (size_t v = 0; v < cod.size; ++v) {
      if (i == 0 && v != 0) break;
      bool ok = true;
      for (size_t j = 0; j < i && ok; ++j) {
        if (den_leq(dom, j, i) && !den_leq(cod, cur[j], v)) ok = false;
        if (ok && den_leq(dom, i, j) && !den_leq(cod, v, cur[j])) ok = false;
      }
      if (!ok) continue;
      cur[i] = v;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  return out;
}

}  // namespace

DenPtr DenCache::get(const Type& t) {
  std::string key = print_type(t);
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;

  auto d = std::make_shared<TypeDen>();
  d->type = t;
  switch (t.kind()) {
    case Type::Kind::Zero:
      d->size = 1;
      break;
    case Type::Kind::Unit:
      d->size = 2;
      break;
    case Type::Kind::Sum: {
      d->a = get(t.left());
      d->b = get(t.right());
      d->size = d->a->size + d->b->size - 1;
      if (d->size > kCarrierBudget) too_large(t);
      break;
    }
    case Type::Kind::Tensor: {
      d->a = get(t.left());
      d->b = get(t.right());
      d->size = 1 + (d->a->size - 1) * (d->b->size - 1);
      if (d->size > kCarrierBudget) too_large(t);
      break;
    }
    case Type::Kind::Lolli: {
      d->a = get(t.domain());
      d->b = get(t.codomain());
      d->tables = enumerate_tables(*d->a, *d->b, t);
      d->size = d->tables.size();
      break;
    }
    case Type::Kind::Bang: {
      d->a = get(t.inner());
      d->size = d->a->size + 1;
      if (d->size > kCarrierBudget) too_large(t);
      break;
    }
    case Type::Kind::Wire:
    case Type::Kind::Diag:
      throw OracleUnsupported("no finite carrier for " + print_type(t));
  }
  DenPtr p = std::move(d);
  memo_.emplace(std::move(key), p);
  return p;
}

bool den_leq(const TypeDen& d, size_t i, size_t j) {
  if (i == j) return true;
  if (i == 0) return true;
  if (j == 0) return false;
  switch (d.kind()) {
    case Type::Kind::Zero:
    case Type::Kind::Unit:
      return false;  // distinct nonbottom elements
    case Type::Kind::Sum: {
      SumElem x = sum_decode(d, i), y = sum_decode(d, j);
      if (x.side != y.side) return false;
      const TypeDen& s = x.side == SumElem::Side::Left ? *d.a : *d.b;
      return den_leq(s, x.value, y.value);
    }
    case Type::Kind::Tensor: {
      auto [xa, xb] = tensor_decode(d, i);
      auto [ya, yb] = tensor_decode(d, j);
      return den_leq(*d.a, xa, ya) && den_leq(*d.b, xb, yb);
    }
    case Type::Kind::Lolli: {
      for (size_t e = 0; e < d.a->size; ++e)
        if (!den_leq(*d.b, d.tables[i][e], d.tables[j][e])) return false;
      return true;
    }
    case Type::Kind::Bang:
      return den_leq(*d.a, i - 1, j - 1);
    case Type::Kind::Wire:
    case Type::Kind::Diag:
      break;
  }
  throw std::logic_error("order query on an unsupported carrier");
}

size_t den_height(const TypeDen& d) {
  std::vector<size_t> h(d.size, 0);
  auto rec = [&](auto&& self, size_t e) -> size_t {
    if (h[e]) return h[e];
    size_t best = 1;
    for (size_t x = 0; x < d.size; ++x)
      if (x != e && den_leq(d, x, e)) best = std::max(best, self(self, x) + 1);
    return h[e] = best;
  };
  size_t best = 0;
  for (size_t e = 0; e < d.size; ++e) best = std::max(best, rec(rec, e));
  return best;
}

size_t sum_left(const TypeDen& sum, size_t a) {
  assert(a != 0 && a < sum.a->size);
  return a;
}

size_t sum_right(const TypeDen& sum, size_t b) {
  assert(b != 0 && b < sum.b->size);
  return sum.a->size - 1 + b;
}

SumElem sum_decode(const TypeDen& sum, size_t e) {
  if (e == 0) return {SumElem::Side::Bottom, 0};
  size_t na = sum.a->size - 1;
  if (e <= na) return {SumElem::Side::Left, e};
  return {SumElem::Side::Right, e - na};
}

size_t tensor_make(const TypeDen& tens, size_t a, size_t b) {
  if (a == 0 || b == 0) return 0;
  size_t nb = tens.b->size - 1;
  return 1 + (a - 1) * nb + (b - 1);
}

std::pair<size_t, size_t> tensor_decode(const TypeDen& tens, size_t e) {
  assert(e != 0 && e < tens.size);
  size_t nb = tens.b->size - 1;
  e -= 1;
  return {e / nb + 1, e % nb + 1};
}

size_t lolli_apply(const TypeDen& fn, size_t f, size_t a) {
  assert(f < fn.size && a < fn.a->size);
  return fn.tables[f][a];
}

size_t lolli_index(const TypeDen& fn, const std::vector<size_t>& table) {
  auto it = std::lower_bound(fn.tables.begin(), fn.tables.end(), table);
  if (it == fn.tables.end() || *it != table)
    throw std::logic_error(
        "computed table is not a strict monotone map; the denotation is "
        "broken");
  return static_cast<size_t>(it - fn.tables.begin());
}

namespace {

// Environment for a child node: values are pulled out of the parent
// environment by name, with binder values supplied explicitly. A bottom
// component collapses the whole smash tuple to bottom.
DenEnv child_env(const DerivNode& parent, const DenEnv& env,
                 const DerivNode& child,
                 const std::vector<std::pair<Name, size_t>>& extra) {
  if (env.bottom) return DenEnv::bot();
  for (const auto& [x, v] : extra)
    if (v == 0) return DenEnv::bot();
  DenEnv out;
  out.vals.reserve(child.gamma.size());
  const auto& pg = parent.gamma.entries();
  for (const VarBinding& want : child.gamma.entries()) {
    size_t v = 0;
    bool found = false;
    for (auto it = extra.rbegin(); it != extra.rend() && !found; ++it) {
      if (it->first == want.name) {
        v = it->second;
        found = true;
      }
    }
    for (size_t i = 0; i < pg.size() && !found; ++i) {
      if (pg[i].name == want.name) {
        v = env.vals[i];
        found = true;
      }
    }
    if (!found)
      throw std::logic_error("derivation child context mentions '" +
                             want.name.str() + "' unknown to its parent");
    out.vals.push_back(v);
  }
  return out;
}

size_t env_var(const DerivNode& n, const DenEnv& env, Name x) {
  const auto& g = n.gamma.entries();
  for (size_t i = 0; i < g.size(); ++i)
    if (g[i].name == x) return env.vals[i];
  throw std::logic_error("variable '" + x.str() + "' missing from context");
}

}  // namespace

size_t denote(const DerivNode& n, const DenEnv& env, DenCache& cache) {
  if (env.bottom) return 0;
  auto kid = [&](size_t i,
                 const std::vector<std::pair<Name, size_t>>& extra = {}) {
    return denote(n.kids[i], child_env(n, env, n.kids[i], extra), cache);
  };
  switch (n.rule) {
    case Rule::Var:
      return env_var(n, env, n.term.get_if<Term::Var>()->name);
    case Rule::Star:
      return 1;
    case Rule::Let: {
      size_t v = kid(0);
      if (v == 0) return 0;
      return kid(1, {{n.term.get_if<Term::Let>()->var, v}});
    }
    case Rule::Initial: {
      size_t v = kid(0);
      assert(v == 0);  // the empty type's only element
      (void)v;
      return 0;
    }
    case Rule::InjLeft: {
      size_t v = kid(0);
      if (v == 0) return 0;
      return sum_left(*cache.get(n.type), v);
    }
    case Rule::InjRight: {
      size_t v = kid(0);
      if (v == 0) return 0;
      return sum_right(*cache.get(n.type), v);
    }
    case Rule::Case: {
      size_t s = kid(0);
      if (s == 0) return 0;
      SumElem e = sum_decode(*cache.get(n.kids[0].type), s);
      const auto* t = n.term.get_if<Term::Case>();
      if (e.side == SumElem::Side::Left)
        return kid(1, {{t->left_var, e.value}});
      return kid(2, {{t->right_var, e.value}});
    }
    case Rule::Seq: {
      size_t v = kid(0);
      if (v == 0) return 0;
      return kid(1);
    }
    case Rule::Pair: {
      size_t a = kid(0);
      size_t b = kid(1);
      return tensor_make(*cache.get(n.type), a, b);
    }
    case Rule::LetPair: {
      size_t v = kid(0);
      if (v == 0) return 0;
      auto [a, b] = tensor_decode(*cache.get(n.kids[0].type), v);
      const auto* t = n.term.get_if<Term::LetPair>();
      return kid(1, {{t->first_var, a}, {t->second_var, b}});
    }
    case Rule::Lambda: {
      DenPtr fd = cache.get(n.type);
      const auto* t = n.term.get_if<Term::Lambda>();
      std::vector<size_t> table(fd->a->size, 0);
      for (size_t a = 1; a < fd->a->size; ++a)
        table[a] = kid(0, {{t->var, a}});
      return lolli_index(*fd, table);
    }
    case Rule::App: {
      size_t f = kid(0);
      size_t a = kid(1);
      return lolli_apply(*cache.get(n.kids[0].type), f, a);
    }
    case Rule::Lift:
      // inner is one step up in the lifted carrier; never bottom, even when
      // the suspended body denotes bottom.
      return kid(0) + 1;
    case Rule::Force: {
      size_t v = kid(0);
      return v == 0 ? 0 : v - 1;
    }
    case Rule::Rec: {
      DenPtr ad = cache.get(n.type);
      const auto* t = n.term.get_if<Term::Rec>();
      size_t bound = den_height(*ad);
      size_t cur = 0;
      for (size_t it = 0; it <= bound + 1; ++it) {
        size_t next = kid(0, {{t->var, cur + 1}});
        if (!den_leq(*ad, cur, next))
          throw std::logic_error(
              "fixpoint iteration left the chain; monotonicity is broken");
        if (next == cur) return cur;
        cur = next;
      }
      throw std::logic_error("fixpoint iteration exceeded the chain bound");
    }
    case Rule::Const:
    case Rule::Label:
    case Rule::Box:
    case Rule::Apply:
    case Rule::BoxedDiag:
      throw OracleUnsupported(
          "term uses the diagram fragment, which the finite model does not "
          "interpret");
  }
  throw std::logic_error("unhandled rule");
}

std::vector<size_t> denote_table(const DerivNode& n, DenCache& cache) {
  const auto& g = n.gamma.entries();
  std::vector<size_t> sizes;
  sizes.reserve(g.size());
  uint64_t rows = 1;
  for (const VarBinding& b : g) {
    sizes.push_back(cache.get(b.type)->size);
    rows *= sizes.back() > 0 ? sizes.back() - 1 : 0;
    if (rows > kCarrierBudget) too_large(b.type);
  }
  std::vector<size_t> out;
  if (rows == 0) return out;
  out.reserve(rows);
  DenEnv env = DenEnv::empty();
  env.vals.assign(g.size(), 1);
  while (true) {
    out.push_back(denote(n, env, cache));
    size_t i = g.size();
    while (i > 0) {
      --i;
      if (++env.vals[i] < sizes[i]) break;
      env.vals[i] = 1;
      if (i == 0) return out;
    }
    if (g.empty()) return out;
  }
}

SoundnessVerdict check_soundness(const Term& m, const Signature& sig,
                                 uint64_t fuel, std::string* why) {
  auto note = [&](std::string s) {
    if (why) *why = std::move(s);
  };
  TypingDerivation d;
  try {
    d = check({}, {}, m, sig);
  } catch (const TypeError& e) {
    note(std::string("not well typed: ") + e.what());
    return SoundnessVerdict::Inconclusive;
  }
  DenCache cache;
  size_t before = 0;
  try {
    before = denote(d, DenEnv::empty(), cache);
  } catch (const OracleUnsupported& e) {
    note(e.what());
    return SoundnessVerdict::Inconclusive;
  } catch (const CarrierTooLarge& e) {
    note(e.what());
    return SoundnessVerdict::Inconclusive;
  }
  EvalResult r = evaluate_closed(d.term, sig, fuel);
  if (r.outcome.kind == Outcome::Kind::FuelExhausted) {
    note("did not terminate within the step budget");
    return SoundnessVerdict::Inconclusive;
  }
  if (r.outcome.kind == Outcome::Kind::Error) {
    note("evaluation got stuck at " + r.outcome.rule + ": " + r.outcome.detail);
    return SoundnessVerdict::Fail;
  }
  TypingDerivation dv;
  try {
    dv = check({}, {}, r.outcome.value, sig, d.type);
  } catch (const TypeError& e) {
    note(std::string("result no longer typechecks: ") + e.what());
    return SoundnessVerdict::Fail;
  }
  size_t after = denote(dv, DenEnv::empty(), cache);
  if (before != after) {
    note("denotation moved from element " + std::to_string(before) + " to " +
         std::to_string(after) + " of " + print_type(d.type));
    return SoundnessVerdict::Fail;
  }
  return SoundnessVerdict::Pass;
}

bool observable_type(const Type& t) {
  switch (t.kind()) {
    case Type::Kind::Zero:
    case Type::Kind::Unit:
      return true;
    case Type::Kind::Sum:
    case Type::Kind::Tensor:
      return observable_type(t.left()) && observable_type(t.right());
    case Type::Kind::Bang: {
      // Any lift value denotes a nonbottom element, so a bang is observable
      // as long as its carrier exists at all.
      struct Walk {
        static bool supported(const Type& t) {
          switch (t.kind()) {
            case Type::Kind::Wire:
            case Type::Kind::Diag:
              return false;
            case Type::Kind::Sum:
            case Type::Kind::Tensor:
              return supported(t.left()) && supported(t.right());
            case Type::Kind::Lolli:
              return supported(t.domain()) && supported(t.codomain());
            case Type::Kind::Bang:
              return supported(t.inner());
            default:
              return true;
          }
        }
      };
      return Walk::supported(t.inner());
    }
    default:
      return false;
  }
}

AdequacyVerdict check_adequacy(const Term& m, const Signature& sig,
                               uint64_t fuel, std::string* why) {
  auto note = [&](std::string s) {
    if (why) *why = std::move(s);
  };
  TypingDerivation d;
  try {
    d = check({}, {}, m, sig);
  } catch (const TypeError& e) {
    note(std::string("not well typed: ") + e.what());
    return AdequacyVerdict::Unsupported;
  }
  if (!observable_type(d.type)) {
    note("type " + print_type(d.type) + " is not observable");
    return AdequacyVerdict::Unsupported;
  }
  DenCache cache;
  size_t den = 0;
  try {
    den = denote(d, DenEnv::empty(), cache);
  } catch (const OracleUnsupported& e) {
    note(e.what());
    return AdequacyVerdict::Unsupported;
  } catch (const CarrierTooLarge& e) {
    note(e.what());
    return AdequacyVerdict::Unsupported;
  }
  EvalResult r = evaluate_closed(d.term, sig, fuel);
  switch (r.outcome.kind) {
    case Outcome::Kind::Value:
      if (den != 0) return AdequacyVerdict::Pass;
      note("evaluated to " + print_term(r.outcome.value) +
           " but denotes bottom");
      return AdequacyVerdict::Fail;
    case Outcome::Kind::FuelExhausted:
      if (den == 0) return AdequacyVerdict::PassPresumedDivergent;
      note("denotes a nonbottom element but did not finish in the budget");
      return AdequacyVerdict::Fail;
    case Outcome::Kind::Error:
      note("evaluation got stuck at " + r.outcome.rule + ": " +
           r.outcome.detail);
      return AdequacyVerdict::Fail;
  }
  return AdequacyVerdict::Fail;
}

}  // namespace eclnl
