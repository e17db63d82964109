#include <algorithm>
#include <random>
#include <vector>

#include "doctest.h"
#include "eclnl/oracle.hpp"
#include "eclnl/parser.hpp"
#include "eclnl/typecheck.hpp"
#include "support/declarative.hpp"
#include "support/term_gen.hpp"

using namespace eclnl;

namespace {

const Signature& sig() { return Signature::demo(); }

DenPtr den(const std::string& type_src) {
  DenCache cache;
  return cache.get(parse_type(type_src));
}

TypingDerivation derive(const std::string& src) {
  return check({}, {}, parse_term(src, sig()), sig());
}

size_t den_of(const std::string& src, DenCache& cache) {
  return denote(derive(src), DenEnv::empty(), cache);
}

}  // namespace

TEST_CASE("carrier sizes") {
  CHECK(den("0")->size == 1);
  CHECK(den("I")->size == 2);
  CHECK(den("I + I")->size == 3);
  CHECK(den("I * I")->size == 2);
  CHECK(den("!I")->size == 3);
  CHECK(den("I -o I")->size == 2);
  CHECK(den("(I + I) -o (I + I)")->size == 9);
  CHECK(den("(I + I) -o I")->size == 4);
  CHECK(den("!(I -o I)")->size == 3);
  CHECK(den("(I + I) * (I + I)")->size == 5);
  CHECK(den("0 -o I")->size == 1);
  CHECK(den("I -o 0")->size == 1);
  CHECK(den("!0")->size == 2);
}

TEST_CASE("chain heights") {
  CHECK(den_height(*den("0")) == 1);
  CHECK(den_height(*den("I")) == 2);
  CHECK(den_height(*den("!I")) == 3);
  CHECK(den_height(*den("(I + I) -o (I + I)")) == 3);
}

TEST_CASE("function carrier is exactly the strict monotone tables") {
  // Independent enumeration over the 3-element flat domain I + I, where
  // i <= j iff i == 0 or i == j.
  auto flat_leq = [](size_t i, size_t j) { return i == 0 || i == j; };
  std::vector<std::vector<size_t>> expect;
  for (size_t f1 = 0; f1 < 3; ++f1)
    for (size_t f2 = 0; f2 < 3; ++f2) {
      std::vector<size_t> t{0, f1, f2};
      bool mono = true;
      for (size_t i = 0; i < 3 && mono; ++i)
        for (size_t j = 0; j < 3 && mono; ++j)
          if (flat_leq(i, j) && !flat_leq(t[i], t[j])) mono = false;
      if (mono) expect.push_back(t);
    }
  std::sort(expect.begin(), expect.end());
  DenPtr fn = den("(I + I) -o (I + I)");
  REQUIRE(expect.size() == 9);
  CHECK(fn->tables == expect);
  for (size_t k = 0; k < fn->tables.size(); ++k)
    CHECK(lolli_index(*fn, fn->tables[k]) == k);
}

TEST_CASE("den_leq is a partial order with least element") {
  for (const char* src : {"(I + I) * (I + I)", "!(I -o I)", "I + I * I"}) {
    DenPtr d = den(src);
    for (size_t i = 0; i < d->size; ++i) {
      CHECK(den_leq(*d, 0, i));
      CHECK(den_leq(*d, i, i));
      for (size_t j = 0; j < d->size; ++j) {
        if (den_leq(*d, i, j) && den_leq(*d, j, i)) CHECK(i == j);
        for (size_t k = 0; k < d->size; ++k)
          if (den_leq(*d, i, j) && den_leq(*d, j, k)) CHECK(den_leq(*d, i, k));
      }
    }
  }
}

TEST_CASE("element constructors round-trip") {
  DenPtr s = den("(I + I) + I");
  for (size_t e = 1; e < s->size; ++e) {
    SumElem x = sum_decode(*s, e);
    size_t back = x.side == SumElem::Side::Left ? sum_left(*s, x.value)
                                                : sum_right(*s, x.value);
    CHECK(back == e);
  }
  CHECK(sum_decode(*s, 0).side == SumElem::Side::Bottom);

  DenPtr t = den("(I + I) * (I + I)");
  CHECK(tensor_make(*t, 0, 2) == 0);
  CHECK(tensor_make(*t, 1, 0) == 0);
  for (size_t a = 1; a < 3; ++a)
    for (size_t b = 1; b < 3; ++b) {
      size_t e = tensor_make(*t, a, b);
      CHECK(e != 0);
      CHECK(tensor_decode(*t, e) == std::pair{a, b});
    }

  DenPtr fn = den("I -o I");
  REQUIRE(fn->size == 2);
  CHECK(fn->tables[0] == std::vector<size_t>{0, 0});
  CHECK(fn->tables[1] == std::vector<size_t>{0, 1});
  CHECK(lolli_apply(*fn, 1, 1) == 1);
  CHECK(lolli_apply(*fn, 1, 0) == 0);
  CHECK(lolli_apply(*fn, 0, 1) == 0);
}

TEST_CASE("denotations of closed samples") {
  DenCache cache;
  DenPtr b = den("I + I");
  CHECK(den_of("*", cache) == 1);
  CHECK(den_of("left[I, I] *", cache) == sum_left(*b, 1));
  CHECK(den_of("right[I, I] *", cache) == sum_right(*b, 1));
  CHECK(den_of("<*, *>", cache) == 1);
  CHECK(den_of("lift *", cache) == 2);       // inner copy of star
  CHECK(den_of("rec x:!I. force x", cache) == 0);
  CHECK(den_of("lift rec x:!I. force x", cache) == 1);  // lift is not strict
  CHECK(den_of("force lift *", cache) == 1);
  CHECK(den_of("(\\x:I. x) *", cache) == 1);

  // The boolean swap is the table [0, 2, 1].
  size_t f = den_of(
      "\\b:I + I. case b of {left u -> right[I, I] u | right u -> left[I, I] u}",
      cache);
  DenPtr fn = cache.get(parse_type("(I + I) -o (I + I)"));
  CHECK(f == lolli_index(*fn, {0, 2, 1}));
  CHECK(lolli_apply(*fn, f, 1) == 2);
  CHECK(lolli_apply(*fn, f, 2) == 1);
}

TEST_CASE("denotation under environments is the full table") {
  VarContext g;
  g = g.extend(Name("x"), parse_type("I + I"));
  Term m = parse_term("case x of {left u -> right[I, I] u | right u -> left[I, I] u}",
                      sig());
  TypingDerivation d = check(g, {}, m, sig());
  DenCache cache;
  CHECK(denote_table(d, cache) == std::vector<size_t>{2, 1});
  DenEnv bot = DenEnv::bot();
  CHECK(denote(d, bot, cache) == 0);  // smash: strict in the context
}

TEST_CASE("all derivations of a judgement denote the same map") {
  std::mt19937 rng(91);
  testgen::GenOptions opts;
  opts.profile = testgen::GenOptions::Profile::DiagramFree;
  opts.allow_rec = false;
  DenCache cache;
  int multi = 0;
  for (int i = 0; i < 120; ++i) {
    opts.max_depth = 2 + i % 4;
    Term m = testgen::random_closed_term(rng, sig(), opts);
    TypingDerivation main = check({}, {}, m, sig());
    std::vector<TypingDerivation> all = testgen::derive_all({}, main.term, sig(), 16);
    REQUIRE(!all.empty());
    std::vector<size_t> table;
    bool first = true;
    for (const TypingDerivation& d : all) {
      CHECK(d.type == main.type);
      std::vector<size_t> t;
      try {
        t = denote_table(d, cache);
      } catch (const CarrierTooLarge&) {
        break;
      }
      if (first) { table = t; first = false; }
      else CHECK(t == table);
    }
    if (all.size() > 1) ++multi;
  }
  CHECK(multi > 0);
}

TEST_CASE("soundness verdicts") {
  std::string why;
  CHECK(check_soundness(parse_term("force lift <*, left[I, I] *>", sig()), sig(),
                        10000, &why) == SoundnessVerdict::Pass);
  CHECK(check_soundness(parse_term("rec x:!I. force x", sig()), sig(), 1000,
                        &why) == SoundnessVerdict::Inconclusive);
  CHECK(check_soundness(parse_term("lift rec x:!I. force x", sig()), sig(),
                        10000, &why) == SoundnessVerdict::Pass);
}

TEST_CASE("adequacy verdicts") {
  CHECK(check_adequacy(parse_term("<*, right[I, I * I] <*, *>>", sig()), sig(),
                       10000) == AdequacyVerdict::Pass);
  CHECK(check_adequacy(parse_term("rec x:!I. force x", sig()), sig(), 10000) ==
        AdequacyVerdict::PassPresumedDivergent);
  CHECK(check_adequacy(parse_term("lift rec x:!I. force x", sig()), sig(),
                       10000) == AdequacyVerdict::Pass);
  // Divergence hidden under a case still agrees with the model.
  CHECK(check_adequacy(
            parse_term("case right[I, I] * of {left u -> u | right u -> "
                       "(rec x:!I. force x; u)}",
                       sig()),
            sig(), 10000) == AdequacyVerdict::PassPresumedDivergent);
  // Function types are not observable.
  CHECK(check_adequacy(parse_term("\\x:I. x", sig()), sig(), 10000) ==
        AdequacyVerdict::Unsupported);
  CHECK(observable_type(parse_type("!I + I * I")));
  CHECK_FALSE(observable_type(parse_type("I -o I")));
  // A lift value always denotes a nonbottom element, so a bang is
  // observable even when its payload type is not.
  CHECK(observable_type(parse_type("!(I -o I)")));
}

TEST_CASE("terms outside the diagram-free fragment are rejected") {
  DenCache cache;
  CHECK_THROWS_AS(den_of("box[qubit] lift h", cache), OracleUnsupported);
  CHECK_THROWS_AS(den_of("lift h", cache), OracleUnsupported);
  CHECK_THROWS_AS(cache.get(parse_type("qubit")), OracleUnsupported);
  CHECK_THROWS_AS(cache.get(parse_type("Diag(qubit, qubit)")), OracleUnsupported);
}

TEST_CASE("oversized carriers are refused, not computed") {
  DenCache cache;
  // The domain is a 9-element flat poset, so the table count is 9^8.
  Type big = parse_type(
      "(I + I) * (I + I) * (I + I) -o (I + I) * (I + I) * (I + I)");
  CHECK_THROWS_AS(cache.get(big), CarrierTooLarge);
}

TEST_CASE("random diagram-free programs are sound") {
  std::mt19937 rng(92);
  testgen::GenOptions opts;
  opts.profile = testgen::GenOptions::Profile::DiagramFree;
  int passes = 0;
  for (int i = 0; i < 120; ++i) {
    opts.max_depth = 2 + i % 4;
    Term m = testgen::random_closed_term(rng, sig(), opts);
    std::string why;
    SoundnessVerdict v = SoundnessVerdict::Inconclusive;
    try {
      v = check_soundness(m, sig(), 10000, &why);
    } catch (const CarrierTooLarge&) {
      continue;
    }
    CHECK(v != SoundnessVerdict::Fail);
    if (v == SoundnessVerdict::Pass) ++passes;
  }
  CHECK(passes > 60);
}
