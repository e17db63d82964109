#include <random>

#include "doctest.h"
#include "eclnl/parser.hpp"
#include "eclnl/types.hpp"

using namespace eclnl;

namespace {

Type random_type(std::mt19937& rng, int depth) {
  std::uniform_int_distribution<int> d(0, depth <= 0 ? 2 : 7);
  switch (d(rng)) {
    case 0: return Type::unit();
    case 1: return Type::zero();
    case 2: return Type::wire(Name("qubit"));
    case 3: return Type::sum(random_type(rng, depth - 1),
                             random_type(rng, depth - 1));
    case 4: return Type::tensor(random_type(rng, depth - 1),
                                random_type(rng, depth - 1));
    case 5: return Type::lolli(random_type(rng, depth - 1),
                               random_type(rng, depth - 1));
    case 6: return Type::bang(random_type(rng, depth - 1));
    default:
      return Type::diag(MType::wire(Name("qubit")),
                        MType::tensor(MType::unit(), MType::wire(Name("qubit"))));
  }
}

// The defining grammar: P ::= 0 | P + R | I | P * R | !A | Diag(T, U).
bool intuitionistic_by_grammar(const Type& t) {
  switch (t.kind()) {
    case Type::Kind::Zero:
    case Type::Kind::Unit:
    case Type::Kind::Bang:
    case Type::Kind::Diag:
      return true;
    case Type::Kind::Sum:
    case Type::Kind::Tensor:
      return intuitionistic_by_grammar(t.left()) &&
             intuitionistic_by_grammar(t.right());
    case Type::Kind::Lolli:
    case Type::Kind::Wire:
      return false;
  }
  return false;
}

}  // namespace

TEST_CASE("intuitionistic types follow the grammar") {
  std::mt19937 rng(7);
  for (int i = 0; i < 2000; ++i) {
    Type t = random_type(rng, 4);
    CHECK(is_intuitionistic(t) == intuitionistic_by_grammar(t));
  }
  CHECK(is_intuitionistic(Type::unit()));
  CHECK(is_intuitionistic(Type::zero()));
  CHECK(is_intuitionistic(Type::bang(Type::lolli(Type::unit(), Type::unit()))));
  CHECK_FALSE(is_intuitionistic(Type::lolli(Type::unit(), Type::unit())));
  CHECK_FALSE(is_intuitionistic(Type::wire(Name("qubit"))));
  CHECK_FALSE(is_intuitionistic(
      Type::tensor(Type::unit(), Type::wire(Name("qubit")))));
}

TEST_CASE("type printing round-trips through the parser") {
  std::mt19937 rng(11);
  for (int i = 0; i < 500; ++i) {
    Type t = random_type(rng, 4);
    CHECK(parse_type(print_type(t)) == t);
  }
}

TEST_CASE("type printer precedence") {
  CHECK(print_type(Type::lolli(Type::bang(Type::unit()), Type::unit())) ==
        "!I -o I");
  CHECK(print_type(Type::bang(Type::lolli(Type::unit(), Type::unit()))) ==
        "!(I -o I)");
  Type sum_of_tensor =
      Type::sum(Type::unit(), Type::tensor(Type::unit(), Type::unit()));
  CHECK(parse_type(print_type(sum_of_tensor)) == sum_of_tensor);
  Type tensor_of_sum =
      Type::tensor(Type::sum(Type::unit(), Type::unit()), Type::unit());
  CHECK(parse_type(print_type(tensor_of_sum)) == tensor_of_sum);
  // -o is right-associative and binds loosest.
  Type t = parse_type("I -o I -o I");
  CHECK(t == Type::lolli(Type::unit(), Type::lolli(Type::unit(), Type::unit())));
  CHECK(parse_type("I + I * I") ==
        Type::sum(Type::unit(), Type::tensor(Type::unit(), Type::unit())));
}

TEST_CASE("mtypes embed into types and back") {
  MType m = MType::tensor(MType::wire(Name("qubit")),
                          MType::tensor(MType::unit(), MType::wire(Name("w"))));
  CHECK(MType::from_type(m.to_type()) == m);
  CHECK(!MType::from_type(Type::bang(Type::unit())).has_value());
  CHECK(!MType::from_type(Type::sum(Type::unit(), Type::unit())).has_value());
  CHECK(MType::from_type(Type::unit()).has_value());
}

TEST_CASE("label tuples") {
  LabelTuple a = LabelTuple::label(Name("#a"));
  LabelTuple b = LabelTuple::label(Name("#b"));
  LabelTuple p = LabelTuple::pair(a, b);
  CHECK(p.labels() == std::vector<Name>{Name("#a"), Name("#b")});
  CHECK(LabelTuple::same_shape(p, LabelTuple::pair(b, a)));
  CHECK_FALSE(LabelTuple::same_shape(p, a));
  CHECK_THROWS_AS(LabelTuple::pair(a, a), std::logic_error);
}
