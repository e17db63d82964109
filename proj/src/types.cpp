#include "eclnl/types.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <variant>

namespace eclnl {

// ---------------------------------------------------------------------------
// MType

struct MType::Node {
  struct Wire { Name w; };
  struct Unit {};
  struct Tensor { MType a, b; };
  std::variant<Wire, Unit, Tensor> v;
};

MType MType::wire(Name w) {
  return MType(std::make_shared<const Node>(Node{Node::Wire{w}}));
}
MType MType::unit() {
  return MType(std::make_shared<const Node>(Node{Node::Unit{}}));
}
MType MType::tensor(MType a, MType b) {
  return MType(std::make_shared<const Node>(Node{Node::Tensor{std::move(a), std::move(b)}}));
}

MType::Kind MType::kind() const {
  switch (node_->v.index()) {
    case 0: return Kind::Wire;
    case 1: return Kind::Unit;
    default: return Kind::Tensor;
  }
}
Name MType::wire_name() const { return std::get<Node::Wire>(node_->v).w; }
const MType& MType::left() const { return std::get<Node::Tensor>(node_->v).a; }
const MType& MType::right() const { return std::get<Node::Tensor>(node_->v).b; }

bool MType::operator==(const MType& other) const {
  if (node_ == other.node_) return true;
  if (kind() != other.kind()) return false;
  switch (kind()) {
    case Kind::Wire: return wire_name() == other.wire_name();
    case Kind::Unit: return true;
    case Kind::Tensor:
      return left() == other.left() && right() == other.right();
  }
  return false;
}

Type MType::to_type() const {
  switch (kind()) {
    case Kind::Wire: return Type::wire(wire_name());
    case Kind::Unit: return Type::unit();
    case Kind::Tensor: return Type::tensor(left().to_type(), right().to_type());
  }
  throw std::logic_error("unreachable");
}

std::optional<MType> MType::from_type(const Type& t) {
  switch (t.kind()) {
    case Type::Kind::Wire: return MType::wire(t.wire_name());
    case Type::Kind::Unit: return MType::unit();
    case Type::Kind::Tensor: {
      auto a = from_type(t.left());
      if (!a) return std::nullopt;
      auto b = from_type(t.right());
      if (!b) return std::nullopt;
      return MType::tensor(*a, *b);
    }
    default: return std::nullopt;
  }
}

// ---------------------------------------------------------------------------
// Type

struct Type::Node {
  struct Zero {};
  struct Unit {};
  struct Sum { Type a, b; };
  struct Tensor { Type a, b; };
  struct Lolli { Type dom, cod; };
  struct Bang { Type inner; };
  struct Wire { Name w; };
  struct Diag { MType in, out; };
  std::variant<Zero, Unit, Sum, Tensor, Lolli, Bang, Wire, Diag> v;
};

Type Type::zero() { return Type(std::make_shared<const Node>(Node{Node::Zero{}})); }
Type Type::unit() { return Type(std::make_shared<const Node>(Node{Node::Unit{}})); }
Type Type::sum(Type a, Type b) {
  return Type(std::make_shared<const Node>(Node{Node::Sum{std::move(a), std::move(b)}}));
}
Type Type::tensor(Type a, Type b) {
  return Type(std::make_shared<const Node>(Node{Node::Tensor{std::move(a), std::move(b)}}));
}
Type Type::lolli(Type dom, Type cod) {
  return Type(std::make_shared<const Node>(Node{Node::Lolli{std::move(dom), std::move(cod)}}));
}
Type Type::bang(Type inner) {
  return Type(std::make_shared<const Node>(Node{Node::Bang{std::move(inner)}}));
}
Type Type::wire(Name w) {
  return Type(std::make_shared<const Node>(Node{Node::Wire{w}}));
}
Type Type::diag(MType in, MType out) {
  return Type(std::make_shared<const Node>(Node{Node::Diag{std::move(in), std::move(out)}}));
}

Type::Kind Type::kind() const { return static_cast<Kind>(node_->v.index()); }

const Type& Type::left() const {
  if (auto* s = std::get_if<Node::Sum>(&node_->v)) return s->a;
  return std::get<Node::Tensor>(node_->v).a;
}
const Type& Type::right() const {
  if (auto* s = std::get_if<Node::Sum>(&node_->v)) return s->b;
  return std::get<Node::Tensor>(node_->v).b;
}
const Type& Type::domain() const { return std::get<Node::Lolli>(node_->v).dom; }
const Type& Type::codomain() const { return std::get<Node::Lolli>(node_->v).cod; }
const Type& Type::inner() const { return std::get<Node::Bang>(node_->v).inner; }
Name Type::wire_name() const { return std::get<Node::Wire>(node_->v).w; }
const MType& Type::diag_in() const { return std::get<Node::Diag>(node_->v).in; }
const MType& Type::diag_out() const { return std::get<Node::Diag>(node_->v).out; }

bool Type::operator==(const Type& other) const {
  if (node_ == other.node_) return true;
  if (kind() != other.kind()) return false;
  switch (kind()) {
    case Kind::Zero:
    case Kind::Unit: return true;
    case Kind::Sum:
    case Kind::Tensor:
      return left() == other.left() && right() == other.right();
    case Kind::Lolli:
      return domain() == other.domain() && codomain() == other.codomain();
    case Kind::Bang: return inner() == other.inner();
    case Kind::Wire: return wire_name() == other.wire_name();
    case Kind::Diag:
      return diag_in() == other.diag_in() && diag_out() == other.diag_out();
  }
  return false;
}

bool is_intuitionistic(const Type& t) {
  switch (t.kind()) {
    case Type::Kind::Zero:
    case Type::Kind::Unit:
    case Type::Kind::Bang:
    case Type::Kind::Diag:
      return true;
    case Type::Kind::Sum:
    case Type::Kind::Tensor:
      return is_intuitionistic(t.left()) && is_intuitionistic(t.right());
    case Type::Kind::Lolli:
    case Type::Kind::Wire:
      return false;
  }
  return false;
}

// ---------------------------------------------------------------------------
// VarContext

const Type* VarContext::lookup(Name n) const {
  // Later bindings shadow earlier ones; scan from the back.
  for (auto it = entries_.rbegin(); it != entries_.rend(); ++it)
    if (it->name == n) return &it->type;
  return nullptr;
}

VarContext VarContext::extend(Name n, Type t) const {
  VarContext out = *this;
  for (auto& e : out.entries_) {
    if (e.name == n) {
      e.type = std::move(t);
      return out;
    }
  }
  out.entries_.push_back(VarBinding{n, std::move(t)});
  return out;
}

// ---------------------------------------------------------------------------
// LabelTuple

struct LabelTuple::Node {
  struct Star {};
  struct Label { Name l; };
  struct Pair { LabelTuple a, b; };
  std::variant<Star, Label, Pair> v;
};

LabelTuple LabelTuple::star() {
  return LabelTuple(std::make_shared<const Node>(Node{Node::Star{}}));
}
LabelTuple LabelTuple::label(Name l) {
  return LabelTuple(std::make_shared<const Node>(Node{Node::Label{l}}));
}
LabelTuple LabelTuple::pair(LabelTuple a, LabelTuple b) {
  LabelTuple t(std::make_shared<const Node>(Node{Node::Pair{std::move(a), std::move(b)}}));
  std::vector<Name> ls = t.labels();
  std::set<Name> seen;
  for (Name l : ls)
    if (!seen.insert(l).second)
      throw std::logic_error("duplicate label in label tuple: " + l.str());
  return t;
}

LabelTuple::Kind LabelTuple::kind() const {
  switch (node_->v.index()) {
    case 0: return Kind::Star;
    case 1: return Kind::Label;
    default: return Kind::Pair;
  }
}
Name LabelTuple::label_name() const { return std::get<Node::Label>(node_->v).l; }
const LabelTuple& LabelTuple::first() const { return std::get<Node::Pair>(node_->v).a; }
const LabelTuple& LabelTuple::second() const { return std::get<Node::Pair>(node_->v).b; }

void LabelTuple::collect(std::vector<Name>& out) const {
  switch (kind()) {
    case Kind::Star: return;
    case Kind::Label: out.push_back(label_name()); return;
    case Kind::Pair:
      first().collect(out);
      second().collect(out);
      return;
  }
}

std::vector<Name> LabelTuple::labels() const {
  std::vector<Name> out;
  collect(out);
  return out;
}

bool LabelTuple::same_shape(const LabelTuple& a, const LabelTuple& b) {
  if (a.kind() != b.kind()) return false;
  if (a.kind() == Kind::Pair)
    return same_shape(a.first(), b.first()) && same_shape(a.second(), b.second());
  return true;
}

bool LabelTuple::operator==(const LabelTuple& other) const {
  if (node_ == other.node_) return true;
  if (kind() != other.kind()) return false;
  switch (kind()) {
    case Kind::Star: return true;
    case Kind::Label: return label_name() == other.label_name();
    case Kind::Pair:
      return first() == other.first() && second() == other.second();
  }
  return false;
}

// ---------------------------------------------------------------------------
// Printing. Precedence, loosest first: -o (right assoc), +, *, atoms.
// ! binds tightest and applies to an atom.

namespace {

enum Prec { kLolli = 0, kSum = 1, kTensor = 2, kAtom = 3 };

void print_rec(const Type& t, int min_prec, std::string& out) {
  switch (t.kind()) {
    case Type::Kind::Zero: out += "0"; return;
    case Type::Kind::Unit: out += "I"; return;
    case Type::Kind::Wire: out += t.wire_name().str(); return;
    case Type::Kind::Diag:
      out += "Diag(";
      out += print_mtype(t.diag_in());
      out += ", ";
      out += print_mtype(t.diag_out());
      out += ")";
      return;
    case Type::Kind::Bang:
      out += "!";
      print_rec(t.inner(), kAtom, out);
      return;
    case Type::Kind::Lolli: {
      bool paren = min_prec > kLolli;
      if (paren) out += "(";
      print_rec(t.domain(), kSum, out);  // left operand must bind tighter
      out += " -o ";
      print_rec(t.codomain(), kLolli, out);  // right assoc
      if (paren) out += ")";
      return;
    }
    case Type::Kind::Sum: {
      bool paren = min_prec > kSum;
      if (paren) out += "(";
      print_rec(t.left(), kSum, out);  // left assoc
      out += " + ";
      print_rec(t.right(), kTensor, out);
      if (paren) out += ")";
      return;
    }
    case Type::Kind::Tensor: {
      bool paren = min_prec > kTensor;
      if (paren) out += "(";
      print_rec(t.left(), kTensor, out);  // left assoc
      out += " * ";
      print_rec(t.right(), kAtom, out);
      if (paren) out += ")";
      return;
    }
  }
}

}  // namespace

std::string print_type(const Type& t) {
  std::string out;
  print_rec(t, kLolli, out);
  return out;
}

std::string print_mtype(const MType& t) { return print_type(t.to_type()); }

}  // namespace eclnl
