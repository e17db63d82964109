#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "eclnl/names.hpp"

namespace eclnl {

class Type;

// Wire-type trees: the types T for which diagrams Diag(T, U) and boxing make
// sense. Wire | Unit | Tensor(MType, MType). Every MType embeds injectively
// into Type via to_type().
class MType {
 public:
  enum class Kind { Wire, Unit, Tensor };

  static MType wire(Name w);
  static MType unit();
  static MType tensor(MType a, MType b);

  Kind kind() const;
  Name wire_name() const;        // Kind::Wire only
  const MType& left() const;     // Kind::Tensor only
  const MType& right() const;    // Kind::Tensor only

  Type to_type() const;
  static std::optional<MType> from_type(const Type& t);

  bool operator==(const MType& other) const;
  bool operator!=(const MType& other) const { return !(*this == other); }

 private:
  struct Node;
  explicit MType(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// Types of the calculus. Intuitionistic types (see is_intuitionistic) may be
// copied and discarded; everything else is linear, including every A -o B.
class Type {
 public:
  enum class Kind { Zero, Unit, Sum, Tensor, Lolli, Bang, Wire, Diag };

  static Type zero();
  static Type unit();
  static Type sum(Type a, Type b);
  static Type tensor(Type a, Type b);
  static Type lolli(Type dom, Type cod);
  static Type bang(Type inner);
  static Type wire(Name w);
  static Type diag(MType in, MType out);

  Kind kind() const;
  const Type& left() const;      // Sum/Tensor
  const Type& right() const;     // Sum/Tensor
  const Type& domain() const;    // Lolli
  const Type& codomain() const;  // Lolli
  const Type& inner() const;     // Bang
  Name wire_name() const;        // Wire
  const MType& diag_in() const;  // Diag
  const MType& diag_out() const; // Diag

  bool operator==(const Type& other) const;
  bool operator!=(const Type& other) const { return !(*this == other); }

 private:
  struct Node;
  explicit Type(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
  friend class MType;
};

// True for the grammar P, R ::= 0 | P + R | I | P * R | !A | Diag(T, U).
bool is_intuitionistic(const Type& t);

// Label context Q: finite map from labels to wire types. Set semantics;
// std::map keyed by Name iterates in deterministic string order.
using LabelContext = std::map<Name, Name>;

// Variable context entry. Order matters: denotation environments are tuples
// in context order.
struct VarBinding {
  Name name;
  Type type;
};

// Ordered variable context; names are distinct.
class VarContext {
 public:
  VarContext() = default;

  const Type* lookup(Name n) const;
  // Appends, replacing any existing binding of the same name (shadowing).
  VarContext extend(Name n, Type t) const;

  const std::vector<VarBinding>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  size_t size() const { return entries_.size(); }

 private:
  std::vector<VarBinding> entries_;
};

// Tuples of labels mirroring an MType: Star at Unit, a label at Wire, a pair
// at Tensor. Labels within one tuple are distinct.
class LabelTuple {
 public:
  enum class Kind { Star, Label, Pair };

  static LabelTuple star();
  static LabelTuple label(Name l);
  static LabelTuple pair(LabelTuple a, LabelTuple b);  // throws on duplicate labels

  Kind kind() const;
  Name label_name() const;          // Kind::Label only
  const LabelTuple& first() const;  // Kind::Pair only
  const LabelTuple& second() const; // Kind::Pair only

  // Labels in left-to-right traversal order.
  void collect(std::vector<Name>& out) const;
  std::vector<Name> labels() const;

  // True when both tuples have the same tree shape.
  static bool same_shape(const LabelTuple& a, const LabelTuple& b);

  bool operator==(const LabelTuple& other) const;
  bool operator!=(const LabelTuple& other) const { return !(*this == other); }

 private:
  struct Node;
  explicit LabelTuple(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

std::string print_type(const Type& t);
std::string print_mtype(const MType& t);

}  // namespace eclnl
