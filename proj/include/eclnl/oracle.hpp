#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "eclnl/signature.hpp"
#include "eclnl/term.hpp"
#include "eclnl/typecheck.hpp"
#include "eclnl/types.hpp"

namespace eclnl {

// The reference model interprets the diagram-free fragment in finite pointed
// posets and strict monotone maps. Terms touching wires, diagrams, labels or
// generators fall outside it.
struct OracleUnsupported : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when a carrier would exceed the element budget.
struct CarrierTooLarge : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr size_t kCarrierBudget = 1000000;

// Carrier of one type. Elements are indices; index 0 is always bottom.
// Layout by type:
//   0        [bot]
//   I        [bot, star]
//   A + B    [bot, left a (a = 1..|A|-1), right b (b = 1..|B|-1)]
//   A * B    [bot, (a, b) lexicographic over nonbottom a, b]
//   A -o B   all strict monotone tables dom -> cod in lexicographic order
//            (index 0 is the constant-bottom table)
//   !A       [bot, inner a (a = 0..|A|-1)]; inner preserves the order of A
// Orders: sums are coalesced, tensors are smash products, functions are
// ordered pointwise, !A puts a new bottom under a copy of A.
struct TypeDen {
  Type type = Type::unit();
  size_t size = 0;
  std::shared_ptr<const TypeDen> a, b;       // Sum/Tensor/Lolli parts; Bang in a
  std::vector<std::vector<size_t>> tables;   // Lolli only, sorted

  Type::Kind kind() const { return type.kind(); }
};

using DenPtr = std::shared_ptr<const TypeDen>;

// Memoizes carriers per structural type.
class DenCache {
 public:
  DenPtr get(const Type& t);

 private:
  std::map<std::string, DenPtr> memo_;
};

// Order, chain length, and element constructors.
bool den_leq(const TypeDen& d, size_t i, size_t j);
size_t den_height(const TypeDen& d);  // length of the longest chain

size_t sum_left(const TypeDen& sum, size_t a);    // a != 0
size_t sum_right(const TypeDen& sum, size_t b);   // b != 0
struct SumElem {
  enum class Side { Bottom, Left, Right } side;
  size_t value;  // nonbottom index in the summand
};
SumElem sum_decode(const TypeDen& sum, size_t e);

size_t tensor_make(const TypeDen& tens, size_t a, size_t b);  // 0 if either is 0
std::pair<size_t, size_t> tensor_decode(const TypeDen& tens, size_t e);  // e != 0

size_t lolli_apply(const TypeDen& fn, size_t f, size_t a);
// Index of a table in the carrier; throws std::logic_error if absent
// (absence means the table is not a strict monotone map).
size_t lolli_index(const TypeDen& fn, const std::vector<size_t>& table);

// Environments are elements of the smash product of the context carriers:
// either bottom, or one nonbottom element per variable in context order.
struct DenEnv {
  bool bottom = false;
  std::vector<size_t> vals;

  static DenEnv bot() { return {true, {}}; }
  static DenEnv empty() { return {false, {}}; }
};

// Denotation of a typing derivation at one environment for its root context.
// Works on any valid derivation of the judgement, including ones whose
// contexts split differently across children. Throws OracleUnsupported
// outside the diagram-free fragment.
size_t denote(const DerivNode& deriv, const DenEnv& env, DenCache& cache);

// Full table of the denotation: one entry per nonbottom environment of the
// root context, enumerated lexicographically (first variable slowest, each
// ranging over nonbottom elements). The bottom environment maps to bottom
// and is not listed.
std::vector<size_t> denote_table(const DerivNode& deriv, DenCache& cache);

// Executable soundness: evaluate and compare denotations before and after.
enum class SoundnessVerdict { Pass, Fail, Inconclusive };
SoundnessVerdict check_soundness(const Term& m, const Signature& sig,
                                 uint64_t fuel, std::string* why = nullptr);

// Executable adequacy at observable types (no function spaces): a closed
// term evaluates to a value exactly when its denotation is not bottom.
bool observable_type(const Type& t);
enum class AdequacyVerdict { Pass, PassPresumedDivergent, Fail, Unsupported };
AdequacyVerdict check_adequacy(const Term& m, const Signature& sig,
                               uint64_t fuel, std::string* why = nullptr);

}  // namespace eclnl
