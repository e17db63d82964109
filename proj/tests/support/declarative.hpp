#pragma once

#include <cstddef>
#include <vector>

#include "eclnl/signature.hpp"
#include "eclnl/term.hpp"
#include "eclnl/typecheck.hpp"

namespace eclnl::testgen {

// Exhaustive small-scale search for typing derivations under the
// declarative reading of the rules: at every two-premise rule the
// intuitionistic variables of the context may be routed to either premise,
// both, or neither, so one judgement usually has several derivations. The
// term must already be elaborated (injection annotations filled in), e.g.
// by running the synthesis checker first.
//
// Diagram-free fragment only: no labels, constants, box or apply.
// Returns up to cap derivations; every returned derivation is valid and
// they all share the root judgement. Used to witness that the checker's
// chosen derivation is not special: the subject type and the model's
// denotation are derivation-independent.
std::vector<TypingDerivation> derive_all(const VarContext& gamma,
                                         const Term& m, const Signature& sig,
                                         std::size_t cap = 64);

}  // namespace eclnl::testgen
