// Constructive model building for consistent sets.
//
// Each builder assembles a finite structure whose elements are copies of
// "worlds": closed sets of terms describing one individual. A world is
// special when it contains a term "all l" whose l is derivably nonempty;
// such an individual is the unique l, so it gets one copy, while every
// other world gets two (so that no unintended "all ..." term comes true).
// The result is verified against the input; failure to verify means a bug
// in the construction and throws std::logic_error.
#pragma once

#include <vector>

#include "syllog/calculus.hpp"
#include "syllog/refutation.hpp"
#include "syllog/semantics.hpp"
#include "syllog/syntax.hpp"

namespace syllog {

struct ModelResult {
  bool consistent = true;
  ProofNode refutation;  // absurdity derivation when !consistent
  Structure model;
  std::vector<std::vector<ETerm>> worlds;  // sorted term sets, build order
  std::vector<bool> specialWorld;          // parallel to worlds
  std::vector<int> elementWorld;           // domain element -> world index
};

// Closure used by the two-shape fragment: a positive atom in the set pulls
// in every term it derivably falls under, and "all p" pulls in p itself
// when p is derivably nonempty. Seed terms must be two-shape terms (no
// wraps over negative literals).
std::vector<ETerm> closeTermSet(const std::vector<ETerm>& seed, const Saturation& sat);

// Model for a consistent set of two-shape formulas (atom subjects): worlds
// seeded from every derivable existential, then one world per "nall p"
// occurrence. Saturates the premises itself; reports an absurdity
// derivation instead of a model when they are inconsistent.
ModelResult buildModelH(const std::vector<Formula>& premises);

// Model for a complete consistent set in one of the dagger fragments, as
// produced by lindenbaumExtend. Worlds are every closed consistent term
// set that decides each literal (literal-subject fragment: "all ..."
// pairs may also be jointly absent; full fragment: every complement pair
// is decided). Exponential in the number of atoms; throws
// std::invalid_argument above 6.
ModelResult buildModelDagger(const CompleteSet& complete);

}  // namespace syllog
