// Proof search with reductio: decide derivability in the indirect calculus,
// or extend a consistent set to a complete one.
//
// The search works over the canonical formula classes of the rule set's
// fragment across the premise atoms. It repeatedly saturates, then asserts
// the least undecided class, positive polarity first: an assertion that
// saturates to an absurdity forces the other polarity without a search
// node, one that stays open becomes a split counted against the budget.
// Closed branches assemble into reductio proof trees, guided by which
// hypotheses the absurdity derivation actually cites: a split whose
// assumption goes uncited dissolves without visiting the sibling, since
// the same closure holds there verbatim. An exhausted scan yields a
// complete consistent extension. Everything is deterministic.
#pragma once

#include <vector>

#include "syllog/calculus.hpp"
#include "syllog/proofs.hpp"
#include "syllog/rules.hpp"
#include "syllog/syntax.hpp"

namespace syllog {

struct SearchStats {
  long branchNodes = 0;  // assumptions asserted open: potential two-way splits
  long forcedSteps = 0;  // polarities fixed by a closing assertion
  long lookaheads = 0;   // polarity assertions saturated in total
};

// A complete consistent assignment: exactly one of each complementary pair
// of fragment formulas over the atoms, closed under the rules.
struct CompleteSet {
  Language language = Language::H;
  std::vector<std::string> atoms;
  std::vector<Formula> formulas;  // ascending canonical order
};

struct IndirectResult {
  enum class Outcome { Proved, NotProved, BudgetExceeded };
  Outcome outcome = Outcome::NotProved;
  ProofNode proof;      // Proved: concludes the goal from the premises
  CompleteSet witness;  // NotProved: complete consistent set containing
                        // premises + negated goal
  SearchStats stats;
};

IndirectResult decideIndirect(const std::vector<Formula>& premises, const Formula& goal,
                              const RuleSet& rules, long branchBudget = 1000000);

struct ExtendResult {
  enum class Outcome { Consistent, Refuted, BudgetExceeded };
  Outcome outcome = Outcome::Consistent;
  CompleteSet set;       // Consistent
  ProofNode refutation;  // Refuted: an absurdity from hypotheses among the premises
  SearchStats stats;
};

ExtendResult lindenbaumExtend(const std::vector<Formula>& premises, const RuleSet& rules,
                              long branchBudget = 1000000);

// On an already complete set the search must never branch: refutability by
// search then coincides with refutability by plain saturation.
struct BranchFreeCheck {
  bool refutedBySaturation = false;
  bool refutedBySearch = false;
  long branchNodes = 0;
  bool agreed() const {
    return refutedBySaturation == refutedBySearch && branchNodes == 0;
  }
};

BranchFreeCheck checkBranchFreeOnComplete(const CompleteSet& set);

}  // namespace syllog
