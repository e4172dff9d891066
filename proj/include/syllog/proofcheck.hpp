// Independent proof replay: walks a proof tree and re-validates every step
// against the rule schemata, with its own formula-level matcher and no state
// shared with the derivation engines.
#pragma once

#include <string>
#include <vector>

#include "syllog/proofs.hpp"
#include "syllog/rules.hpp"
#include "syllog/syntax.hpp"

namespace syllog {

struct CheckResult {
  bool ok = true;
  std::string error;  // first failure, with the offending conclusion
};

// Accepts the tree iff every hypothesis leaf is a premise or a discharged
// assumption in scope, every rule node is an instance of the named schema
// (modulo the identification of spellings), and every reductio derives an
// absurdity from its assumption and concludes that assumption's negation.
CheckResult checkProof(const ProofNode& proof, const std::vector<Formula>& premises,
                       const RuleSet& rules);

}  // namespace syllog
