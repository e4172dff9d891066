// Proof trees shared by the derivation engines and the replay checker.
#pragma once

#include <string>
#include <vector>

#include "syllog/syntax.hpp"

namespace syllog {

// A node concludes a canonical formula. Hypothesis leaves stand for premises
// (or, under a reductio, the temporarily assumed formula). A rule node names
// the schema instance its children feed. A reductio node has one child
// deriving an absurdity from the discharged assumption, and concludes that
// assumption's negation.
struct ProofNode {
  enum class Kind { Hypothesis, Rule, Reductio };

  Kind kind = Kind::Hypothesis;
  Formula conclusion;
  std::string rule;    // Kind::Rule only
  Formula discharged;  // Kind::Reductio only
  std::vector<ProofNode> children;

  static ProofNode hypothesis(Formula f);
  static ProofNode ruleApp(std::string rule, Formula concl, std::vector<ProofNode> kids);
  static ProofNode reductio(Formula discharged, ProofNode derivationOfAbsurdity);

  int nodeCount() const;
  int height() const;
};

std::string printProof(const ProofNode& p);

// Replaces every hypothesis leaf concluding `target` with a copy of
// `replacement` (which must conclude the same formula).
void graftAtHypothesis(ProofNode& tree, const Formula& target, const ProofNode& replacement);

}  // namespace syllog
