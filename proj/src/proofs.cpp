#include "syllog/proofs.hpp"

#include <cassert>
#include <sstream>

namespace syllog {

ProofNode ProofNode::hypothesis(Formula f) {
  ProofNode n;
  n.kind = Kind::Hypothesis;
  n.conclusion = std::move(f);
  return n;
}

ProofNode ProofNode::ruleApp(std::string rule, Formula concl, std::vector<ProofNode> kids) {
  ProofNode n;
  n.kind = Kind::Rule;
  n.conclusion = std::move(concl);
  n.rule = std::move(rule);
  n.children = std::move(kids);
  return n;
}

ProofNode ProofNode::reductio(Formula discharged, ProofNode derivationOfAbsurdity) {
  ProofNode n;
  n.kind = Kind::Reductio;
  n.conclusion = negation(discharged);
  n.discharged = std::move(discharged);
  n.children.push_back(std::move(derivationOfAbsurdity));
  return n;
}

int ProofNode::nodeCount() const {
  int n = 1;
  for (const auto& c : children) n += c.nodeCount();
  return n;
}

int ProofNode::height() const {
  int h = 0;
  for (const auto& c : children) h = std::max(h, c.height());
  return h + 1;
}

namespace {

void printRec(const ProofNode& p, std::ostream& out, int depth) {
  for (int i = 0; i < depth; ++i) out << "  ";
  out << printFormula(p.conclusion);
  switch (p.kind) {
    case ProofNode::Kind::Hypothesis:
      out << "  [hypothesis]";
      break;
    case ProofNode::Kind::Rule:
      out << "  [by " << p.rule << "]";
      break;
    case ProofNode::Kind::Reductio:
      out << "  [by reductio, discharging " << printFormula(p.discharged) << "]";
      break;
  }
  out << "\n";
  for (const auto& c : p.children) printRec(c, out, depth + 1);
}

}  // namespace

std::string printProof(const ProofNode& p) {
  std::ostringstream out;
  printRec(p, out, 0);
  return out.str();
}

void graftAtHypothesis(ProofNode& tree, const Formula& target, const ProofNode& replacement) {
  if (tree.kind == ProofNode::Kind::Hypothesis && tree.conclusion == target) {
    tree = replacement;
    return;
  }
  // Leaves under a reductio that discharges the same formula are bound by
  // that discharge and must stay untouched.
  if (tree.kind == ProofNode::Kind::Reductio && tree.discharged == target) return;
  for (auto& c : tree.children) graftAtHypothesis(c, target, replacement);
}

}  // namespace syllog
