// Forward saturation: closing a set of sentences under a rule set, with
// derivation records for proof extraction.
//
// Formulas are interned as integer codes over a fixed atom universe, chosen
// so that code order equals the canonical formula order (quantifier, then
// subject term, then predicate term). Derivation runs in rounds; within a
// round candidates are processed in ascending code order and the first
// derivation of a class wins, so records are deterministic and shallowest
// first. Every derived formula stays inside the rule set's fragment and
// mentions only universe atoms.
#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "syllog/proofs.hpp"
#include "syllog/rules.hpp"
#include "syllog/syntax.hpp"

namespace syllog {

struct SaturationStats {
  long rounds = 0;
  long derived = 0;
  long premises = 0;
};

class Saturation {
 public:
  // The atom universe is fixed up front; premises and queries must stay
  // inside it. Zero-antecedent rule instances over the universe are present
  // from the start.
  Saturation(const RuleSet& rules, std::vector<std::string> atomUniverse,
             bool stopOnAbsurdity = false);

  const RuleSet& ruleSet() const { return *rules_; }
  const std::vector<std::string>& atoms() const { return atoms_; }

  // Throws std::invalid_argument for a formula outside the rule set's
  // fragment or mentioning an atom outside the universe.
  void addPremise(const Formula& f);

  // Derives to fixpoint (or stops at the round that produced an absurdity /
  // the target when configured to).
  void run();
  void setTarget(const Formula& goal);  // optional early-stop formula

  bool contains(const Formula& f) const;
  bool inconsistent() const { return absurdity_ >= 0; }
  std::optional<Formula> absurdity() const;
  std::vector<Formula> members() const;
  size_t memberCount() const { return members_.size(); }
  ProofNode derivationOf(const Formula& f) const;

  // Search support: assumptions by code, snapshots, and rollback of
  // everything recorded after a snapshot. run() must have completed (no
  // pending queue) when a snapshot is taken.
  size_t snapshot() const { return members_.size(); }
  void rollback(size_t snap);
  void assumeCode(int code);

  // Code-level interface (codes are engine-local).
  int encode(const Formula& f) const;  // -1 for atoms outside the universe
  Formula decode(int code) const;
  bool codePresent(int code) const;
  int negCode(int code) const;
  bool absurdCode(int code) const;
  ProofNode derivationOfCode(int code) const;

  // Ascending codes of every canonical formula of the fragment over the
  // universe; computed once on first use.
  const std::vector<int>& universeClasses() const;

  SaturationStats stats() const { return stats_; }

 private:
  struct Rec {
    int rule = -2;  // -1 premise/assumption, -2 absent, otherwise schema index
    int a0 = -1;
    int a1 = -1;
  };

  int termCodeOf(const ETerm& t) const;
  ETerm termOf(int code) const;
  int compTerm(int t) const;
  int canonCode(int q, int s, int p) const;
  bool fitsSort(int termCode, MetaSort s) const;
  bool bindVar(std::array<int, 3>& val, int var, int value) const;
  bool matchTerm(const TermTpl& t, int code, std::array<int, 3>& val,
                 const RuleSchema& r) const;
  int instantiateTerm(const TermTpl& t, const std::array<int, 3>& val) const;
  int instantiateFormula(const FormulaTpl& f, const std::array<int, 3>& val) const;
  const std::vector<int>& sortValues(MetaSort s) const;
  void insertBase(int code, const Rec& rec);
  void tryQueue(int code, const Rec& rec);
  void matchInto(int fCode);
  void deriveConsequent(int schemaIdx, std::array<int, 3> val, int a0, int a1);
  void injectAxioms();

  const RuleSet* rules_;
  std::vector<std::string> atoms_;
  int k_ = 0;
  int nTerm_ = 0;
  bool stopOnAbsurdity_ = false;
  int target_ = -1;

  std::vector<int8_t> present_;  // 0 absent, 1 present, 2 queued this round
  std::vector<Rec> rec_;
  std::vector<int> members_;  // insertion order; rounds are sorted blocks
  std::vector<int> pending_;  // inserted but not yet matched against
  std::vector<int> roundQueue_;
  int absurdity_ = -1;
  SaturationStats stats_;

  mutable std::vector<int> sortVals_[4];
  mutable std::vector<int> universe_;
};

// Closure of the premises under the rules, as sorted canonical formulas.
std::vector<Formula> saturate(const std::vector<Formula>& premises, const RuleSet& rules);

// Premise-only derivability: the goal's derivation tree, or nullopt.
std::optional<ProofNode> decideDirect(const std::vector<Formula>& premises,
                                      const Formula& goal, const RuleSet& rules);

}  // namespace syllog
