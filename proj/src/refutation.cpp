#include "syllog/refutation.hpp"

#include <cassert>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>
#include <variant>
#include <vector>

namespace syllog {

namespace {

// Hypothesis formulas the tree cites outside the scope of any reductio
// discharging them. Iterative enter/exit walk; trees can get deep.
void collectFreeHypotheses(const ProofNode& root, std::set<Formula>& out) {
  std::vector<std::pair<const ProofNode*, bool>> stack{{&root, false}};
  std::map<Formula, int> boundCount;
  while (!stack.empty()) {
    auto [n, exiting] = stack.back();
    stack.pop_back();
    if (exiting) {
      --boundCount[n->discharged];
      continue;
    }
    switch (n->kind) {
      case ProofNode::Kind::Hypothesis: {
        auto it = boundCount.find(n->conclusion);
        if (it == boundCount.end() || it->second == 0) out.insert(n->conclusion);
        break;
      }
      case ProofNode::Kind::Reductio:
        ++boundCount[n->discharged];
        stack.push_back({n, true});
        stack.push_back({&n->children[0], false});
        break;
      case ProofNode::Kind::Rule:
        for (const auto& k : n->children) stack.push_back({&k, false});
        break;
    }
  }
}

class Search {
 public:
  Search(const RuleSet& rules, const std::vector<std::string>& atoms, long budget)
      : sat_(rules, atoms, /*stopOnAbsurdity=*/true), budget_(budget) {}

  Saturation& saturation() { return sat_; }
  SearchStats& stats() { return stats_; }

  // Decide the pairs built from terms the given formulas mention before the
  // rest of the universe. Contradictions live among the premise terms, so
  // this surfaces them before the scan pads the set with unrelated pairs
  // whose assertions would bloat every subsequent closure. Both tiers stay
  // in ascending canonical order, keeping the search deterministic.
  void focusOn(const std::vector<Formula>& fs) {
    std::set<ETerm> occ;
    for (const auto& f : fs) {
      occ.insert(f.subject);
      occ.insert(f.subject.complement());
      occ.insert(f.predicate);
      occ.insert(f.predicate.complement());
    }
    order_.clear();
    std::vector<int> rest;
    for (int c : sat_.universeClasses()) {
      Formula g = sat_.decode(c);
      if (occ.count(g.subject) && occ.count(g.predicate))
        order_.push_back(c);
      else
        rest.push_back(c);
    }
    order_.insert(order_.end(), rest.begin(), rest.end());
  }

  enum class Res { Closed, Witness, Budget };

  // Premises must already be added and run() completed before calling.
  //
  // Depth-first over the undecided pairs in scan order (see focusOn),
  // positive polarity first, with an explicit trail so closed branches can
  // be taken apart: an assumption whose assertion saturates to an absurdity
  // forces the other polarity, recorded with its closing derivation; an
  // assumption that stays open becomes a split. When a branch closes, the
  // trail unwinds against the set of hypotheses the absurdity derivation
  // actually cites: forced records graft back as reductio steps, a split
  // whose assumption goes uncited dissolves without visiting the sibling
  // (the same closure holds there verbatim), and a cited split flips to
  // its negative polarity and resumes the scan from its own cursor.
  Res solve(ProofNode* closedTree, CompleteSet* witness) {
    struct Forced {
      Formula refuted;       // the polarity whose assumption closed
      ProofNode absurdity;   // derivation of an absurdity from it
    };
    struct Split {
      Formula psi;           // positive polarity, tried first
      ProofNode posTree;     // set once the positive side has closed
      size_t snap = 0;       // saturation snapshot before the assertion
      size_t scanFrom = 0;   // scan cursor at the split
      bool onNeg = false;
    };
    using Event = std::variant<Forced, Split>;
    std::vector<Event> trail;

    const std::vector<int>& classes = order_.empty() ? sat_.universeClasses() : order_;
    size_t scanFrom = 0;

    ProofNode tree;            // absurdity derivation of the branch in hand
    std::set<Formula> frees;   // its free hypotheses, kept in step with it

    auto closeWith = [&](ProofNode t) {
      tree = std::move(t);
      frees.clear();
      collectFreeHypotheses(tree, frees);
    };

    // Discharges `refuted` via reductio and grafts the result over the
    // hypothesis leaves citing its negation; no-op when nothing cites it.
    auto graftInto = [&](Formula refuted, ProofNode absurdity) {
      Formula kept = negation(refuted);
      if (!frees.count(kept)) return;
      frees.erase(kept);
      std::set<Formula> inner;
      collectFreeHypotheses(absurdity, inner);
      inner.erase(refuted);
      ProofNode raa = ProofNode::reductio(std::move(refuted), std::move(absurdity));
      graftAtHypothesis(tree, raa.conclusion, raa);
      frees.insert(inner.begin(), inner.end());
    };

    // Unwinds the trail after closeWith. Returns true when the whole search
    // closed (out is set), false after flipping some split to its negative
    // polarity, with the scan cursor rewound to that split.
    auto unwind = [&](Res& out) -> bool {
      for (;;) {
        if (trail.empty()) {
          *closedTree = std::move(tree);
          out = Res::Closed;
          return true;
        }
        Event ev = std::move(trail.back());
        trail.pop_back();
        if (auto* fc = std::get_if<Forced>(&ev)) {
          graftInto(std::move(fc->refuted), std::move(fc->absurdity));
          continue;
        }
        Split sp = std::move(std::get<Split>(ev));
        if (sp.onNeg) {
          // Negative side closed; resolve against the stored positive side.
          graftInto(std::move(sp.psi), std::move(sp.posTree));
          continue;
        }
        if (!frees.count(sp.psi)) continue;  // split dissolves
        sat_.rollback(sp.snap);
        sp.posTree = std::move(tree);
        sp.onNeg = true;
        scanFrom = sp.scanFrom;
        int npsi = sat_.negCode(sat_.encode(sp.psi));
        ++stats_.lookaheads;
        sat_.assumeCode(npsi);
        sat_.run();
        if (sat_.inconsistent()) {
          // The negative polarity dies on arrival: this split closes too.
          ProofNode negTree = sat_.derivationOfCode(absCode());
          sat_.rollback(sp.snap);
          closeWith(std::move(negTree));
          graftInto(std::move(sp.psi), std::move(sp.posTree));
          continue;
        }
        trail.emplace_back(std::move(sp));
        return false;
      }
    };

    if (sat_.inconsistent()) {
      closeWith(sat_.derivationOfCode(absCode()));
      Res out = Res::Closed;
      bool done = unwind(out);
      assert(done);
      (void)done;
      return out;
    }

    for (;;) {
      int psi = -1;
      while (scanFrom < classes.size()) {
        int c = classes[scanFrom];
        if (!sat_.codePresent(c) && !sat_.codePresent(sat_.negCode(c))) {
          psi = c;
          break;
        }
        ++scanFrom;
      }
      if (psi < 0) {
        *witness = collectWitness();
        return Res::Witness;
      }

      if (trace_ && stats_.lookaheads % 200 == 0)
        std::fprintf(stderr, "trace: scan=%zu/%zu trail=%zu branch=%ld forced=%ld look=%ld members=%zu\n",
                     scanFrom, classes.size(), trail.size(), stats_.branchNodes,
                     stats_.forcedSteps, stats_.lookaheads, sat_.members().size());

      size_t snap = sat_.snapshot();
      ++stats_.lookaheads;
      sat_.assumeCode(psi);
      sat_.run();
      if (!sat_.inconsistent()) {
        // Open: keep it asserted. Whether the sibling ever needs a visit is
        // decided at unwind time.
        if (++stats_.branchNodes > budget_) return Res::Budget;
        Split sp;
        sp.psi = sat_.decode(psi);
        sp.snap = snap;
        sp.scanFrom = scanFrom;
        trail.emplace_back(std::move(sp));
        continue;
      }

      // Positive polarity closed: its negation is forced.
      ProofNode posTree = sat_.derivationOfCode(absCode());
      Formula psiF = sat_.decode(psi);
      sat_.rollback(snap);
      ++stats_.lookaheads;
      sat_.assumeCode(sat_.negCode(psi));
      sat_.run();
      if (sat_.inconsistent()) {
        // Both polarities die: the branch closes at this pair.
        ProofNode negTree = sat_.derivationOfCode(absCode());
        sat_.rollback(snap);
        closeWith(std::move(negTree));
        graftInto(std::move(psiF), std::move(posTree));
        Res out = Res::Closed;
        if (unwind(out)) return out;
        continue;
      }
      ++stats_.forcedSteps;
      trail.emplace_back(Forced{std::move(psiF), std::move(posTree)});
    }
  }

  CompleteSet collectWitness() const {
    CompleteSet w;
    w.language = sat_.ruleSet().language;
    w.atoms = sat_.atoms();
    for (int c : sat_.universeClasses()) {
      bool inSet = sat_.codePresent(c);
      bool negIn = sat_.codePresent(sat_.negCode(c));
      if (inSet == negIn)
        throw std::logic_error("complete extension lost the one-per-pair invariant at " +
                               printFormula(sat_.decode(c)));
      if (inSet) w.formulas.push_back(sat_.decode(c));
    }
    return w;
  }

 private:
  int absCode() const {
    assert(sat_.inconsistent());
    return sat_.encode(*sat_.absurdity());
  }

  Saturation sat_;
  long budget_;
  SearchStats stats_;
  std::vector<int> order_;
  bool trace_ = std::getenv("SYLLOG_TRACE") != nullptr;
};

}  // namespace

IndirectResult decideIndirect(const std::vector<Formula>& premises, const Formula& goal,
                              const RuleSet& rules, long branchBudget) {
  if (!memberOf(goal, rules.language))
    throw std::invalid_argument("goal outside the fragment: " + printFormula(goal));

  IndirectResult res;

  // The indirect calculus extends the direct one, so try a plain derivation
  // first; it needs no discharge at all.
  if (auto direct = decideDirect(premises, goal, rules)) {
    res.outcome = IndirectResult::Outcome::Proved;
    res.proof = *direct;
    return res;
  }

  std::vector<Formula> all = premises;
  all.push_back(goal);
  Search search(rules, atomsOf(all), branchBudget);
  search.focusOn(all);
  Saturation& sat = search.saturation();
  for (const auto& f : premises) sat.addPremise(f);
  Formula negGoal = negation(goal);
  sat.addPremise(negGoal);
  sat.run();

  ProofNode tree;
  CompleteSet witness;
  switch (search.solve(&tree, &witness)) {
    case Search::Res::Closed: {
      res.outcome = IndirectResult::Outcome::Proved;
      res.proof = ProofNode::reductio(negGoal, std::move(tree));
      assert(res.proof.conclusion == canonicalize(goal));
      break;
    }
    case Search::Res::Witness:
      res.outcome = IndirectResult::Outcome::NotProved;
      res.witness = std::move(witness);
      break;
    case Search::Res::Budget:
      res.outcome = IndirectResult::Outcome::BudgetExceeded;
      break;
  }
  res.stats = search.stats();
  return res;
}

ExtendResult lindenbaumExtend(const std::vector<Formula>& premises, const RuleSet& rules,
                              long branchBudget) {
  ExtendResult res;
  Search search(rules, atomsOf(premises), branchBudget);
  search.focusOn(premises);
  Saturation& sat = search.saturation();
  for (const auto& f : premises) sat.addPremise(f);
  sat.run();

  ProofNode tree;
  CompleteSet witness;
  switch (search.solve(&tree, &witness)) {
    case Search::Res::Closed:
      res.outcome = ExtendResult::Outcome::Refuted;
      res.refutation = std::move(tree);
      break;
    case Search::Res::Witness:
      res.outcome = ExtendResult::Outcome::Consistent;
      res.set = std::move(witness);
      break;
    case Search::Res::Budget:
      res.outcome = ExtendResult::Outcome::BudgetExceeded;
      break;
  }
  res.stats = search.stats();
  return res;
}

BranchFreeCheck checkBranchFreeOnComplete(const CompleteSet& set) {
  BranchFreeCheck out;
  const RuleSet& rules = rulesFor(set.language);

  Saturation plain(rules, set.atoms);
  for (const auto& f : set.formulas) plain.addPremise(f);
  plain.run();
  out.refutedBySaturation = plain.inconsistent();

  ExtendResult search = lindenbaumExtend(set.formulas, rules);
  out.refutedBySearch = search.outcome == ExtendResult::Outcome::Refuted;
  out.branchNodes = search.stats.branchNodes;
  return out;
}

}  // namespace syllog
