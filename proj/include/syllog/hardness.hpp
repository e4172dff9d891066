// Stress families: the chain family separating direct derivability from
// entailment, and the clause-set encoder mapping 3SAT instances into the
// dagger fragments.
#pragma once

#include <array>
#include <iosfwd>
#include <vector>

#include "syllog/semantics.hpp"
#include "syllog/syntax.hpp"

namespace syllog {

// ---- the chain family ----
//
// Over atoms p1..pn: every pi meets something that is not the unique
// p(i+1); p1 and pn are each other's unique instances; n reflexive
// inclusions; and p1 excludes p(n-1). The goal forall(p1,pn) is entailed
// but stays underivable by forward rules once n outgrows their arity.

struct GammaInstance {
  int n = 0;
  std::vector<Formula> premises;  // canonical, 2n+2 distinct formulas
  Formula goal;                   // forall(p1,pn)
};

GammaInstance gammaFamily(int n);  // n >= 3

// The premises minus forall(ph, nall p(h+1)); 1 <= h <= n-2.
std::vector<Formula> gammaPremisesDropping(int n, int h);

// Counterexample structures for the dropped-premise set: all five satisfy
// it, yet each kills a band of candidate conclusions. The builder checks
// those facts and throws std::logic_error if any fails.
struct GammaWitnesses {
  Structure chain;          // pk = {ak}, pn = {a1}; satisfies the full family
  Structure prefix;         // only p1..ph inhabited
  Structure suffix;         // only p(h+1)..pn inhabited
  Structure prefixDoubled;  // two disjoint copies of prefix
  Structure suffixDoubled;  // two disjoint copies of suffix
};

GammaWitnesses gammaWitnesses(int n, int h);

// ---- 3SAT encoding ----

struct ThreeSatInstance {
  int variableCount = 0;
  // Exactly three signed 1-based variable indices per clause; repeats fine.
  std::vector<std::array<int, 3>> clauses;
};

// DIMACS CNF: "c" comments, one "p cnf <vars> <clauses>" header, then
// 0-terminated clauses. Clauses shorter than three literals are padded by
// repeating their last literal; longer ones are rejected (ParseError).
ThreeSatInstance parseDimacs(std::istream& in);
ThreeSatInstance parseDimacsText(const std::string& text);

// Exhaustive assignment check; guard against silly sizes (<= 24 vars).
bool truthTableSatisfiable(const ThreeSatInstance& ins);

// The instance as formulas, satisfiable iff the instance is. Letter i gets
// atoms x<i>_t / x<i>_f (empty extent = that truth value holds); clause j
// gets a chain s_<j>_1..4, p_<j>_1..3 forcing some slot's p empty; slot
// formulas tie empty p's to the slot literal's truth. The full-fragment
// form uses one wrap-subject formula per letter; the literal-subject form
// replaces it with a fresh-atom pair q_x<i>. A model exists within
// modelBound elements whenever one exists at all.
struct SatEncoding {
  std::vector<Formula> starDagger;
  std::vector<Formula> dagger;
  int modelBound = 0;
};

SatEncoding encode3Sat(const ThreeSatInstance& ins);

// The two-element building blocks the encoding's satisfying models are
// glued from; both verify themselves and throw std::logic_error on a
// mismatch.
//
// Clause block: K names the slots whose p-atom is empty (the true slots);
// requires non-empty K inside {1,2,3}.
Structure clauseGadgetModel(const std::vector<int>& K, int clauseIdx = 1);
// Letter block for x<i>: value true empties x<i>_t, false empties x<i>_f.
Structure letterGadgetModel(int letterIdx, bool value);

}  // namespace syllog
