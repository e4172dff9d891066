// Inference rule schemata for the three calculi, plus expansion of the
// schematic metavariables into ground term shapes and an exhaustive
// small-structure validity check for every expanded instance.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "syllog/semantics.hpp"
#include "syllog/syntax.hpp"

namespace syllog {

// Sorts a schema variable can range over. Atom variables stand for unnegated
// atoms; the others stand for whole terms of the stated class.
enum class MetaSort { Atom, AnyLiteral, CTerm, ETermSort };

// One side of a schematic sentence. With wrap set the variable (which must
// be atom- or literal-sorted) appears under "all ..."; compl complements the
// whole term after wrapping.
struct TermTpl {
  int var = 0;
  bool wrap = false;
  bool compl_ = false;

  static TermTpl direct(int v) { return {v, false, false}; }
  static TermTpl directC(int v) { return {v, false, true}; }
  static TermTpl allOf(int v) { return {v, true, false}; }
  static TermTpl nallOf(int v) { return {v, true, true}; }
};

struct FormulaTpl {
  Quant quant;
  TermTpl subject;
  TermTpl predicate;
};

struct RuleSchema {
  std::string name;
  std::vector<MetaSort> sorts;  // indexed by variable number
  std::vector<FormulaTpl> antecedents;
  FormulaTpl consequent;
};

struct RuleSet {
  std::string name;
  Language language;  // the fragment the rules speak, and stay inside
  std::vector<RuleSchema> rules;
};

const RuleSet& rulesH();            // 13 schemata over atoms and c-terms
const RuleSet& rulesHDagger();      // 12 schemata over literals and e-terms
const RuleSet& rulesHStarDagger();  // 10 schemata over e-terms

const RuleSet& rulesFor(Language l);  // fragment -> calculus that covers it

// How many ground term shapes a variable of the sort ranges over
// (atom 1, literal 2, c-term 4, e-term 6).
int shapeCount(MetaSort s);

// Number of ground-shape instances of one schema: the product of the shape
// counts of its distinct variables.
long expandedCount(const RuleSchema& r);

// A schema with every variable lowered to a concrete shape over a fresh
// atom variable; all remaining variables range over atoms only.
struct GroundTerm {
  TermShape shape;
  int atomVar;
  bool positive;
};
struct GroundFormula {
  Quant quant;
  GroundTerm subject;
  GroundTerm predicate;
};
struct GroundRule {
  std::string origin;  // schema name
  int variantIndex;    // position within the schema's expansion
  int varCount;
  std::vector<GroundFormula> antecedents;
  GroundFormula consequent;
};

std::vector<GroundRule> expandRuleSet(const RuleSet& rs);

// Instantiates a ground rule's formulas with concrete atom names.
Formula instantiate(const GroundFormula& g, const std::vector<std::string>& atomForVar);

// Checks every expanded instance of every rule against every structure over
// `atomCount` atoms with domains of size 1..maxSize, under every assignment
// of those atoms to the rule variables. A failure is reported with the
// witnessing structure and instance.
struct RuleFailure {
  std::string origin;
  int variantIndex = 0;
  std::vector<Formula> antecedents;
  Formula consequent;
  Structure counterexample;
};
struct RuleValidityReport {
  bool allValid = true;
  long instancesChecked = 0;
  std::vector<RuleFailure> failures;
};

RuleValidityReport checkRuleValidity(const RuleSet& rs, int atomCount = 2,
                                     int maxSize = 3, int jobs = 1);

// One-line-per-schema rendering, e.g. for a --dump flag.
std::string dumpRuleSet(const RuleSet& rs);

}  // namespace syllog
