#include "syllog/proofcheck.hpp"

#include <map>
#include <optional>
#include <set>

namespace syllog {

namespace {

using Binding = std::map<int, ETerm>;

bool sortAdmits(MetaSort s, const ETerm& t) {
  switch (s) {
    case MetaSort::Atom: return t.isLiteral() && t.lit.positive;
    case MetaSort::AnyLiteral: return t.isLiteral();
    case MetaSort::CTerm: return t.isCTerm();
    case MetaSort::ETermSort: return true;
  }
  return false;
}

bool bindTerm(const RuleSchema& r, const TermTpl& tpl, const ETerm& concrete, Binding& b) {
  ETerm value;
  if (tpl.wrap) {
    TermShape want = tpl.compl_ ? TermShape::NotAllOf : TermShape::AllOf;
    if (concrete.shape != want) return false;
    value = ETerm::mkLit(concrete.lit);
  } else {
    value = tpl.compl_ ? concrete.complement() : concrete;
  }
  if (!sortAdmits(r.sorts[tpl.var], value)) return false;
  auto [it, inserted] = b.emplace(tpl.var, value);
  return inserted || it->second == value;
}

// Matches one concrete formula against a schema formula, trying both
// spellings of the concrete side.
bool matchFormula(const RuleSchema& r, const FormulaTpl& tpl, const Formula& concrete,
                  Binding& b) {
  auto [first, second] = representatives(concrete);
  for (const Formula* rep : {&first, &second}) {
    if (rep->quant != tpl.quant) continue;
    Binding attempt = b;
    if (bindTerm(r, tpl.subject, rep->subject, attempt) &&
        bindTerm(r, tpl.predicate, rep->predicate, attempt)) {
      b = std::move(attempt);
      return true;
    }
    if (rep == &first && second == first) break;
  }
  return false;
}

bool matchInstance(const RuleSchema& r, const std::vector<Formula>& antecedents,
                   const Formula& conclusion, size_t next, Binding b) {
  if (next < antecedents.size()) {
    // Reuse matchFormula's two-spelling loop by branching here per spelling:
    // matchFormula already tries both, but a greedy choice can block a later
    // antecedent, so enumerate explicitly.
    auto [first, second] = representatives(antecedents[next]);
    std::vector<Formula> reps{first};
    if (!(second == first)) reps.push_back(second);
    for (const auto& rep : reps) {
      if (rep.quant != r.antecedents[next].quant) continue;
      Binding attempt = b;
      if (bindTerm(r, r.antecedents[next].subject, rep.subject, attempt) &&
          bindTerm(r, r.antecedents[next].predicate, rep.predicate, attempt) &&
          matchInstance(r, antecedents, conclusion, next + 1, std::move(attempt)))
        return true;
    }
    return false;
  }
  Binding final = std::move(b);
  return matchFormula(r, r.consequent, conclusion, final);
}

struct Checker {
  const RuleSet& rules;
  std::multiset<Formula> scope;  // premises plus discharged assumptions
  CheckResult result;

  bool fail(const std::string& msg, const Formula& at) {
    if (result.ok) {
      result.ok = false;
      result.error = msg + " at " + printFormula(at);
    }
    return false;
  }

  bool walk(const ProofNode& n) {
    switch (n.kind) {
      case ProofNode::Kind::Hypothesis: {
        if (scope.count(canonicalize(n.conclusion))) return true;
        return fail("hypothesis not among the premises or assumptions in scope",
                    n.conclusion);
      }
      case ProofNode::Kind::Rule: {
        for (const auto& c : n.children)
          if (!walk(c)) return false;
        const RuleSchema* schema = nullptr;
        for (const auto& r : rules.rules)
          if (r.name == n.rule) schema = &r;
        if (!schema) return fail("unknown rule '" + n.rule + "'", n.conclusion);
        if (schema->antecedents.size() != n.children.size())
          return fail("rule '" + n.rule + "' applied to the wrong number of children",
                      n.conclusion);
        std::vector<Formula> antes;
        for (const auto& c : n.children) antes.push_back(c.conclusion);
        if (!matchInstance(*schema, antes, n.conclusion, 0, {}))
          return fail("conclusion is not an instance of rule '" + n.rule + "'",
                      n.conclusion);
        return true;
      }
      case ProofNode::Kind::Reductio: {
        if (n.children.size() != 1)
          return fail("reductio must have exactly one child", n.conclusion);
        if (!isAbsurdity(canonicalize(n.children[0].conclusion)))
          return fail("reductio child does not conclude an absurdity",
                      n.children[0].conclusion);
        if (!(canonicalize(n.conclusion) == negation(n.discharged)))
          return fail("reductio conclusion is not the negation of its assumption",
                      n.conclusion);
        Formula assumed = canonicalize(n.discharged);
        scope.insert(assumed);
        bool ok = walk(n.children[0]);
        scope.erase(scope.find(assumed));
        return ok;
      }
    }
    return fail("malformed node", n.conclusion);
  }
};

}  // namespace

CheckResult checkProof(const ProofNode& proof, const std::vector<Formula>& premises,
                       const RuleSet& rules) {
  Checker ck{rules, {}, {}};
  for (const auto& f : premises) ck.scope.insert(canonicalize(f));
  ck.walk(proof);
  return ck.result;
}

}  // namespace syllog
