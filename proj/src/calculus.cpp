#include "syllog/calculus.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace syllog {

Saturation::Saturation(const RuleSet& rules, std::vector<std::string> atomUniverse,
                       bool stopOnAbsurdity)
    : rules_(&rules), atoms_(std::move(atomUniverse)), stopOnAbsurdity_(stopOnAbsurdity) {
  std::sort(atoms_.begin(), atoms_.end());
  atoms_.erase(std::unique(atoms_.begin(), atoms_.end()), atoms_.end());
  k_ = static_cast<int>(atoms_.size());
  nTerm_ = 6 * k_;
  present_.assign(2 * static_cast<size_t>(nTerm_) * nTerm_, 0);
  rec_.assign(present_.size(), Rec{});
  injectAxioms();
}

// ---- codes ----

int Saturation::termCodeOf(const ETerm& t) const {
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), t.lit.atom);
  if (it == atoms_.end() || *it != t.lit.atom) return -1;
  int atom = static_cast<int>(it - atoms_.begin());
  return static_cast<int>(t.shape) * 2 * k_ + atom * 2 + (t.lit.positive ? 0 : 1);
}

ETerm Saturation::termOf(int code) const {
  int shape = code / (2 * k_);
  int rest = code % (2 * k_);
  return ETerm(static_cast<TermShape>(shape), Literal(atoms_[rest / 2], (rest & 1) == 0));
}

int Saturation::compTerm(int t) const {
  int shape = t / (2 * k_);
  if (shape == 0) return t ^ 1;
  return shape == 1 ? t + 2 * k_ : t - 2 * k_;
}

int Saturation::canonCode(int q, int s, int p) const {
  if (q == 1) {
    if (p < s) std::swap(s, p);
  } else {
    int s2 = compTerm(p);
    if (s2 < s) {
      p = compTerm(s);
      s = s2;
    }
  }
  return (q * nTerm_ + s) * nTerm_ + p;
}

int Saturation::encode(const Formula& f) const {
  int s = termCodeOf(f.subject);
  int p = termCodeOf(f.predicate);
  if (s < 0 || p < 0) return -1;
  return canonCode(f.quant == Quant::Some ? 1 : 0, s, p);
}

Formula Saturation::decode(int code) const {
  int p = code % nTerm_;
  int s = (code / nTerm_) % nTerm_;
  int q = code / (nTerm_ * nTerm_);
  return Formula(q ? Quant::Some : Quant::All, termOf(s), termOf(p));
}

bool Saturation::codePresent(int code) const { return present_[code] == 1; }

int Saturation::negCode(int code) const {
  int p = code % nTerm_;
  int s = (code / nTerm_) % nTerm_;
  int q = code / (nTerm_ * nTerm_);
  return canonCode(1 - q, s, compTerm(p));
}

bool Saturation::absurdCode(int code) const {
  int p = code % nTerm_;
  int s = (code / nTerm_) % nTerm_;
  int q = code / (nTerm_ * nTerm_);
  return q == 1 && p == compTerm(s);
}

// ---- schema matching ----

bool Saturation::fitsSort(int termCode, MetaSort s) const {
  int shape = termCode / (2 * k_);
  bool pos = (termCode & 1) == 0;
  switch (s) {
    case MetaSort::Atom: return shape == 0 && pos;
    case MetaSort::AnyLiteral: return shape == 0;
    case MetaSort::CTerm: return shape == 0 || pos;
    case MetaSort::ETermSort: return true;
  }
  return false;
}

bool Saturation::bindVar(std::array<int, 3>& val, int var, int value) const {
  if (val[var] == -1) {
    val[var] = value;
    return true;
  }
  return val[var] == value;
}

bool Saturation::matchTerm(const TermTpl& t, int code, std::array<int, 3>& val,
                           const RuleSchema& r) const {
  if (t.wrap) {
    int wantShape = t.compl_ ? 2 : 1;
    if (code / (2 * k_) != wantShape) return false;
    int lit = code % (2 * k_);
    if (!fitsSort(lit, r.sorts[t.var])) return false;
    return bindVar(val, t.var, lit);
  }
  int v = t.compl_ ? compTerm(code) : code;
  if (!fitsSort(v, r.sorts[t.var])) return false;
  return bindVar(val, t.var, v);
}

int Saturation::instantiateTerm(const TermTpl& t, const std::array<int, 3>& val) const {
  int v = val[t.var];
  assert(v >= 0);
  if (t.wrap) {
    assert(v < 2 * k_);
    return t.compl_ ? 4 * k_ + v : 2 * k_ + v;
  }
  return t.compl_ ? compTerm(v) : v;
}

int Saturation::instantiateFormula(const FormulaTpl& f, const std::array<int, 3>& val) const {
  return canonCode(f.quant == Quant::Some ? 1 : 0, instantiateTerm(f.subject, val),
                   instantiateTerm(f.predicate, val));
}

const std::vector<int>& Saturation::sortValues(MetaSort s) const {
  auto& cache = sortVals_[static_cast<int>(s)];
  if (cache.empty() && k_ > 0) {
    for (int t = 0; t < nTerm_; ++t)
      if (fitsSort(t, s)) cache.push_back(t);
  }
  return cache;
}

// ---- insertion ----

void Saturation::insertBase(int code, const Rec& rec) {
  if (present_[code] != 0) return;
  present_[code] = 1;
  rec_[code] = rec;
  members_.push_back(code);
  pending_.push_back(code);
  if (absurdity_ < 0 && absurdCode(code)) absurdity_ = code;
}

void Saturation::tryQueue(int code, const Rec& rec) {
  if (present_[code] != 0) return;
  present_[code] = 2;
  rec_[code] = rec;
  roundQueue_.push_back(code);
}

void Saturation::injectAxioms() {
  const auto& rules = rules_->rules;
  for (size_t si = 0; si < rules.size(); ++si) {
    if (!rules[si].antecedents.empty()) continue;
    const RuleSchema& r = rules[si];
    // At most one variable appears in a zero-antecedent consequent here.
    assert(r.sorts.size() == 1);
    for (int v : sortValues(r.sorts[0])) {
      std::array<int, 3> val{v, -1, -1};
      insertBase(instantiateFormula(r.consequent, val),
                 Rec{static_cast<int>(si), -1, -1});
    }
  }
}

void Saturation::addPremise(const Formula& f) {
  if (!memberOf(f, rules_->language))
    throw std::invalid_argument("formula outside the fragment " +
                                std::string(languageName(rules_->language)) + ": " +
                                printFormula(f));
  int code = encode(f);
  if (code < 0)
    throw std::invalid_argument("formula mentions an atom outside the universe: " +
                                printFormula(f));
  ++stats_.premises;
  insertBase(code, Rec{-1, -1, -1});
}

void Saturation::assumeCode(int code) { insertBase(code, Rec{-1, -1, -1}); }

void Saturation::setTarget(const Formula& goal) {
  target_ = encode(goal);
}

// ---- derivation ----

void Saturation::deriveConsequent(int schemaIdx, std::array<int, 3> val, int a0, int a1) {
  const RuleSchema& r = rules_->rules[schemaIdx];
  const FormulaTpl& cons = r.consequent;
  int freeVar = -1;
  for (int tv : {cons.subject.var, cons.predicate.var}) {
    if (val[tv] == -1) {
      assert(freeVar == -1 || freeVar == tv);
      freeVar = tv;
    }
  }
  Rec rec{schemaIdx, a0, a1};
  if (freeVar < 0) {
    tryQueue(instantiateFormula(cons, val), rec);
    return;
  }
  for (int v : sortValues(r.sorts[freeVar])) {
    val[freeVar] = v;
    tryQueue(instantiateFormula(cons, val), rec);
  }
}

void Saturation::matchInto(int fCode) {
  int p = fCode % nTerm_;
  int s = (fCode / nTerm_) % nTerm_;
  int q = fCode / (nTerm_ * nTerm_);
  int reps[2][3] = {{q, s, p}, {q, s, p}};
  int repCount = 1;
  if (q == 1) {
    if (s != p) {
      reps[1][1] = p;
      reps[1][2] = s;
      repCount = 2;
    }
  } else {
    int s2 = compTerm(p);
    if (s2 != s) {
      reps[1][1] = s2;
      reps[1][2] = compTerm(s);
      repCount = 2;
    }
  }

  const auto& rules = rules_->rules;
  for (size_t si = 0; si < rules.size(); ++si) {
    const RuleSchema& r = rules[si];
    int nA = static_cast<int>(r.antecedents.size());
    for (int ai = 0; ai < nA; ++ai) {
      const FormulaTpl& slot = r.antecedents[ai];
      for (int ri = 0; ri < repCount; ++ri) {
        if ((reps[ri][0] == 1) != (slot.quant == Quant::Some)) continue;
        std::array<int, 3> val{-1, -1, -1};
        if (!matchTerm(slot.subject, reps[ri][1], val, r)) continue;
        if (!matchTerm(slot.predicate, reps[ri][2], val, r)) continue;
        if (nA == 1) {
          deriveConsequent(static_cast<int>(si), val, fCode, -1);
          continue;
        }
        const FormulaTpl& other = r.antecedents[1 - ai];
        int free0 = val[other.subject.var] == -1 ? other.subject.var : -1;
        int free1 = val[other.predicate.var] == -1 ? other.predicate.var : -1;
        if (free1 == free0) free1 = -1;
        if (free0 < 0) std::swap(free0, free1);  // lone free var sits in free0
        auto tryOther = [&](std::array<int, 3> v) {
          int oc = instantiateFormula(other, v);
          if (present_[oc] != 1) return;
          int a0 = ai == 0 ? fCode : oc;
          int a1 = ai == 0 ? oc : fCode;
          deriveConsequent(static_cast<int>(si), v, a0, a1);
        };
        if (free0 < 0 && free1 < 0) {
          tryOther(val);
        } else if (free1 < 0) {
          for (int v0 : sortValues(r.sorts[free0])) {
            auto v = val;
            v[free0] = v0;
            tryOther(v);
          }
        } else {
          for (int v0 : sortValues(r.sorts[free0])) {
            for (int v1 : sortValues(r.sorts[free1])) {
              auto v = val;
              v[free0] = v0;
              v[free1] = v1;
              tryOther(v);
            }
          }
        }
      }
    }
  }
}

void Saturation::run() {
  // Pop existentials before universals within a round: the chain rules then
  // extend a fresh existential right away, so first-found derivation records
  // read premise-to-goal instead of detouring through universal composites.
  const int someBase = nTerm_ * nTerm_;
  auto frontierOrder = [someBase](int a, int b) {
    bool aUniv = a < someBase, bUniv = b < someBase;
    if (aUniv != bUniv) return bUniv;
    return a < b;
  };
  std::vector<int> frontier = std::move(pending_);
  pending_.clear();
  std::sort(frontier.begin(), frontier.end(), frontierOrder);
  while (!frontier.empty()) {
    ++stats_.rounds;
    roundQueue_.clear();
    for (int f : frontier) matchInto(f);
    std::sort(roundQueue_.begin(), roundQueue_.end());
    for (int c : roundQueue_) {
      assert(present_[c] == 2);
      present_[c] = 1;
      members_.push_back(c);
      ++stats_.derived;
      if (absurdity_ < 0 && absurdCode(c)) absurdity_ = c;
    }
    frontier = roundQueue_;
    std::sort(frontier.begin(), frontier.end(), frontierOrder);
    roundQueue_.clear();
    if (stopOnAbsurdity_ && absurdity_ >= 0) break;
    if (target_ >= 0 && present_[target_] == 1) break;
  }
}

void Saturation::rollback(size_t snap) {
  assert(pending_.empty() && roundQueue_.empty() && "rollback during a run");
  while (members_.size() > snap) {
    int c = members_.back();
    members_.pop_back();
    present_[c] = 0;
    rec_[c] = Rec{};
    if (absurdity_ == c) absurdity_ = -1;
  }
}

// ---- queries ----

bool Saturation::contains(const Formula& f) const {
  int code = encode(f);
  return code >= 0 && present_[code] == 1;
}

std::optional<Formula> Saturation::absurdity() const {
  if (absurdity_ < 0) return std::nullopt;
  return decode(absurdity_);
}

std::vector<Formula> Saturation::members() const {
  std::vector<int> codes = members_;
  std::sort(codes.begin(), codes.end());
  std::vector<Formula> out;
  out.reserve(codes.size());
  for (int c : codes) out.push_back(decode(c));
  return out;
}

ProofNode Saturation::derivationOfCode(int code) const {
  assert(present_[code] == 1);
  const Rec& r = rec_[code];
  if (r.rule == -1) return ProofNode::hypothesis(decode(code));
  assert(r.rule >= 0);
  std::vector<ProofNode> kids;
  if (r.a0 >= 0) kids.push_back(derivationOfCode(r.a0));
  if (r.a1 >= 0) kids.push_back(derivationOfCode(r.a1));
  return ProofNode::ruleApp(rules_->rules[r.rule].name, decode(code), std::move(kids));
}

ProofNode Saturation::derivationOf(const Formula& f) const {
  int code = encode(f);
  if (code < 0 || present_[code] != 1)
    throw std::logic_error("no derivation recorded for " + printFormula(f));
  return derivationOfCode(code);
}

const std::vector<int>& Saturation::universeClasses() const {
  if (universe_.empty() && k_ > 0) {
    for (int q = 0; q < 2; ++q) {
      for (int s = 0; s < nTerm_; ++s) {
        for (int p = 0; p < nTerm_; ++p) {
          int code = (q * nTerm_ + s) * nTerm_ + p;
          if (canonCode(q, s, p) != code) continue;
          if (!memberOf(decode(code), rules_->language)) continue;
          universe_.push_back(code);
        }
      }
    }
  }
  return universe_;
}

// ---- free functions ----

std::vector<Formula> saturate(const std::vector<Formula>& premises, const RuleSet& rules) {
  Saturation s(rules, atomsOf(premises));
  for (const auto& f : premises) s.addPremise(f);
  s.run();
  return s.members();
}

std::optional<ProofNode> decideDirect(const std::vector<Formula>& premises,
                                      const Formula& goal, const RuleSet& rules) {
  std::vector<Formula> all = premises;
  all.push_back(goal);
  Saturation s(rules, atomsOf(all));
  if (!memberOf(goal, rules.language))
    throw std::invalid_argument("goal outside the fragment: " + printFormula(goal));
  for (const auto& f : premises) s.addPremise(f);
  s.setTarget(goal);
  s.run();
  if (!s.contains(goal)) return std::nullopt;
  return s.derivationOf(goal);
}

}  // namespace syllog
