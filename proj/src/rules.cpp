#include "syllog/rules.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace syllog {

namespace {

using T = TermTpl;

FormulaTpl fa(TermTpl s, TermTpl p) { return {Quant::All, s, p}; }
FormulaTpl fe(TermTpl s, TermTpl p) { return {Quant::Some, s, p}; }

RuleSchema mk(std::string name, std::vector<MetaSort> sorts,
              std::vector<FormulaTpl> antes, FormulaTpl cons) {
  return {std::move(name), std::move(sorts), std::move(antes), cons};
}

constexpr auto At = MetaSort::Atom;
constexpr auto Li = MetaSort::AnyLiteral;
constexpr auto Ct = MetaSort::CTerm;
constexpr auto Et = MetaSort::ETermSort;

RuleSet buildH() {
  RuleSet rs{"sH", Language::H, {}};
  auto& r = rs.rules;
  // Variables: 0,1 atoms; last one a c-term where present.
  r.push_back(mk("I", {At, Ct}, {fe(T::direct(0), T::direct(1))}, fe(T::direct(0), T::direct(0))));
  r.push_back(mk("T", {At}, {}, fa(T::direct(0), T::direct(0))));
  r.push_back(mk("B", {At, At, Ct}, {fa(T::direct(0), T::direct(1)), fa(T::direct(1), T::direct(2))},
                 fa(T::direct(0), T::direct(2))));
  r.push_back(mk("D1", {At, At, Ct}, {fe(T::direct(0), T::direct(1)), fa(T::direct(1), T::direct(2))},
                 fe(T::direct(0), T::direct(2))));
  r.push_back(mk("D2", {At, At, Ct}, {fe(T::direct(0), T::direct(2)), fa(T::direct(0), T::direct(1))},
                 fe(T::direct(1), T::direct(2))));
  r.push_back(mk("D3", {At, At, Ct}, {fe(T::direct(0), T::direct(2)), fa(T::direct(1), T::directC(2))},
                 fe(T::direct(0), T::directC(1))));
  r.push_back(mk("H1", {At, At}, {fe(T::direct(0), T::allOf(1))}, fa(T::direct(1), T::direct(0))));
  r.push_back(mk("H2", {At, At}, {fe(T::direct(0), T::allOf(1))}, fa(T::direct(1), T::allOf(1))));
  r.push_back(mk("H3", {At, At}, {fe(T::direct(0), T::nallOf(1))}, fe(T::direct(1), T::nallOf(0))));
  r.push_back(mk("HH1", {At, At, Ct}, {fe(T::direct(1), T::direct(2)), fe(T::direct(0), T::allOf(1))},
                 fa(T::direct(1), T::direct(2))));
  r.push_back(mk("HH2", {At, At, Ct}, {fe(T::direct(0), T::direct(2)), fa(T::direct(0), T::allOf(1))},
                 fa(T::direct(1), T::direct(2))));
  r.push_back(mk("HH3", {At, At, Ct}, {fa(T::direct(0), T::direct(2)), fe(T::direct(0), T::allOf(1))},
                 fa(T::direct(1), T::direct(2))));
  r.push_back(mk("HH4", {At, At}, {fa(T::direct(0), T::allOf(1)), fe(T::direct(1), T::direct(1))},
                 fa(T::direct(0), T::direct(1))));
  return rs;
}

RuleSet buildHDagger() {
  RuleSet rs{"sHdagger", Language::HDagger, {}};
  auto& r = rs.rules;
  r.push_back(mk("I", {Li, Et}, {fe(T::direct(0), T::direct(1))}, fe(T::direct(0), T::direct(0))));
  r.push_back(mk("T", {Li}, {}, fa(T::direct(0), T::direct(0))));
  r.push_back(mk("A", {Et, Li, Li}, {fa(T::direct(0), T::direct(1)), fa(T::direct(0), T::directC(1))},
                 fa(T::direct(0), T::direct(2))));
  r.push_back(mk("N", {Li}, {fa(T::direct(0), T::directC(0))}, fe(T::directC(0), T::directC(0))));
  r.push_back(mk("B1", {Li, Li, Et}, {fa(T::direct(0), T::direct(1)), fa(T::direct(1), T::direct(2))},
                 fa(T::direct(0), T::direct(2))));
  r.push_back(mk("B2", {Li, Li, Et}, {fa(T::direct(0), T::direct(2)), fa(T::direct(2), T::direct(1))},
                 fa(T::direct(0), T::direct(1))));
  r.push_back(mk("D1", {Li, Li, Et}, {fe(T::direct(0), T::direct(1)), fa(T::direct(1), T::direct(2))},
                 fe(T::direct(0), T::direct(2))));
  r.push_back(mk("D2", {Li, Li, Et}, {fe(T::direct(0), T::direct(2)), fa(T::direct(2), T::direct(1))},
                 fe(T::direct(0), T::direct(1))));
  r.push_back(mk("HH1", {Li, Li, Et}, {fe(T::direct(0), T::direct(2)), fe(T::direct(1), T::allOf(0))},
                 fa(T::direct(0), T::direct(2))));
  r.push_back(mk("H2", {Li, Li}, {fe(T::direct(1), T::allOf(0))}, fa(T::direct(0), T::allOf(0))));
  r.push_back(mk("H3", {Li, Li}, {fe(T::direct(0), T::nallOf(1))}, fe(T::direct(1), T::nallOf(0))));
  r.push_back(mk("H4", {Li}, {fe(T::direct(0), T::direct(0))}, fa(T::directC(0), T::nallOf(0))));
  return rs;
}

RuleSet buildHStarDagger() {
  RuleSet rs{"sHstardagger", Language::HStarDagger, {}};
  auto& r = rs.rules;
  r.push_back(mk("I", {Et, Et}, {fe(T::direct(0), T::direct(1))}, fe(T::direct(0), T::direct(0))));
  r.push_back(mk("T", {Et}, {}, fa(T::direct(0), T::direct(0))));
  r.push_back(mk("A", {Et, Et}, {fa(T::direct(0), T::directC(0))}, fa(T::direct(1), T::directC(0))));
  r.push_back(mk("N", {Et}, {fa(T::direct(0), T::directC(0))}, fe(T::directC(0), T::directC(0))));
  r.push_back(mk("B", {Et, Et, Et}, {fa(T::direct(0), T::direct(1)), fa(T::direct(1), T::direct(2))},
                 fa(T::direct(0), T::direct(2))));
  r.push_back(mk("D", {Et, Et, Et}, {fe(T::direct(0), T::direct(1)), fa(T::direct(1), T::direct(2))},
                 fe(T::direct(0), T::direct(2))));
  r.push_back(mk("HH1", {Li, Et, Li}, {fe(T::direct(0), T::direct(1)), fe(T::direct(2), T::allOf(0))},
                 fa(T::direct(0), T::direct(1))));
  r.push_back(mk("H2", {Li, Et}, {fe(T::direct(1), T::allOf(0))}, fa(T::direct(0), T::allOf(0))));
  r.push_back(mk("H3", {Li, Li}, {fe(T::direct(0), T::nallOf(1))}, fe(T::direct(1), T::nallOf(0))));
  r.push_back(mk("H4", {Li}, {fe(T::direct(0), T::direct(0))}, fa(T::directC(0), T::nallOf(0))));
  return rs;
}

}  // namespace

const RuleSet& rulesH() {
  static const RuleSet rs = buildH();
  return rs;
}
const RuleSet& rulesHDagger() {
  static const RuleSet rs = buildHDagger();
  return rs;
}
const RuleSet& rulesHStarDagger() {
  static const RuleSet rs = buildHStarDagger();
  return rs;
}

const RuleSet& rulesFor(Language l) {
  switch (l) {
    case Language::S:
    case Language::H:
      return rulesH();
    case Language::SDagger:
    case Language::HDagger:
      return rulesHDagger();
    case Language::HStarDagger:
      return rulesHStarDagger();
  }
  throw std::invalid_argument("unknown language");
}

int shapeCount(MetaSort s) {
  switch (s) {
    case MetaSort::Atom: return 1;
    case MetaSort::AnyLiteral: return 2;
    case MetaSort::CTerm: return 4;
    case MetaSort::ETermSort: return 6;
  }
  return 0;
}

long expandedCount(const RuleSchema& r) {
  long n = 1;
  for (MetaSort s : r.sorts) n *= shapeCount(s);
  return n;
}

namespace {

struct Shape {
  TermShape shape;
  bool positive;
};

std::vector<Shape> shapesFor(MetaSort s) {
  switch (s) {
    case MetaSort::Atom:
      return {{TermShape::Lit, true}};
    case MetaSort::AnyLiteral:
      return {{TermShape::Lit, true}, {TermShape::Lit, false}};
    case MetaSort::CTerm:
      return {{TermShape::Lit, true}, {TermShape::Lit, false},
              {TermShape::AllOf, true}, {TermShape::NotAllOf, true}};
    case MetaSort::ETermSort:
      return {{TermShape::Lit, true}, {TermShape::Lit, false},
              {TermShape::AllOf, true}, {TermShape::AllOf, false},
              {TermShape::NotAllOf, true}, {TermShape::NotAllOf, false}};
  }
  return {};
}

GroundTerm lower(const TermTpl& t, const std::vector<Shape>& assigned) {
  Shape s = assigned[t.var];
  GroundTerm g{s.shape, t.var, s.positive};
  if (t.wrap) {
    assert(s.shape == TermShape::Lit && "only literals sit under a wrap");
    g.shape = TermShape::AllOf;
  }
  if (t.compl_) {
    switch (g.shape) {
      case TermShape::Lit: g.positive = !g.positive; break;
      case TermShape::AllOf: g.shape = TermShape::NotAllOf; break;
      case TermShape::NotAllOf: g.shape = TermShape::AllOf; break;
    }
  }
  return g;
}

}  // namespace

std::vector<GroundRule> expandRuleSet(const RuleSet& rs) {
  std::vector<GroundRule> out;
  for (const auto& rule : rs.rules) {
    int nv = static_cast<int>(rule.sorts.size());
    std::vector<std::vector<Shape>> options;
    for (MetaSort s : rule.sorts) options.push_back(shapesFor(s));
    std::vector<int> pick(nv, 0);
    int variant = 0;
    for (;;) {
      std::vector<Shape> assigned(nv);
      for (int i = 0; i < nv; ++i) assigned[i] = options[i][pick[i]];
      GroundRule g;
      g.origin = rule.name;
      g.variantIndex = variant++;
      g.varCount = nv;
      for (const auto& a : rule.antecedents)
        g.antecedents.push_back({a.quant, lower(a.subject, assigned), lower(a.predicate, assigned)});
      g.consequent = {rule.consequent.quant, lower(rule.consequent.subject, assigned),
                      lower(rule.consequent.predicate, assigned)};
      out.push_back(std::move(g));
      int i = nv - 1;
      while (i >= 0 && ++pick[i] == static_cast<int>(options[i].size())) pick[i--] = 0;
      if (i < 0) break;
    }
    assert(variant == expandedCount(rule));
  }
  return out;
}

Formula instantiate(const GroundFormula& g, const std::vector<std::string>& atomForVar) {
  auto term = [&](const GroundTerm& t) {
    return ETerm(t.shape, Literal(atomForVar[t.atomVar], t.positive));
  };
  return Formula(g.quant, term(g.subject), term(g.predicate));
}

namespace {

std::vector<Structure> allStructures(const std::vector<std::string>& atoms, int maxSize) {
  std::vector<Structure> out;
  for (int n = 1; n <= maxSize; ++n) {
    int k = static_cast<int>(atoms.size());
    std::uint64_t combos = 1;
    for (int i = 0; i < k; ++i) combos *= (1ull << n);
    for (std::uint64_t c = 0; c < combos; ++c) {
      Structure m;
      m.size = n;
      std::uint64_t rest = c;
      for (int i = 0; i < k; ++i) {
        m.setExtentMask(atoms[i], rest & ((1ull << n) - 1));
        rest >>= n;
      }
      out.push_back(std::move(m));
    }
  }
  return out;
}

}  // namespace

RuleValidityReport checkRuleValidity(const RuleSet& rs, int atomCount, int maxSize, int jobs) {
  std::vector<std::string> atoms;
  for (int i = 0; i < atomCount; ++i) atoms.push_back("a" + std::to_string(i));
  const std::vector<Structure> structures = allStructures(atoms, maxSize);
  const std::vector<GroundRule> ground = expandRuleSet(rs);

  std::vector<RuleFailure> failures(ground.size());
  std::vector<char> failed(ground.size(), 0);
  long checked = 0;

#ifdef _OPENMP
#pragma omp parallel for num_threads(std::max(1, jobs)) schedule(dynamic, 8) reduction(+ : checked)
#endif
  for (size_t gi = 0; gi < ground.size(); ++gi) {
    const GroundRule& g = ground[gi];
    std::vector<int> assign(g.varCount, 0);
    for (;;) {
      std::vector<std::string> names(g.varCount);
      for (int i = 0; i < g.varCount; ++i) names[i] = atoms[assign[i]];
      std::vector<Formula> antes;
      for (const auto& a : g.antecedents) antes.push_back(instantiate(a, names));
      Formula cons = instantiate(g.consequent, names);
      ++checked;
      for (const auto& m : structures) {
        if (!satisfiesAll(m, antes)) continue;
        if (satisfies(m, cons)) continue;
        if (!failed[gi]) {
          failed[gi] = 1;
          failures[gi] = {g.origin, g.variantIndex, antes, cons, m};
        }
        break;
      }
      if (failed[gi]) break;
      int i = g.varCount - 1;
      while (i >= 0 && ++assign[i] == atomCount) assign[i--] = 0;
      if (i < 0) break;
    }
  }

  RuleValidityReport report;
  report.instancesChecked = checked;
  for (size_t gi = 0; gi < ground.size(); ++gi) {
    if (failed[gi]) {
      report.allValid = false;
      report.failures.push_back(failures[gi]);
    }
  }
  return report;
}

namespace {

std::string varName(const RuleSchema& r, int v) {
  static const char* atomNames[] = {"p", "q", "o", "r"};
  static const char* litNames[] = {"l", "m", "k"};
  static const char* cNames[] = {"c", "d"};
  static const char* eNames[] = {"e", "f", "g"};
  // Count earlier variables of the same sort class to pick the letter.
  int same = 0;
  for (int i = 0; i < v; ++i)
    if (r.sorts[i] == r.sorts[v]) ++same;
  switch (r.sorts[v]) {
    case MetaSort::Atom: return same < 4 ? atomNames[same] : "p" + std::to_string(same);
    case MetaSort::AnyLiteral: return same < 3 ? litNames[same] : "l" + std::to_string(same);
    case MetaSort::CTerm: return same < 2 ? cNames[same] : "c" + std::to_string(same);
    case MetaSort::ETermSort: return same < 3 ? eNames[same] : "e" + std::to_string(same);
  }
  return "?";
}

std::string renderTpl(const RuleSchema& r, const TermTpl& t) {
  std::string v = varName(r, t.var);
  if (t.wrap) return (t.compl_ ? "nall " : "all ") + v;
  return t.compl_ ? "~" + v : v;
}

std::string renderFormulaTpl(const RuleSchema& r, const FormulaTpl& f) {
  return std::string(f.quant == Quant::All ? "forall" : "exists") + "(" +
         renderTpl(r, f.subject) + ", " + renderTpl(r, f.predicate) + ")";
}

const char* sortLabel(MetaSort s) {
  switch (s) {
    case MetaSort::Atom: return "atom";
    case MetaSort::AnyLiteral: return "literal";
    case MetaSort::CTerm: return "c-term";
    case MetaSort::ETermSort: return "e-term";
  }
  return "?";
}

}  // namespace

std::string dumpRuleSet(const RuleSet& rs) {
  std::ostringstream out;
  out << "# rule set " << rs.name << " (" << rs.rules.size() << " schemata)\n";
  for (const auto& r : rs.rules) {
    out << "RULE " << r.name << ":";
    for (size_t i = 0; i < r.antecedents.size(); ++i)
      out << (i ? " ; " : " ") << renderFormulaTpl(r, r.antecedents[i]);
    out << " => " << renderFormulaTpl(r, r.consequent) << "   [";
    for (size_t v = 0; v < r.sorts.size(); ++v)
      out << (v ? ", " : "") << varName(r, static_cast<int>(v)) << ": "
          << sortLabel(r.sorts[v]);
    out << "]\n";
  }
  return out.str();
}

}  // namespace syllog
