#include "syllog/hardness.hpp"

#include <algorithm>
#include <cassert>
#include <cstdlib>
#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace syllog {

namespace {

ETerm lit(const std::string& a, bool pos = true) { return ETerm::mkLit(Literal(a, pos)); }
ETerm allOf(const std::string& a) { return ETerm::mkAll(Literal(a, true)); }
ETerm nallOf(const std::string& a) { return ETerm::mkNall(Literal(a, true)); }

std::string atomP(int i) { return "p" + std::to_string(i); }

}  // namespace

GammaInstance gammaFamily(int n) {
  if (n < 3) throw std::invalid_argument("chain family needs n >= 3");
  GammaInstance g;
  g.n = n;
  auto add = [&](const Formula& f) { g.premises.push_back(canonicalize(f)); };
  for (int i = 1; i < n; ++i) add(Formula::mkAll(lit(atomP(i)), nallOf(atomP(i + 1))));
  add(Formula::mkAll(lit(atomP(1)), allOf(atomP(n))));
  add(Formula::mkAll(lit(atomP(n)), allOf(atomP(1))));
  for (int i = 1; i <= n; ++i) add(Formula::mkAll(lit(atomP(i)), lit(atomP(i))));
  add(Formula::mkAll(lit(atomP(1)), lit(atomP(n - 1), false)));
  g.goal = canonicalize(Formula::mkAll(lit(atomP(1)), lit(atomP(n))));
  assert(static_cast<int>(g.premises.size()) == 2 * n + 2);
  return g;
}

std::vector<Formula> gammaPremisesDropping(int n, int h) {
  if (h < 1 || h > n - 2) throw std::invalid_argument("drop index must lie in 1..n-2");
  GammaInstance g = gammaFamily(n);
  Formula dropped = canonicalize(Formula::mkAll(lit(atomP(h)), nallOf(atomP(h + 1))));
  std::erase(g.premises, dropped);
  assert(static_cast<int>(g.premises.size()) == 2 * n + 1);
  return g.premises;
}

namespace {

Structure doubledCopy(const Structure& s) {
  Structure d;
  d.size = 2 * s.size;
  for (const auto& [atom, ext] : s.extents) {
    std::vector<bool> v(d.size, false);
    for (int i = 0; i < s.size; ++i) {
      v[i] = ext[i];
      v[s.size + i] = ext[i];
    }
    d.setExtent(atom, std::move(v));
  }
  return d;
}

void singleton(Structure& s, const std::string& atom, int elem) {
  std::vector<bool> v(s.size, false);
  v[elem] = true;
  s.setExtent(atom, std::move(v));
}

}  // namespace

GammaWitnesses gammaWitnesses(int n, int h) {
  if (n < 3) throw std::invalid_argument("chain family needs n >= 3");
  if (h < 1 || h > n - 2) throw std::invalid_argument("drop index must lie in 1..n-2");
  GammaWitnesses w;

  w.chain.size = n - 1;
  for (int k = 1; k < n; ++k) singleton(w.chain, atomP(k), k - 1);
  singleton(w.chain, atomP(n), 0);

  w.prefix.size = h;
  for (int k = 1; k <= h; ++k) singleton(w.prefix, atomP(k), k - 1);

  w.suffix.size = n - h;
  for (int k = h + 1; k <= n; ++k) singleton(w.suffix, atomP(k), k - h - 1);

  w.prefixDoubled = doubledCopy(w.prefix);
  w.suffixDoubled = doubledCopy(w.suffix);

  // The facts these structures exist to witness.
  const std::vector<Formula> dropped = gammaPremisesDropping(n, h);
  for (const Structure* s :
       {&w.chain, &w.prefix, &w.suffix, &w.prefixDoubled, &w.suffixDoubled})
    if (!satisfiesAll(*s, dropped))
      throw std::logic_error("witness fails the dropped-premise set");
  GammaInstance full = gammaFamily(n);
  if (!satisfiesAll(w.chain, full.premises) || !satisfies(w.chain, full.goal))
    throw std::logic_error("chain witness fails the full family");
  if (satisfies(w.prefix, Formula::mkAll(lit(atomP(1)), lit(atomP(n)))))
    throw std::logic_error("prefix witness fails to refute the goal direction");
  if (satisfies(w.suffix, Formula::mkAll(lit(atomP(n)), lit(atomP(1)))))
    throw std::logic_error("suffix witness fails to refute the converse direction");
  for (int i = 1; i <= h; ++i)
    if (satisfies(w.prefixDoubled, Formula::mkAll(lit(atomP(i)), allOf(atomP(i)))))
      throw std::logic_error("doubled prefix fails to refute a uniqueness formula");
  for (int i = h + 1; i <= n; ++i)
    if (satisfies(w.suffixDoubled, Formula::mkAll(lit(atomP(i)), allOf(atomP(i)))))
      throw std::logic_error("doubled suffix fails to refute a uniqueness formula");
  return w;
}

// ---- 3SAT ----

namespace {

void validateInstance(const ThreeSatInstance& ins) {
  for (const auto& cl : ins.clauses)
    for (int l : cl)
      if (l == 0 || std::abs(l) > ins.variableCount)
        throw std::invalid_argument("clause literal out of range");
}

std::string xt(int i) { return "x" + std::to_string(i) + "_t"; }
std::string xf(int i) { return "x" + std::to_string(i) + "_f"; }
std::string qx(int i) { return "q_x" + std::to_string(i); }
std::string sAtom(int j, int k) {
  return "s_" + std::to_string(j) + "_" + std::to_string(k);
}
std::string pAtom(int j, int k) {
  return "p_" + std::to_string(j) + "_" + std::to_string(k);
}

// Letter block: an empty x_t extent reads "the letter is true", an empty
// x_f extent "false"; the block forces exactly one of the two readings.
std::vector<Formula> letterFormulasStar(int i) {
  return {canonicalize(Formula::mkAll(allOf(xt(i)), nallOf(xf(i)))),
          canonicalize(Formula::mkAll(lit(xt(i)), allOf(xf(i)))),
          canonicalize(Formula::mkAll(lit(xt(i)), lit(xf(i), false)))};
}

// Literal-subject replacement for the wrap-subject pivot.
std::vector<Formula> letterFormulasDagger(int i) {
  return {canonicalize(Formula::mkAll(lit(qx(i)), nallOf(xf(i)))),
          canonicalize(Formula::mkAll(lit(qx(i), false), nallOf(xt(i)))),
          canonicalize(Formula::mkAll(lit(xt(i)), allOf(xf(i)))),
          canonicalize(Formula::mkAll(lit(xt(i)), lit(xf(i), false)))};
}

// Clause block: a chain forcing at least one slot's p-atom empty.
std::vector<Formula> clauseFormulas(int j) {
  std::vector<Formula> v;
  for (int k = 1; k <= 3; ++k) {
    v.push_back(canonicalize(Formula::mkAll(lit(sAtom(j, k)), allOf(pAtom(j, k)))));
    v.push_back(canonicalize(Formula::mkAll(lit(pAtom(j, k)), lit(sAtom(j, k + 1)))));
  }
  v.push_back(canonicalize(Formula::mkSome(lit(sAtom(j, 1)), lit(sAtom(j, 4), false))));
  return v;
}

}  // namespace

ThreeSatInstance parseDimacs(std::istream& in) {
  ThreeSatInstance ins;
  bool haveHeader = false;
  long declared = -1;
  std::vector<int> cur;
  std::string line;
  int lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    size_t b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    if (line[b] == 'c') continue;
    if (line[b] == '%') break;  // trailing end marker some suites emit
    if (line[b] == 'p') {
      if (haveHeader) throw ParseError(lineNo, 1, "duplicate header");
      std::istringstream ls(line);
      std::string p, fmt;
      long vars = -1;
      if (!(ls >> p >> fmt >> vars >> declared) || fmt != "cnf" || vars < 0 || declared < 0)
        throw ParseError(lineNo, 1, "expected 'p cnf <vars> <clauses>'");
      std::string extra;
      if (ls >> extra) throw ParseError(lineNo, 1, "trailing text after header");
      ins.variableCount = static_cast<int>(vars);
      haveHeader = true;
      continue;
    }
    if (!haveHeader) throw ParseError(lineNo, 1, "clause before 'p cnf' header");
    std::istringstream ls(line);
    int v;
    while (ls >> v) {
      if (v == 0) {
        if (cur.empty()) throw ParseError(lineNo, 1, "empty clause");
        if (cur.size() > 3) throw ParseError(lineNo, 1, "clause has more than 3 literals");
        while (cur.size() < 3) cur.push_back(cur.back());
        ins.clauses.push_back({cur[0], cur[1], cur[2]});
        cur.clear();
      } else {
        if (std::abs(v) > ins.variableCount)
          throw ParseError(lineNo, 1, "literal outside the declared variable range");
        cur.push_back(v);
      }
    }
    if (!ls.eof()) throw ParseError(lineNo, 1, "clause literals must be integers");
  }
  if (!haveHeader) throw ParseError(lineNo ? lineNo : 1, 1, "missing 'p cnf' header");
  if (!cur.empty()) throw ParseError(lineNo, 1, "unterminated clause at end of input");
  if (declared != static_cast<long>(ins.clauses.size()))
    throw ParseError(lineNo, 1, "clause count differs from header");
  return ins;
}

ThreeSatInstance parseDimacsText(const std::string& text) {
  std::istringstream in(text);
  return parseDimacs(in);
}

bool truthTableSatisfiable(const ThreeSatInstance& ins) {
  validateInstance(ins);
  if (ins.variableCount > 24)
    throw std::invalid_argument("truth-table check is for small instances (<= 24 variables)");
  for (std::uint32_t asg = 0; asg < (std::uint32_t{1} << ins.variableCount); ++asg) {
    bool all = true;
    for (const auto& cl : ins.clauses) {
      bool sat = false;
      for (int l : cl) {
        bool val = asg >> (std::abs(l) - 1) & 1;
        if (l > 0 ? val : !val) {
          sat = true;
          break;
        }
      }
      if (!sat) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

SatEncoding encode3Sat(const ThreeSatInstance& ins) {
  validateInstance(ins);
  SatEncoding out;
  std::vector<int> letters;
  {
    std::set<int> s;
    for (const auto& cl : ins.clauses)
      for (int l : cl) s.insert(std::abs(l));
    letters.assign(s.begin(), s.end());
  }
  for (int i : letters) {
    for (const Formula& f : letterFormulasStar(i)) out.starDagger.push_back(f);
    for (const Formula& f : letterFormulasDagger(i)) out.dagger.push_back(f);
  }
  for (size_t j = 1; j <= ins.clauses.size(); ++j) {
    for (const Formula& f : clauseFormulas(static_cast<int>(j))) {
      out.starDagger.push_back(f);
      out.dagger.push_back(f);
    }
    const auto& cl = ins.clauses[j - 1];
    for (int k = 1; k <= 3; ++k) {
      int l = cl[k - 1];
      // An inhabitant of the wrong truth reading rules this slot out.
      std::string base = l > 0 ? xt(std::abs(l)) : xf(std::abs(l));
      Formula f = canonicalize(
          Formula::mkAll(lit(base), nallOf(pAtom(static_cast<int>(j), k))));
      out.starDagger.push_back(f);
      out.dagger.push_back(f);
    }
  }
  out.modelBound = 2 * static_cast<int>(letters.size() + ins.clauses.size());
  for (const Formula& f : out.starDagger) assert(memberOf(f, Language::HStarDagger));
  for ([[maybe_unused]] const Formula& f : out.dagger)
    assert(memberOf(f, Language::HDagger));
  return out;
}

Structure clauseGadgetModel(const std::vector<int>& K, int clauseIdx) {
  std::vector<int> k = K;
  std::sort(k.begin(), k.end());
  k.erase(std::unique(k.begin(), k.end()), k.end());
  if (k.empty() || k.front() < 1 || k.back() > 3)
    throw std::invalid_argument("true-slot set must be a non-empty subset of {1,2,3}");
  int mask = 0;
  for (int x : k) mask |= 1 << (x - 1);

  struct Row {
    const char* a;
    const char* b;
  };
  static const std::map<int, Row> rows = {
      {0b001, {"s1", "p2 p3 s3 s4"}}, {0b010, {"p1 s1 s2", "p3 s4"}},
      {0b100, {"p1 p2 s1 s2 s3", ""}}, {0b011, {"s1", "p3 s4"}},
      {0b101, {"p2 s1 s3", ""}},       {0b110, {"p1 s1 s2", ""}},
      {0b111, {"s1", ""}},
  };
  Structure m;
  m.size = 2;
  const Row& row = rows.at(mask);
  for (int elem = 0; elem < 2; ++elem) {
    std::istringstream toks(elem == 0 ? row.a : row.b);
    std::string t;
    while (toks >> t) {
      int idx = t[1] - '0';
      std::string atom = t[0] == 's' ? sAtom(clauseIdx, idx) : pAtom(clauseIdx, idx);
      std::vector<bool> v = m.extents.count(atom) ? m.extents[atom] : std::vector<bool>(2, false);
      v[elem] = true;
      m.setExtent(atom, std::move(v));
    }
  }
  if (!satisfiesAll(m, clauseFormulas(clauseIdx)))
    throw std::logic_error("clause block fails its formulas");
  for (int slot = 1; slot <= 3; ++slot) {
    bool empty = m.extentCount(pAtom(clauseIdx, slot)) == 0;
    bool wanted = mask >> (slot - 1) & 1;
    if (empty != wanted) throw std::logic_error("clause block has the wrong empty slots");
  }
  return m;
}

Structure letterGadgetModel(int letterIdx, bool value) {
  Structure m;
  m.size = 2;
  std::vector<bool> full(2, true);
  if (value) {
    m.setExtent(xf(letterIdx), full);
    m.setExtent(qx(letterIdx), full);  // the literal-subject pivot side
  } else {
    m.setExtent(xt(letterIdx), full);
  }
  if (!satisfiesAll(m, letterFormulasStar(letterIdx)) ||
      !satisfiesAll(m, letterFormulasDagger(letterIdx)))
    throw std::logic_error("letter block fails its formulas");
  return m;
}

}  // namespace syllog
