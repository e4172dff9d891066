#include "syllog/modelgen.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>
#include <stdexcept>

namespace syllog {

namespace {

Formula selfExistential(const Literal& l) {
  return Formula::mkSome(ETerm::mkLit(l), ETerm::mkLit(l));
}

// All two-shape terms over the atom list, ascending.
std::vector<ETerm> ctermUniverse(const std::vector<std::string>& atoms) {
  std::vector<ETerm> out;
  for (const auto& a : atoms) {
    out.push_back(ETerm::mkLit(Literal(a, true)));
    out.push_back(ETerm::mkLit(Literal(a, false)));
    out.push_back(ETerm::mkAll(Literal(a, true)));
    out.push_back(ETerm::mkNall(Literal(a, true)));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Lays out the domain (one element per special world, two otherwise), reads
// the extents off the positive literals, and verifies the result.
ModelResult assemble(std::vector<std::vector<ETerm>> worlds, std::vector<bool> special,
                     const std::vector<Formula>& checkAgainst) {
  ModelResult res;
  res.worlds = std::move(worlds);
  res.specialWorld = std::move(special);
  for (size_t w = 0; w < res.worlds.size(); ++w) {
    int copies = res.specialWorld[w] ? 1 : 2;
    while (copies-- > 0) res.elementWorld.push_back(static_cast<int>(w));
  }
  // With no worlds at all, one bare individual does (marked world -1).
  if (res.elementWorld.empty()) res.elementWorld.push_back(-1);
  res.model.size = static_cast<int>(res.elementWorld.size());
  std::map<std::string, std::vector<bool>> ext;
  for (int e = 0; e < res.model.size; ++e) {
    int w = res.elementWorld[e];
    if (w < 0) continue;
    for (const ETerm& t : res.worlds[w])
      if (t.shape == TermShape::Lit && t.lit.positive) {
        auto& v = ext[t.lit.atom];
        if (v.empty()) v.assign(res.model.size, false);
        v[e] = true;
      }
  }
  for (auto& [atom, v] : ext) res.model.setExtent(atom, std::move(v));
  if (!satisfiesAll(res.model, checkAgainst))
    throw std::logic_error("constructed structure fails its defining set");
  return res;
}

}  // namespace

std::vector<ETerm> closeTermSet(const std::vector<ETerm>& seed, const Saturation& sat) {
  const std::vector<ETerm> uni = ctermUniverse(sat.atoms());
  auto indexOf = [&](const ETerm& t) {
    auto it = std::lower_bound(uni.begin(), uni.end(), t);
    assert(it != uni.end() && *it == t);
    return static_cast<int>(it - uni.begin());
  };
  std::vector<char> in(uni.size(), 0);
  std::vector<int> work;
  auto add = [&](int i) {
    if (!in[i]) {
      in[i] = 1;
      work.push_back(i);
    }
  };
  for (const ETerm& t : seed) {
    if (!t.isCTerm())
      throw std::invalid_argument("seed term outside the two-shape universe: " + printETerm(t));
    add(indexOf(t));
  }
  while (!work.empty()) {
    int i = work.back();
    work.pop_back();
    const ETerm& t = uni[i];
    if (t.shape == TermShape::Lit && t.lit.positive) {
      for (size_t j = 0; j < uni.size(); ++j)
        if (!in[j] && sat.contains(Formula::mkAll(t, uni[j]))) add(static_cast<int>(j));
    } else if (t.shape == TermShape::AllOf) {
      if (sat.contains(selfExistential(t.lit))) add(indexOf(ETerm::mkLit(t.lit)));
    }
  }
  std::vector<ETerm> out;
  for (size_t i = 0; i < uni.size(); ++i)
    if (in[i]) out.push_back(uni[i]);
  return out;
}

ModelResult buildModelH(const std::vector<Formula>& premises) {
  for (const Formula& f : premises)
    if (!memberOf(f, Language::H))
      throw std::invalid_argument("premise outside the two-shape fragment: " + printFormula(f));
  Saturation sat(rulesH(), atomsOf(premises), /*stopOnAbsurdity=*/true);
  for (const Formula& f : premises) sat.addPremise(f);
  sat.run();
  if (sat.inconsistent()) {
    ModelResult res;
    res.consistent = false;
    res.refutation = sat.derivationOf(*sat.absurdity());
    return res;
  }

  std::vector<std::vector<ETerm>> worlds;
  std::set<std::vector<ETerm>> seen;
  auto addWorld = [&](std::vector<ETerm> w) {
    if (seen.insert(w).second) worlds.push_back(std::move(w));
  };
  // One world per derivable existential, seeded with its two terms.
  for (const Formula& f : sat.members()) {
    if (f.quant != Quant::Some) continue;
    auto [r1, r2] = representatives(f);
    const Formula* rep = nullptr;
    if (r1.subject.isLiteral() && r1.subject.lit.positive)
      rep = &r1;
    else if (r2.subject.isLiteral() && r2.subject.lit.positive)
      rep = &r2;
    assert(rep != nullptr);  // fragment guarantees an atom side
    addWorld(closeTermSet({rep->subject, rep->predicate}, sat));
  }
  // Each "nall p" occurrence spawns the world p generates by itself: the
  // individual witnessing that not everything is the unique p.
  for (size_t wi = 0; wi < worlds.size(); ++wi) {
    const std::vector<ETerm> terms = worlds[wi];  // copy: addWorld grows the list
    for (const ETerm& t : terms)
      if (t.shape == TermShape::NotAllOf) addWorld(closeTermSet({ETerm::mkLit(t.lit)}, sat));
  }

  std::vector<bool> special(worlds.size(), false);
  for (size_t wi = 0; wi < worlds.size(); ++wi)
    for (const ETerm& t : worlds[wi])
      if (t.shape == TermShape::AllOf && sat.contains(selfExistential(t.lit))) {
        special[wi] = true;
        break;
      }
  return assemble(std::move(worlds), std::move(special), premises);
}

ModelResult buildModelDagger(const CompleteSet& complete) {
  const bool full = complete.language == Language::HStarDagger;
  if (!full && complete.language != Language::HDagger)
    throw std::invalid_argument("world enumeration needs one of the dagger fragments");
  if (complete.atoms.size() > 6)
    throw std::invalid_argument("world enumeration is exponential in atoms; limit is 6");

  std::vector<ETerm> uni;
  for (const std::string& a : complete.atoms)
    for (bool pos : {true, false}) {
      uni.push_back(ETerm::mkLit(Literal(a, pos)));
      uni.push_back(ETerm::mkAll(Literal(a, pos)));
      uni.push_back(ETerm::mkNall(Literal(a, pos)));
    }
  std::sort(uni.begin(), uni.end());
  const int m = static_cast<int>(uni.size());
  auto indexOf = [&](const ETerm& t) {
    return static_cast<int>(std::lower_bound(uni.begin(), uni.end(), t) - uni.begin());
  };
  std::vector<int> comp(m);
  for (int i = 0; i < m; ++i) comp[i] = indexOf(uni[i].complement());
  auto derivable = [&](const Formula& f) {
    // The input is deductively closed, so membership is derivability.
    return std::binary_search(complete.formulas.begin(), complete.formulas.end(),
                              canonicalize(f));
  };

  // forces[i]: terms every world containing uni[i] must also contain. The
  // literal-subject fragment only propagates from or into a literal; the
  // full fragment propagates along every derivable inclusion.
  std::vector<std::vector<int>> forces(m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      if (i == j) continue;
      if (!full && !uni[i].isLiteral() && !uni[j].isLiteral()) continue;
      if (derivable(Formula::mkAll(uni[i], uni[j]))) forces[i].push_back(j);
    }

  std::vector<int8_t> status(m, 0);  // 0 unknown, 1 in, 2 out
  std::vector<int> trail;
  auto setIn = [&](auto&& self, int i) -> bool {
    if (status[i] == 1) return true;
    if (status[i] == 2) return false;
    status[i] = 1;
    trail.push_back(i);
    int c = comp[i];
    if (status[c] == 1) return false;
    if (status[c] == 0) {
      status[c] = 2;
      trail.push_back(c);
    }
    for (int j : forces[i])
      if (!self(self, j)) return false;
    return true;
  };
  auto setOut = [&](int i) -> bool {
    if (status[i] == 1) return false;
    if (status[i] == 0) {
      status[i] = 2;
      trail.push_back(i);
    }
    return true;
  };
  auto undo = [&](size_t snap) {
    while (trail.size() > snap) {
      status[trail.back()] = 0;
      trail.pop_back();
    }
  };

  // Complement pairs to decide. Literal pairs always hold exactly one side;
  // "all ..." pairs in the literal-subject fragment may also be jointly
  // absent, so they get a third branch.
  struct Pair {
    int a, b;
    bool mayBothMiss;
  };
  std::vector<Pair> pairs;
  if (!full) {
    for (int i = 0; i < m; ++i)
      if (uni[i].isLiteral() && uni[i].lit.positive) pairs.push_back({i, comp[i], false});
    for (int i = 0; i < m; ++i)
      if (uni[i].shape == TermShape::AllOf) pairs.push_back({i, comp[i], true});
  } else {
    for (int i = 0; i < m; ++i)
      if (i < comp[i]) pairs.push_back({i, comp[i], false});
  }

  std::vector<std::vector<ETerm>> worlds;
  std::vector<bool> special;
  auto harvest = [&]() {
    std::vector<ETerm> w;
    for (int i = 0; i < m; ++i)
      if (status[i] == 1) w.push_back(uni[i]);
    bool sp = false;
    for (const ETerm& t : w)
      if (t.shape == TermShape::AllOf && derivable(selfExistential(t.lit))) {
        sp = true;
        break;
      }
    worlds.push_back(std::move(w));
    special.push_back(sp);
  };
  auto dfs = [&](auto&& self, size_t d) -> void {
    if (d == pairs.size()) {
      harvest();
      return;
    }
    const Pair& pr = pairs[d];
    int options = pr.mayBothMiss ? 3 : 2;
    for (int opt = 0; opt < options; ++opt) {
      size_t snap = trail.size();
      bool ok = opt == 0   ? setIn(setIn, pr.a)
                : opt == 1 ? setIn(setIn, pr.b)
                           : setOut(pr.a) && setOut(pr.b);
      if (ok) self(self, d + 1);
      undo(snap);
    }
  };
  dfs(dfs, 0);

  if (worlds.empty())
    throw std::logic_error("no admissible worlds for a consistent complete set");
  return assemble(std::move(worlds), std::move(special), complete.formulas);
}

}  // namespace syllog
