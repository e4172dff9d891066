#include <doctest.h>

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "syllog/hardness.hpp"
#include "syllog/oracle.hpp"
#include "syllog/semantics.hpp"
#include "syllog/syntax.hpp"

using namespace syllog;

namespace {

ETerm lit(const std::string& a, bool pos = true) { return ETerm::mkLit(Literal(a, pos)); }
ETerm allOf(const std::string& a) { return ETerm::mkAll(Literal(a, true)); }
ETerm nallOf(const std::string& a) { return ETerm::mkNall(Literal(a, true)); }
std::string atomP(int i) { return "p" + std::to_string(i); }

Formula chainLink(int i) {
  return canonicalize(Formula::mkAll(lit(atomP(i)), nallOf(atomP(i + 1))));
}

Structure disjointUnion(const Structure& a, const Structure& b) {
  Structure u;
  u.size = a.size + b.size;
  auto place = [&](const Structure& s, int off) {
    for (const auto& [atom, ext] : s.extents) {
      std::vector<bool> v =
          u.extents.count(atom) ? u.extents.at(atom) : std::vector<bool>(u.size, false);
      for (int i = 0; i < s.size; ++i)
        if (ext[i]) v[off + i] = true;
      u.setExtent(atom, std::move(v));
    }
  };
  place(a, 0);
  place(b, a.size);
  return u;
}

bool mentions(const std::vector<Formula>& fs, const std::string& atom) {
  std::vector<std::string> as = atomsOf(fs);
  return std::find(as.begin(), as.end(), atom) != as.end();
}

}  // namespace

TEST_CASE("chain family has the documented shape") {
  GammaInstance g = gammaFamily(5);
  CHECK(g.n == 5);
  REQUIRE(g.premises.size() == 12);  // 2n+2
  std::set<Formula> distinct(g.premises.begin(), g.premises.end());
  CHECK(distinct.size() == g.premises.size());
  for (const Formula& f : g.premises) {
    CHECK(canonicalize(f) == f);
    CHECK(memberOf(f, Language::H));
  }
  CHECK(g.goal == canonicalize(Formula::mkAll(lit("p1"), lit("p5"))));

  CHECK(gammaFamily(3).premises.size() == 8);
  CHECK_THROWS_AS(gammaFamily(2), std::invalid_argument);
}

TEST_CASE("dropping a link removes exactly that premise") {
  GammaInstance g = gammaFamily(5);
  for (int h = 1; h <= 3; ++h) {
    std::vector<Formula> d = gammaPremisesDropping(5, h);
    REQUIRE(d.size() == 11);
    Formula gone = chainLink(h);
    CHECK(std::find(d.begin(), d.end(), gone) == d.end());
    for (const Formula& f : g.premises)
      if (!(f == gone)) CHECK(std::find(d.begin(), d.end(), f) != d.end());
  }
  CHECK_THROWS_AS(gammaPremisesDropping(5, 0), std::invalid_argument);
  CHECK_THROWS_AS(gammaPremisesDropping(5, 4), std::invalid_argument);
}

TEST_CASE("witness structures decide the separation facts") {
  const int n = 5;
  for (int h = 1; h <= 3; ++h) {
    CAPTURE(h);
    GammaWitnesses w = gammaWitnesses(n, h);

    CHECK(w.chain.size == n - 1);
    CHECK(w.prefix.size == h);
    CHECK(w.suffix.size == n - h);
    CHECK(w.prefixDoubled.size == 2 * h);
    CHECK(w.suffixDoubled.size == 2 * (n - h));

    std::vector<Formula> dropped = gammaPremisesDropping(n, h);
    for (const Structure* s :
         {&w.chain, &w.prefix, &w.suffix, &w.prefixDoubled, &w.suffixDoubled})
      CHECK(satisfiesAll(*s, dropped));

    GammaInstance full = gammaFamily(n);
    CHECK(satisfiesAll(w.chain, full.premises));
    CHECK(satisfies(w.chain, full.goal));

    CHECK(!satisfies(w.prefix, Formula::mkAll(lit("p1"), lit("p5"))));
    CHECK(!satisfies(w.suffix, Formula::mkAll(lit("p5"), lit("p1"))));
    for (int i = 1; i <= h; ++i)
      CHECK(!satisfies(w.prefixDoubled, Formula::mkAll(lit(atomP(i)), allOf(atomP(i)))));
    for (int i = h + 1; i <= n; ++i)
      CHECK(!satisfies(w.suffixDoubled, Formula::mkAll(lit(atomP(i)), allOf(atomP(i)))));
  }
  CHECK_THROWS_AS(gammaWitnesses(5, 4), std::invalid_argument);
  CHECK_THROWS_AS(gammaWitnesses(2, 1), std::invalid_argument);
}

TEST_CASE("chain witness places each atom on its own element") {
  GammaWitnesses w = gammaWitnesses(5, 2);
  for (int k = 1; k <= 4; ++k) {
    REQUIRE(w.chain.extents.count(atomP(k)));
    const std::vector<bool>& e = w.chain.extents.at(atomP(k));
    for (int i = 0; i < 4; ++i) CHECK(e[i] == (i == k - 1));
  }
  const std::vector<bool>& p5 = w.chain.extents.at("p5");
  for (int i = 0; i < 4; ++i) CHECK(p5[i] == (i == 0));
}

TEST_CASE("dimacs parsing accepts the usual shapes") {
  ThreeSatInstance ins = parseDimacsText(
      "c sample instance\n"
      "c\n"
      "p cnf 3 4\n"
      "1 -2 3 0\n"
      "-1 2 0\n"
      "3\n"
      "0\n"
      "-3 0\n"
      "%\n"
      "0\n");
  CHECK(ins.variableCount == 3);
  REQUIRE(ins.clauses.size() == 4);
  CHECK(ins.clauses[0] == std::array<int, 3>{1, -2, 3});
  CHECK(ins.clauses[1] == std::array<int, 3>{-1, 2, 2});  // short clauses pad
  CHECK(ins.clauses[2] == std::array<int, 3>{3, 3, 3});   // clause may span lines
  CHECK(ins.clauses[3] == std::array<int, 3>{-3, -3, -3});
}

TEST_CASE("dimacs parsing rejects malformed input with its line") {
  CHECK_THROWS_AS(parseDimacsText(""), ParseError);
  CHECK_THROWS_AS(parseDimacsText("c just a comment\n"), ParseError);
  CHECK_THROWS_AS(parseDimacsText("1 0\n"), ParseError);
  CHECK_THROWS_AS(parseDimacsText("p dnf 1 1\n1 0\n"), ParseError);
  CHECK_THROWS_AS(parseDimacsText("p cnf x 1\n"), ParseError);
  CHECK_THROWS_AS(parseDimacsText("p cnf 1 1 junk\n1 0\n"), ParseError);
  CHECK_THROWS_AS(parseDimacsText("p cnf 1 1\n0\n"), ParseError);
  CHECK_THROWS_AS(parseDimacsText("p cnf 1 1\n1 1 1 1 0\n"), ParseError);
  CHECK_THROWS_AS(parseDimacsText("p cnf 1 1\n2 0\n"), ParseError);
  CHECK_THROWS_AS(parseDimacsText("p cnf 1 1\n1 a 0\n"), ParseError);
  CHECK_THROWS_AS(parseDimacsText("p cnf 1 1\n1\n"), ParseError);
  CHECK_THROWS_AS(parseDimacsText("p cnf 2 2\n1 0\n"), ParseError);

  try {
    parseDimacsText("p cnf 1 1\np cnf 1 1\n1 0\n");
    FAIL("duplicate header accepted");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
    CHECK(e.col == 1);
  }
  try {
    parseDimacsText("p cnf 1 2\n1 0\n1 a 0\n");
    FAIL("bad literal accepted");
  } catch (const ParseError& e) {
    CHECK(e.line == 3);
  }
}

TEST_CASE("truth-table check agrees with hand evaluation") {
  CHECK(truthTableSatisfiable({0, {}}));
  CHECK(truthTableSatisfiable({1, {{1, 1, 1}}}));
  CHECK(!truthTableSatisfiable({1, {{1, 1, 1}, {-1, -1, -1}}}));
  CHECK(truthTableSatisfiable({2, {{1, 2, 2}, {-1, -2, -2}}}));

  // All eight sign patterns over three variables leave no assignment.
  ThreeSatInstance e8{3, {}};
  for (int m = 0; m < 8; ++m)
    e8.clauses.push_back({m & 1 ? 1 : -1, m & 2 ? 2 : -2, m & 4 ? 3 : -3});
  CHECK(!truthTableSatisfiable(e8));
  e8.clauses.pop_back();
  CHECK(truthTableSatisfiable(e8));

  CHECK_THROWS_AS(truthTableSatisfiable({25, {}}), std::invalid_argument);
  CHECK_THROWS_AS(truthTableSatisfiable({1, {{0, 1, 1}}}), std::invalid_argument);
  CHECK_THROWS_AS(truthTableSatisfiable({1, {{2, 2, 2}}}), std::invalid_argument);
}

TEST_CASE("encoding size, bound, and fragment membership") {
  SatEncoding enc = encode3Sat({2, {{1, -2, 2}}});
  CHECK(enc.starDagger.size() == 2 * 3 + 10);  // 3 per letter, 10 per clause
  CHECK(enc.dagger.size() == 2 * 4 + 10);      // the fresh-atom pair adds one
  CHECK(enc.modelBound == 6);
  for (const Formula& f : enc.starDagger) CHECK(memberOf(f, Language::HStarDagger));
  for (const Formula& f : enc.dagger) CHECK(memberOf(f, Language::HDagger));
  CHECK(std::any_of(enc.starDagger.begin(), enc.starDagger.end(), [](const Formula& f) {
    return !memberOf(f, Language::HDagger);  // the wrap-subject pivot
  }));
  CHECK(mentions(enc.dagger, "q_x1"));
  CHECK(!mentions(enc.starDagger, "q_x1"));

  // Letters come from the literals that occur, not the declared count.
  SatEncoding sparse = encode3Sat({3, {{2, 2, 2}}});
  CHECK(sparse.starDagger.size() == 3 + 10);
  CHECK(sparse.modelBound == 4);
  CHECK(mentions(sparse.starDagger, "x2_t"));
  CHECK(!mentions(sparse.starDagger, "x1_t"));
  CHECK(!mentions(sparse.starDagger, "x3_t"));

  SatEncoding empty = encode3Sat({4, {}});
  CHECK(empty.starDagger.empty());
  CHECK(empty.dagger.empty());
  CHECK(empty.modelBound == 0);

  CHECK_THROWS_AS(encode3Sat({1, {{2, 2, 2}}}), std::invalid_argument);
}

TEST_CASE("letter blocks pin one truth reading") {
  Structure t = letterGadgetModel(1, true);
  CHECK(t.size == 2);
  CHECK(t.extentCount("x1_t") == 0);  // empty extent reads "true"
  CHECK(t.extentCount("x1_f") == 2);
  CHECK(t.extentCount("q_x1") == 2);

  Structure f = letterGadgetModel(1, false);
  CHECK(f.extentCount("x1_t") == 2);
  CHECK(f.extentCount("x1_f") == 0);
  CHECK(f.extentCount("q_x1") == 0);

  Structure other = letterGadgetModel(7, false);
  CHECK(other.extentCount("x7_t") == 2);
  CHECK(other.extentCount("x1_t") == 0);
}

TEST_CASE("clause blocks realize every true-slot pattern") {
  const std::vector<std::vector<int>> patterns = {{1},    {2},    {3},   {1, 2},
                                                  {1, 3}, {2, 3}, {1, 2, 3}};
  for (const std::vector<int>& K : patterns) {
    CAPTURE(K.size());
    Structure m = clauseGadgetModel(K, 1);
    CHECK(m.size == 2);
    for (int k = 1; k <= 3; ++k) {
      bool wantEmpty = std::find(K.begin(), K.end(), k) != K.end();
      CHECK((m.extentCount("p_1_" + std::to_string(k)) == 0) == wantEmpty);
    }
  }
  Structure dup = clauseGadgetModel({1, 1, 2}, 1);
  Structure plain = clauseGadgetModel({1, 2}, 1);
  CHECK(dup.extents == plain.extents);

  Structure second = clauseGadgetModel({1}, 2);
  CHECK(second.extentCount("p_2_1") == 0);
  CHECK(second.extentCount("s_2_1") > 0);
  CHECK(second.extentCount("s_1_1") == 0);

  CHECK_THROWS_AS(clauseGadgetModel({}, 1), std::invalid_argument);
  CHECK_THROWS_AS(clauseGadgetModel({0}, 1), std::invalid_argument);
  CHECK_THROWS_AS(clauseGadgetModel({4}, 1), std::invalid_argument);
}

TEST_CASE("assignment blocks glue into a model of the whole encoding") {
  // (x1 or not-x2) and (not-x1 or x2), satisfied by making both true.
  ThreeSatInstance ins{2, {{1, -2, -2}, {-1, 2, 2}}};
  SatEncoding enc = encode3Sat(ins);
  Structure m = disjointUnion(
      disjointUnion(letterGadgetModel(1, true), letterGadgetModel(2, true)),
      disjointUnion(clauseGadgetModel({1}, 1), clauseGadgetModel({2, 3}, 2)));
  CHECK(m.size == enc.modelBound);
  CHECK(satisfiesAll(m, enc.starDagger));
  // The pivot atoms are global flags: a true letter's q must cover the whole
  // union, not just its own block, so widen them before the dagger check.
  m.setExtent("q_x1", std::vector<bool>(m.size, true));
  m.setExtent("q_x2", std::vector<bool>(m.size, true));
  CHECK(satisfiesAll(m, enc.dagger));
}

TEST_CASE("bounded search agrees with the truth table on tiny instances") {
  ThreeSatInstance sat{1, {{1, 1, 1}}};
  REQUIRE(truthTableSatisfiable(sat));
  SatEncoding encSat = encode3Sat(sat);
  OracleResult star = boundedModelSearch(encSat.starDagger, {encSat.modelBound, 1});
  REQUIRE(star.found);
  CHECK(satisfiesAll(star.model, encSat.starDagger));
  OracleResult dag = boundedModelSearch(encSat.dagger, {encSat.modelBound, 1});
  REQUIRE(dag.found);
  CHECK(satisfiesAll(dag.model, encSat.dagger));

  ThreeSatInstance unsat{1, {{1, 1, 1}, {-1, -1, -1}}};
  REQUIRE(!truthTableSatisfiable(unsat));
  SatEncoding encUnsat = encode3Sat(unsat);
  OracleResult none = boundedModelSearch(encUnsat.starDagger, {encUnsat.modelBound, 1});
  CHECK(!none.found);
  CHECK(none.bound == encUnsat.modelBound);
  CHECK(!boundedModelSearch(encUnsat.dagger, {encUnsat.modelBound, 1}).found);
}
