#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>
#include <vector>

#include "syllog/syntax.hpp"

using namespace syllog;

namespace {

Literal lit(const char* a, bool pos = true) { return Literal(a, pos); }

// Every e-term over the given atoms, all six shapes per atom.
std::vector<ETerm> allTerms(const std::vector<std::string>& atoms) {
  std::vector<ETerm> out;
  for (const auto& a : atoms)
    for (bool pos : {true, false})
      for (TermShape s : {TermShape::Lit, TermShape::AllOf, TermShape::NotAllOf})
        out.push_back(ETerm(s, Literal(a, pos)));
  return out;
}

std::vector<Formula> allFormulas(const std::vector<std::string>& atoms) {
  std::vector<Formula> out;
  auto terms = allTerms(atoms);
  for (Quant q : {Quant::All, Quant::Some})
    for (const auto& s : terms)
      for (const auto& p : terms) out.push_back(Formula(q, s, p));
  return out;
}

}  // namespace

TEST_CASE("term complement is an involution and changes the term") {
  for (const auto& t : allTerms({"p", "q"})) {
    CHECK(t.complement() != t);
    CHECK(t.complement().complement() == t);
  }
}

TEST_CASE("complement swaps the wrap shapes and negates plain literals") {
  CHECK(ETerm::mkLit(lit("p")).complement() == ETerm::mkLit(lit("p", false)));
  CHECK(ETerm::mkAll(lit("p")).complement() == ETerm::mkNall(lit("p")));
  CHECK(ETerm::mkNall(lit("p", false)).complement() == ETerm::mkAll(lit("p", false)));
}

TEST_CASE("canonicalize is idempotent and respects the identification") {
  for (const auto& f : allFormulas({"p", "q"})) {
    Formula c = canonicalize(f);
    CHECK(canonicalize(c) == c);
    auto [r1, r2] = representatives(f);
    CHECK(canonicalize(r1) == c);
    CHECK(canonicalize(r2) == c);
    // The representative really is one of the two spellings.
    CHECK((c == r1 || c == r2));
  }
}

TEST_CASE("identified spellings by hand") {
  Formula f = parseFormula("exists(q, p)");
  CHECK(canonicalize(f) == parseFormula("exists(p, q)"));
  // forall(q, o) says the same as forall(non-o, non-q); the subject non-o
  // sorts below q, so the contrapositive spelling is the representative.
  CHECK(canonicalize(parseFormula("forall(q, o)")) == parseFormula("forall(non-o, non-q)"));
  // A self-dual case: both spellings coincide.
  Formula self = parseFormula("forall(p, non-p)");
  CHECK(canonicalize(self) == self);
}

TEST_CASE("negation is an involution with no fixed point") {
  for (const auto& f : allFormulas({"p", "q"})) {
    Formula n = negation(f);
    CHECK(n != canonicalize(f));
    CHECK(n == canonicalize(n));
    CHECK(negation(n) == canonicalize(f));
    // A formula and its negation use the same quantifier never.
    CHECK(n.quant != canonicalize(f).quant);
  }
}

TEST_CASE("absurdities are exactly the self-contradictory existentials") {
  CHECK(isAbsurdity(parseFormula("exists(p, non-p)")));
  CHECK(isAbsurdity(parseFormula("exists(non-p, p)")));
  CHECK(isAbsurdity(parseFormula("exists(all q, nall q)")));
  CHECK_FALSE(isAbsurdity(parseFormula("exists(p, p)")));
  CHECK_FALSE(isAbsurdity(parseFormula("forall(p, non-p)")));
  CHECK_FALSE(isAbsurdity(parseFormula("exists(p, non-q)")));
  int count = 0;
  for (const auto& f : allFormulas({"p", "q"}))
    if (isAbsurdity(f)) ++count;
  // One absurdity per term pair {t, comp t}, both spellings, one quantifier:
  // 12 terms over two atoms, each paired with its complement.
  CHECK(count == 12);
}

TEST_CASE("canonical class count over k atoms is 36k^2 + 6k") {
  // 2*(6k)^2 spellings fold in pairs, except the self-identified ones:
  // exists(e, e) and forall(e, comp e), 6k of each, sit in classes alone.
  for (int k : {1, 2}) {
    std::vector<std::string> atoms;
    for (int i = 0; i < k; ++i) atoms.push_back(std::string(1, char('p' + i)));
    std::set<Formula> classes;
    for (const auto& f : allFormulas(atoms)) classes.insert(canonicalize(f));
    CHECK(int(classes.size()) == 36 * k * k + 6 * k);
  }
}

TEST_CASE("fragment membership and the inclusion chain") {
  auto in = [](const char* t, Language l) { return memberOf(parseFormula(t), l); };

  // Two-term fragment: positive atom subject, literal predicate (the four
  // classical sentence forms).
  CHECK(in("forall(p, q)", Language::S));
  CHECK(in("exists(p, q)", Language::S));
  CHECK(in("forall(p, non-q)", Language::S));
  CHECK(in("exists(p, non-q)", Language::S));
  CHECK_FALSE(in("forall(non-p, q)", Language::S));
  CHECK_FALSE(in("forall(p, all q)", Language::S));

  // Its dagger closes under literal negation.
  CHECK(in("forall(p, non-q)", Language::SDagger));
  CHECK(in("exists(non-p, non-q)", Language::SDagger));
  CHECK_FALSE(in("forall(p, all q)", Language::SDagger));

  // H: atom subject with a c-term predicate, in the four sanctioned forms.
  CHECK(in("forall(p, q)", Language::H));
  CHECK(in("exists(p, all q)", Language::H));
  CHECK(in("forall(p, nall q)", Language::H));
  CHECK(in("exists(p, non-q)", Language::H));
  CHECK_FALSE(in("forall(non-p, q)", Language::H));  // SDagger formula outside H
  CHECK_FALSE(in("exists(p, all non-q)", Language::H));

  // HDagger: any literal subject, any e-term predicate.
  CHECK(in("forall(non-p, q)", Language::HDagger));
  CHECK(in("exists(non-p, all non-q)", Language::HDagger));
  // forall(all p, q) respells as forall(non-q, nall p), so it is in HDagger;
  // forall(all p, all q) has wrap subjects in both spellings and is not.
  CHECK(in("forall(all p, q)", Language::HDagger));
  CHECK_FALSE(in("forall(all p, all q)", Language::HDagger));
  CHECK(in("forall(all p, all q)", Language::HStarDagger));

  // Membership goes modulo identification: forall(nall q, non-p) respells as
  // forall(p, all q), which is a plain H formula.
  CHECK(in("forall(nall q, non-p)", Language::H));

  // The tested chain: S in SDagger, S in H, SDagger in HDagger, H in
  // HDagger, HDagger in HStarDagger.
  for (const auto& f : allFormulas({"p", "q"})) {
    if (memberOf(f, Language::S)) {
      CHECK(memberOf(f, Language::SDagger));
      CHECK(memberOf(f, Language::H));
    }
    if (memberOf(f, Language::SDagger)) CHECK(memberOf(f, Language::HDagger));
    if (memberOf(f, Language::H)) CHECK(memberOf(f, Language::HDagger));
    if (memberOf(f, Language::HDagger)) CHECK(memberOf(f, Language::HStarDagger));
    CHECK(memberOf(f, Language::HStarDagger));
    // Membership is a class property.
    for (Language l : {Language::S, Language::SDagger, Language::H, Language::HDagger}) {
      auto [r1, r2] = representatives(f);
      CHECK(memberOf(r1, l) == memberOf(r2, l));
    }
  }
}

TEST_CASE("print and parse round-trip every formula over two atoms") {
  for (const auto& f : allFormulas({"p", "q"})) {
    Formula back = parseFormula(printFormula(f));
    CHECK(back == f);
  }
}

TEST_CASE("formula list parsing: comments, blanks, and positions") {
  std::istringstream in(
      "# header comment\n"
      "forall(p, q)\n"
      "\n"
      "exists(q, all r)  # trailing comment\n");
  auto fs = parseFormulaList(in);
  REQUIRE(fs.size() == 2);
  CHECK(fs[0] == parseFormula("forall(p, q)"));
  CHECK(fs[1] == parseFormula("exists(q, all r)"));
}

TEST_CASE("parse errors carry line and column") {
  try {
    parseFormulaText("forall(p, q)\nexists(p q)\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
    CHECK(e.col > 1);
  }
  CHECK_THROWS_AS(parseFormula("forall(p)"), ParseError);
  CHECK_THROWS_AS(parseFormula("some(p, q)"), ParseError);
  CHECK_THROWS_AS(parseFormula("forall(all, q)"), ParseError);   // reserved word as atom
  CHECK_THROWS_AS(parseFormula("forall(non-, q)"), ParseError);
  CHECK_THROWS_AS(parseFormula("forall(p, q) junk"), ParseError);
  CHECK_THROWS_AS(parseFormula(""), ParseError);
}

TEST_CASE("atom collection is sorted and deduplicated") {
  auto fs = parseFormulaText("exists(z, all b)\nforall(b, non-z)\nforall(m, m)\n");
  auto atoms = atomsOf(fs);
  CHECK(atoms == std::vector<std::string>{"b", "m", "z"});
}
