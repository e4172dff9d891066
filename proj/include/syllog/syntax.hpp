// Sentence syntax: literals, extended terms, formulas, canonical forms,
// and the language fragments the tool works with.
#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace syllog {

// An atom name with an optional noun-level negation ("p" vs "non-p").
struct Literal {
  std::string atom;
  bool positive = true;

  Literal() = default;
  Literal(std::string a, bool pos = true) : atom(std::move(a)), positive(pos) {}

  Literal complement() const { return Literal(atom, !positive); }

  friend bool operator==(const Literal&, const Literal&) = default;
  friend std::strong_ordering operator<=>(const Literal& a, const Literal& b) {
    if (auto c = a.atom <=> b.atom; c != 0) return c;
    // Positive literal sorts before its negation.
    return (a.positive ? 0 : 1) <=> (b.positive ? 0 : 1);
  }
};

// Term shapes. A plain literal denotes a set of individuals; "all l" denotes
// the individuals that are the only member l could have ("is every l"), and
// "nall l" is its complement ("is not every l").
enum class TermShape : std::uint8_t { Lit = 0, AllOf = 1, NotAllOf = 2 };

struct ETerm {
  TermShape shape = TermShape::Lit;
  Literal lit;

  ETerm() = default;
  ETerm(TermShape s, Literal l) : shape(s), lit(std::move(l)) {}

  static ETerm mkLit(Literal l) { return ETerm(TermShape::Lit, std::move(l)); }
  static ETerm mkAll(Literal l) { return ETerm(TermShape::AllOf, std::move(l)); }
  static ETerm mkNall(Literal l) { return ETerm(TermShape::NotAllOf, std::move(l)); }

  ETerm complement() const;

  bool isLiteral() const { return shape == TermShape::Lit; }
  // c-terms: literals, plus "all p" / "nall p" over an unnegated atom.
  bool isCTerm() const { return shape == TermShape::Lit || lit.positive; }

  friend bool operator==(const ETerm&, const ETerm&) = default;
  friend std::strong_ordering operator<=>(const ETerm& a, const ETerm& b) {
    if (auto c = static_cast<int>(a.shape) <=> static_cast<int>(b.shape); c != 0) return c;
    return a.lit <=> b.lit;
  }
};

enum class Quant : std::uint8_t { All = 0, Some = 1 };

// A sentence: forall(subject, predicate) or exists(subject, predicate).
struct Formula {
  Quant quant = Quant::All;
  ETerm subject;
  ETerm predicate;

  Formula() = default;
  Formula(Quant q, ETerm s, ETerm p)
      : quant(q), subject(std::move(s)), predicate(std::move(p)) {}

  static Formula mkAll(ETerm s, ETerm p) { return Formula(Quant::All, std::move(s), std::move(p)); }
  static Formula mkSome(ETerm s, ETerm p) { return Formula(Quant::Some, std::move(s), std::move(p)); }

  friend bool operator==(const Formula&, const Formula&) = default;
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
    if (auto c = static_cast<int>(a.quant) <=> static_cast<int>(b.quant); c != 0) return c;
    if (auto c = a.subject <=> b.subject; c != 0) return c;
    return a.predicate <=> b.predicate;
  }
};

// Two formulas are identified when they say the same thing:
//   exists(e, f) == exists(f, e)
//   forall(e, f) == forall(comp f, comp e)
// canonicalize picks the representative with the smallest subject (for ties
// the forms coincide). All engine code stores canonical formulas only.
Formula canonicalize(const Formula& f);

// Both identified spellings of a formula (they may be equal).
std::pair<Formula, Formula> representatives(const Formula& f);

// Canonical negation: forall(e, f) <-> exists(e, comp f).
Formula negation(const Formula& f);

// exists(e, comp e) in any spelling; such a sentence has no model.
bool isAbsurdity(const Formula& f);

// The fragments, ordered by expressive reach. S and SDagger are two-term
// fragments over plain literals; H requires an unnegated atom on one side
// with a c-term on the other; HDagger relaxes the subject to any literal;
// HStarDagger allows arbitrary e-terms.
enum class Language { S, SDagger, H, HDagger, HStarDagger };

const char* languageName(Language l);

// Membership is tested modulo identification: a formula belongs to a
// fragment when either spelling fits one of its sentence forms.
bool memberOf(const Formula& f, Language l);

// Sorted, deduplicated atom names occurring in the given formulas.
std::vector<std::string> atomsOf(const std::vector<Formula>& formulas);
void collectAtoms(const Formula& f, std::vector<std::string>& out);

// ---- text form ----
//
//   formula := ("forall" | "exists") "(" eterm "," eterm ")"
//   eterm   := lit | "all" lit | "nall" lit
//   lit     := atom | "non-" atom
//   atom    := [a-z][A-Za-z0-9_]*
//
// "forall", "exists", "all", "nall", "non" are reserved and not usable as
// atom names. Files carry one formula per line; "#" starts a comment.

struct ParseError : std::runtime_error {
  int line;
  int col;
  ParseError(int ln, int cl, const std::string& msg);
};

std::string printLiteral(const Literal& l);
std::string printETerm(const ETerm& t);
std::string printFormula(const Formula& f);

Formula parseFormula(const std::string& text, int lineNo = 1);
std::vector<Formula> parseFormulaList(std::istream& in);
std::vector<Formula> parseFormulaText(const std::string& text);

}  // namespace syllog
