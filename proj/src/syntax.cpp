#include "syllog/syntax.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <istream>
#include <sstream>

namespace syllog {

ETerm ETerm::complement() const {
  switch (shape) {
    case TermShape::Lit:
      return ETerm(TermShape::Lit, lit.complement());
    case TermShape::AllOf:
      return ETerm(TermShape::NotAllOf, lit);
    case TermShape::NotAllOf:
      return ETerm(TermShape::AllOf, lit);
  }
  assert(false && "bad shape");
  return *this;
}

std::pair<Formula, Formula> representatives(const Formula& f) {
  if (f.quant == Quant::Some)
    return {f, Formula(Quant::Some, f.predicate, f.subject)};
  return {f, Formula(Quant::All, f.predicate.complement(), f.subject.complement())};
}

Formula canonicalize(const Formula& f) {
  auto [a, b] = representatives(f);
  return b.subject < a.subject ? b : a;
}

Formula negation(const Formula& f) {
  Quant q = f.quant == Quant::All ? Quant::Some : Quant::All;
  return canonicalize(Formula(q, f.subject, f.predicate.complement()));
}

bool isAbsurdity(const Formula& f) {
  return f.quant == Quant::Some && f.predicate == f.subject.complement();
}

const char* languageName(Language l) {
  switch (l) {
    case Language::S: return "s";
    case Language::SDagger: return "sdagger";
    case Language::H: return "h";
    case Language::HDagger: return "hdagger";
    case Language::HStarDagger: return "hstardagger";
  }
  return "?";
}

namespace {

bool repFits(const Formula& r, Language l) {
  switch (l) {
    case Language::S:
      // Two plain literals with an unnegated subject.
      return r.subject.isLiteral() && r.subject.lit.positive && r.predicate.isLiteral();
    case Language::SDagger:
      return r.subject.isLiteral() && r.predicate.isLiteral();
    case Language::H:
      // Unnegated atom as subject, c-term as predicate.
      return r.subject.isLiteral() && r.subject.lit.positive && r.predicate.isCTerm();
    case Language::HDagger:
      return r.subject.isLiteral();
    case Language::HStarDagger:
      return true;
  }
  return false;
}

}  // namespace

bool memberOf(const Formula& f, Language l) {
  auto [a, b] = representatives(f);
  return repFits(a, l) || repFits(b, l);
}

void collectAtoms(const Formula& f, std::vector<std::string>& out) {
  out.push_back(f.subject.lit.atom);
  out.push_back(f.predicate.lit.atom);
}

std::vector<std::string> atomsOf(const std::vector<Formula>& formulas) {
  std::vector<std::string> out;
  for (const auto& f : formulas) collectAtoms(f, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---- printing ----

std::string printLiteral(const Literal& l) {
  return l.positive ? l.atom : "non-" + l.atom;
}

std::string printETerm(const ETerm& t) {
  switch (t.shape) {
    case TermShape::Lit: return printLiteral(t.lit);
    case TermShape::AllOf: return "all " + printLiteral(t.lit);
    case TermShape::NotAllOf: return "nall " + printLiteral(t.lit);
  }
  return "?";
}

std::string printFormula(const Formula& f) {
  return std::string(f.quant == Quant::All ? "forall" : "exists") + "(" +
         printETerm(f.subject) + ", " + printETerm(f.predicate) + ")";
}

// ---- parsing ----

ParseError::ParseError(int ln, int cl, const std::string& msg)
    : std::runtime_error("line " + std::to_string(ln) + ", col " + std::to_string(cl) + ": " + msg),
      line(ln),
      col(cl) {}

namespace {

bool isAtomStart(char c) { return c >= 'a' && c <= 'z'; }
bool isAtomChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}
bool isReserved(const std::string& w) {
  return w == "forall" || w == "exists" || w == "all" || w == "nall" || w == "non";
}

// Single-line cursor; columns are 1-based.
struct Cursor {
  const std::string& s;
  int line;
  size_t i = 0;

  [[noreturn]] void fail(const std::string& msg, size_t at) const {
    throw ParseError(line, static_cast<int>(at) + 1, msg);
  }
  void skipSpace() {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
  }
  bool atEnd() {
    skipSpace();
    return i >= s.size() || s[i] == '#';
  }
  void expect(char c) {
    skipSpace();
    if (i >= s.size() || s[i] != c)
      fail(std::string("expected '") + c + "'", i);
    ++i;
  }
  std::string word() {
    skipSpace();
    if (i >= s.size() || !isAtomStart(s[i]))
      fail("expected a name", i);
    size_t start = i;
    while (i < s.size() && isAtomChar(s[i])) ++i;
    return s.substr(start, i - start);
  }

  Literal literal() {
    size_t start = i;
    std::string w = word();
    if (w == "non") {
      if (i >= s.size() || s[i] != '-') fail("expected '-' after 'non'", i);
      ++i;
      if (i >= s.size() || !isAtomStart(s[i])) fail("expected an atom after 'non-'", i);
      std::string a = word();
      if (isReserved(a)) fail("'" + a + "' is reserved", start);
      return Literal(a, false);
    }
    if (isReserved(w)) fail("'" + w + "' cannot be used as an atom", start);
    return Literal(w, true);
  }

  ETerm eterm() {
    skipSpace();
    size_t mark = i;
    std::string w = word();
    if (w == "all") return ETerm::mkAll(literal());
    if (w == "nall") return ETerm::mkNall(literal());
    i = mark;  // plain literal, reread
    return ETerm::mkLit(literal());
  }

  Formula formula() {
    size_t mark = i;
    std::string head = word();
    Quant q;
    if (head == "forall")
      q = Quant::All;
    else if (head == "exists")
      q = Quant::Some;
    else
      fail("expected 'forall' or 'exists'", mark);
    expect('(');
    ETerm s = eterm();
    expect(',');
    ETerm p = eterm();
    expect(')');
    return Formula(q, std::move(s), std::move(p));
  }
};

}  // namespace

Formula parseFormula(const std::string& text, int lineNo) {
  Cursor c{text, lineNo};
  if (c.atEnd()) c.fail("empty formula", c.i);
  Formula f = c.formula();
  if (!c.atEnd()) c.fail("trailing input after formula", c.i);
  return f;
}

std::vector<Formula> parseFormulaList(std::istream& in) {
  std::vector<Formula> out;
  std::string line;
  int lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    Cursor probe{line, lineNo};
    if (probe.atEnd()) continue;  // blank or comment-only line
    out.push_back(parseFormula(line, lineNo));
  }
  return out;
}

std::vector<Formula> parseFormulaText(const std::string& text) {
  std::istringstream in(text);
  return parseFormulaList(in);
}

}  // namespace syllog
