#include "syllog/semantics.hpp"

#include <cassert>
#include <istream>
#include <sstream>

namespace syllog {

int Structure::extentCount(const std::string& atom) const {
  auto it = extents.find(atom);
  if (it == extents.end()) return 0;
  int n = 0;
  for (bool b : it->second)
    if (b) ++n;
  return n;
}

void Structure::setExtent(const std::string& atom, std::vector<bool> ext) {
  assert(static_cast<int>(ext.size()) == size);
  bool any = false;
  for (bool b : ext) any = any || b;
  if (any)
    extents[atom] = std::move(ext);
  else
    extents.erase(atom);
}

void Structure::setExtentMask(const std::string& atom, std::uint64_t mask) {
  assert(size <= 64);
  assert(size == 64 || (mask >> size) == 0);
  std::vector<bool> ext(size, false);
  for (int i = 0; i < size; ++i)
    if (mask >> i & 1) ext[i] = true;
  setExtent(atom, std::move(ext));
}

std::uint64_t Structure::extentMask(const std::string& atom) const {
  assert(size <= 64);
  auto it = extents.find(atom);
  std::uint64_t mask = 0;
  if (it == extents.end()) return mask;
  for (int i = 0; i < size; ++i)
    if (it->second[i]) mask |= std::uint64_t{1} << i;
  return mask;
}

std::vector<bool> evalETerm(const Structure& m, const ETerm& t) {
  std::vector<bool> lit(m.size, false);
  {
    auto it = m.extents.find(t.lit.atom);
    if (it != m.extents.end()) lit = it->second;
    if (!t.lit.positive) lit.flip();
  }
  if (t.shape == TermShape::Lit) return lit;
  int count = 0;
  for (bool b : lit)
    if (b) ++count;
  std::vector<bool> all;
  if (count == 0)
    all.assign(m.size, true);
  else if (count == 1)
    all = lit;
  else
    all.assign(m.size, false);
  if (t.shape == TermShape::NotAllOf) all.flip();
  return all;
}

bool satisfies(const Structure& m, const Formula& f) {
  std::vector<bool> s = evalETerm(m, f.subject);
  std::vector<bool> p = evalETerm(m, f.predicate);
  if (f.quant == Quant::All) {
    for (int i = 0; i < m.size; ++i)
      if (s[i] && !p[i]) return false;
    return true;
  }
  for (int i = 0; i < m.size; ++i)
    if (s[i] && p[i]) return true;
  return false;
}

bool satisfiesAll(const Structure& m, const std::vector<Formula>& fs) {
  for (const Formula& f : fs)
    if (!satisfies(m, f)) return false;
  return true;
}

std::string printStructure(const Structure& m) {
  std::ostringstream out;
  out << "domain: " << m.size << "\n";
  for (const auto& [atom, ext] : m.extents) {
    bool any = false;
    for (bool b : ext) any = any || b;
    if (!any) continue;
    out << atom << ":";
    for (int i = 0; i < m.size; ++i)
      if (ext[i]) out << " " << i;
    out << "\n";
  }
  return out.str();
}

namespace {

// Strips comments and surrounding blanks; returns false for skippable lines.
bool significant(std::string& line) {
  if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
  size_t b = line.find_first_not_of(" \t\r");
  if (b == std::string::npos) return false;
  line.erase(0, b);
  line.erase(line.find_last_not_of(" \t\r") + 1);
  return true;
}

}  // namespace

Structure parseStructure(std::istream& in) {
  Structure m;
  bool haveDomain = false;
  std::string line;
  int lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    if (!significant(line)) continue;
    auto colon = line.find(':');
    if (colon == std::string::npos)
      throw ParseError(lineNo, 1, "expected 'name: ...'");
    std::string name = line.substr(0, colon);
    name.erase(name.find_last_not_of(" \t") + 1);
    std::istringstream rest(line.substr(colon + 1));
    if (!haveDomain) {
      if (name != "domain")
        throw ParseError(lineNo, 1, "structure must start with 'domain: <size>'");
      if (!(rest >> m.size) || m.size < 1)
        throw ParseError(lineNo, 1, "domain size must be a positive integer");
      std::string extra;
      if (rest >> extra) throw ParseError(lineNo, 1, "trailing text after domain size");
      haveDomain = true;
      continue;
    }
    if (name == "domain") throw ParseError(lineNo, 1, "duplicate domain line");
    if (name.empty()) throw ParseError(lineNo, 1, "empty atom name");
    std::vector<bool> ext(m.size, false);
    int elem;
    while (rest >> elem) {
      if (elem < 0 || elem >= m.size)
        throw ParseError(lineNo, 1, "element out of range for domain");
      ext[elem] = true;
    }
    if (!rest.eof()) throw ParseError(lineNo, 1, "elements must be integers");
    m.setExtent(name, std::move(ext));
  }
  if (!haveDomain) throw ParseError(1, 1, "missing 'domain: <size>' line");
  return m;
}

Structure parseStructureText(const std::string& text) {
  std::istringstream in(text);
  return parseStructure(in);
}

}  // namespace syllog
