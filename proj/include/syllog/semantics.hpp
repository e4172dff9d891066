// Finite structures and truth evaluation.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "syllog/syntax.hpp"

namespace syllog {

// A finite interpretation: domain {0, ..., size-1} plus one subset per atom.
// An atom missing from the map denotes the empty set.
struct Structure {
  int size = 0;
  std::map<std::string, std::vector<bool>> extents;  // each exactly `size` long

  bool member(const std::string& atom, int elem) const {
    auto it = extents.find(atom);
    return it != extents.end() && it->second[elem];
  }
  int extentCount(const std::string& atom) const;
  void setExtent(const std::string& atom, std::vector<bool> ext);

  // Bitmask convenience for small domains (size <= 64).
  void setExtentMask(const std::string& atom, std::uint64_t mask);
  std::uint64_t extentMask(const std::string& atom) const;

  friend bool operator==(const Structure&, const Structure&) = default;
};

// Element set denoted by a term. A literal denotes its extent (or the
// complement); "all l" denotes the elements a with the l-extent included in
// {a}, so it is the whole domain when l is empty, the singleton itself when
// l is a singleton, and empty otherwise; "nall l" is the complement of that.
std::vector<bool> evalETerm(const Structure& m, const ETerm& t);

bool satisfies(const Structure& m, const Formula& f);
bool satisfiesAll(const Structure& m, const std::vector<Formula>& fs);

// ---- text form ----
//
//   domain: 3
//   p: 0 2
//   q: 1
//
// One "atom: elements" line per nonempty atom; order and omitted atoms do
// not matter when reading. "#" starts a comment.
std::string printStructure(const Structure& m);
Structure parseStructure(std::istream& in);
Structure parseStructureText(const std::string& text);

}  // namespace syllog
