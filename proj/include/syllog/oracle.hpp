// Brute-force bounded model finding, independent of the proof machinery.
//
// The search enumerates interpretations of the occurring atoms over domains
// of size 1, 2, ..., maxSize in order, so a hit is a minimum-size model. The
// enumeration is organized as backtracking over the individual membership
// bits (atom, element) with unit propagation and clause learning cutting off
// assignments that can no longer work; no isomorphism reduction is applied,
// so the searched space is exactly the full set of subset assignments.
// Results are deterministic, including under jobs > 1.
#pragma once

#include <vector>

#include "syllog/semantics.hpp"
#include "syllog/syntax.hpp"

namespace syllog {

struct OracleConfig {
  int maxSize = 0;  // 0 means: number of occurring atoms + 2
  int jobs = 1;
};

struct OracleResult {
  bool found = false;
  Structure model;      // meaningful when found; re-verified before return
  int bound = 0;        // largest domain size examined
};

OracleResult boundedModelSearch(const std::vector<Formula>& formulas,
                                const OracleConfig& cfg = {});

// Single-size variant: looks for a model with domain size exactly `size`,
// trying no other sizes. Throws std::invalid_argument outside 1..62.
OracleResult boundedModelAtSize(const std::vector<Formula>& formulas, int size);

// Searches for a counter-model of the entailment, i.e. a model of
// premises + negation(goal). found == false only says there is no
// counter-model up to the bound, never that the entailment holds.
OracleResult boundedCounterModel(const std::vector<Formula>& premises,
                                 const Formula& goal,
                                 const OracleConfig& cfg = {});

}  // namespace syllog
