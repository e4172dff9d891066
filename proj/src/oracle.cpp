#include "syllog/oracle.hpp"

#include <algorithm>
#include <cassert>
#include <cstdlib>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace syllog {

namespace {

// Minimal conflict-driven clause learning solver. Fixed ascending branching
// order with false-first polarity keeps runs deterministic; no restarts, no
// clause deletion. Literals are +-(var+1) on variables 0..nvars-1.
class SatSolver {
 public:
  explicit SatSolver(int nvars)
      : nvars_(nvars), value_(nvars, 0), level_(nvars, 0), reason_(nvars, -1),
        seen_(nvars, 0), watches_(2 * static_cast<size_t>(nvars)) {}

  void addClause(std::vector<int> lits) {
    if (!ok_) return;
    std::sort(lits.begin(), lits.end(), [](int a, int b) {
      return std::abs(a) != std::abs(b) ? std::abs(a) < std::abs(b) : a < b;
    });
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
    for (size_t i = 0; i + 1 < lits.size(); ++i)
      if (lits[i] == -lits[i + 1]) return;  // tautology
    if (lits.empty()) {
      ok_ = false;
      return;
    }
    if (lits.size() == 1) {
      units_.push_back(lits[0]);
      return;
    }
    attach(std::move(lits));
  }

  bool solve() {
    if (!ok_) return false;
    for (int u : units_) {
      if (valueLit(u) < 0) return false;
      if (valueLit(u) == 0) enqueue(u, -1);
    }
    if (propagate() != -1) return false;
    for (;;) {
      int confl = propagate();
      if (confl != -1) {
        if (trailLim_.empty()) return false;  // conflict with no decisions left
        std::vector<int> learnt;
        int back = analyze(confl, learnt);
        cancelUntil(back);
        if (learnt.size() == 1) {
          enqueue(learnt[0], -1);
        } else {
          int ci = attach(std::move(learnt));
          enqueue(clauses_[ci][0], ci);
        }
      } else {
        int v = nextVar_;
        while (v < nvars_ && value_[v] != 0) ++v;
        nextVar_ = v;
        if (v == nvars_) return true;
        trailLim_.push_back(static_cast<int>(trail_.size()));
        enqueue(-(v + 1), -1);  // try "not a member" first
      }
    }
  }

  bool varTrue(int v) const { return value_[v] > 0; }

 private:
  int attach(std::vector<int> lits) {
    int ci = static_cast<int>(clauses_.size());
    watches_[litIndex(lits[0])].push_back(ci);
    watches_[litIndex(lits[1])].push_back(ci);
    clauses_.push_back(std::move(lits));
    return ci;
  }

  size_t litIndex(int lit) const {
    return 2 * static_cast<size_t>(std::abs(lit) - 1) + (lit > 0 ? 0 : 1);
  }
  int valueLit(int lit) const {
    int v = value_[std::abs(lit) - 1];
    return lit > 0 ? v : -v;
  }

  void enqueue(int lit, int reason) {
    int v = std::abs(lit) - 1;
    assert(value_[v] == 0);
    value_[v] = lit > 0 ? 1 : -1;
    level_[v] = static_cast<int>(trailLim_.size());
    reason_[v] = reason;
    trail_.push_back(lit);
  }

  int propagate() {
    while (qhead_ < trail_.size()) {
      int p = trail_[qhead_++];
      auto& ws = watches_[litIndex(-p)];
      size_t keep = 0;
      for (size_t wi = 0; wi < ws.size(); ++wi) {
        int ci = ws[wi];
        auto& c = clauses_[ci];
        if (c[0] == -p) std::swap(c[0], c[1]);
        if (valueLit(c[0]) > 0) {
          ws[keep++] = ci;
          continue;
        }
        bool moved = false;
        for (size_t k = 2; k < c.size(); ++k) {
          if (valueLit(c[k]) >= 0) {
            std::swap(c[1], c[k]);
            watches_[litIndex(c[1])].push_back(ci);
            moved = true;
            break;
          }
        }
        if (moved) continue;
        ws[keep++] = ci;
        if (valueLit(c[0]) < 0) {
          for (size_t rest = wi + 1; rest < ws.size(); ++rest) ws[keep++] = ws[rest];
          ws.resize(keep);
          qhead_ = trail_.size();
          return ci;
        }
        enqueue(c[0], ci);
      }
      ws.resize(keep);
    }
    return -1;
  }

  // First-UIP conflict analysis; returns the backjump level and fills the
  // learnt clause with the asserting literal first.
  int analyze(int confl, std::vector<int>& learnt) {
    learnt.assign(1, 0);
    int counter = 0;
    int p = 0;
    int index = static_cast<int>(trail_.size()) - 1;
    int curLevel = static_cast<int>(trailLim_.size());
    std::vector<int> toClear;
    do {
      assert(confl != -1);
      const auto& c = clauses_[confl];
      for (size_t j = (p == 0 ? 0 : 1); j < c.size(); ++j) {
        int q = c[j];
        int v = std::abs(q) - 1;
        if (!seen_[v] && level_[v] > 0) {
          seen_[v] = 1;
          toClear.push_back(v);
          if (level_[v] == curLevel)
            ++counter;
          else
            learnt.push_back(q);
        }
      }
      while (!seen_[std::abs(trail_[index]) - 1]) --index;
      p = trail_[index];
      int v = std::abs(p) - 1;
      confl = reason_[v];
      seen_[v] = 0;
      --counter;
      --index;
    } while (counter > 0);
    learnt[0] = -p;
    int back = 0;
    size_t maxAt = 1;
    for (size_t j = 1; j < learnt.size(); ++j) {
      int lv = level_[std::abs(learnt[j]) - 1];
      if (lv > back) {
        back = lv;
        maxAt = j;
      }
    }
    if (learnt.size() > 1) std::swap(learnt[1], learnt[maxAt]);
    for (int v : toClear) seen_[v] = 0;
    return back;
  }

  void cancelUntil(int target) {
    if (static_cast<int>(trailLim_.size()) <= target) return;
    size_t cut = trailLim_[target];
    for (size_t i = trail_.size(); i-- > cut;) {
      int v = std::abs(trail_[i]) - 1;
      value_[v] = 0;
      reason_[v] = -1;
      // Anything we unassign may sit below the decision cursor.
      nextVar_ = std::min(nextVar_, v);
    }
    trail_.resize(cut);
    qhead_ = cut;
    trailLim_.resize(target);
  }

  int nvars_;
  bool ok_ = true;
  std::vector<int8_t> value_;
  std::vector<int> level_;
  std::vector<int> reason_;
  std::vector<int8_t> seen_;
  std::vector<std::vector<int>> watches_;
  std::vector<std::vector<int>> clauses_;
  std::vector<int> units_;
  std::vector<int> trail_;
  std::vector<int> trailLim_;
  size_t qhead_ = 0;
  int nextVar_ = 0;
};

// Membership condition of one element in one term, as a CNF-ready shape.
struct Cond {
  enum Kind { True, False, Single, Conj, Disj } kind;
  std::vector<int> lits;
};

struct CnfBuilder {
  const std::vector<std::string>& atoms;
  int n;  // domain size
  int nextVar;
  std::vector<std::vector<int>> clauses;
  bool trivialUnsat = false;

  CnfBuilder(const std::vector<std::string>& as, int size)
      : atoms(as), n(size), nextVar(static_cast<int>(as.size()) * size) {}

  int memberVar(int atomIdx, int elem) const { return atomIdx * n + elem + 1; }

  int atomIndex(const std::string& name) const {
    auto it = std::lower_bound(atoms.begin(), atoms.end(), name);
    assert(it != atoms.end() && *it == name);
    return static_cast<int>(it - atoms.begin());
  }

  Cond membership(const ETerm& t, int elem) {
    int base = memberVar(atomIndex(t.lit.atom), elem);
    int sign = t.lit.positive ? 1 : -1;
    switch (t.shape) {
      case TermShape::Lit:
        return {Cond::Single, {sign * base}};
      case TermShape::AllOf: {
        // elem is in "all l" iff no other element is in l.
        Cond c{Cond::Conj, {}};
        for (int y = 0; y < n; ++y)
          if (y != elem) c.lits.push_back(-sign * memberVar(atomIndex(t.lit.atom), y));
        if (c.lits.empty()) return {Cond::True, {}};
        if (c.lits.size() == 1) return {Cond::Single, c.lits};
        return c;
      }
      case TermShape::NotAllOf: {
        Cond c{Cond::Disj, {}};
        for (int y = 0; y < n; ++y)
          if (y != elem) c.lits.push_back(sign * memberVar(atomIndex(t.lit.atom), y));
        if (c.lits.empty()) return {Cond::False, {}};
        if (c.lits.size() == 1) return {Cond::Single, c.lits};
        return c;
      }
    }
    assert(false && "bad shape");
    return {Cond::False, {}};
  }

  void emit(std::vector<int> lits) { clauses.push_back(std::move(lits)); }

  // lhs implies rhs, lhs a single literal (or unconditional when lhs == 0).
  void implyCond(int lhs, const Cond& rhs) {
    std::vector<int> head;
    if (lhs != 0) head.push_back(-lhs);
    switch (rhs.kind) {
      case Cond::True:
        return;
      case Cond::False:
        if (head.empty())
          trivialUnsat = true;
        else
          emit(head);
        return;
      case Cond::Single:
      case Cond::Disj: {
        auto cl = head;
        cl.insert(cl.end(), rhs.lits.begin(), rhs.lits.end());
        emit(std::move(cl));
        return;
      }
      case Cond::Conj:
        for (int l : rhs.lits) {
          auto cl = head;
          cl.push_back(l);
          emit(std::move(cl));
        }
        return;
    }
  }

  void addUniversal(const Formula& f) {
    for (int x = 0; x < n; ++x) {
      Cond lhs = membership(f.subject, x);
      Cond rhs = membership(f.predicate, x);
      switch (lhs.kind) {
        case Cond::False:
          break;
        case Cond::True:
          implyCond(0, rhs);
          break;
        case Cond::Single:
          implyCond(lhs.lits[0], rhs);
          break;
        case Cond::Conj: {
          // (l1 & l2 & ...) -> rhs: negated lits join each rhs clause.
          switch (rhs.kind) {
            case Cond::True:
              break;
            case Cond::False: {
              std::vector<int> cl;
              for (int l : lhs.lits) cl.push_back(-l);
              emit(std::move(cl));
              break;
            }
            case Cond::Single:
            case Cond::Disj: {
              std::vector<int> cl;
              for (int l : lhs.lits) cl.push_back(-l);
              cl.insert(cl.end(), rhs.lits.begin(), rhs.lits.end());
              emit(std::move(cl));
              break;
            }
            case Cond::Conj:
              for (int r : rhs.lits) {
                std::vector<int> cl;
                for (int l : lhs.lits) cl.push_back(-l);
                cl.push_back(r);
                emit(std::move(cl));
              }
              break;
          }
          break;
        }
        case Cond::Disj:
          for (int l : lhs.lits) implyCond(l, rhs);
          break;
      }
    }
  }

  void addExistential(const Formula& f) {
    std::vector<int> witnesses;
    for (int x = 0; x < n; ++x) {
      Cond a = membership(f.subject, x);
      Cond b = membership(f.predicate, x);
      if (a.kind == Cond::False || b.kind == Cond::False) continue;
      if (a.kind == Cond::True && b.kind == Cond::True) return;  // always satisfied
      int w = ++nextVar;
      witnesses.push_back(w);
      implyCond(w, a);
      implyCond(w, b);
    }
    if (witnesses.empty()) {
      trivialUnsat = true;
      return;
    }
    emit(std::move(witnesses));
  }
};

bool searchAtSize(const std::vector<Formula>& formulas,
                  const std::vector<std::string>& atoms, int size,
                  Structure& out) {
  CnfBuilder b(atoms, size);
  for (const auto& f : formulas) {
    if (f.quant == Quant::All)
      b.addUniversal(f);
    else
      b.addExistential(f);
  }
  if (b.trivialUnsat) return false;
  SatSolver solver(b.nextVar);
  for (auto& c : b.clauses) solver.addClause(std::move(c));
  if (!solver.solve()) return false;
  Structure m;
  m.size = size;
  for (size_t i = 0; i < atoms.size(); ++i) {
    std::uint64_t mask = 0;
    for (int e = 0; e < size; ++e)
      if (solver.varTrue(static_cast<int>(i) * size + e)) mask |= 1ull << e;
    m.setExtentMask(atoms[i], mask);
  }
  out = m;
  return true;
}

}  // namespace

OracleResult boundedModelSearch(const std::vector<Formula>& formulas,
                                const OracleConfig& cfg) {
  std::vector<std::string> atoms = atomsOf(formulas);
  int maxSize = cfg.maxSize > 0 ? cfg.maxSize : static_cast<int>(atoms.size()) + 2;
  if (maxSize > 62) maxSize = 62;
  if (maxSize < 1) maxSize = 1;

  OracleResult res;
  res.bound = maxSize;

  std::vector<int> status(maxSize + 1, 0);  // 0 pending, 1 sat, -1 unsat
  std::vector<Structure> models(maxSize + 1);

  int jobs = std::max(1, cfg.jobs);
#ifdef _OPENMP
  if (jobs > 1) {
    int firstSat = maxSize + 1;
#pragma omp parallel for num_threads(jobs) schedule(dynamic, 1)
    for (int size = 1; size <= maxSize; ++size) {
      int cutoff;
#pragma omp atomic read
      cutoff = firstSat;
      if (size > cutoff) continue;  // a smaller model already exists
      Structure m;
      if (searchAtSize(formulas, atoms, size, m)) {
        status[size] = 1;
        models[size] = m;
#pragma omp critical
        firstSat = std::min(firstSat, size);
      } else {
        status[size] = -1;
      }
    }
  } else
#endif
  {
    (void)jobs;
    for (int size = 1; size <= maxSize; ++size) {
      Structure m;
      if (searchAtSize(formulas, atoms, size, m)) {
        status[size] = 1;
        models[size] = m;
        break;
      }
      status[size] = -1;
    }
  }

  for (int size = 1; size <= maxSize; ++size) {
    if (status[size] == 1) {
      res.found = true;
      res.model = models[size];
      if (!satisfiesAll(res.model, formulas))
        throw std::logic_error("bounded search produced a non-model");
      return res;
    }
    if (status[size] == 0) break;  // skipped gap; nothing below was sat
  }
  return res;
}

OracleResult boundedModelAtSize(const std::vector<Formula>& formulas, int size) {
  if (size < 1 || size > 62) throw std::invalid_argument("domain size out of range");
  std::vector<std::string> atoms = atomsOf(formulas);
  OracleResult res;
  res.bound = size;
  Structure m;
  if (searchAtSize(formulas, atoms, size, m)) {
    res.found = true;
    res.model = m;
    if (!satisfiesAll(res.model, formulas))
      throw std::logic_error("bounded search produced a non-model");
  }
  return res;
}

OracleResult boundedCounterModel(const std::vector<Formula>& premises,
                                 const Formula& goal, const OracleConfig& cfg) {
  std::vector<Formula> all = premises;
  all.push_back(negation(goal));
  return boundedModelSearch(all, cfg);
}

}  // namespace syllog
