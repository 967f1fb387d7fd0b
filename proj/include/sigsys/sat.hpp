#ifndef SIGSYS_SAT_HPP
#define SIGSYS_SAT_HPP

// Small CDCL solver: two watched literals, first-UIP learning, activity
// ordered decisions with phase saving, Luby restarts, solving under
// assumptions. Literals use DIMACS conventions (v / -v, v >= 1).

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <cstdlib>
#include <span>
#include <vector>

namespace sigsys::sat {

using Lit = int;

inline int var_of(Lit l) { return std::abs(l); }

class Solver {
 public:
  int new_var() {
    ++num_vars_;
    assign_.push_back(kUndef);
    level_.push_back(0);
    reason_.push_back(-1);
    activity_.push_back(0.0);
    phase_.push_back(false);
    heap_index_.push_back(-1);
    seen_.push_back(0);
    watches_.emplace_back();
    watches_.emplace_back();
    heap_insert(num_vars_);
    return num_vars_;
  }

  void ensure_vars(int n) {
    while (num_vars_ < n) new_var();
  }

  int num_vars() const { return num_vars_; }

  // Returns false once the clause database is known to be unsatisfiable.
  bool add_clause(std::span<const Lit> lits) {
    if (!ok_) return false;
    cancel_until(0);
    std::vector<Lit> c;
    c.reserve(lits.size());
    for (Lit l : lits) {
      assert(l != 0);
      ensure_vars(var_of(l));
      if (value(l) == kTrue) return true;
      if (value(l) == kFalse) continue;
      if (std::find(c.begin(), c.end(), -l) != c.end()) return true;
      if (std::find(c.begin(), c.end(), l) == c.end()) c.push_back(l);
    }
    if (c.empty()) return ok_ = false;
    if (c.size() == 1) {
      enqueue(c[0], -1);
      if (propagate() != -1) ok_ = false;
      return ok_;
    }
    attach(std::move(c), false);
    return true;
  }

  bool add_clause(std::initializer_list<Lit> lits) {
    return add_clause(std::span<const Lit>(lits.begin(), lits.size()));
  }

  bool solve(std::span<const Lit> assumptions = {}) {
    model_.clear();
    if (!ok_) return false;
    for (Lit a : assumptions) ensure_vars(var_of(a));
    cancel_until(0);
    if (propagate() != -1) return ok_ = false;

    int restart_round = 0;
    while (true) {
      const long budget = 100L * luby(++restart_round);
      const int r = search(budget, assumptions);
      if (r == kTrue) {
        model_.assign(static_cast<std::size_t>(num_vars_) + 1, false);
        for (int v = 1; v <= num_vars_; ++v) model_[v] = assign_[v] == kTrue;
        cancel_until(0);
        return true;
      }
      if (r == kFalse) {
        cancel_until(0);
        return false;
      }
    }
  }

  bool solve(std::initializer_list<Lit> assumptions) {
    return solve(std::span<const Lit>(assumptions.begin(), assumptions.size()));
  }

  // Model value after a successful solve(); variables beyond the model read false.
  bool model_value(int v) const { return v < static_cast<int>(model_.size()) && model_[v]; }

 private:
  static constexpr std::int8_t kTrue = 1, kFalse = -1, kUndef = 0;

  struct Clause {
    std::vector<Lit> lits;
    bool learnt;
  };

  std::size_t widx(Lit l) const { return 2 * static_cast<std::size_t>(var_of(l)) + (l < 0 ? 1 : 0); }

  std::int8_t value(Lit l) const {
    const std::int8_t a = assign_[var_of(l)];
    return l > 0 ? a : static_cast<std::int8_t>(-a);
  }

  int decision_level() const { return static_cast<int>(trail_lim_.size()); }

  void attach(std::vector<Lit> lits, bool learnt) {
    const int ci = static_cast<int>(clauses_.size());
    watches_[widx(-lits[0])].push_back(ci);
    watches_[widx(-lits[1])].push_back(ci);
    clauses_.push_back(Clause{std::move(lits), learnt});
  }

  void enqueue(Lit l, int reason) {
    const int v = var_of(l);
    assign_[v] = l > 0 ? kTrue : kFalse;
    level_[v] = decision_level();
    reason_[v] = reason;
    trail_.push_back(l);
  }

  // Returns the index of a conflicting clause or -1.
  int propagate() {
    while (qhead_ < trail_.size()) {
      const Lit p = trail_[qhead_++];  // p became true, so -p is false
      auto& ws = watches_[widx(p)];
      std::size_t i = 0, j = 0;
      int conflict = -1;
      while (i < ws.size()) {
        const int ci = ws[i++];
        auto& c = clauses_[ci].lits;
        if (c[0] == -p) std::swap(c[0], c[1]);
        if (value(c[0]) == kTrue) {
          ws[j++] = ci;
          continue;
        }
        bool moved = false;
        for (std::size_t k = 2; k < c.size(); ++k) {
          if (value(c[k]) != kFalse) {
            std::swap(c[1], c[k]);
            watches_[widx(-c[1])].push_back(ci);
            moved = true;
            break;
          }
        }
        if (moved) continue;
        ws[j++] = ci;
        if (value(c[0]) == kFalse) {
          conflict = ci;
          while (i < ws.size()) ws[j++] = ws[i++];
        } else {
          enqueue(c[0], ci);
        }
      }
      ws.resize(j);
      if (conflict != -1) return conflict;
    }
    return -1;
  }

  void analyze(int conflict, std::vector<Lit>& learnt, int& back_level) {
    learnt.assign(1, 0);
    int pending = 0;
    Lit p = 0;
    std::size_t idx = trail_.size();
    int ci = conflict;
    do {
      const auto& c = clauses_[ci].lits;
      for (std::size_t k = (p == 0 ? 0 : 1); k < c.size(); ++k) {
        const Lit q = c[k];
        const int v = var_of(q);
        if (!seen_[v] && level_[v] > 0) {
          seen_[v] = 1;
          bump(v);
          if (level_[v] >= decision_level())
            ++pending;
          else
            learnt.push_back(q);
        }
      }
      do {
        p = trail_[--idx];
      } while (!seen_[var_of(p)]);
      ci = reason_[var_of(p)];
      seen_[var_of(p)] = 0;
      --pending;
    } while (pending > 0);
    learnt[0] = -p;

    back_level = 0;
    std::size_t max_i = 1;
    for (std::size_t k = 1; k < learnt.size(); ++k) {
      if (level_[var_of(learnt[k])] > back_level) {
        back_level = level_[var_of(learnt[k])];
        max_i = k;
      }
    }
    if (learnt.size() > 1) std::swap(learnt[1], learnt[max_i]);
    for (std::size_t k = 1; k < learnt.size(); ++k) seen_[var_of(learnt[k])] = 0;
    decay();
  }

  void cancel_until(int level) {
    if (decision_level() <= level) return;
    for (std::size_t k = trail_.size(); k-- > static_cast<std::size_t>(trail_lim_[level]);) {
      const int v = var_of(trail_[k]);
      phase_[v] = assign_[v] == kTrue;
      assign_[v] = kUndef;
      reason_[v] = -1;
      if (heap_index_[v] < 0) heap_insert(v);
    }
    trail_.resize(static_cast<std::size_t>(trail_lim_[level]));
    trail_lim_.resize(static_cast<std::size_t>(level));
    qhead_ = trail_.size();
  }

  int search(long conflict_budget, std::span<const Lit> assumptions) {
    std::vector<Lit> learnt;
    long conflicts = 0;
    while (true) {
      const int confl = propagate();
      if (confl != -1) {
        ++conflicts;
        if (decision_level() == 0) return kFalse;
        int back = 0;
        analyze(confl, learnt, back);
        cancel_until(back);
        if (learnt.size() == 1) {
          enqueue(learnt[0], -1);
        } else {
          const int ci = static_cast<int>(clauses_.size());
          attach(learnt, true);
          enqueue(learnt[0], ci);
        }
        continue;
      }
      if (conflicts >= conflict_budget) {
        cancel_until(0);
        return kUndef;
      }
      Lit next = 0;
      while (decision_level() < static_cast<int>(assumptions.size())) {
        const Lit a = assumptions[static_cast<std::size_t>(decision_level())];
        if (value(a) == kTrue) {
          trail_lim_.push_back(static_cast<int>(trail_.size()));
        } else if (value(a) == kFalse) {
          return kFalse;
        } else {
          next = a;
          break;
        }
      }
      if (next == 0) {
        int v = 0;
        while (!heap_.empty()) {
          const int cand = heap_pop();
          if (assign_[cand] == kUndef) {
            v = cand;
            break;
          }
        }
        if (v == 0) return kTrue;
        next = phase_[v] ? v : -v;
      }
      trail_lim_.push_back(static_cast<int>(trail_.size()));
      enqueue(next, -1);
    }
  }

  static long luby(int i) {
    // Luby sequence 1 1 2 1 1 2 4 ...
    long size = 1;
    int seq = 0;
    while (size < i + 1) {
      ++seq;
      size = 2 * size + 1;
    }
    long x = i;
    while (size - 1 != x) {
      size = (size - 1) >> 1;
      --seq;
      x = x % size;
    }
    return 1L << seq;
  }

  void bump(int v) {
    activity_[v] += var_inc_;
    if (activity_[v] > 1e100) {
      for (auto& a : activity_) a *= 1e-100;
      var_inc_ *= 1e-100;
    }
    if (heap_index_[v] >= 0) heap_up(heap_index_[v]);
  }
  void decay() { var_inc_ /= 0.95; }

  bool heap_less(int a, int b) const { return activity_[a] > activity_[b] || (activity_[a] == activity_[b] && a < b); }
  void heap_insert(int v) {
    heap_index_[v] = static_cast<int>(heap_.size());
    heap_.push_back(v);
    heap_up(heap_index_[v]);
  }
  void heap_up(int i) {
    const int v = heap_[i];
    while (i > 0) {
      const int parent = (i - 1) / 2;
      if (!heap_less(v, heap_[parent])) break;
      heap_[i] = heap_[parent];
      heap_index_[heap_[i]] = i;
      i = parent;
    }
    heap_[i] = v;
    heap_index_[v] = i;
  }
  int heap_pop() {
    const int top = heap_[0];
    heap_index_[top] = -1;
    const int last = heap_.back();
    heap_.pop_back();
    if (!heap_.empty()) {
      int i = 0;
      const int n = static_cast<int>(heap_.size());
      while (true) {
        int child = 2 * i + 1;
        if (child >= n) break;
        if (child + 1 < n && heap_less(heap_[child + 1], heap_[child])) ++child;
        if (!heap_less(heap_[child], last)) break;
        heap_[i] = heap_[child];
        heap_index_[heap_[i]] = i;
        i = child;
      }
      heap_[i] = last;
      heap_index_[last] = i;
    }
    return top;
  }

  int num_vars_ = 0;
  bool ok_ = true;
  std::vector<Clause> clauses_;
  std::vector<std::vector<int>> watches_ = std::vector<std::vector<int>>(2);
  std::vector<std::int8_t> assign_ = {kUndef};
  std::vector<int> level_ = {0};
  std::vector<int> reason_ = {-1};
  std::vector<double> activity_ = {0.0};
  std::vector<bool> phase_ = {false};
  std::vector<int> heap_index_ = {-1};
  std::vector<char> seen_ = {0};
  std::vector<int> heap_;
  std::vector<Lit> trail_;
  std::vector<int> trail_lim_;
  std::size_t qhead_ = 0;
  double var_inc_ = 1.0;
  std::vector<bool> model_;
};

}  // namespace sigsys::sat

#endif  // SIGSYS_SAT_HPP
