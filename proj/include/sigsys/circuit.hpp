#ifndef SIGSYS_CIRCUIT_HPP
#define SIGSYS_CIRCUIT_HPP

// Hash-consed Boolean circuits over integer variables. This is the working
// representation behind every satisfiability call: formulas are lowered into
// a Circuit, simplified on construction, and clausified by a definitional
// (Tseitin) translation.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sigsys/formula.hpp"
#include "sigsys/sat.hpp"

namespace sigsys {

class Circuit {
 public:
  using Ref = int;
  static constexpr Ref kFalse = 0;
  static constexpr Ref kTrue = 1;

  enum class Kind : std::uint8_t { constant, var, negation, conj, disj, iff };

  struct Node {
    Kind kind;
    int a;  // variable id, or first operand
    int b;  // second operand
  };

  Circuit() {
    nodes_.push_back({Kind::constant, 0, 0});
    nodes_.push_back({Kind::constant, 1, 0});
  }

  const Node& node(Ref r) const { return nodes_[static_cast<std::size_t>(r)]; }
  std::size_t size() const { return nodes_.size(); }

  int new_var() { return ++num_vars_; }
  int num_vars() const { return num_vars_; }

  Ref var(int v) {
    if (v > num_vars_) num_vars_ = v;
    return intern({Kind::var, v, 0});
  }

  Ref constant(bool b) const { return b ? kTrue : kFalse; }

  Ref make_not(Ref x) {
    if (x == kTrue) return kFalse;
    if (x == kFalse) return kTrue;
    if (node(x).kind == Kind::negation) return node(x).a;
    return intern({Kind::negation, x, 0});
  }

  Ref make_and(Ref x, Ref y) {
    if (x == kFalse || y == kFalse) return kFalse;
    if (x == kTrue) return y;
    if (y == kTrue) return x;
    if (x == y) return x;
    if (is_complement(x, y)) return kFalse;
    if (x > y) std::swap(x, y);
    return intern({Kind::conj, x, y});
  }

  Ref make_or(Ref x, Ref y) {
    if (x == kTrue || y == kTrue) return kTrue;
    if (x == kFalse) return y;
    if (y == kFalse) return x;
    if (x == y) return x;
    if (is_complement(x, y)) return kTrue;
    if (x > y) std::swap(x, y);
    return intern({Kind::disj, x, y});
  }

  Ref make_implies(Ref x, Ref y) { return make_or(make_not(x), y); }

  Ref make_iff(Ref x, Ref y) {
    if (x == kTrue) return y;
    if (y == kTrue) return x;
    if (x == kFalse) return make_not(y);
    if (y == kFalse) return make_not(x);
    if (x == y) return kTrue;
    if (is_complement(x, y)) return kFalse;
    if (x > y) std::swap(x, y);
    return intern({Kind::iff, x, y});
  }

  Ref make_and(std::span<const Ref> xs) {
    Ref acc = kTrue;
    for (Ref x : xs) acc = make_and(acc, x);
    return acc;
  }

  Ref make_or(std::span<const Ref> xs) {
    Ref acc = kFalse;
    for (Ref x : xs) acc = make_or(acc, x);
    return acc;
  }

  // Replace variables by circuits. Variables not in `map` stay.
  Ref substitute(Ref root, const std::unordered_map<int, Ref>& map) {
    std::unordered_map<Ref, Ref> memo;
    return subst_rec(root, map, memo);
  }

  // Variables reachable from root.
  std::vector<int> support(Ref root) const {
    std::vector<int> out;
    std::vector<char> seen(nodes_.size(), 0);
    std::vector<Ref> stack{root};
    while (!stack.empty()) {
      const Ref r = stack.back();
      stack.pop_back();
      if (seen[static_cast<std::size_t>(r)]) continue;
      seen[static_cast<std::size_t>(r)] = 1;
      const Node& n = node(r);
      switch (n.kind) {
        case Kind::constant:
          break;
        case Kind::var:
          out.push_back(n.a);
          break;
        case Kind::negation:
          stack.push_back(n.a);
          break;
        default:
          stack.push_back(n.a);
          stack.push_back(n.b);
      }
    }
    return out;
  }

  bool evaluate(Ref root, const std::unordered_map<int, bool>& values) const {
    std::unordered_map<Ref, bool> memo;
    return eval_rec(root, values, memo);
  }

 private:
  struct KeyHash {
    std::size_t operator()(const Node& n) const noexcept {
      std::size_t h = static_cast<std::size_t>(n.kind);
      h = h * 1000003u ^ static_cast<std::size_t>(n.a);
      h = h * 1000003u ^ static_cast<std::size_t>(n.b);
      return h;
    }
  };
  struct KeyEq {
    bool operator()(const Node& x, const Node& y) const noexcept {
      return x.kind == y.kind && x.a == y.a && x.b == y.b;
    }
  };

  bool is_complement(Ref x, Ref y) const {
    return (node(x).kind == Kind::negation && node(x).a == y) || (node(y).kind == Kind::negation && node(y).a == x);
  }

  Ref intern(Node n) {
    auto [it, inserted] = table_.try_emplace(n, static_cast<Ref>(nodes_.size()));
    if (inserted) nodes_.push_back(n);
    return it->second;
  }

  Ref subst_rec(Ref r, const std::unordered_map<int, Ref>& map, std::unordered_map<Ref, Ref>& memo) {
    if (auto it = memo.find(r); it != memo.end()) return it->second;
    const Node n = node(r);
    Ref out = r;
    switch (n.kind) {
      case Kind::constant:
        break;
      case Kind::var:
        if (auto it = map.find(n.a); it != map.end()) out = it->second;
        break;
      case Kind::negation:
        out = make_not(subst_rec(n.a, map, memo));
        break;
      case Kind::conj:
        out = make_and(subst_rec(n.a, map, memo), subst_rec(n.b, map, memo));
        break;
      case Kind::disj:
        out = make_or(subst_rec(n.a, map, memo), subst_rec(n.b, map, memo));
        break;
      case Kind::iff:
        out = make_iff(subst_rec(n.a, map, memo), subst_rec(n.b, map, memo));
        break;
    }
    memo.emplace(r, out);
    return out;
  }

  bool eval_rec(Ref r, const std::unordered_map<int, bool>& values, std::unordered_map<Ref, bool>& memo) const {
    if (auto it = memo.find(r); it != memo.end()) return it->second;
    const Node& n = node(r);
    bool out = false;
    switch (n.kind) {
      case Kind::constant:
        out = n.a != 0;
        break;
      case Kind::var: {
        auto it = values.find(n.a);
        out = it != values.end() && it->second;
        break;
      }
      case Kind::negation:
        out = !eval_rec(n.a, values, memo);
        break;
      case Kind::conj:
        out = eval_rec(n.a, values, memo) && eval_rec(n.b, values, memo);
        break;
      case Kind::disj:
        out = eval_rec(n.a, values, memo) || eval_rec(n.b, values, memo);
        break;
      case Kind::iff:
        out = eval_rec(n.a, values, memo) == eval_rec(n.b, values, memo);
        break;
    }
    memo.emplace(r, out);
    return out;
  }

  std::vector<Node> nodes_;
  std::unordered_map<Node, Ref, KeyHash, KeyEq> table_;
  int num_vars_ = 0;
};

// Lowers propositional formulas into a circuit, numbering atoms on first use.
class AtomNumbering {
 public:
  int id(const Atom& a, Circuit& c) {
    auto [it, inserted] = ids_.try_emplace(a, 0);
    if (inserted) {
      it->second = c.new_var();
      atoms_.push_back(a);
      by_id_.emplace(it->second, a);
    }
    return it->second;
  }
  std::optional<int> find(const Atom& a) const {
    auto it = ids_.find(a);
    if (it == ids_.end()) return std::nullopt;
    return it->second;
  }
  const Atom* atom_of(int id) const {
    auto it = by_id_.find(id);
    return it == by_id_.end() ? nullptr : &it->second;
  }
  const std::vector<Atom>& atoms() const { return atoms_; }

 private:
  std::unordered_map<Atom, int, AtomHash> ids_;
  std::unordered_map<int, Atom> by_id_;
  std::vector<Atom> atoms_;
};

inline Circuit::Ref lower(const Formula& f, Circuit& c, AtomNumbering& names) {
  switch (f.op()) {
    case Op::top:
      return Circuit::kTrue;
    case Op::bottom:
      return Circuit::kFalse;
    case Op::atom:
      return c.var(names.id(f.atom(), c));
    case Op::negation:
      return c.make_not(lower(f.lhs(), c, names));
    case Op::conj: {
      const auto l = lower(f.lhs(), c, names);
      return c.make_and(l, lower(f.rhs(), c, names));
    }
    case Op::disj: {
      const auto l = lower(f.lhs(), c, names);
      return c.make_or(l, lower(f.rhs(), c, names));
    }
    case Op::implies: {
      const auto l = lower(f.lhs(), c, names);
      return c.make_implies(l, lower(f.rhs(), c, names));
    }
    case Op::iff: {
      const auto l = lower(f.lhs(), c, names);
      return c.make_iff(l, lower(f.rhs(), c, names));
    }
    default:
      throw std::invalid_argument("lower: quantified formula where a propositional one is required");
  }
}

// Definitional clausification. Circuit variables keep their numbers as CNF
// variables; every internal gate gets a fresh variable from `next_var`.
// Nested conjunctions/disjunctions are flattened into single gates.
template <class Sink>
class Tseitin {
 public:
  // With `renumber`, circuit variable v becomes CNF variable renumber->at(v).
  Tseitin(const Circuit& c, Sink& sink, int first_aux, const std::unordered_map<int, int>* renumber = nullptr)
      : c_(c), sink_(sink), next_(first_aux), renumber_(renumber) {}

  // Literal equivalent to `r`.
  sat::Lit literal(Circuit::Ref r) {
    const auto& n = c_.node(r);
    if (n.kind == Circuit::Kind::var) return renumber_ ? renumber_->at(n.a) : n.a;
    if (n.kind == Circuit::Kind::negation) return -literal(n.a);
    if (n.kind == Circuit::Kind::constant) {
      // a pinned auxiliary variable stands for a constant below the root
      const sat::Lit t = true_lit();
      return n.a ? t : -t;
    }
    if (auto it = memo_.find(r); it != memo_.end()) return it->second;
    const sat::Lit out = next_++;
    memo_.emplace(r, out);
    if (n.kind == Circuit::Kind::iff) {
      const sat::Lit x = literal(n.a), y = literal(n.b);
      emit({-out, -x, y});
      emit({-out, x, -y});
      emit({out, x, y});
      emit({out, -x, -y});
      return out;
    }
    const bool is_and = n.kind == Circuit::Kind::conj;
    std::vector<sat::Lit> ops;
    flatten(r, n.kind, ops);
    // and: out -> x_i ; (all x_i) -> out.  or: dual.
    std::vector<sat::Lit> big;
    big.reserve(ops.size() + 1);
    for (sat::Lit x : ops) {
      if (is_and)
        emit({-out, x});
      else
        emit({out, -x});
      big.push_back(is_and ? -x : x);
    }
    big.push_back(is_and ? out : -out);
    sink_.add_clause(std::span<const sat::Lit>(big));
    return out;
  }

  // Assert `r` at the top level, splitting top conjunctions into separate
  // constraints. The constant false becomes the empty clause.
  void assert_root(Circuit::Ref r) {
    if (r == Circuit::kTrue) return;
    if (r == Circuit::kFalse) {
      sink_.add_clause(std::span<const sat::Lit>());
      return;
    }
    const auto& n = c_.node(r);
    if (n.kind == Circuit::Kind::conj) {
      std::vector<Circuit::Ref> refs;
      flatten_refs(r, Circuit::Kind::conj, refs);
      for (Circuit::Ref x : refs) assert_root(x);
      return;
    }
    if (n.kind == Circuit::Kind::disj) {
      std::vector<sat::Lit> ops;
      flatten(r, Circuit::Kind::disj, ops);
      sink_.add_clause(std::span<const sat::Lit>(ops));
      return;
    }
    const sat::Lit l = literal(r);
    sink_.add_clause(std::span<const sat::Lit>(&l, 1));
  }

  int next_var() const { return next_; }

 private:
  void emit(std::initializer_list<sat::Lit> lits) { sink_.add_clause(std::span<const sat::Lit>(lits.begin(), lits.size())); }

  sat::Lit true_lit() {
    if (true_ == 0) {
      true_ = next_++;
      emit({true_});
    }
    return true_;
  }

  void flatten_refs(Circuit::Ref r, Circuit::Kind k, std::vector<Circuit::Ref>& out) {
    const auto& n = c_.node(r);
    if (n.kind == k) {
      flatten_refs(n.a, k, out);
      flatten_refs(n.b, k, out);
    } else {
      out.push_back(r);
    }
  }

  void flatten(Circuit::Ref r, Circuit::Kind k, std::vector<sat::Lit>& out) {
    std::vector<Circuit::Ref> refs;
    flatten_refs(r, k, refs);
    out.reserve(refs.size());
    for (Circuit::Ref x : refs) out.push_back(literal(x));
  }

  const Circuit& c_;
  Sink& sink_;
  int next_;
  const std::unordered_map<int, int>* renumber_;
  sat::Lit true_ = 0;
  std::unordered_map<Circuit::Ref, sat::Lit> memo_;
};

// Satisfiability of a circuit; on success, `model` receives the values of
// all circuit variables (indexed by variable id).
inline bool satisfiable(const Circuit& c, Circuit::Ref root, std::vector<bool>* model = nullptr) {
  if (root == Circuit::kFalse) return false;
  if (root == Circuit::kTrue) {
    if (model) model->assign(static_cast<std::size_t>(c.num_vars()) + 1, false);
    return true;
  }
  sat::Solver s;
  s.ensure_vars(c.num_vars());
  Tseitin<sat::Solver> ts(c, s, c.num_vars() + 1);
  ts.assert_root(root);
  if (!s.solve()) return false;
  if (model) {
    model->assign(static_cast<std::size_t>(c.num_vars()) + 1, false);
    for (int v = 1; v <= c.num_vars(); ++v) (*model)[static_cast<std::size_t>(v)] = s.model_value(v);
  }
  return true;
}

// Satisfiability restricted to the variables reachable from root, numbered
// densely for the SAT call. On success `model` holds their values.
inline bool satisfiable_on_support(const Circuit& c, Circuit::Ref root, std::unordered_map<int, bool>* model = nullptr) {
  if (model) model->clear();
  if (root == Circuit::kFalse) return false;
  if (root == Circuit::kTrue) return true;
  const std::vector<int> vars = c.support(root);
  std::unordered_map<int, int> renumber;
  renumber.reserve(vars.size());
  for (std::size_t k = 0; k < vars.size(); ++k) renumber.emplace(vars[k], static_cast<int>(k) + 1);
  sat::Solver s;
  s.ensure_vars(static_cast<int>(vars.size()));
  Tseitin<sat::Solver> ts(c, s, static_cast<int>(vars.size()) + 1, &renumber);
  ts.assert_root(root);
  if (!s.solve()) return false;
  if (model)
    for (std::size_t k = 0; k < vars.size(); ++k) model->emplace(vars[k], s.model_value(static_cast<int>(k) + 1));
  return true;
}

}  // namespace sigsys

#endif  // SIGSYS_CIRCUIT_HPP
