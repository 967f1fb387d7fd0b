#ifndef SIGSYS_LOGIC_HPP
#define SIGSYS_LOGIC_HPP

#include <span>
#include <stdexcept>
#include <vector>

#include "sigsys/circuit.hpp"
#include "sigsys/formula.hpp"

namespace sigsys {

enum class Polarity : std::uint8_t { positive, negative };

inline Polarity flip(Polarity p) { return p == Polarity::positive ? Polarity::negative : Polarity::positive; }

struct Occurrence {
  std::size_t position;  // 1-based, left to right
  Atom atom;
  Polarity polarity;

  friend bool operator==(const Occurrence&, const Occurrence&) = default;
};

namespace detail {
inline void polarity_walk(const Formula& f, Polarity pol, std::vector<Occurrence>& out) {
  switch (f.op()) {
    case Op::top:
    case Op::bottom:
      return;
    case Op::atom:
      out.push_back({out.size() + 1, f.atom(), pol});
      return;
    case Op::negation:
      polarity_walk(f.lhs(), flip(pol), out);
      return;
    case Op::implies:
      polarity_walk(f.lhs(), flip(pol), out);
      polarity_walk(f.rhs(), pol, out);
      return;
    case Op::conj:
    case Op::disj:
      polarity_walk(f.lhs(), pol, out);
      polarity_walk(f.rhs(), pol, out);
      return;
    case Op::iff:
      throw std::invalid_argument("polarity_map: '<->' has no polarity; normalize_for_signing first");
    default:
      throw std::invalid_argument("polarity_map: quantified formula");
  }
}
}  // namespace detail

// Atom occurrences of f with their polarity. Negation and the antecedent of
// an implication flip polarity; everything else preserves it.
inline std::vector<Occurrence> polarity_map(const Formula& f) {
  std::vector<Occurrence> out;
  detail::polarity_walk(f, Polarity::positive, out);
  return out;
}

// Rewrites every a <-> b into (a -> b) & (b -> a).
inline Formula normalize_for_signing(const Formula& f) {
  switch (f.op()) {
    case Op::top:
    case Op::bottom:
    case Op::atom:
      return f;
    case Op::negation:
      return neg(normalize_for_signing(f.lhs()));
    case Op::iff: {
      Formula a = normalize_for_signing(f.lhs());
      Formula b = normalize_for_signing(f.rhs());
      return conj(implies(a, b), implies(b, a));
    }
    case Op::forall:
    case Op::exists:
      throw std::invalid_argument("normalize_for_signing: quantified formula");
    default:
      return Formula::make_binary(f.op(), normalize_for_signing(f.lhs()), normalize_for_signing(f.rhs()));
  }
}

inline Theory normalize_for_signing(const Theory& t) {
  Theory out;
  for (const auto& f : t) out.add(normalize_for_signing(f));
  return out;
}

// Satisfiability of a finite set of propositional formulas.
inline bool satisfiable(std::span<const Formula> fs) {
  Circuit c;
  AtomNumbering names;
  Circuit::Ref root = Circuit::kTrue;
  for (const auto& f : fs) {
    root = c.make_and(root, lower(f, c, names));
    if (root == Circuit::kFalse) return false;
  }
  return satisfiable(c, root);
}

inline bool is_consistent(const Theory& t) { return satisfiable(t.formulas); }

// T |- phi, decided as unsatisfiability of T u {~phi}.
inline bool entails(const Theory& t, const Formula& phi) {
  std::vector<Formula> fs = t.formulas;
  fs.push_back(neg(phi));
  return !satisfiable(fs);
}

inline bool entails(std::span<const Formula> premises, const Formula& phi) {
  std::vector<Formula> fs(premises.begin(), premises.end());
  fs.push_back(neg(phi));
  return !satisfiable(fs);
}

// Repeated consistency checks of V u S' for subsets S' of a fixed S. The
// facts are loaded once; members of S are switched on by selector
// assumptions, so learnt clauses carry over between calls.
class ConsistencyChecker {
 public:
  ConsistencyChecker(std::span<const Formula> facts, std::span<const Formula> candidates) {
    Circuit::Ref v = Circuit::kTrue;
    for (const auto& f : facts) v = circuit_.make_and(v, lower(f, circuit_, names_));
    std::vector<Circuit::Ref> cand;
    cand.reserve(candidates.size());
    for (const auto& f : candidates) cand.push_back(lower(f, circuit_, names_));
    Circuit::Ref all = v;
    for (auto r : cand) {
      const int sel = circuit_.new_var();
      selectors_.push_back(sel);
      all = circuit_.make_and(all, circuit_.make_implies(circuit_.var(sel), r));
    }
    solver_.ensure_vars(circuit_.num_vars());
    Tseitin<sat::Solver> ts(circuit_, solver_, circuit_.num_vars() + 1);
    ts.assert_root(all);
  }

  std::size_t size() const { return selectors_.size(); }

  bool consistent(std::span<const std::size_t> selected) {
    std::vector<sat::Lit> assumptions;
    assumptions.reserve(selected.size());
    for (std::size_t i : selected) assumptions.push_back(selectors_.at(i));
    return solver_.solve(std::span<const sat::Lit>(assumptions));
  }

 private:
  Circuit circuit_;
  AtomNumbering names_;
  sat::Solver solver_;
  std::vector<int> selectors_;
};

}  // namespace sigsys

#endif  // SIGSYS_LOGIC_HPP
