#ifndef SIGSYS_QBF_HPP
#define SIGSYS_QBF_HPP

// Quantified Boolean formulas: reference semantics, prenexing, a
// counterexample-guided expansion solver for closed QBFs, and QDIMACS
// import/export.

#include <algorithm>
#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "sigsys/circuit.hpp"
#include "sigsys/formula.hpp"
#include "sigsys/syntax.hpp"

namespace sigsys {

using Qbf = Formula;
// Atoms assigned true; everything else is false.
using Interpretation = AtomSet;

class OpenQbfError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// Reference evaluation, following the recursive truth conditions directly:
// forall p. Psi is Psi[p/true] & Psi[p/false], exists the disjunction.
// Results are memoized per (subformula, values of its free atoms).

class ReferenceEvaluator {
 public:
  explicit ReferenceEvaluator(const Interpretation& m) {
    for (const auto& a : m) env_[a] = true;
  }

  bool eval(const Formula& f) {
    switch (f.op()) {
      case Op::top:
        return true;
      case Op::bottom:
        return false;
      case Op::atom: {
        auto it = env_.find(f.atom());
        return it != env_.end() && it->second;
      }
      case Op::negation:
        return !eval(f.lhs());
      default:
        break;
    }
    const std::vector<Atom>& fv = free_of(f);
    std::vector<bool> key;
    key.reserve(fv.size());
    for (const auto& a : fv) {
      auto it = env_.find(a);
      key.push_back(it != env_.end() && it->second);
    }
    auto& table = memo_[f.id()];
    if (auto it = table.find(key); it != table.end()) return it->second;

    bool out = false;
    switch (f.op()) {
      case Op::conj:
        out = eval(f.lhs()) && eval(f.rhs());
        break;
      case Op::disj:
        out = eval(f.lhs()) || eval(f.rhs());
        break;
      case Op::implies:
        out = !eval(f.lhs()) || eval(f.rhs());
        break;
      case Op::iff:
        out = eval(f.lhs()) == eval(f.rhs());
        break;
      case Op::forall:
      case Op::exists: {
        const Atom& v = f.atom();
        auto it = env_.find(v);
        const std::optional<bool> saved = it == env_.end() ? std::nullopt : std::optional<bool>(it->second);
        env_[v] = true;
        const bool hi = eval(f.body());
        bool lo = hi;
        if ((f.op() == Op::forall && hi) || (f.op() == Op::exists && !hi)) {
          env_[v] = false;
          lo = eval(f.body());
        }
        out = f.op() == Op::forall ? (hi && lo) : (hi || lo);
        if (saved)
          env_[v] = *saved;
        else
          env_.erase(v);
        break;
      }
      default:
        break;
    }
    memo_[f.id()].emplace(std::move(key), out);
    return out;
  }

 private:
  const std::vector<Atom>& free_of(const Formula& f) {
    auto it = free_.find(f.id());
    if (it != free_.end()) return it->second;
    return free_.emplace(f.id(), free_atoms(f)).first->second;
  }

  std::unordered_map<Atom, bool, AtomHash> env_;
  std::unordered_map<const void*, std::vector<Atom>> free_;
  std::unordered_map<const void*, std::unordered_map<std::vector<bool>, bool>> memo_;
};

inline int eval(const Qbf& f, const Interpretation& m = {}) {
  ReferenceEvaluator ev(m);
  return ev.eval(f) ? 1 : 0;
}

// ---------------------------------------------------------------------------
// Prenexing.

struct QuantBlock {
  Op quantifier;  // Op::forall or Op::exists
  std::vector<Atom> vars;
};

struct PrenexForm {
  std::vector<QuantBlock> prefix;  // alternating, no empty blocks
  Formula matrix;                  // quantifier free

  Formula to_formula() const {
    Formula f = matrix;
    for (auto it = prefix.rbegin(); it != prefix.rend(); ++it) f = quantify(it->quantifier, it->vars, f);
    return f;
  }
};

namespace detail {

inline Op dual(Op q) { return q == Op::forall ? Op::exists : Op::forall; }

// -> and <-> over quantified operands become &, |, ~ so that quantifier
// polarity is explicit.
inline Formula expand_quantified_connectives(const Formula& f) {
  if (f.is_propositional()) return f;
  switch (f.op()) {
    case Op::negation:
      return neg(expand_quantified_connectives(f.lhs()));
    case Op::conj:
    case Op::disj:
      return Formula::make_binary(f.op(), expand_quantified_connectives(f.lhs()),
                                  expand_quantified_connectives(f.rhs()));
    case Op::implies:
      return disj(neg(expand_quantified_connectives(f.lhs())), expand_quantified_connectives(f.rhs()));
    case Op::iff: {
      // The two copies are renamed apart later.
      Formula a = expand_quantified_connectives(f.lhs());
      Formula b = expand_quantified_connectives(f.rhs());
      return conj(disj(neg(a), b), disj(neg(b), a));
    }
    default:
      return Formula::make_quantifier(f.op(), f.atom(), expand_quantified_connectives(f.body()));
  }
}

class RenameApart {
 public:
  explicit RenameApart(const Formula& f) : fresh_(atoms_of(f)) {
    for (const auto& a : free_atoms(f)) free_.insert(a);
  }

  Formula run(const Formula& f) { return walk(f); }

 private:
  Formula walk(const Formula& f) {
    switch (f.op()) {
      case Op::top:
      case Op::bottom:
        return f;
      case Op::atom: {
        auto it = env_.find(f.atom());
        if (it == env_.end() || it->second.empty()) return f;
        return atom(it->second.back());
      }
      case Op::negation:
        return neg(walk(f.lhs()));
      case Op::forall:
      case Op::exists: {
        const Atom& v = f.atom();
        Atom target = v;
        if (free_.contains(v) || !bound_.insert(v).second)
          target = fresh_.make(v.base + "_" + std::to_string(++counter_), v.sign, v.index);
        env_[v].push_back(target);
        Formula body = walk(f.body());
        env_[v].pop_back();
        return Formula::make_quantifier(f.op(), target, std::move(body));
      }
      default:
        return Formula::make_binary(f.op(), walk(f.lhs()), walk(f.rhs()));
    }
  }

  FreshNames fresh_;
  AtomSet free_;
  AtomSet bound_;
  std::unordered_map<Atom, std::vector<Atom>, AtomHash> env_;
  unsigned counter_ = 0;
};

inline void push_block(std::vector<QuantBlock>& out, const QuantBlock& b) {
  if (b.vars.empty()) return;
  if (!out.empty() && out.back().quantifier == b.quantifier)
    out.back().vars.insert(out.back().vars.end(), b.vars.begin(), b.vars.end());
  else
    out.push_back(b);
}

// Interleaves two independent prefixes keeping each one's order, sharing
// blocks of equal quantifiers; on a clash the longer remaining prefix goes
// first, existential on ties.
inline std::vector<QuantBlock> merge_prefixes(const std::vector<QuantBlock>& a, const std::vector<QuantBlock>& b) {
  std::vector<QuantBlock> out;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].quantifier == b[j].quantifier) {
      push_block(out, a[i++]);
      push_block(out, b[j++]);
      continue;
    }
    const std::size_t ra = a.size() - i, rb = b.size() - j;
    const bool take_a = ra > rb || (ra == rb && a[i].quantifier == Op::exists);
    if (take_a)
      push_block(out, a[i++]);
    else
      push_block(out, b[j++]);
  }
  while (i < a.size()) push_block(out, a[i++]);
  while (j < b.size()) push_block(out, b[j++]);
  return out;
}

inline PrenexForm pull_quantifiers(const Formula& f) {
  if (f.is_propositional()) return {{}, f};
  switch (f.op()) {
    case Op::negation: {
      PrenexForm p = pull_quantifiers(f.lhs());
      for (auto& b : p.prefix) b.quantifier = dual(b.quantifier);
      p.matrix = neg(p.matrix);
      return p;
    }
    case Op::conj:
    case Op::disj: {
      PrenexForm l = pull_quantifiers(f.lhs());
      PrenexForm r = pull_quantifiers(f.rhs());
      return {merge_prefixes(l.prefix, r.prefix), Formula::make_binary(f.op(), l.matrix, r.matrix)};
    }
    case Op::forall:
    case Op::exists: {
      PrenexForm inner = pull_quantifiers(f.body());
      std::vector<QuantBlock> prefix;
      push_block(prefix, {f.op(), {f.atom()}});
      for (const auto& b : inner.prefix) push_block(prefix, b);
      return {std::move(prefix), inner.matrix};
    }
    default:
      throw std::logic_error("pull_quantifiers: unexpected connective");
  }
}

}  // namespace detail

inline PrenexForm prenex_form(const Qbf& f) {
  Formula expanded = detail::expand_quantified_connectives(f);
  Formula renamed = detail::RenameApart(expanded).run(expanded);
  return detail::pull_quantifiers(renamed);
}

inline Qbf prenex(const Qbf& f) { return prenex_form(f).to_formula(); }

// ---------------------------------------------------------------------------
// Solving closed prenex QBFs by recursive counterexample-guided expansion.
// The player owning the outermost block proposes a move against a growing
// set of opponent counter-moves; each counter-move adds one copy of the
// remaining game (with fresh inner variables) to the abstraction.

class ExpansionSolver {
 public:
  struct Block {
    bool exists;
    std::vector<int> vars;
  };
  using Move = std::unordered_map<int, bool>;

  explicit ExpansionSolver(Circuit& c) : c_(c) {}

  // Winning move (assignment to prefix[0]) for the owner of prefix[0], if one exists.
  std::optional<Move> winning_move(std::vector<Block> prefix, Circuit::Ref matrix) {
    normalize(prefix);
    if (prefix.empty()) throw std::logic_error("winning_move: empty prefix");
    if (!prefix[0].exists) {
      for (auto& b : prefix) b.exists = !b.exists;
      matrix = c_.make_not(matrix);
    }
    return solve_exists(prefix, matrix);
  }

  // Truth of Q1 X1 ... Qk Xk matrix (closed).
  bool valid(std::vector<Block> prefix, Circuit::Ref matrix) {
    normalize(prefix);
    if (prefix.empty()) {
      if (matrix != Circuit::kTrue && matrix != Circuit::kFalse) throw OpenQbfError("matrix has free variables");
      return matrix == Circuit::kTrue;
    }
    const bool first_exists = prefix[0].exists;
    const bool wins = winning_move(std::move(prefix), matrix).has_value();
    return first_exists ? wins : !wins;
  }

 private:
  static void normalize(std::vector<Block>& prefix) {
    std::vector<Block> out;
    for (auto& b : prefix) {
      if (b.vars.empty()) continue;
      if (!out.empty() && out.back().exists == b.exists)
        out.back().vars.insert(out.back().vars.end(), b.vars.begin(), b.vars.end());
      else
        out.push_back(std::move(b));
    }
    prefix = std::move(out);
  }

  static Move restrict_to(const Move& m, const std::vector<int>& vars) {
    Move out;
    for (int v : vars) {
      auto it = m.find(v);
      out.emplace(v, it != m.end() && it->second);
    }
    return out;
  }

  std::unordered_map<int, Circuit::Ref> as_constants(const Move& m) const {
    std::unordered_map<int, Circuit::Ref> out;
    for (const auto& [v, b] : m) out.emplace(v, c_.constant(b));
    return out;
  }

  // prefix[0] is existential, blocks are non-empty and alternate.
  std::optional<Move> solve_exists(const std::vector<Block>& prefix, Circuit::Ref matrix) {
    const auto& x = prefix[0].vars;
    if (prefix.size() == 1) {
      Move model;
      if (!satisfiable_on_support(c_, matrix, &model)) return std::nullopt;
      return restrict_to(model, x);
    }
    if (matrix == Circuit::kFalse) return std::nullopt;
    if (matrix == Circuit::kTrue) return restrict_to({}, x);

    // The opponent's game after a move on X, seen from the opponent's side.
    std::vector<Block> opponent(prefix.begin() + 1, prefix.end());
    for (auto& b : opponent) b.exists = !b.exists;

    // Abstraction prefix: exists (X + copies of prefix[2]), then copies of
    // prefix[3], prefix[4], ...
    std::vector<Block> abstraction(std::max<std::size_t>(1, prefix.size() - 2));
    abstraction[0] = {true, x};
    for (std::size_t k = 1; k < abstraction.size(); ++k) abstraction[k].exists = prefix[2 + k].exists;
    Circuit::Ref copies = Circuit::kTrue;

    while (true) {
      Move tau;
      if (copies == Circuit::kTrue) {
        tau = restrict_to({}, x);
      } else {
        std::vector<Block> ap = abstraction;
        normalize(ap);
        const auto candidate = solve_exists(ap, copies);
        if (!candidate) return std::nullopt;
        tau = restrict_to(*candidate, x);
      }
      const Circuit::Ref reply = c_.make_not(c_.substitute(matrix, as_constants(tau)));
      const auto counter = solve_exists(opponent, reply);
      if (!counter) return tau;

      std::unordered_map<int, Circuit::Ref> subst = as_constants(*counter);
      for (std::size_t k = 2; k < prefix.size(); ++k) {
        for (int v : prefix[k].vars) {
          const int nv = c_.new_var();
          subst.emplace(v, c_.var(nv));
          abstraction[k - 2].vars.push_back(nv);
        }
      }
      copies = c_.make_and(copies, c_.substitute(matrix, subst));
      if (copies == Circuit::kFalse) return std::nullopt;
    }
  }

  Circuit& c_;
};

// Variables of the innermost existential block that clauses of the matrix
// define as a function of other variables (unit, and/or, xnor gates in
// definitional form) are replaced by their definitions; the defining
// clauses are dropped and the variables leave the block. Restores circuit
// structure in clausified input.
inline Circuit::Ref inline_definitions(Circuit& c, Circuit::Ref matrix, std::vector<int>& inner) {
  using Kind = Circuit::Kind;
  std::vector<Circuit::Ref> conjuncts;
  auto collect = [&](auto&& self, Circuit::Ref r) -> void {
    if (c.node(r).kind == Kind::conj) {
      self(self, c.node(r).a);
      self(self, c.node(r).b);
    } else {
      conjuncts.push_back(r);
    }
  };
  collect(collect, matrix);

  auto literal_of = [&](Circuit::Ref r) -> int {
    const auto& n = c.node(r);
    if (n.kind == Kind::var) return n.a;
    if (n.kind == Kind::negation && c.node(n.a).kind == Kind::var) return -c.node(n.a).a;
    return 0;
  };
  // clauses[k] is conjunct k read as a sorted clause, empty if it is not one.
  std::vector<std::vector<int>> clauses(conjuncts.size());
  std::map<std::vector<int>, std::size_t> index;
  for (std::size_t k = 0; k < conjuncts.size(); ++k) {
    std::vector<Circuit::Ref> lits;
    auto flat = [&](auto&& self, Circuit::Ref r) -> void {
      if (c.node(r).kind == Kind::disj) {
        self(self, c.node(r).a);
        self(self, c.node(r).b);
      } else {
        lits.push_back(r);
      }
    };
    flat(flat, conjuncts[k]);
    std::vector<int> cl;
    for (auto r : lits) {
      const int l = literal_of(r);
      if (l == 0) {
        cl.clear();
        break;
      }
      cl.push_back(l);
    }
    std::sort(cl.begin(), cl.end());
    if (!cl.empty()) index.emplace(cl, k);
    clauses[k] = std::move(cl);
  }
  auto find = [&](std::vector<int> cl) -> std::optional<std::size_t> {
    std::sort(cl.begin(), cl.end());
    auto it = index.find(cl);
    return it == index.end() ? std::nullopt : std::optional<std::size_t>(it->second);
  };
  std::unordered_map<int, std::vector<std::size_t>> occurs;  // literal -> clauses
  for (std::size_t k = 0; k < clauses.size(); ++k)
    for (int l : clauses[k]) occurs[l].push_back(k);

  struct Definition {
    Kind kind;                // conj, iff, or constant
    int sign;                 // the defined literal is sign * var
    std::vector<int> inputs;  // literals
  };
  std::unordered_map<int, Definition> defs;
  std::vector<char> dropped(conjuncts.size(), 0);
  const std::unordered_set<int> candidates(inner.begin(), inner.end());

  auto depends_on = [&](const std::vector<int>& inputs, int target) {
    std::vector<int> stack;
    std::unordered_set<int> seen;
    for (int l : inputs) stack.push_back(std::abs(l));
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      if (v == target) return true;
      if (!seen.insert(v).second) continue;
      if (auto it = defs.find(v); it != defs.end())
        for (int l : it->second.inputs) stack.push_back(std::abs(l));
    }
    return false;
  };
  auto accept = [&](int t, Definition d, const std::vector<std::size_t>& used) {
    if (depends_on(d.inputs, t)) return false;
    defs.emplace(t, std::move(d));
    for (std::size_t k : used) dropped[k] = 1;
    return true;
  };

  for (int t : inner) {
    bool done = false;
    for (int sign : {1, -1}) {
      if (done) break;
      const int x = sign * t;
      if (auto u = find({x})) {
        done = accept(t, {Kind::constant, sign, {}}, {*u});
        break;
      }
      // x <-> /\ S: clauses {-x, l} for l in S and {x, -l...}.
      std::unordered_map<int, std::size_t> binaries;
      for (std::size_t k : occurs[-x])
        if (clauses[k].size() == 2) binaries.emplace(clauses[k][0] == -x ? clauses[k][1] : clauses[k][0], k);
      for (std::size_t k : occurs[x]) {
        const auto& cl = clauses[k];
        if (cl.size() < 2) continue;
        std::vector<int> inputs;
        std::vector<std::size_t> used{k};
        bool ok = true;
        for (int l : cl) {
          if (l == x) continue;
          auto it = binaries.find(-l);
          if (it == binaries.end() || std::abs(l) == t) {
            ok = false;
            break;
          }
          inputs.push_back(-l);
          used.push_back(it->second);
        }
        if (ok && accept(t, {Kind::conj, sign, inputs}, used)) {
          done = true;
          break;
        }
      }
      if (done || sign == -1) continue;
      // t <-> (a <-> b): {-t,-a,b} {-t,a,-b} {t,a,b} {t,-a,-b}
      for (std::size_t k : occurs[t]) {
        const auto& cl = clauses[k];
        if (cl.size() != 3) continue;
        std::vector<int> ab;
        for (int l : cl)
          if (l != t) ab.push_back(l);
        if (ab.size() != 2 || std::abs(ab[0]) == std::abs(ab[1]) || std::abs(ab[0]) == t || std::abs(ab[1]) == t)
          continue;
        const int a = ab[0], b = ab[1];
        auto k2 = find({t, -a, -b}), k3 = find({-t, -a, b}), k4 = find({-t, a, -b});
        if (k2 && k3 && k4 && accept(t, {Kind::iff, 1, {a, b}}, {k, *k2, *k3, *k4})) {
          done = true;
          break;
        }
      }
    }
  }
  if (defs.empty()) return matrix;

  std::unordered_map<int, Circuit::Ref> resolved;
  auto resolve_var = [&](auto&& self, int v) -> Circuit::Ref {
    auto d = defs.find(v);
    if (d == defs.end()) return c.var(v);
    if (auto it = resolved.find(v); it != resolved.end()) return it->second;
    auto lit = [&](int l) {
      const Circuit::Ref r = self(self, std::abs(l));
      return l < 0 ? c.make_not(r) : r;
    };
    Circuit::Ref x = Circuit::kTrue;
    if (d->second.kind == Kind::conj) {
      for (int l : d->second.inputs) x = c.make_and(x, lit(l));
    } else if (d->second.kind == Kind::iff) {
      x = c.make_iff(lit(d->second.inputs[0]), lit(d->second.inputs[1]));
    }
    if (d->second.sign < 0) x = c.make_not(x);
    resolved.emplace(v, x);
    return x;
  };
  std::unordered_map<int, Circuit::Ref> subst;
  for (const auto& [v, d] : defs) subst.emplace(v, resolve_var(resolve_var, v));
  Circuit::Ref out = Circuit::kTrue;
  for (std::size_t k = 0; k < conjuncts.size(); ++k)
    if (!dropped[k]) out = c.make_and(out, c.substitute(conjuncts[k], subst));
  std::erase_if(inner, [&](int v) { return defs.contains(v); });
  return out;
}

struct QbfResult {
  bool valid = false;
  // Winning move of the outermost block's owner, when that block exists.
  std::unordered_map<Atom, bool, AtomHash> outer_move;
  Op outer_quantifier = Op::exists;
};

inline QbfResult solve_qbf(const Qbf& f) {
  if (!is_closed(f)) throw OpenQbfError("QBF is not closed");
  const PrenexForm p = prenex_form(f);
  Circuit c;
  AtomNumbering names;
  std::vector<ExpansionSolver::Block> prefix;
  for (const auto& b : p.prefix) {
    ExpansionSolver::Block blk{b.quantifier == Op::exists, {}};
    for (const auto& a : b.vars) blk.vars.push_back(names.id(a, c));
    prefix.push_back(std::move(blk));
  }
  Circuit::Ref m = lower(p.matrix, c, names);
  if (!prefix.empty() && prefix.back().exists) m = inline_definitions(c, m, prefix.back().vars);
  QbfResult r;
  ExpansionSolver solver(c);
  std::erase_if(prefix, [](const auto& b) { return b.vars.empty(); });
  if (prefix.empty()) {
    r.valid = m == Circuit::kTrue;
    return r;
  }
  r.outer_quantifier = prefix[0].exists ? Op::exists : Op::forall;
  const auto move = solver.winning_move(prefix, m);
  r.valid = prefix[0].exists == move.has_value();
  if (move)
    for (const auto& [v, b] : *move) r.outer_move.emplace(*names.atom_of(v), b);
  return r;
}

inline bool is_valid(const Qbf& f) { return solve_qbf(f).valid; }

// Truth of an open QBF under M, via the solver: free atoms are fixed first.
inline bool true_under(const Qbf& f, const Interpretation& m) {
  std::unordered_map<Atom, Formula, AtomHash> fix;
  for (const auto& a : free_atoms(f)) fix.emplace(a, m.contains(a) ? top() : bottom());
  return is_valid(substitute(f, fix));
}

// ---------------------------------------------------------------------------
// QDIMACS.

struct QdimacsExport {
  std::string text;
  std::vector<std::string> names;  // names[v - 1] is the name of variable v

  std::string map_text() const {
    std::string out;
    for (std::size_t i = 0; i < names.size(); ++i) out += std::to_string(i + 1) + " " + names[i] + "\n";
    return out;
  }
};

namespace detail {
struct ClauseSink {
  std::vector<std::vector<sat::Lit>> clauses;
  void add_clause(std::span<const sat::Lit> lits) { clauses.emplace_back(lits.begin(), lits.end()); }
};
}  // namespace detail

// Prenexes, clausifies the matrix definitionally (auxiliary variables go
// into an innermost existential block) and numbers variables densely in
// prefix order.
inline QdimacsExport to_qdimacs(const Qbf& f) {
  if (!is_closed(f)) throw OpenQbfError("to_qdimacs: QBF is not closed");
  const PrenexForm p = prenex_form(f);
  Circuit c;
  AtomNumbering names;
  QdimacsExport out;
  std::vector<std::pair<bool, std::vector<int>>> blocks;
  for (const auto& b : p.prefix) {
    std::vector<int> vs;
    for (const auto& a : b.vars) {
      vs.push_back(names.id(a, c));
      out.names.push_back(to_string(a));
    }
    blocks.emplace_back(b.quantifier == Op::exists, std::move(vs));
  }
  const Circuit::Ref m = lower(p.matrix, c, names);
  detail::ClauseSink sink;
  const int first_aux = c.num_vars() + 1;
  Tseitin<detail::ClauseSink> ts(c, sink, first_aux);
  ts.assert_root(m);
  std::vector<int> aux;
  for (int v = first_aux; v < ts.next_var(); ++v) {
    aux.push_back(v);
    out.names.push_back("_t" + std::to_string(v - first_aux + 1));
  }
  if (!aux.empty()) {
    if (!blocks.empty() && blocks.back().first)
      blocks.back().second.insert(blocks.back().second.end(), aux.begin(), aux.end());
    else
      blocks.emplace_back(true, aux);
  }

  std::ostringstream os;
  os << "p cnf " << out.names.size() << ' ' << sink.clauses.size() << '\n';
  for (const auto& [ex, vs] : blocks) {
    os << (ex ? 'e' : 'a');
    for (int v : vs) os << ' ' << v;
    os << " 0\n";
  }
  for (const auto& cl : sink.clauses) {
    for (sat::Lit l : cl) os << l << ' ';
    os << "0\n";
  }
  out.text = os.str();
  return out;
}

// Parses QDIMACS back into a prenex QBF. Names come from the variable map
// when given ("<int> <name>" per line), otherwise variable n is v<n>.
// Variables missing from the prefix are bound existentially outermost.
inline Qbf parse_qdimacs(std::string_view text, std::string_view map_text = {}) {
  std::map<int, Atom> names;
  {
    std::istringstream in{std::string(map_text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      std::istringstream row(line);
      int id = 0;
      std::string name;
      if (!(row >> id)) continue;
      if (!(row >> name)) throw ParseError("variable map line must be '<int> <name>'", lineno, 1);
      names[id] = parse_atom(name);
    }
  }
  auto name_of = [&](int v) {
    auto it = names.find(v);
    return it != names.end() ? it->second : Atom("v" + std::to_string(v));
  };

  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  bool header = false;
  long declared_clauses = -1;
  int declared_vars = 0;
  std::vector<QuantBlock> prefix;
  std::vector<Formula> clauses;
  std::vector<Formula> current;
  std::set<int> bound;
  std::set<int> used;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream row(line);
    std::string tok;
    if (!(row >> tok)) continue;
    if (tok == "c") continue;
    if (tok == "p") {
      std::string fmt;
      if (!(row >> fmt >> declared_vars >> declared_clauses) || fmt != "cnf")
        throw ParseError("malformed QDIMACS header", lineno, 1);
      header = true;
      continue;
    }
    if (!header) throw ParseError("QDIMACS header 'p cnf' expected", lineno, 1);
    if (tok == "a" || tok == "e") {
      if (!clauses.empty() || !current.empty()) throw ParseError("quantifier line after clauses", lineno, 1);
      QuantBlock b{tok == "a" ? Op::forall : Op::exists, {}};
      int v = 0;
      while (row >> v && v != 0) {
        if (v < 0) throw ParseError("negative variable in prefix", lineno, 1);
        if (!bound.insert(v).second) throw ParseError("variable quantified twice", lineno, 1);
        b.vars.push_back(name_of(v));
      }
      if (v != 0) throw ParseError("prefix line must end with 0", lineno, 1);
      detail::push_block(prefix, b);
      continue;
    }
    std::istringstream lits(line);
    long l = 0;
    while (lits >> l) {
      if (l == 0) {
        clauses.push_back(disjoin(current));
        current.clear();
        continue;
      }
      const int v = static_cast<int>(l < 0 ? -l : l);
      if (declared_vars > 0 && v > declared_vars) throw ParseError("variable exceeds header count", lineno, 1);
      used.insert(v);
      Formula a = atom(name_of(v));
      current.push_back(l < 0 ? neg(a) : a);
    }
    if (!lits.eof()) throw ParseError("malformed clause line", lineno, 1);
  }
  if (!header) throw ParseError("QDIMACS header 'p cnf' expected", lineno, 1);
  if (!current.empty()) clauses.push_back(disjoin(current));
  if (static_cast<long>(clauses.size()) != declared_clauses)
    throw ParseError("header declares " + std::to_string(declared_clauses) + " clauses, found " +
                         std::to_string(clauses.size()),
                     lineno, 1);
  std::vector<Atom> free_vars;
  for (int v : used)
    if (!bound.contains(v)) free_vars.push_back(name_of(v));
  PrenexForm p;
  if (!free_vars.empty()) detail::push_block(p.prefix, {Op::exists, free_vars});
  for (const auto& b : prefix) detail::push_block(p.prefix, b);
  p.matrix = conjoin(clauses);
  return p.to_formula();
}

}  // namespace sigsys

#endif  // SIGSYS_QBF_HPP
