#ifndef SIGSYS_FORMULA_HPP
#define SIGSYS_FORMULA_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace sigsys {

// Atoms come in three flavours: plain p, signed p+ / p-, and occurrence
// indexed p+_i / p-_j. An index is only meaningful on a signed atom.
enum class Sign : std::uint8_t { plain, pos, neg };

struct Atom {
  std::string base;
  Sign sign = Sign::plain;
  std::optional<unsigned> index;

  Atom() = default;
  explicit Atom(std::string b, Sign s = Sign::plain, std::optional<unsigned> idx = std::nullopt)
      : base(std::move(b)), sign(s), index(idx) {
    if (sign == Sign::plain && index)
      throw std::invalid_argument("indexed atom must be signed: " + base);
  }

  bool is_plain() const { return sign == Sign::plain; }

  friend bool operator==(const Atom&, const Atom&) = default;
  friend auto operator<=>(const Atom&, const Atom&) = default;
};

inline std::string to_string(const Atom& a) {
  std::string s = a.base;
  if (a.sign == Sign::pos) s += '+';
  if (a.sign == Sign::neg) s += '-';
  if (a.index) s += "_" + std::to_string(*a.index);
  return s;
}

struct AtomHash {
  std::size_t operator()(const Atom& a) const noexcept {
    std::size_t h = std::hash<std::string>{}(a.base);
    h ^= (static_cast<std::size_t>(a.sign) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
    h ^= (static_cast<std::size_t>(a.index.value_or(0)) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
    return h;
  }
};

using AtomSet = std::unordered_set<Atom, AtomHash>;

enum class Op : std::uint8_t { top, bottom, atom, negation, conj, disj, implies, iff, forall, exists };

inline bool is_binary(Op op) {
  return op == Op::conj || op == Op::disj || op == Op::implies || op == Op::iff;
}
inline bool is_quantifier(Op op) { return op == Op::forall || op == Op::exists; }

// Immutable formula tree. Quantifier nodes are allowed so the same type
// carries both propositional formulas and QBFs; propositional operations
// check is_propositional() where it matters.
class Formula {
  struct Node;

 public:
  Formula();  // top

  Op op() const { return node_->op; }
  // Atom of an atom node, bound variable of a quantifier node.
  const Atom& atom() const { return node_->atom; }
  // Operand of negation and body of a quantifier are both lhs().
  const Formula& lhs() const { return *node_->lhs; }
  const Formula& rhs() const { return *node_->rhs; }
  const Formula& body() const { return *node_->lhs; }

  const void* id() const { return node_.get(); }

  bool is_propositional() const { return node_->propositional; }

  friend bool operator==(const Formula& a, const Formula& b);

  static Formula make_top();
  static Formula make_bottom();
  static Formula make_atom(Atom a);
  static Formula make_not(Formula f);
  static Formula make_binary(Op op, Formula l, Formula r);
  static Formula make_quantifier(Op op, Atom v, Formula body);

 private:
  struct Node {
    Op op = Op::top;
    Atom atom;
    std::unique_ptr<Formula> lhs;
    std::unique_ptr<Formula> rhs;
    bool propositional = true;
  };
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

inline Formula::Formula() : Formula(make_top()) {}

inline Formula Formula::make_top() {
  static const auto node = [] {
    auto n = std::make_shared<Node>();
    n->op = Op::top;
    return std::shared_ptr<const Node>(n);
  }();
  return Formula(node);
}

inline Formula Formula::make_bottom() {
  static const auto node = [] {
    auto n = std::make_shared<Node>();
    n->op = Op::bottom;
    return std::shared_ptr<const Node>(n);
  }();
  return Formula(node);
}

inline Formula Formula::make_atom(Atom a) {
  auto n = std::make_shared<Node>();
  n->op = Op::atom;
  n->atom = std::move(a);
  return Formula(std::move(n));
}

inline Formula Formula::make_not(Formula f) {
  auto n = std::make_shared<Node>();
  n->op = Op::negation;
  n->propositional = f.is_propositional();
  n->lhs = std::make_unique<Formula>(std::move(f));
  return Formula(std::move(n));
}

inline Formula Formula::make_binary(Op op, Formula l, Formula r) {
  if (!is_binary(op)) throw std::invalid_argument("make_binary: not a binary connective");
  auto n = std::make_shared<Node>();
  n->op = op;
  n->propositional = l.is_propositional() && r.is_propositional();
  n->lhs = std::make_unique<Formula>(std::move(l));
  n->rhs = std::make_unique<Formula>(std::move(r));
  return Formula(std::move(n));
}

inline Formula Formula::make_quantifier(Op op, Atom v, Formula body) {
  if (!is_quantifier(op)) throw std::invalid_argument("make_quantifier: not a quantifier");
  auto n = std::make_shared<Node>();
  n->op = op;
  n->atom = std::move(v);
  n->propositional = false;
  n->lhs = std::make_unique<Formula>(std::move(body));
  return Formula(std::move(n));
}

inline bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.op() != b.op()) return false;
  switch (a.op()) {
    case Op::top:
    case Op::bottom:
      return true;
    case Op::atom:
      return a.atom() == b.atom();
    case Op::negation:
      return a.lhs() == b.lhs();
    case Op::forall:
    case Op::exists:
      return a.atom() == b.atom() && a.body() == b.body();
    default:
      return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
}

// Builders.

inline Formula top() { return Formula::make_top(); }
inline Formula bottom() { return Formula::make_bottom(); }
inline Formula atom(Atom a) { return Formula::make_atom(std::move(a)); }
inline Formula atom(std::string base, Sign s = Sign::plain, std::optional<unsigned> idx = std::nullopt) {
  return Formula::make_atom(Atom(std::move(base), s, idx));
}
inline Formula neg(Formula f) { return Formula::make_not(std::move(f)); }
inline Formula conj(Formula a, Formula b) { return Formula::make_binary(Op::conj, std::move(a), std::move(b)); }
inline Formula disj(Formula a, Formula b) { return Formula::make_binary(Op::disj, std::move(a), std::move(b)); }
inline Formula implies(Formula a, Formula b) {
  return Formula::make_binary(Op::implies, std::move(a), std::move(b));
}
inline Formula iff(Formula a, Formula b) { return Formula::make_binary(Op::iff, std::move(a), std::move(b)); }
inline Formula forall(Atom v, Formula body) { return Formula::make_quantifier(Op::forall, std::move(v), std::move(body)); }
inline Formula exists(Atom v, Formula body) { return Formula::make_quantifier(Op::exists, std::move(v), std::move(body)); }

// Left-nested conjunction; the empty conjunction is top.
inline Formula conjoin(std::span<const Formula> fs) {
  if (fs.empty()) return top();
  Formula acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = conj(acc, fs[i]);
  return acc;
}

inline Formula disjoin(std::span<const Formula> fs) {
  if (fs.empty()) return bottom();
  Formula acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = disj(acc, fs[i]);
  return acc;
}

// Q p1 Q p2 ... Q pn body, in the order given.
inline Formula quantify(Op q, std::span<const Atom> vars, Formula body) {
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) body = Formula::make_quantifier(q, *it, std::move(body));
  return body;
}

// Atoms occurring anywhere in f (bound or free), in first-occurrence order.
inline void collect_atoms(const Formula& f, std::vector<Atom>& out, AtomSet& seen) {
  switch (f.op()) {
    case Op::top:
    case Op::bottom:
      return;
    case Op::atom:
      if (seen.insert(f.atom()).second) out.push_back(f.atom());
      return;
    case Op::negation:
      collect_atoms(f.lhs(), out, seen);
      return;
    case Op::forall:
    case Op::exists:
      if (seen.insert(f.atom()).second) out.push_back(f.atom());
      collect_atoms(f.body(), out, seen);
      return;
    default:
      collect_atoms(f.lhs(), out, seen);
      collect_atoms(f.rhs(), out, seen);
  }
}

inline std::vector<Atom> atoms_of(const Formula& f) {
  std::vector<Atom> out;
  AtomSet seen;
  collect_atoms(f, out, seen);
  return out;
}

inline std::vector<Atom> atoms_of(std::span<const Formula> fs) {
  std::vector<Atom> out;
  AtomSet seen;
  for (const auto& f : fs) collect_atoms(f, out, seen);
  return out;
}

namespace detail {
inline void collect_free(const Formula& f, std::vector<Atom>& bound, std::vector<Atom>& out, AtomSet& seen) {
  switch (f.op()) {
    case Op::top:
    case Op::bottom:
      return;
    case Op::atom:
      for (const auto& b : bound)
        if (b == f.atom()) return;
      if (seen.insert(f.atom()).second) out.push_back(f.atom());
      return;
    case Op::negation:
      collect_free(f.lhs(), bound, out, seen);
      return;
    case Op::forall:
    case Op::exists:
      bound.push_back(f.atom());
      collect_free(f.body(), bound, out, seen);
      bound.pop_back();
      return;
    default:
      collect_free(f.lhs(), bound, out, seen);
      collect_free(f.rhs(), bound, out, seen);
  }
}
}  // namespace detail

// Atoms with at least one free occurrence, first-occurrence order.
inline std::vector<Atom> free_atoms(const Formula& f) {
  std::vector<Atom> bound, out;
  AtomSet seen;
  detail::collect_free(f, bound, out, seen);
  return out;
}

inline bool is_closed(const Formula& f) { return free_atoms(f).empty(); }

// Size of the formula as a tree (shared subterms counted once per use).
inline std::size_t node_count(const Formula& f) {
  switch (f.op()) {
    case Op::top:
    case Op::bottom:
    case Op::atom:
      return 1;
    case Op::negation:
    case Op::forall:
    case Op::exists:
      return 1 + node_count(f.lhs());
    default:
      return 1 + node_count(f.lhs()) + node_count(f.rhs());
  }
}

// Replace free occurrences of atoms according to `map`.
inline Formula substitute(const Formula& f, const std::unordered_map<Atom, Formula, AtomHash>& map) {
  switch (f.op()) {
    case Op::top:
    case Op::bottom:
      return f;
    case Op::atom: {
      auto it = map.find(f.atom());
      return it == map.end() ? f : it->second;
    }
    case Op::negation:
      return neg(substitute(f.lhs(), map));
    case Op::forall:
    case Op::exists: {
      if (map.contains(f.atom())) {
        auto inner = map;
        inner.erase(f.atom());
        return Formula::make_quantifier(f.op(), f.atom(), substitute(f.body(), inner));
      }
      return Formula::make_quantifier(f.op(), f.atom(), substitute(f.body(), map));
    }
    default:
      return Formula::make_binary(f.op(), substitute(f.lhs(), map), substitute(f.rhs(), map));
  }
}

// Ordered finite set of formulas, read as their conjunction.
struct Theory {
  std::vector<Formula> formulas;

  Theory() = default;
  Theory(std::initializer_list<Formula> fs) : formulas(fs) {}
  explicit Theory(std::vector<Formula> fs) : formulas(std::move(fs)) {}

  std::size_t size() const { return formulas.size(); }
  bool empty() const { return formulas.empty(); }
  auto begin() const { return formulas.begin(); }
  auto end() const { return formulas.end(); }
  const Formula& operator[](std::size_t i) const { return formulas[i]; }
  void add(Formula f) { formulas.push_back(std::move(f)); }

  Formula conjunction() const { return conjoin(formulas); }
  std::vector<Atom> atoms() const { return atoms_of(formulas); }

  friend bool operator==(const Theory&, const Theory&) = default;
};

// Produces atoms that do not clash with a given set of reserved atoms.
class FreshNames {
 public:
  FreshNames() = default;
  explicit FreshNames(std::span<const Atom> reserved) {
    for (const auto& a : reserved) used_.insert(a);
  }
  void reserve(const Atom& a) { used_.insert(a); }
  void reserve(std::span<const Atom> as) {
    for (const auto& a : as) used_.insert(a);
  }

  // `stem` itself when free, otherwise stem with a growing underscore prefix.
  Atom make(const std::string& stem, Sign sign = Sign::plain, std::optional<unsigned> idx = std::nullopt) {
    std::string base = stem;
    while (used_.contains(Atom(base, sign, idx))) base = "_" + base;
    Atom a(base, sign, idx);
    used_.insert(a);
    return a;
  }

 private:
  AtomSet used_;
};

}  // namespace sigsys

#endif  // SIGSYS_FORMULA_HPP
