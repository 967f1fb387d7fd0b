#ifndef SIGSYS_DEFAULTS_HPP
#define SIGSYS_DEFAULTS_HPP

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sigsys/formula.hpp"
#include "sigsys/signing.hpp"
#include "sigsys/syntax.hpp"

namespace sigsys {

enum class Family : std::uint8_t { t0, t1, t2 };

inline std::string to_string(Family f) {
  switch (f) {
    case Family::t0:
      return "t0";
    case Family::t1:
      return "t1";
    default:
      return "t2";
  }
}

inline Family parse_family(std::string_view s) {
  if (s == "t0") return Family::t0;
  if (s == "t1") return Family::t1;
  if (s == "t2") return Family::t2;
  throw std::invalid_argument("unknown theory family '" + std::string(s) + "' (expected t0, t1 or t2)");
}

enum class DefaultKind : std::uint8_t { global, pair, pos, neg };

// Prerequisite-free default  true : justification / consequent  attached to
// one unsigned atom.
struct Default {
  DefaultKind kind = DefaultKind::global;
  std::string atom;
  unsigned i = 0;  // positive occurrence index (pair, pos)
  unsigned j = 0;  // negative occurrence index (pair, neg)
  Formula justification;
  Formula consequent;

  Formula prerequisite() const { return top(); }

  std::string name() const {
    switch (kind) {
      case DefaultKind::global:
        return "d_" + atom;
      case DefaultKind::pair:
        return "d_" + atom + "^" + std::to_string(i) + "," + std::to_string(j);
      case DefaultKind::pos:
        return "d_" + atom + "^" + std::to_string(i) + "+";
      default:
        return "d_" + atom + "^" + std::to_string(j) + "-";
    }
  }

  friend bool operator==(const Default&, const Default&) = default;
};

// delta_p = true : p+ <-> ~p- / (p <-> p+) & (~p <-> p-)
inline Default global_default(const std::string& p) {
  Formula pa = atom(p), pp = atom(p, Sign::pos), pn = atom(p, Sign::neg);
  return {DefaultKind::global, p, 0, 0, iff(pp, neg(pn)), conj(iff(pa, pp), iff(neg(pa), pn))};
}

// delta_p^{i,j}: justification = consequent = (p <-> p+_i) & (~p <-> p-_j)
inline Default pair_default(const std::string& p, unsigned i, unsigned j) {
  Formula pa = atom(p);
  Formula c = conj(iff(pa, atom(p, Sign::pos, i)), iff(neg(pa), atom(p, Sign::neg, j)));
  return {DefaultKind::pair, p, i, j, c, c};
}

inline Default pos_default(const std::string& p, unsigned i) {
  Formula c = iff(atom(p), atom(p, Sign::pos, i));
  return {DefaultKind::pos, p, i, 0, c, c};
}

inline Default neg_default(const std::string& p, unsigned j) {
  Formula c = iff(neg(atom(p)), atom(p, Sign::neg, j));
  return {DefaultKind::neg, p, 0, j, c, c};
}

// Ranking of unsigned atoms; unlisted atoms get `default_rank`.
struct Ranking {
  std::map<std::string, long> ranks;
  long default_rank = 1;

  long rank_of(const std::string& atom) const {
    auto it = ranks.find(atom);
    return it == ranks.end() ? default_rank : it->second;
  }
};

// Lines "atom rank"; '#' comments and blank lines are skipped.
inline Ranking parse_ranking(std::string_view text) {
  Ranking r;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream row(line);
    std::string name, extra;
    long rank = 0;
    if (!(row >> name)) continue;
    if (!(row >> rank) || rank < 0 || (row >> extra))
      throw ParseError("ranking line must be '<atom> <nonnegative rank>'", lineno, 1);
    const Atom a = parse_atom(name);
    if (!a.is_plain()) throw ParseError("ranking applies to unsigned atoms only", lineno, 1);
    r.ranks[a.base] = rank;
  }
  return r;
}

struct DefaultTheory {
  Theory facts;
  std::vector<Default> defaults;
  Family family = Family::t0;
  // Unsigned atoms of the source theory W, first-occurrence order.
  std::vector<std::string> source_atoms;
  // Partition of default indices, ordered by increasing rank.
  std::optional<std::vector<std::vector<std::size_t>>> layers;

  std::vector<Formula> justifications() const {
    std::vector<Formula> out;
    out.reserve(defaults.size());
    for (const auto& d : defaults) out.push_back(d.justification);
    return out;
  }
  std::vector<Formula> consequents() const {
    std::vector<Formula> out;
    out.reserve(defaults.size());
    for (const auto& d : defaults) out.push_back(d.consequent);
    return out;
  }
};

inline std::vector<std::string> unsigned_atoms(const Theory& w) {
  std::vector<std::string> out;
  for (const auto& a : w.atoms()) {
    if (!a.is_plain()) throw std::invalid_argument("source theory must not contain signed atoms: " + to_string(a));
    out.push_back(a.base);
  }
  return out;
}

// T0 = (D, W+-), T1 = (D1, W+-_I), T2 = (D2, W+-_I), each restricted to the
// atoms of W. Defaults follow first occurrence of their atom in W, then
// occurrence index.
inline DefaultTheory build_theory(const Theory& w, Family family) {
  DefaultTheory t;
  t.family = family;
  t.source_atoms = unsigned_atoms(w);
  if (family == Family::t0) {
    t.facts = sign_theory(w);
    for (const auto& p : t.source_atoms) t.defaults.push_back(global_default(p));
    return t;
  }
  IndexedSigning s = index_occurrences(w);
  t.facts = s.signed_theory;
  for (const auto& p : t.source_atoms) {
    if (!s.complementary.contains(p)) {
      t.defaults.push_back(global_default(p));
      continue;
    }
    const auto& pos = s.positive_indices.at(p);
    const auto& negs = s.negative_indices.at(p);
    if (family == Family::t1) {
      for (unsigned i : pos)
        for (unsigned j : negs) t.defaults.push_back(pair_default(p, i, j));
    } else {
      std::vector<Default> ds;
      for (unsigned i : pos) ds.push_back(pos_default(p, i));
      for (unsigned j : negs) ds.push_back(neg_default(p, j));
      std::stable_sort(ds.begin(), ds.end(), [](const Default& a, const Default& b) {
        return (a.kind == DefaultKind::pos ? a.i : a.j) < (b.kind == DefaultKind::pos ? b.i : b.j);
      });
      t.defaults.insert(t.defaults.end(), ds.begin(), ds.end());
    }
  }
  return t;
}

// Adds c(delta_p) to the facts for every atom p of phi outside var(W).
inline DefaultTheory augment_for_query(const DefaultTheory& t, const Formula& phi) {
  if (t.family != Family::t0) throw std::invalid_argument("signed queries are defined for family t0 only");
  DefaultTheory out = t;
  for (const auto& a : atoms_of(phi)) {
    if (!a.is_plain()) throw std::invalid_argument("query must not contain signed atoms: " + to_string(a));
    if (std::find(t.source_atoms.begin(), t.source_atoms.end(), a.base) == t.source_atoms.end())
      out.facts.add(global_default(a.base).consequent);
  }
  return out;
}

// Groups defaults by the rank of their atom; empty ranks are dropped.
inline DefaultTheory layer(const DefaultTheory& t, const Ranking& rho) {
  std::map<long, std::vector<std::size_t>> by_rank;
  for (std::size_t k = 0; k < t.defaults.size(); ++k) by_rank[rho.rank_of(t.defaults[k].atom)].push_back(k);
  DefaultTheory out = t;
  out.layers.emplace();
  for (auto& [rank, members] : by_rank) out.layers->push_back(std::move(members));
  return out;
}

}  // namespace sigsys

#endif  // SIGSYS_DEFAULTS_HPP
