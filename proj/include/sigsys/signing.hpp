#ifndef SIGSYS_SIGNING_HPP
#define SIGSYS_SIGNING_HPP

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

#include "sigsys/formula.hpp"
#include "sigsys/logic.hpp"

namespace sigsys {

namespace detail {

// Rewrites atoms by occurrence: positive p -> p+, negative p -> ~p-.
// `rename` receives (atom, polarity, global position) and returns the signed
// atom to use; the ~ wrapper for negative occurrences is added here.
template <class Rename>
Formula sign_walk(const Formula& f, Polarity pol, std::size_t& position, Rename& rename) {
  switch (f.op()) {
    case Op::top:
    case Op::bottom:
      return f;
    case Op::atom: {
      if (!f.atom().is_plain()) throw std::invalid_argument("signing: atom is already signed: " + to_string(f.atom()));
      ++position;
      Formula a = atom(rename(f.atom(), pol, position));
      return pol == Polarity::positive ? a : neg(a);
    }
    case Op::negation:
      return neg(sign_walk(f.lhs(), flip(pol), position, rename));
    case Op::implies: {
      Formula l = sign_walk(f.lhs(), flip(pol), position, rename);
      return implies(std::move(l), sign_walk(f.rhs(), pol, position, rename));
    }
    case Op::conj:
    case Op::disj: {
      Formula l = sign_walk(f.lhs(), pol, position, rename);
      return Formula::make_binary(f.op(), std::move(l), sign_walk(f.rhs(), pol, position, rename));
    }
    case Op::iff:
      throw std::invalid_argument("signing: '<->' must be normalized away first");
    default:
      throw std::invalid_argument("signing: quantified formula");
  }
}

}  // namespace detail

// alpha -> alpha+-: each positive occurrence of p becomes p+, each negative
// one ~p-. Equivalences are normalized away first.
inline Formula sign_formula(const Formula& f) {
  std::size_t pos = 0;
  auto rename = [](const Atom& a, Polarity pol, std::size_t) {
    return Atom(a.base, pol == Polarity::positive ? Sign::pos : Sign::neg);
  };
  return detail::sign_walk(normalize_for_signing(f), Polarity::positive, pos, rename);
}

inline Theory sign_theory(const Theory& w) {
  Theory out;
  for (const auto& f : w) out.add(sign_formula(f));
  return out;
}

// W+-_I together with the bookkeeping the refined default families need.
struct IndexedSigning {
  Theory signed_theory;
  // (atom base, 1-based occurrence position across the theory) -> index
  std::map<std::pair<std::string, std::size_t>, unsigned> index_table;
  std::set<std::string> complementary;
  // Per complementary atom, the indices of its positive / negative
  // occurrences in increasing order.
  std::map<std::string, std::vector<unsigned>> positive_indices;
  std::map<std::string, std::vector<unsigned>> negative_indices;
};

// Every occurrence of an atom with complementary occurrences in W receives
// its own index from one counter running over the theory left to right;
// other atoms get the plain p+/p- signing.
inline IndexedSigning index_occurrences(const Theory& w) {
  const Theory normalized = normalize_for_signing(w);
  IndexedSigning out;

  std::set<std::string> seen_pos, seen_neg;
  for (const auto& f : normalized) {
    for (const auto& occ : polarity_map(f)) {
      if (!occ.atom.is_plain()) throw std::invalid_argument("signing: atom is already signed: " + to_string(occ.atom));
      (occ.polarity == Polarity::positive ? seen_pos : seen_neg).insert(occ.atom.base);
    }
  }
  for (const auto& b : seen_pos)
    if (seen_neg.contains(b)) out.complementary.insert(b);

  unsigned counter = 0;
  std::size_t position = 0;
  auto rename = [&](const Atom& a, Polarity pol, std::size_t at) {
    const Sign s = pol == Polarity::positive ? Sign::pos : Sign::neg;
    if (!out.complementary.contains(a.base)) return Atom(a.base, s);
    const unsigned idx = ++counter;
    out.index_table.emplace(std::make_pair(a.base, at), idx);
    (pol == Polarity::positive ? out.positive_indices : out.negative_indices)[a.base].push_back(idx);
    return Atom(a.base, s, idx);
  };
  for (const auto& f : normalized)
    out.signed_theory.add(detail::sign_walk(f, Polarity::positive, position, rename));
  return out;
}

}  // namespace sigsys

#endif  // SIGSYS_SIGNING_HPP
