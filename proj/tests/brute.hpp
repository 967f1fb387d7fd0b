#ifndef SIGSYS_TESTS_BRUTE_HPP
#define SIGSYS_TESTS_BRUTE_HPP

// Independent reference computations for the tests: truth tables and
// exhaustive subset enumeration, sharing nothing with the library's SAT,
// circuit or QBF machinery. Only usable on small instances.

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "sigsys/defaults.hpp"
#include "sigsys/formula.hpp"
#include "sigsys/oracle.hpp"
#include "sigsys/signing.hpp"

namespace brute {

using sigsys::Atom;
using sigsys::Formula;
using sigsys::Op;
using Assignment = std::map<Atom, bool>;

// Full expansion of quantifiers, no memoization.
inline bool truth(const Formula& f, Assignment& a) {
  switch (f.op()) {
    case Op::top:
      return true;
    case Op::bottom:
      return false;
    case Op::atom: {
      auto it = a.find(f.atom());
      return it != a.end() && it->second;
    }
    case Op::negation:
      return !truth(f.lhs(), a);
    case Op::conj:
      return truth(f.lhs(), a) && truth(f.rhs(), a);
    case Op::disj:
      return truth(f.lhs(), a) || truth(f.rhs(), a);
    case Op::implies:
      return !truth(f.lhs(), a) || truth(f.rhs(), a);
    case Op::iff:
      return truth(f.lhs(), a) == truth(f.rhs(), a);
    case Op::forall:
    case Op::exists: {
      const Atom v = f.atom();
      auto it = a.find(v);
      const bool had = it != a.end();
      const bool old = had && it->second;
      a[v] = true;
      const bool hi = truth(f.body(), a);
      a[v] = false;
      const bool lo = truth(f.body(), a);
      if (had)
        a[v] = old;
      else
        a.erase(v);
      return f.op() == Op::forall ? (hi && lo) : (hi || lo);
    }
  }
  return false;
}

inline bool truth(const Formula& f, const sigsys::AtomSet& m) {
  Assignment a;
  for (const auto& x : m) a[x] = true;
  return truth(f, a);
}

inline std::vector<Atom> atoms(const std::vector<Formula>& fs) {
  std::vector<Atom> out;
  for (const auto& f : fs)
    for (const auto& a : sigsys::atoms_of(f))
      if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(a);
  return out;
}

inline bool satisfiable(const std::vector<Formula>& fs) {
  const auto vs = atoms(fs);
  if (vs.size() > 22) throw std::length_error("brute::satisfiable: too many atoms");
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << vs.size()); ++m) {
    Assignment a;
    for (std::size_t i = 0; i < vs.size(); ++i) a[vs[i]] = (m >> i) & 1;
    bool ok = true;
    for (const auto& f : fs)
      if (!truth(f, a)) {
        ok = false;
        break;
      }
    if (ok) return true;
  }
  return false;
}

inline bool entails(std::vector<Formula> premises, const Formula& phi) {
  premises.push_back(sigsys::neg(phi));
  return !brute::satisfiable(premises);
}

// Maximal subsets of `cands` consistent with `facts`, by checking every
// subset and keeping the inclusion-maximal consistent ones.
inline std::vector<sigsys::GeneratingSet> max_consistent(const std::vector<Formula>& facts,
                                                         const std::vector<Formula>& cands) {
  const std::size_t n = cands.size();
  std::vector<std::uint32_t> consistent;
  for (std::uint32_t m = 0; m < (1u << n); ++m) {
    std::vector<Formula> fs = facts;
    for (std::size_t i = 0; i < n; ++i)
      if ((m >> i) & 1) fs.push_back(cands[i]);
    if (brute::satisfiable(fs)) consistent.push_back(m);
  }
  std::vector<sigsys::GeneratingSet> out;
  for (std::uint32_t m : consistent) {
    bool maximal = true;
    for (std::uint32_t o : consistent)
      if (o != m && (o & m) == m) maximal = false;
    if (!maximal) continue;
    sigsys::GeneratingSet c;
    for (std::size_t i = 0; i < n; ++i)
      if ((m >> i) & 1) c.push_back(i);
    out.push_back(c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<sigsys::GeneratingSet> extensions(const sigsys::DefaultTheory& t) {
  return max_consistent(t.facts.formulas, t.justifications());
}

// C is hierarchic iff on every layer, C's share is a maximal subset of the
// layer's justifications consistent with V plus earlier consequents in C.
inline std::vector<sigsys::GeneratingSet> hierarchic_extensions(const sigsys::DefaultTheory& t) {
  const std::size_t n = t.defaults.size();
  std::vector<sigsys::GeneratingSet> out;
  for (std::uint32_t m = 0; m < (1u << n); ++m) {
    std::vector<Formula> facts = t.facts.formulas;
    bool ok = true;
    for (const auto& layer : *t.layers) {
      std::vector<Formula> js;
      sigsys::GeneratingSet mine;
      for (std::size_t i = 0; i < layer.size(); ++i) {
        js.push_back(t.defaults[layer[i]].justification);
        if ((m >> layer[i]) & 1) mine.push_back(i);
      }
      const auto maxes = max_consistent(facts, js);
      if (!std::binary_search(maxes.begin(), maxes.end(), mine)) {
        ok = false;
        break;
      }
      for (std::size_t k : layer)
        if ((m >> k) & 1) facts.push_back(t.defaults[k].consequent);
    }
    if (!ok) continue;
    sigsys::GeneratingSet c;
    for (std::size_t i = 0; i < n; ++i)
      if ((m >> i) & 1) c.push_back(i);
    out.push_back(c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Consequence relations straight from their definitions: Pi_E collects
// the consequents whose justification's negation is not in E.
inline bool holds(const sigsys::Theory& w, const Formula& phi, const sigsys::QuerySpec& spec) {
  using namespace sigsys;
  DefaultTheory t = build_theory(w, spec.family);
  if (spec.hierarchic) t = layer(t, spec.ranking.value_or(Ranking{}));
  const auto exts = spec.hierarchic ? brute::hierarchic_extensions(t) : brute::extensions(t);
  std::vector<Formula> facts = t.facts.formulas;
  Formula goal = phi;
  if (spec.is_signed) {
    const auto names = t.source_atoms;
    for (const auto& a : atoms_of(phi))
      if (std::find(names.begin(), names.end(), a.base) == names.end())
        facts.push_back(global_default(a.base).consequent);
    goal = sign_formula(phi);
  }
  auto pi = [&](const GeneratingSet& c) {
    std::vector<Formula> e = t.facts.formulas;
    for (std::size_t k : c) e.push_back(t.defaults[k].consequent);
    std::vector<bool> in(t.defaults.size());
    for (std::size_t k = 0; k < t.defaults.size(); ++k) in[k] = !brute::entails(e, neg(t.defaults[k].justification));
    return in;
  };
  auto derives = [&](const std::vector<bool>& in) {
    std::vector<Formula> premises = facts;
    for (std::size_t k = 0; k < in.size(); ++k)
      if (in[k]) premises.push_back(t.defaults[k].consequent);
    return brute::entails(premises, goal);
  };
  switch (spec.mode) {
    case Mode::credulous:
      return std::any_of(exts.begin(), exts.end(), [&](const auto& c) { return derives(pi(c)); });
    case Mode::skeptical:
      return std::all_of(exts.begin(), exts.end(), [&](const auto& c) { return derives(pi(c)); });
    case Mode::prudent: {
      std::vector<bool> common(t.defaults.size(), true);
      for (const auto& c : exts) {
        const auto in = pi(c);
        for (std::size_t k = 0; k < in.size(); ++k) common[k] = common[k] && in[k];
      }
      return derives(common);
    }
  }
  return false;
}

// Models of an open QBF over the given variables, as sorted index sets.
inline std::vector<sigsys::GeneratingSet> models_over(const Formula& f, const std::vector<Atom>& vars) {
  std::vector<sigsys::GeneratingSet> out;
  for (std::uint32_t m = 0; m < (1u << vars.size()); ++m) {
    Assignment a;
    sigsys::GeneratingSet c;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      a[vars[i]] = (m >> i) & 1;
      if ((m >> i) & 1) c.push_back(i);
    }
    if (truth(f, a)) out.push_back(c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace brute

#endif  // SIGSYS_TESTS_BRUTE_HPP
