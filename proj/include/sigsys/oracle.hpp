#ifndef SIGSYS_ORACLE_HPP
#define SIGSYS_ORACLE_HPP

// Reference backend. Extensions of the signed default theories are
// represented by their generating sets C: Cn(V u c(C)) is an extension iff
// j(C) is a maximal subset of j(D) consistent with V.

#include <algorithm>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "sigsys/defaults.hpp"
#include "sigsys/logic.hpp"
#include "sigsys/signing.hpp"

namespace sigsys {

// Sorted default (or formula) indices.
using GeneratingSet = std::vector<std::size_t>;

enum class Mode : std::uint8_t { credulous, skeptical, prudent };

inline std::string to_string(Mode m) {
  switch (m) {
    case Mode::credulous:
      return "c";
    case Mode::skeptical:
      return "s";
    default:
      return "p";
  }
}

inline Mode parse_mode(std::string_view s) {
  if (s == "c" || s == "credulous") return Mode::credulous;
  if (s == "s" || s == "skeptical") return Mode::skeptical;
  if (s == "p" || s == "prudent") return Mode::prudent;
  throw std::invalid_argument("unknown relation '" + std::string(s) + "' (expected c, s or p)");
}

class UnsupportedQuery : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct QuerySpec {
  Mode mode = Mode::credulous;
  bool is_signed = false;
  bool hierarchic = false;
  Family family = Family::t0;
  std::optional<Ranking> ranking;

  void validate() const {
    if (is_signed && family != Family::t0)
      throw UnsupportedQuery("signed consequence is only defined on family t0");
  }

  std::string label() const {
    std::string s = to_string(mode);
    if (hierarchic) s += "h";
    if (is_signed) s += "+-";
    return s + "/" + to_string(family);
  }
};

// All S' subset of S (as index sets) with V u S' consistent and maximal so.
inline std::vector<GeneratingSet> max_consistent_subsets(std::span<const Formula> facts,
                                                         std::span<const Formula> candidates) {
  ConsistencyChecker checker(facts, candidates);
  std::vector<GeneratingSet> out;
  const std::size_t n = candidates.size();
  if (!checker.consistent({})) return out;

  GeneratingSet chosen;
  // Depth-first over include/exclude decisions; include is only tried when
  // consistent, maximality is checked at the leaves.
  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (k == n) {
      GeneratingSet probe = chosen;
      std::size_t at = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (at < chosen.size() && chosen[at] == i) {
          ++at;
          continue;
        }
        probe.push_back(i);
        const bool extendable = checker.consistent(probe);
        probe.pop_back();
        if (extendable) return;
      }
      out.push_back(chosen);
      return;
    }
    chosen.push_back(k);
    if (checker.consistent(chosen)) self(self, k + 1);
    chosen.pop_back();
    self(self, k + 1);
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end());
  return out;
}

// Generating sets of all extensions of a theory from the restricted class.
inline std::vector<GeneratingSet> extensions(const DefaultTheory& t) {
  const auto js = t.justifications();
  return max_consistent_subsets(t.facts.formulas, js);
}

// Layer by layer: j(D_i n C) must be a maximal subset of j(D_i) consistent
// with V plus the consequents chosen on earlier layers.
inline std::vector<GeneratingSet> hierarchic_extensions(const DefaultTheory& t) {
  if (!t.layers) throw std::invalid_argument("hierarchic_extensions: theory has no layers");
  const auto& layers = *t.layers;
  std::vector<GeneratingSet> out;
  GeneratingSet chosen;
  auto rec = [&](auto&& self, std::size_t level, std::vector<Formula>& facts) -> void {
    if (level == layers.size()) {
      GeneratingSet c = chosen;
      std::sort(c.begin(), c.end());
      out.push_back(std::move(c));
      return;
    }
    std::vector<Formula> js;
    for (std::size_t k : layers[level]) js.push_back(t.defaults[k].justification);
    for (const auto& local : max_consistent_subsets(facts, js)) {
      const std::size_t mark = facts.size();
      for (std::size_t m : local) {
        const std::size_t k = layers[level][m];
        chosen.push_back(k);
        facts.push_back(t.defaults[k].consequent);
      }
      self(self, level + 1, facts);
      facts.resize(mark);
      chosen.resize(chosen.size() - local.size());
    }
  };
  std::vector<Formula> facts = t.facts.formulas;
  rec(rec, 0, facts);
  std::sort(out.begin(), out.end());
  return out;
}

// Pi of the extension generated by C: indices of defaults whose
// justification is not refuted by Cn(V u c(C)).
inline GeneratingSet pi_of(const DefaultTheory& t, const GeneratingSet& c) {
  std::vector<Formula> base = t.facts.formulas;
  for (std::size_t k : c) base.push_back(t.defaults.at(k).consequent);
  GeneratingSet out;
  for (std::size_t k = 0; k < t.defaults.size(); ++k)
    if (!entails(base, neg(t.defaults[k].justification))) out.push_back(k);
  return out;
}

inline std::vector<Formula> consequents_of(const DefaultTheory& t, const GeneratingSet& c) {
  std::vector<Formula> out;
  for (std::size_t k : c) out.push_back(t.defaults.at(k).consequent);
  return out;
}

struct Verdict {
  bool holds = false;
  // Credulous yes: a supporting extension. Skeptical no: a refuting one.
  std::optional<GeneratingSet> witness;
};

// The default theory a query is evaluated against (layered when hierarchic).
inline DefaultTheory query_theory(const Theory& w, const QuerySpec& spec) {
  DefaultTheory t = build_theory(w, spec.family);
  if (spec.hierarchic) t = layer(t, spec.ranking.value_or(Ranking{}));
  return t;
}

inline Verdict decide(const Theory& w, const Formula& phi, const QuerySpec& spec) {
  spec.validate();
  if (!phi.is_propositional()) throw std::invalid_argument("query must be propositional");
  const DefaultTheory t = query_theory(w, spec);
  const auto exts = spec.hierarchic ? hierarchic_extensions(t) : extensions(t);

  Theory facts = t.facts;
  Formula goal = phi;
  if (spec.is_signed) {
    facts = augment_for_query(t, phi).facts;
    goal = sign_formula(phi);
  }
  auto supported = [&](const GeneratingSet& pi) {
    std::vector<Formula> premises = facts.formulas;
    for (auto& f : consequents_of(t, pi)) premises.push_back(std::move(f));
    return entails(premises, goal);
  };

  Verdict v;
  switch (spec.mode) {
    case Mode::credulous:
      for (const auto& c : exts) {
        if (supported(pi_of(t, c))) {
          v.holds = true;
          v.witness = c;
          break;
        }
      }
      break;
    case Mode::skeptical:
      v.holds = true;
      for (const auto& c : exts) {
        if (!supported(pi_of(t, c))) {
          v.holds = false;
          v.witness = c;
          break;
        }
      }
      break;
    case Mode::prudent: {
      // Intersection over an empty family of extensions is all of D.
      GeneratingSet common(t.defaults.size());
      for (std::size_t k = 0; k < common.size(); ++k) common[k] = k;
      for (const auto& c : exts) {
        const GeneratingSet pi = pi_of(t, c);
        GeneratingSet next;
        std::set_intersection(common.begin(), common.end(), pi.begin(), pi.end(), std::back_inserter(next));
        common = std::move(next);
      }
      v.holds = supported(common);
      break;
    }
  }
  return v;
}

inline bool holds(const Theory& w, const Formula& phi, const QuerySpec& spec) { return decide(w, phi, spec).holds; }

}  // namespace sigsys

#endif  // SIGSYS_ORACLE_HPP
