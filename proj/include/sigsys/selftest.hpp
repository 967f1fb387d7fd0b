#ifndef SIGSYS_SELFTEST_HPP
#define SIGSYS_SELFTEST_HPP

// Randomized cross-check of the two backends, plus the structural
// properties of the consequence relations, over generated instances.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "sigsys/defaults.hpp"
#include "sigsys/encoder.hpp"
#include "sigsys/logic.hpp"
#include "sigsys/oracle.hpp"
#include "sigsys/qbf.hpp"
#include "sigsys/syntax.hpp"

namespace sigsys {

struct SelftestConfig {
  unsigned atoms = 4;
  unsigned formulas = 4;
  unsigned trials = 200;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  // Every n-th trial draws a consistent theory (0 disables the control group).
  unsigned consistent_every = 4;
  bool check_qbf = true;
};

// Every well-formed combination of mode, signing, hierarchy and family.
inline std::vector<QuerySpec> all_query_specs() {
  std::vector<QuerySpec> out;
  for (bool is_signed : {false, true})
    for (Family fam : {Family::t0, Family::t1, Family::t2})
      for (bool hier : {false, true})
        for (Mode m : {Mode::credulous, Mode::skeptical, Mode::prudent}) {
          if (is_signed && fam != Family::t0) continue;
          QuerySpec s;
          s.mode = m;
          s.is_signed = is_signed;
          s.hierarchic = hier;
          s.family = fam;
          out.push_back(s);
        }
  return out;
}

class InstanceGenerator {
 public:
  InstanceGenerator(std::uint64_t seed, unsigned atoms, unsigned formulas)
      : rng_(seed), formulas_(std::max(1u, formulas)) {
    static const char* names[] = {"p", "q", "r", "s", "t", "u", "v", "w"};
    for (unsigned i = 0; i < std::clamp(atoms, 1u, 8u); ++i) atoms_.emplace_back(names[i]);
  }

  // Occurrence and default-count caps keep the exhaustive oracle cheap.
  static constexpr std::size_t kMaxOccurrences = 8;
  static constexpr std::size_t kMaxPairDefaults = 12;

  Formula formula(unsigned depth, const std::vector<std::string>& pool) {
    if (depth == 0 || coin(0.3)) return atom(pool[below(pool.size())]);
    switch (below(9)) {
      case 0:
      case 1:
        return neg(formula(depth - 1, pool));
      case 2:
      case 3:
        return conj(formula(depth - 1, pool), formula(depth - 1, pool));
      case 4:
      case 5:
        return disj(formula(depth - 1, pool), formula(depth - 1, pool));
      case 6:
      case 7:
        return implies(formula(depth - 1, pool), formula(depth - 1, pool));
      default:
        return iff(formula(depth - 1, pool), formula(depth - 1, pool));
    }
  }

  // A theory with at least one complementary atom, or a consistent one.
  Theory theory(bool consistent) {
    while (true) {
      Theory w;
      const std::size_t n = 1 + below(formulas_);
      for (std::size_t i = 0; i < n; ++i) w.add(formula(2, atoms_));
      std::size_t occurrences = 0;
      for (const auto& f : normalize_for_signing(w)) occurrences += polarity_map(f).size();
      if (occurrences > kMaxOccurrences) continue;
      const IndexedSigning s = index_occurrences(w);
      std::size_t pairs = 0;
      for (const auto& p : s.complementary) pairs += s.positive_indices.at(p).size() * s.negative_indices.at(p).size();
      if (pairs > kMaxPairDefaults) continue;
      if (consistent ? !is_consistent(w) : s.complementary.empty()) continue;
      return w;
    }
  }

  // Ranks 0..2 over the atoms of w.
  Ranking ranking(const Theory& w) {
    Ranking r;
    for (const auto& a : w.atoms()) r.ranks[a.base] = static_cast<long>(below(3));
    return r;
  }

  // Over the atoms of w, sometimes with one atom foreign to w.
  Formula query(const Theory& w) {
    std::vector<std::string> pool;
    for (const auto& a : w.atoms()) pool.push_back(a.base);
    if (pool.empty() || coin(0.25)) pool.push_back("z");
    return formula(2, pool);
  }

 private:
  std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  bool coin(double p) { return std::bernoulli_distribution(p)(rng_); }

  std::mt19937_64 rng_;
  std::size_t formulas_;
  std::vector<std::string> atoms_;
};

struct TrialOutcome {
  std::size_t queries = 0;
  std::size_t agreement_checks = 0;
  std::size_t ordering_checks = 0;
  std::size_t paraconsistency_checks = 0;
  std::size_t collapse_checks = 0;
  std::size_t hierarchic_checks = 0;
  bool consistent_instance = false;
  std::vector<std::string> divergences;
  std::vector<std::string> violations;
};

struct SelftestReport {
  SelftestConfig config;
  std::size_t specs = 0;
  std::size_t queries = 0;
  std::size_t consistent_instances = 0;
  std::size_t agreement_checks = 0;
  std::size_t ordering_checks = 0;
  std::size_t paraconsistency_checks = 0;
  std::size_t collapse_checks = 0;
  std::size_t hierarchic_checks = 0;
  std::size_t divergences = 0;
  std::size_t violations = 0;
  std::optional<std::string> first_divergence;
  std::optional<std::string> first_violation;

  bool ok() const { return divergences == 0 && violations == 0; }

  std::string text() const {
    std::ostringstream os;
    os << "selftest atoms=" << config.atoms << " formulas=" << config.formulas << " trials=" << config.trials
       << " seed=" << config.seed << '\n';
    os << "combinations: " << specs << '\n';
    os << "queries: " << queries << '\n';
    os << "consistent instances: " << consistent_instances << '\n';
    os << "checks: agreement=" << agreement_checks << " ordering=" << ordering_checks
       << " paraconsistency=" << paraconsistency_checks << " collapse=" << collapse_checks
       << " hierarchic=" << hierarchic_checks << '\n';
    os << "divergences: " << divergences << '\n';
    if (first_divergence) os << "first divergence: " << *first_divergence << '\n';
    os << "violations: " << violations << '\n';
    if (first_violation) os << "first violation: " << *first_violation << '\n';
    os << "result: " << (ok() ? "PASS" : "FAIL") << '\n';
    return os.str();
  }
};

namespace detail {

inline std::string describe(const Theory& w, const Formula& phi, const QuerySpec& spec, const Ranking& rho) {
  std::string s = "W = {";
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? ", " : "") + to_string(w[i]);
  s += "}, phi = " + to_string(phi) + ", relation = " + spec.label();
  if (spec.hierarchic) {
    s += ", ranking = {";
    bool first = true;
    for (const auto& [a, r] : rho.ranks) {
      s += (first ? "" : ", ") + a + ":" + std::to_string(r);
      first = false;
    }
    s += "}";
  }
  return s;
}

inline std::size_t spec_slot(const QuerySpec& s) {
  return (((s.is_signed ? 1u : 0u) * 3 + static_cast<unsigned>(s.family)) * 2 + (s.hierarchic ? 1u : 0u)) * 3 +
         static_cast<unsigned>(s.mode);
}

}  // namespace detail

inline TrialOutcome run_trial(const SelftestConfig& cfg, std::size_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::uint64_t trial_seed = 0;
  {
    std::vector<std::uint32_t> words(2);
    seq.generate(words.begin(), words.end());
    trial_seed = (std::uint64_t{words[0]} << 32) | words[1];
  }
  InstanceGenerator gen(trial_seed, cfg.atoms, cfg.formulas);
  TrialOutcome out;
  out.consistent_instance = cfg.consistent_every != 0 && index % cfg.consistent_every == cfg.consistent_every - 1;
  const Theory w = gen.theory(out.consistent_instance);
  const Ranking rho = gen.ranking(w);
  const Formula phi = gen.query(w);
  const std::string where = "trial " + std::to_string(index) + ": ";

  const auto specs = all_query_specs();
  std::vector<std::optional<bool>> verdict(36);
  for (auto spec : specs) {
    if (spec.hierarchic) spec.ranking = rho;
    const bool oracle = holds(w, phi, spec);
    verdict[detail::spec_slot(spec)] = oracle;
    ++out.queries;
    if (cfg.check_qbf) {
      const bool qbf = is_valid(enc_query(w, phi, spec).formula);
      ++out.agreement_checks;
      if (qbf != oracle)
        out.divergences.push_back(where + detail::describe(w, phi, spec, rho) + ": oracle " +
                                  (oracle ? "YES" : "NO") + ", qbf " + (qbf ? "YES" : "NO"));
    }
    // Falsum is never a consequence.
    ++out.paraconsistency_checks;
    bool bottom = holds(w, sigsys::bottom(), spec);
    if (cfg.check_qbf) bottom = bottom || is_valid(enc_query(w, sigsys::bottom(), spec).formula);
    if (bottom) out.violations.push_back(where + detail::describe(w, sigsys::bottom(), spec, rho) + ": falsum derived");
    if (out.consistent_instance) {
      ++out.collapse_checks;
      if (oracle != entails(w, phi))
        out.violations.push_back(where + detail::describe(w, phi, spec, rho) + ": differs from classical entailment");
    }
  }

  auto at = [&](bool is_signed, Family fam, bool hier, Mode m) {
    QuerySpec s;
    s.is_signed = is_signed;
    s.family = fam;
    s.hierarchic = hier;
    s.mode = m;
    return *verdict[detail::spec_slot(s)];
  };
  for (bool is_signed : {false, true})
    for (Family fam : {Family::t0, Family::t1, Family::t2})
      for (bool hier : {false, true}) {
        if (is_signed && fam != Family::t0) continue;
        ++out.ordering_checks;
        const bool c = at(is_signed, fam, hier, Mode::credulous);
        const bool s = at(is_signed, fam, hier, Mode::skeptical);
        const bool p = at(is_signed, fam, hier, Mode::prudent);
        if ((p && !s) || (s && !c)) {
          QuerySpec spec;
          spec.is_signed = is_signed;
          spec.family = fam;
          spec.hierarchic = hier;
          out.violations.push_back(where + detail::describe(w, phi, spec, rho) + ": prudent/skeptical/credulous = " +
                                   std::to_string(p) + std::to_string(s) + std::to_string(c));
        }
      }
  for (bool hier : {false, true})
    for (Mode m : {Mode::credulous, Mode::skeptical, Mode::prudent}) {
      ++out.ordering_checks;
      if (at(false, Family::t0, hier, m) && !at(true, Family::t0, hier, m)) {
        QuerySpec spec;
        spec.mode = m;
        spec.hierarchic = hier;
        out.violations.push_back(where + detail::describe(w, phi, spec, rho) + ": unsigned holds, signed does not");
      }
    }

  for (Family fam : {Family::t0, Family::t1, Family::t2}) {
    const DefaultTheory t = build_theory(w, fam);
    const auto exts = extensions(t);
    ++out.hierarchic_checks;
    const auto hexts = hierarchic_extensions(layer(t, rho));
    for (const auto& c : hexts)
      if (!std::binary_search(exts.begin(), exts.end(), c)) {
        out.violations.push_back(where + "hierarchic extension outside extensions for family " + to_string(fam));
        break;
      }
    ++out.hierarchic_checks;
    if (hierarchic_extensions(layer(t, Ranking{})) != exts)
      out.violations.push_back(where + "single-layer hierarchic extensions differ for family " + to_string(fam));
  }
  return out;
}

inline SelftestReport run_selftest(const SelftestConfig& cfg) {
  std::vector<TrialOutcome> outcomes(cfg.trials);
  const unsigned threads = std::max(1u, std::min(cfg.threads, cfg.trials));
  if (threads == 1) {
    for (std::size_t i = 0; i < cfg.trials; ++i) outcomes[i] = run_trial(cfg, i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < threads; ++k)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < cfg.trials; i = next++) outcomes[i] = run_trial(cfg, i);
      });
    for (auto& th : pool) th.join();
  }

  SelftestReport r;
  r.config = cfg;
  r.specs = all_query_specs().size();
  for (const auto& o : outcomes) {
    r.queries += o.queries;
    r.consistent_instances += o.consistent_instance ? 1 : 0;
    r.agreement_checks += o.agreement_checks;
    r.ordering_checks += o.ordering_checks;
    r.paraconsistency_checks += o.paraconsistency_checks;
    r.collapse_checks += o.collapse_checks;
    r.hierarchic_checks += o.hierarchic_checks;
    r.divergences += o.divergences.size();
    r.violations += o.violations.size();
    if (!r.first_divergence && !o.divergences.empty()) r.first_divergence = o.divergences.front();
    if (!r.first_violation && !o.violations.empty()) r.first_violation = o.violations.front();
  }
  return r;
}

}  // namespace sigsys

#endif  // SIGSYS_SELFTEST_HPP
