#include <gtest/gtest.h>

#include "brute.hpp"
#include "sigsys/selftest.hpp"

using namespace sigsys;

TEST(Selftest, CoversEveryCombination) {
  EXPECT_EQ(all_query_specs().size(), 24u);
  SelftestConfig cfg;
  cfg.trials = 0;
  const auto r = run_selftest(cfg);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.queries, 0u);
  EXPECT_EQ(r.specs, 24u);
}

TEST(Selftest, GeneratorRespectsCaps) {
  InstanceGenerator gen(9, 4, 4);
  for (int k = 0; k < 100; ++k) {
    const Theory w = gen.theory(k % 2 == 0);
    std::size_t occurrences = 0;
    for (const auto& f : normalize_for_signing(w)) occurrences += polarity_map(f).size();
    ASSERT_LE(occurrences, InstanceGenerator::kMaxOccurrences);
    std::size_t pairs = 0;
    for (const auto& d : build_theory(w, Family::t1).defaults) pairs += d.name().find(',') != std::string::npos;
    ASSERT_LE(pairs, InstanceGenerator::kMaxPairDefaults);
    if (k % 2 == 0) {
      ASSERT_TRUE(is_consistent(w)) << to_string(w);
    }
  }
}

TEST(Selftest, SmallRunFindsNoDivergence) {
  SelftestConfig cfg;
  cfg.atoms = 3;
  cfg.formulas = 3;
  cfg.trials = 50;
  cfg.seed = 7;
  const auto r = run_selftest(cfg);
  EXPECT_EQ(r.divergences, 0u) << r.text();
  EXPECT_EQ(r.queries, 50u * 24u);
  EXPECT_GT(r.consistent_instances, 0u);
  EXPECT_GT(r.ordering_checks, 0u);
  // The one violation in this run is the prudent counterexample below.
  EXPECT_EQ(r.violations, 1u) << r.text();
  ASSERT_TRUE(r.first_violation);
  EXPECT_EQ(r.first_violation->rfind("trial 41: ", 0), 0u) << *r.first_violation;
}

TEST(Selftest, PrudentUnsignedToSignedCounterexample) {
  // Extensions {d_p, d_r}, {d_q, d_r}, {d_p, d_q} have disjoint Pi sets, so
  // prudent reasoning adds nothing to W+-. The tautology holds unsigned,
  // its signed form q- | q+ | (r+ & q+) does not follow from W+- alone.
  const Theory w = parse_theory("~r -> p & q\n~(q & p)\n~r");
  const Formula phi = parse_formula("(q -> q) | r & q");
  QuerySpec s;
  s.mode = Mode::prudent;
  EXPECT_TRUE(holds(w, phi, s));
  EXPECT_TRUE(brute::holds(w, phi, s));
  s.is_signed = true;
  EXPECT_FALSE(holds(w, phi, s));
  EXPECT_FALSE(brute::holds(w, phi, s));
  EXPECT_FALSE(is_valid(enc_query(w, phi, s).formula));
  s.mode = Mode::skeptical;
  EXPECT_TRUE(holds(w, phi, s));
}

TEST(Selftest, ReportIsDeterministicAcrossThreads) {
  SelftestConfig cfg;
  cfg.atoms = 3;
  cfg.formulas = 2;
  cfg.trials = 12;
  cfg.seed = 99;
  const std::string one = run_selftest(cfg).text();
  EXPECT_EQ(run_selftest(cfg).text(), one);
  cfg.threads = 3;
  EXPECT_EQ(run_selftest(cfg).text(), one);
}
