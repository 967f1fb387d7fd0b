#include <gtest/gtest.h>

#include <random>

#include "brute.hpp"
#include "sigsys/circuit.hpp"
#include "sigsys/logic.hpp"
#include "sigsys/sat.hpp"
#include "sigsys/syntax.hpp"

using namespace sigsys;

namespace {

bool brute_cnf(int n, const std::vector<std::vector<int>>& cnf) {
  for (int m = 0; m < (1 << n); ++m) {
    bool all = true;
    for (const auto& cl : cnf) {
      bool any = false;
      for (int l : cl) any = any || (((m >> (std::abs(l) - 1)) & 1) == (l > 0));
      if (!any) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

}  // namespace

TEST(Sat, Trivial) {
  sat::Solver s;
  EXPECT_TRUE(s.solve());
  s.ensure_vars(2);
  s.add_clause({1, 2});
  s.add_clause({-1});
  ASSERT_TRUE(s.solve());
  EXPECT_FALSE(s.model_value(1));
  EXPECT_TRUE(s.model_value(2));
  EXPECT_FALSE(s.add_clause({-2}));
  EXPECT_FALSE(s.solve());
}

TEST(Sat, PigeonholeFourIntoThree) {
  sat::Solver s;
  auto v = [](int p, int h) { return p * 3 + h + 1; };
  s.ensure_vars(12);
  for (int p = 0; p < 4; ++p) s.add_clause({v(p, 0), v(p, 1), v(p, 2)});
  for (int h = 0; h < 3; ++h)
    for (int p = 0; p < 4; ++p)
      for (int q = p + 1; q < 4; ++q) s.add_clause({-v(p, h), -v(q, h)});
  EXPECT_FALSE(s.solve());
}

TEST(Sat, AssumptionsDoNotPoisonSolver) {
  sat::Solver s;
  s.ensure_vars(3);
  s.add_clause({1, 2});
  s.add_clause({-1, 3});
  EXPECT_FALSE(s.solve({-2, -3}));
  EXPECT_TRUE(s.solve({-2}));
  EXPECT_TRUE(s.model_value(1));
  EXPECT_TRUE(s.model_value(3));
  EXPECT_TRUE(s.solve());
}

TEST(Sat, RandomThreeSatAgainstTruthTable) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 8);
    const int m = static_cast<int>(rng() % (5 * n));
    std::vector<std::vector<int>> cnf;
    sat::Solver s;
    s.ensure_vars(n);
    for (int k = 0; k < m; ++k) {
      std::vector<int> cl;
      for (int j = 0; j < 3; ++j) cl.push_back((1 + static_cast<int>(rng() % n)) * (rng() % 2 ? 1 : -1));
      cnf.push_back(cl);
      s.add_clause(std::span<const int>(cl));
    }
    const bool expected = brute_cnf(n, cnf);
    ASSERT_EQ(s.solve(), expected) << "trial " << trial;
    if (expected) {
      for (const auto& cl : cnf) {
        bool any = false;
        for (int l : cl) any = any || s.model_value(std::abs(l)) == (l > 0);
        EXPECT_TRUE(any);
      }
    }
  }
}

TEST(Circuit, Simplification) {
  Circuit c;
  const auto x = c.var(1), y = c.var(2);
  EXPECT_EQ(c.make_and(x, Circuit::kTrue), x);
  EXPECT_EQ(c.make_and(x, Circuit::kFalse), Circuit::kFalse);
  EXPECT_EQ(c.make_and(x, c.make_not(x)), Circuit::kFalse);
  EXPECT_EQ(c.make_or(x, c.make_not(x)), Circuit::kTrue);
  EXPECT_EQ(c.make_not(c.make_not(y)), y);
  EXPECT_EQ(c.make_and(x, y), c.make_and(y, x));
  EXPECT_EQ(c.make_iff(x, x), Circuit::kTrue);
}

TEST(Circuit, SubstituteAndEvaluate) {
  Circuit c;
  const auto x = c.var(1), y = c.var(2), z = c.var(3);
  const auto f = c.make_or(c.make_and(x, y), c.make_iff(y, z));
  const auto g = c.substitute(f, {{2, Circuit::kTrue}});
  EXPECT_EQ(g, c.make_or(x, z));
  EXPECT_TRUE(c.evaluate(f, {{1, false}, {2, false}, {3, false}}));
  EXPECT_FALSE(c.evaluate(f, {{1, false}, {2, true}, {3, false}}));
  const auto sup = c.support(f);
  EXPECT_EQ(sup.size(), 3u);
}

TEST(Circuit, TseitinPreservesSatisfiability) {
  std::mt19937_64 rng(99);
  const char* pool[] = {"p", "q", "r", "s"};
  for (int trial = 0; trial < 200; ++trial) {
    // random formula from a few templates
    std::vector<Formula> fs;
    for (int k = 0; k < 3; ++k) {
      Formula a = atom(pool[rng() % 4]), b = atom(pool[rng() % 4]), d = atom(pool[rng() % 4]);
      switch (rng() % 4) {
        case 0:
          fs.push_back(iff(a, neg(b)));
          break;
        case 1:
          fs.push_back(implies(conj(a, b), d));
          break;
        case 2:
          fs.push_back(neg(disj(a, conj(b, d))));
          break;
        default:
          fs.push_back(iff(iff(a, b), d));
      }
    }
    ASSERT_EQ(satisfiable(fs), brute::satisfiable(fs)) << trial;
  }
}

TEST(Circuit, SatisfiableOnSupportReportsModel) {
  Circuit c;
  c.var(40);
  const auto f = c.make_and(c.var(7), c.make_not(c.var(40)));
  std::unordered_map<int, bool> model;
  ASSERT_TRUE(satisfiable_on_support(c, f, &model));
  EXPECT_TRUE(model.at(7));
  EXPECT_FALSE(model.at(40));
  EXPECT_FALSE(satisfiable_on_support(c, c.make_and(f, c.var(40)), &model));
}

TEST(Logic, EntailmentAndConsistency) {
  const Theory w = parse_theory("p\nq\n~p | ~q");
  EXPECT_FALSE(is_consistent(w));
  EXPECT_TRUE(entails(w, parse_formula("r")));
  EXPECT_TRUE(entails(parse_theory("p\np -> q"), parse_formula("q")));
  EXPECT_FALSE(entails(parse_theory("p | q"), parse_formula("p")));
}

TEST(Logic, ConsistencyCheckerMatchesFreshCalls) {
  const std::vector<Formula> facts{parse_formula("p | q")};
  const std::vector<Formula> cands{parse_formula("~p"), parse_formula("~q"), parse_formula("p")};
  ConsistencyChecker ck(facts, cands);
  const std::vector<std::vector<std::size_t>> subsets{{}, {0}, {0, 1}, {0, 2}, {1, 2}, {0, 1, 2}};
  for (const auto& s : subsets) {
    std::vector<Formula> fs = facts;
    for (auto i : s) fs.push_back(cands[i]);
    EXPECT_EQ(ck.consistent(s), brute::satisfiable(fs));
  }
}
