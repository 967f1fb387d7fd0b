#include <gtest/gtest.h>

#include "brute.hpp"
#include "sigsys/encoder.hpp"
#include "sigsys/selftest.hpp"
#include "sigsys/syntax.hpp"

using namespace sigsys;

namespace {
Formula P(const char* s) { return parse_formula(s); }
const Theory kW0 = parse_theory("p\nq\n~p | ~q");

std::vector<Atom> guesses(const DefaultTheory& t) {
  std::vector<Formula> all = t.facts.formulas;
  for (const auto& d : t.defaults) all.push_back(d.justification);
  return GuessVariables::fresh(t.defaults.size(), atoms_of(all)).g;
}

std::vector<GeneratingSet> entailing_sets(const DefaultTheory& t, const Formula& phi) {
  std::vector<GeneratingSet> out;
  const std::size_t n = t.defaults.size();
  for (std::uint32_t m = 0; m < (1u << n); ++m) {
    std::vector<Formula> premises = t.facts.formulas;
    GeneratingSet c;
    for (std::size_t i = 0; i < n; ++i)
      if ((m >> i) & 1) {
        c.push_back(i);
        premises.push_back(t.defaults[i].consequent);
      }
    if (brute::entails(premises, phi)) out.push_back(c);
  }
  std::sort(out.begin(), out.end());
  return out;
}
}  // namespace

TEST(Encoder, GuessNamesAvoidTheoryAtoms) {
  const auto v = GuessVariables::fresh(2, std::vector<Atom>{Atom("g_1")});
  EXPECT_EQ(v.g[0], Atom("_g_1"));
  EXPECT_EQ(v.g[1], Atom("g_2"));
  EXPECT_EQ(v.gp[0], Atom("gp_1"));
  EXPECT_EQ(v.selection({1}, true), (Interpretation{Atom("gp_2")}));
}

TEST(Encoder, ConsistencyExamples) {
  const std::vector<Atom> g{Atom("g_1"), Atom("g_2")};
  const std::vector<Formula> t{P("p")};
  const std::vector<Formula> s{P("~p"), P("q")};
  const Formula c = enc_consistency(t, s, g);
  EXPECT_EQ(free_atoms(c).size(), 2u);
  EXPECT_EQ(brute::models_over(c, g), (std::vector<GeneratingSet>{{}, {1}}));
}

TEST(Encoder, ExtModelsAreExtensions) {
  for (Family f : {Family::t0, Family::t1, Family::t2}) {
    const auto t = build_theory(kW0, f);
    const auto g = guesses(t);
    EXPECT_EQ(brute::models_over(enc_ext(t, g), g), brute::extensions(t)) << to_string(f);
  }
  const auto t2 = build_theory(kW0, Family::t2);
  EXPECT_EQ(brute::models_over(enc_ext(t2, guesses(t2)), guesses(t2)).size(), 4u);
}

TEST(Encoder, ExtAgreesWithBruteForceOnRandomTheories) {
  InstanceGenerator gen(23, 3, 3);
  for (int trial = 0; trial < 20; ++trial) {
    const Theory w = gen.theory(trial % 3 == 0);
    const Ranking r = gen.ranking(w);
    for (Family f : {Family::t0, Family::t2}) {
      const auto t = build_theory(w, f);
      if (t.defaults.size() > 5) continue;
      const auto g = guesses(t);
      ASSERT_EQ(brute::models_over(enc_ext(t, g), g), brute::extensions(t)) << to_string(w);
      const auto l = layer(t, r);
      ASSERT_EQ(brute::models_over(enc_exth(l, g), g), brute::hierarchic_extensions(l)) << to_string(w);
    }
  }
}

TEST(Encoder, ConsModelsAreEntailingSelections) {
  const auto t = build_theory(kW0, Family::t0);
  const auto g = guesses(t);
  for (const char* phi : {"p", "p | q", "p & q", "r", "p+"}) {
    const Formula c = enc_cons(t, P(phi), g);
    EXPECT_EQ(brute::models_over(c, g), entailing_sets(t, P(phi))) << phi;
  }
  // every selection of W0's consequents entails p | q once a default is on
  EXPECT_EQ(brute::models_over(enc_cons(t, P("p | q"), g), g), (std::vector<GeneratingSet>{{0}, {0, 1}, {1}}));
}

TEST(Encoder, RenamedConsUsesPrimedGuesses) {
  const auto t = build_theory(kW0, Family::t0);
  const auto v = GuessVariables::fresh(2, t.facts.atoms());
  const Formula c = enc_cons_renamed(t, P("p"), v.g, v.gp);
  const auto fv = free_atoms(c);
  EXPECT_EQ(AtomSet(fv.begin(), fv.end()), AtomSet(v.gp.begin(), v.gp.end()));
  EXPECT_EQ(brute::models_over(c, v.gp), brute::models_over(enc_cons(t, P("p"), v.g), v.g));
}

TEST(Encoder, PsiCharacterizesSupersetsOfPi) {
  const auto t = build_theory(kW0, Family::t0);
  const auto v = GuessVariables::fresh(2, t.facts.atoms());
  const Formula psi = enc_psi(t, v.g, v.gp);
  EXPECT_TRUE(brute::truth(psi, v.selection({}, true)));
  EXPECT_TRUE(brute::truth(psi, v.selection({0, 1}, true)));

  const auto c = build_theory(parse_theory("p"), Family::t0);
  const auto u = GuessVariables::fresh(1, c.facts.atoms());
  const Formula psi_c = enc_psi(c, u.g, u.gp);
  EXPECT_FALSE(brute::truth(psi_c, u.selection({}, true)));
  EXPECT_TRUE(brute::truth(psi_c, u.selection({0}, true)));
}

TEST(Encoder, SingleLayerExtHMatchesExt) {
  for (Family f : {Family::t0, Family::t1, Family::t2}) {
    const auto t = build_theory(kW0, f);
    const auto g = guesses(t);
    EXPECT_EQ(brute::models_over(enc_exth(layer(t, Ranking{}), g), g), brute::models_over(enc_ext(t, g), g));
  }
  EXPECT_THROW(enc_exth(build_theory(kW0, Family::t0), guesses(build_theory(kW0, Family::t0))),
               std::invalid_argument);
}

TEST(Encoder, RankedExtHKeepsPreferredDefault) {
  Ranking r;
  r.ranks = {{"p", 1}, {"q", 2}};
  const auto t = layer(build_theory(kW0, Family::t0), r);
  const auto g = guesses(t);
  EXPECT_EQ(brute::models_over(enc_exth(t, g), g), (std::vector<GeneratingSet>{{0}}));
}

TEST(Encoder, QueriesOnWorkedExample) {
  QuerySpec s;
  const auto verdict = [&](const char* phi, Mode m) {
    s.mode = m;
    return is_valid(enc_query(kW0, P(phi), s).formula);
  };
  EXPECT_TRUE(verdict("p", Mode::credulous));
  EXPECT_FALSE(verdict("p", Mode::skeptical));
  EXPECT_FALSE(verdict("p", Mode::prudent));
  EXPECT_TRUE(verdict("p | q", Mode::credulous));
  EXPECT_TRUE(verdict("p | q", Mode::skeptical));
  EXPECT_FALSE(verdict("p | q", Mode::prudent));
  const auto e = enc_query(kW0, P("p"), s);
  EXPECT_TRUE(is_closed(e.formula));
  EXPECT_EQ(e.vars.g.size(), 2u);
}

TEST(Encoder, QueriesAgreeWithOracle) {
  InstanceGenerator gen(31, 3, 3);
  for (int trial = 0; trial < 15; ++trial) {
    const Theory w = gen.theory(trial % 4 == 0);
    const Ranking r = gen.ranking(w);
    const Formula phi = gen.query(w);
    for (auto s : all_query_specs()) {
      if (s.hierarchic) s.ranking = r;
      const EncodedQuery e = enc_query(w, phi, s);
      ASSERT_EQ(is_valid(e.formula), holds(w, phi, s)) << to_string(w) << " |- " << to_string(phi) << " " << s.label();
      ASSERT_EQ(is_valid(e.formula), eval(e.formula) == 1) << s.label();
    }
  }
}

TEST(Encoder, RejectsUnsupportedQueries) {
  QuerySpec s;
  s.is_signed = true;
  s.family = Family::t1;
  EXPECT_THROW(enc_query(kW0, P("p"), s), UnsupportedQuery);
  s.family = Family::t0;
  EXPECT_THROW(enc_query(kW0, parse_qbf("exists p. p"), s), std::invalid_argument);
}

TEST(Encoder, SizeGrowsPolynomially) {
  QuerySpec s;
  s.mode = Mode::prudent;
  std::size_t prev = 0;
  for (int n : {2, 4, 8}) {
    std::string text;
    for (int i = 0; i < n; ++i) text += "x" + std::to_string(i) + " | ~x" + std::to_string((i + 1) % n) + "\n";
    const auto size = node_count(enc_query(parse_theory(text), P("x0"), s).formula);
    if (prev) {
      EXPECT_LT(size, prev * 16);
    }
    prev = size;
  }
}
