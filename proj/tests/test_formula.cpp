#include <gtest/gtest.h>

#include "sigsys/formula.hpp"
#include "sigsys/syntax.hpp"

using namespace sigsys;

namespace {
Formula P(const char* s) { return parse_formula(s); }
}  // namespace

TEST(Atom, IndexRequiresSign) {
  EXPECT_THROW(Atom("p", Sign::plain, 3), std::invalid_argument);
  EXPECT_EQ(to_string(Atom("p", Sign::pos, 3)), "p+_3");
  EXPECT_EQ(to_string(Atom("q", Sign::neg)), "q-");
}

TEST(Syntax, PrecedenceAndAssociativity) {
  EXPECT_EQ(P("p | q & r"), disj(atom("p"), conj(atom("q"), atom("r"))));
  EXPECT_EQ(P("p -> q -> r"), implies(atom("p"), implies(atom("q"), atom("r"))));
  EXPECT_EQ(P("p <-> q -> r"), iff(atom("p"), implies(atom("q"), atom("r"))));
  EXPECT_EQ(P("p & q & r"), conj(conj(atom("p"), atom("q")), atom("r")));
  EXPECT_EQ(P("~p & q"), conj(neg(atom("p")), atom("q")));
  EXPECT_EQ(P("true | false"), disj(top(), bottom()));
}

TEST(Syntax, SignedAtoms) {
  EXPECT_EQ(P("p+ & p-_2"), conj(atom("p", Sign::pos), atom("p", Sign::neg, 2)));
  // '-' followed by '>' is an arrow, not a sign
  EXPECT_EQ(P("p->q"), implies(atom("p"), atom("q")));
  EXPECT_EQ(P("p-->q"), implies(atom("p", Sign::neg), atom("q")));
}

TEST(Syntax, PrintParseRoundTrip) {
  for (const char* s : {"p", "~~p", "(p | q) & r", "p -> (q -> r)", "(p -> q) -> r", "p <-> (q <-> r)",
                        "(p <-> q) <-> r", "~(p & q) | ~r", "p+_1 & ~~q-_2", "true -> false"}) {
    const Formula f = P(s);
    EXPECT_EQ(parse_formula(to_string(f)), f) << s;
  }
  EXPECT_EQ(to_string(P("(p | q) & r")), "(p | q) & r");
  EXPECT_EQ(to_string(P("(p -> q) -> r")), "(p -> q) -> r");
  EXPECT_EQ(to_string(P("p -> q -> r")), "p -> q -> r");
}

TEST(Syntax, Quantifiers) {
  EXPECT_THROW(parse_formula("forall p. p"), ParseError);
  const Formula f = parse_qbf("exists p q. (p -> q) & forall r. r -> q");
  EXPECT_EQ(f, exists(Atom("p"), exists(Atom("q"), conj(implies(atom("p"), atom("q")),
                                                        forall(Atom("r"), implies(atom("r"), atom("q")))))));
  EXPECT_EQ(parse_qbf(to_string(f)), f);
  EXPECT_EQ(to_string(conj(forall(Atom("p"), atom("p")), atom("q"))), "(forall p. p) & q");
}

TEST(Syntax, Errors) {
  try {
    parse_formula("p & (q | r");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("unbalanced parenthesis"), std::string::npos);
  }
  try {
    parse_formula("p & q)");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.column(), 6);
  }
  EXPECT_THROW(parse_formula(""), ParseError);
  EXPECT_THROW(parse_formula("p q"), ParseError);
  EXPECT_THROW(parse_formula("p & forall"), ParseError);
}

TEST(Syntax, TheoryFiles) {
  const Theory t = parse_theory("# comment\np\n\nq   # trailing\n~p | ~q\n");
  ASSERT_EQ(t.size(), 3u);
  EXPECT_EQ(t[2], P("~p | ~q"));
  try {
    parse_theory("p\nq &\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
  }
  EXPECT_EQ(parse_theory(to_string(t)), t);
}

TEST(Formula, AtomsInFirstOccurrenceOrder) {
  const auto as = atoms_of(P("q & (p | q) -> r"));
  ASSERT_EQ(as.size(), 3u);
  EXPECT_EQ(as[0], Atom("q"));
  EXPECT_EQ(as[1], Atom("p"));
  EXPECT_EQ(as[2], Atom("r"));
}

TEST(Formula, FreeAtomsAndClosure) {
  const Formula f = parse_qbf("(exists p. p & q) | p");
  const auto fv = free_atoms(f);
  ASSERT_EQ(fv.size(), 2u);
  EXPECT_FALSE(is_closed(f));
  EXPECT_TRUE(is_closed(parse_qbf("forall p. exists q. p <-> q")));
}

TEST(Formula, SubstitutionRespectsBinders) {
  const Formula f = parse_qbf("p & exists p. p | q");
  std::unordered_map<Atom, Formula, AtomHash> m{{Atom("p"), top()}, {Atom("q"), bottom()}};
  EXPECT_EQ(substitute(f, m), parse_qbf("true & exists p. p | false"));
}

TEST(Formula, NodeCount) {
  EXPECT_EQ(node_count(P("p")), 1u);
  EXPECT_EQ(node_count(P("~p & q")), 4u);
  EXPECT_EQ(node_count(parse_qbf("forall p. p")), 2u);
}

TEST(Formula, ConjoinAndDisjoinOfNothing) {
  EXPECT_EQ(conjoin(std::vector<Formula>{}), top());
  EXPECT_EQ(disjoin(std::vector<Formula>{}), bottom());
}

TEST(FreshNames, AvoidsReservedNames) {
  const std::vector<Atom> used{Atom("g_1"), Atom("_g_1")};
  FreshNames names(used);
  EXPECT_EQ(names.make("g_1"), Atom("__g_1"));
  EXPECT_EQ(names.make("g_2"), Atom("g_2"));
  EXPECT_EQ(names.make("g_2"), Atom("_g_2"));
}
