#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "qstruct/enumerate.hpp"
#include "qstruct/errors.hpp"
#include "qstruct/semantics.hpp"
#include "qstruct/syntax.hpp"

using namespace qstruct;
using namespace qstruct::testing;

namespace {

FormulaPtr parse(const std::string& text, const VocabularyPtr& v = order_vocab()) { return parse_formula(text, v); }

Theory linear_orders(std::size_t bound) {
  Theory t;
  t.vocab = order_vocab();
  t.add(parse("(forall x (not (rel < x x)))"));
  t.add(parse("(forall (x y z) (implies (and (rel < x y) (rel < y z)) (rel < x z)))"));
  t.add(parse("(forall (x y) (or (rel < x y) (= x y) (rel < y x)))"));
  std::vector<FormulaPtr> ds;
  for (std::size_t n = 0; n < bound; ++n)
    ds.push_back(structural(chain(n), "y", atomic("<", {Term::var("y"), Term::var("x")})));
  t.add(forall("x", disjunction(ds)));
  return t;
}

}  // namespace

TEST(Eval, ChainPredecessors) {
  auto q = structural(chain(2), "y", parse("(rel < y x)"));
  EXPECT_TRUE(eval(chain(3), q, {{"x", 2}}));
  EXPECT_FALSE(eval(chain(3), q, {{"x", 1}}));
  EXPECT_EQ(solution_set(chain(3), parse("(rel < y x)"), "y", {{"x", 2}}), (ElementSet{0, 1}));
  EXPECT_EQ(solution_set(chain(3), parse("(= x x)"), "x"), (ElementSet{0, 1, 2}));
}

TEST(Eval, EmptyTargetAndCountingEncoding) {
  auto none = structural(bare(0), "x", parse("(= x x)", empty_vocab()));
  EXPECT_TRUE(eval(bare(0), none));
  EXPECT_FALSE(eval(bare(2), none));
  std::vector<FormulaPtr> parts;
  for (std::size_t n = 0; n < 2; ++n) parts.push_back(negation(structural(bare(n), "x", parse("(= x x)", empty_vocab()))));
  auto at_least_two = conjunction(parts);
  EXPECT_TRUE(eval(reduct(chain(3), empty_vocab()), at_least_two));
  EXPECT_FALSE(eval(bare(1), at_least_two));
}

TEST(Eval, NonClosedSolutionSetFails) {
  auto v = share(Vocabulary{}.add_relation("<", 2).add_function("f", 1));
  StructureBuilder b(v, 2);
  b.add_tuple("<", {0, 1}).set_value("f", {0}, 1).set_value("f", {1}, 1);
  auto n = std::move(b).build();
  auto fv = share(Vocabulary{}.add_function("f", 1));
  StructureBuilder t(fv, 1);
  t.set_value("f", {0}, 0);
  auto q = structural(std::move(t).build(), "x", parse_formula("(= x z)", v));
  EXPECT_FALSE(eval(n, q, {{"z", 0}}));  // {0} is not closed under f
  EXPECT_TRUE(eval(n, q, {{"z", 1}}));
}

TEST(Eval, SubsetClauseRequiresInclusion) {
  DecoratedStructure target(chain(1), {{0}});
  auto q = structural(target, "x", {"y"}, parse("(= x z)"), {parse("(= y y)")});
  EXPECT_FALSE(eval(chain(2), q, {{"z", 0}}));  // psi(N) = N is not inside phi(N)
  EXPECT_TRUE(eval(chain(1), q, {{"z", 0}}));
}

TEST(Eval, Errors) {
  auto q = structural(chain(2), "y", parse("(rel < y x)"));
  EXPECT_THROW(eval(chain(3), q, {}), AssignmentError);
  EXPECT_THROW(eval(chain(3), q, {{"x", 2}}, Kappa::finite(2)), KappaError);
  EXPECT_NO_THROW(eval(chain(3), q, {{"x", 2}}, Kappa::finite(3)));
  EXPECT_THROW(eval(chain(3), parse("(rel E x x)", graph_vocab()), {{"x", 0}}), SignatureError);
}

TEST(Eval, MonotoneFailureUnderKappa) {
  for (const auto& n : enumerate_structures(rel_vocab(), 4, true)) {
    for (std::size_t k = 1; k <= 4; ++k) {
      for (std::size_t m = 0; m < k; ++m) {
        auto q = structural(reduct(chain(m), empty_vocab()), "x", parse_formula("(rel R x x)", rel_vocab()));
        auto size = solution_set(n, parse_formula("(rel R x x)", rel_vocab()), "x").size();
        if (size >= k) EXPECT_FALSE(eval(n, q, {}, Kappa::finite(k)));
      }
    }
  }
}

TEST(Eval, MatchesOracleOnSample) {
  std::mt19937 rng(3);
  auto v = rel_vocab();
  std::vector<FormulaPtr> pool;
  const std::vector<std::string> bodies{"(rel R x z)", "(rel R z x)", "(not (= x z))", "(or (rel R x x) (= x z))"};
  const std::vector<std::string> psis{"(rel R y y)", "(= y z)", "(and (rel R z y) (rel R y z))"};
  auto targets = enumerate_structures(v, 2, true);
  for (const auto& t : targets)
    for (const auto& b : bodies) {
      pool.push_back(structural(t, "x", parse_formula(b, v)));
      const auto& p = psis[rng() % psis.size()];
      for (std::size_t mask = 0; mask < (std::size_t{1} << t.size()); ++mask) {
        ElementSet sub;
        for (Element i = 0; i < t.size(); ++i)
          if (mask & (1u << i)) sub.push_back(i);
        pool.push_back(structural(DecoratedStructure(t, {sub}), "x", {"y"}, parse_formula(b, v), {parse_formula(p, v)}));
      }
    }
  for (const auto& n : enumerate_structures(v, 3, false))
    for (const auto& q : pool)
      for (Element z : n.universe()) ASSERT_EQ(eval(n, q, {{"z", z}}), naive_eval(n, *q, {{"z", z}}));
}

TEST(Models, LinearOrders) {
  auto t = linear_orders(3);
  for (std::size_t n = 0; n <= 3; ++n) EXPECT_TRUE(models(chain(n), t));
  StructureBuilder b(order_vocab(), 3);
  b.add_tuple("<", {0, 1});
  EXPECT_FALSE(models(std::move(b).build(), t));
  EXPECT_TRUE(models(complete_graph(2), Theory{}));
  EXPECT_EQ(enumerate_models(t, order_vocab(), 3).size(), 4u);
  EXPECT_EQ(enumerate_models(t, order_vocab(), 5).size(), 4u);  // the bound caps chain length at 3
  EXPECT_LE(enumerate_models(t, order_vocab(), 0).size(), 1u);
}

TEST(Models, ContradictoryPair) {
  Theory t;
  t.vocab = empty_vocab();
  t.add(structural(bare(0), "x", parse_formula("(= x x)", empty_vocab())));
  t.add(structural(bare(1), "x", parse_formula("(!= x x)", empty_vocab())));
  EXPECT_TRUE(enumerate_models(t, empty_vocab(), 3).empty());
}

TEST(Elementarity, PredecessorFragment) {
  Fragment f;
  f.add(parse("(exists y (rel < y x))"));
  f.add(parse("(rel < y x)"));
  EXPECT_TRUE(elem_F(chain_on({0}), chain(2), f).holds());
  auto bad = elem_F(chain_on({1}), chain(2), f);
  EXPECT_EQ(bad.status, ElemStatus::Fails);
  EXPECT_EQ(bad.assignment.at("x"), 1u);
  EXPECT_EQ(elem_F(chain(2), chain_on({1}), f).status, ElemStatus::NotSubstructure);
  EXPECT_TRUE(elem_F(chain(2), chain(2), f).holds());
}

TEST(Elementarity, StarredOnLinearOrders) {
  auto frag = subformula_closure(linear_orders(4));
  EXPECT_TRUE(elem_F_star(chain(2), chain(3), frag).holds());
  EXPECT_FALSE(elem_F_star(chain_on({0, 2}), chain(3), frag).holds());
  EXPECT_TRUE(elem_F_star(chain(3), chain(3), frag).holds());
}

TEST(Elementarity, KappaGatesSolutionSetComparison) {
  Fragment f;
  f.add(structural(chain(1), "y", parse("(rel < y x)")));
  // In {0,2} the predecessors of 2 are {0}; in the 3-chain they are {0,1}.
  EXPECT_FALSE(elem_F_star(chain_on({0, 2}), chain(3), f).holds());
  EXPECT_TRUE(elem_F_star(chain_on({0, 2}), chain(3), f, Kappa::finite(2)).holds() ||
              !elem_F(chain_on({0, 2}), chain(3), f, Kappa::finite(2)).holds());
}

TEST(Elementarity, StarImpliesPlain) {
  auto frag = subformula_closure(linear_orders(3));
  auto all = enumerate_structures(order_vocab(), 3, false);
  for (const auto& n : all)
    for (const auto& m : all) {
      if (!is_substructure(m, n)) continue;
      if (elem_F_star(m, n, frag).holds()) EXPECT_TRUE(elem_F(m, n, frag).holds());
    }
}

TEST(Elementarity, FreeVariableCap) {
  Fragment f;
  f.add(parse("(exists w (and (rel < a b) (rel < c d) (rel < e g) (rel < h w)))"));
  EXPECT_THROW(elem_F(chain(1), chain(2), f), CapacityError);
}

TEST(Assignments, Enumeration) {
  std::size_t count = 0;
  for_each_assignment({"a", "b"}, {3, 5, 7}, [&](const Assignment&) {
    ++count;
    return true;
  });
  EXPECT_EQ(count, 9u);
  count = 0;
  for_each_assignment({}, {}, [&](const Assignment&) {
    ++count;
    return true;
  });
  EXPECT_EQ(count, 1u);
}
