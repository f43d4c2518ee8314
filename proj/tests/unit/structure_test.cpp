#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "qstruct/errors.hpp"
#include "qstruct/structure.hpp"

using namespace qstruct;
using namespace qstruct::testing;

namespace {

VocabularyPtr monoid_vocab() {
  static VocabularyPtr v = share(Vocabulary{}.add_function("+", 2).add_constant("0"));
  return v;
}

FiniteStructure z3() {
  StructureBuilder b(monoid_vocab(), 3);
  for (Element i = 0; i < 3; ++i)
    for (Element j = 0; j < 3; ++j) b.set_value("+", {i, j}, (i + j) % 3);
  b.set_value("0", {}, 0);
  return std::move(b).build();
}

}  // namespace

TEST(Vocabulary, RejectsDuplicatesAndZeroAryRelations) {
  Vocabulary v;
  v.add_relation("R", 2);
  EXPECT_THROW(v.add_relation("R", 1), SignatureError);
  EXPECT_THROW(v.add_function("R", 1), SignatureError);
  EXPECT_THROW(v.add_relation("S", 0), SignatureError);
}

TEST(Vocabulary, SymbolOrderIsCanonical) {
  Vocabulary a;
  a.add_relation("b", 1).add_relation("a", 2);
  Vocabulary b;
  b.add_relation("a", 2).add_relation("b", 1);
  EXPECT_EQ(a, b);
  EXPECT_TRUE(a.includes(Vocabulary{}.add_relation("b", 1)));
  EXPECT_FALSE(a.includes(Vocabulary{}.add_relation("b", 2)));
}

TEST(Structure, BuilderRejectsPartialFunctionsAndEmptyConstants) {
  StructureBuilder b(unary_fn_vocab(), 2);
  b.set_value("f", {0}, 1);
  EXPECT_THROW(std::move(b).build(), DomainError);
  EXPECT_THROW(StructureBuilder(monoid_vocab(), 0), DomainError);
  EXPECT_NO_THROW(StructureBuilder(order_vocab(), 0).build());
}

TEST(Structure, BuilderRejectsOutsideElements) {
  StructureBuilder b(order_vocab(), 2);
  EXPECT_THROW(b.add_tuple("<", {0, 5}), DomainError);
  EXPECT_THROW(b.add_tuple("<", {0}), SignatureError);
  EXPECT_THROW(b.add_tuple(">", {0, 1}), SignatureError);
}

TEST(Structure, ReductKeepsUniverseAndRestrictsSymbols) {
  auto with_p = share(Vocabulary{}.add_relation("<", 2).add_relation("P", 1));
  StructureBuilder b(with_p, 3);
  b.add_tuple("<", {0, 1}).add_tuple("<", {0, 2}).add_tuple("<", {1, 2}).add_tuple("P", {1});
  auto s = std::move(b).build();
  auto r = reduct(s, order_vocab());
  EXPECT_EQ(r, chain(3));
  EXPECT_EQ(reduct(s, s.vocabulary_ptr()), s);
  EXPECT_EQ(reduct(complete_graph(3), empty_vocab()), bare(3));
  EXPECT_THROW(reduct(chain(2), graph_vocab()), SignatureError);
}

TEST(Structure, GeneratedSubstructure) {
  auto c = chain(4);
  EXPECT_EQ(generated_substructure(c, {1, 3}), chain_on({1, 3}));
  auto m = z3();
  EXPECT_EQ(generated_substructure(m, {1}), m);
  EXPECT_EQ(generated_substructure(m, {}).size(), 1u);  // constants seed the closure
  EXPECT_EQ(generated_substructure(m, m.universe()), m);
  EXPECT_THROW(generated_set(m, {7}), DomainError);
}

TEST(Structure, GeneratedSetIsAClosureOperator) {
  std::mt19937 rng(7);
  for (int round = 0; round < 200; ++round) {
    std::size_t n = 1 + rng() % 5;
    StructureBuilder b(unary_fn_vocab(), n);
    for (Element i = 0; i < n; ++i) b.set_value("f", {i}, rng() % n);
    auto s = std::move(b).build();
    ElementSet a;
    ElementSet bigger;
    for (Element i = 0; i < n; ++i) {
      bool in_a = rng() % 3 == 0;
      if (in_a) a.push_back(i);
      if (in_a || rng() % 2) bigger.push_back(i);
    }
    auto ga = generated_set(s, a);
    EXPECT_TRUE(is_subset(a, ga));
    EXPECT_EQ(generated_set(s, ga), ga);
    EXPECT_TRUE(is_subset(ga, generated_set(s, bigger)));
  }
}

TEST(Structure, SubstructureAndInducedSubstructure) {
  EXPECT_TRUE(is_substructure(chain_on({0, 2}), chain(3)));
  EXPECT_FALSE(is_substructure(chain(3), chain_on({0, 2})));
  auto m = z3();
  EXPECT_FALSE(induced_substructure(m, {1}).has_value());
  EXPECT_TRUE(induced_substructure(m, {0}).has_value());
  EXPECT_EQ(*induced_substructure(chain(3), {0, 2}), chain_on({0, 2}));
}

TEST(Structure, RelabelAndDecoration) {
  auto r = relabel(chain(2), {9, 7});
  EXPECT_TRUE(r.holds("<", {9, 7}));
  EXPECT_FALSE(r.holds("<", {7, 9}));
  EXPECT_THROW(relabel(chain(2), {1, 1}), DomainError);
  EXPECT_THROW(DecoratedStructure(chain(2), {{5}}), DomainError);
  DecoratedStructure d(chain(3), {{2, 0, 2}});
  EXPECT_EQ(d.subsets[0], (ElementSet{0, 2}));
}
