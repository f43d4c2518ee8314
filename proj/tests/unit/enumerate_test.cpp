#include <gtest/gtest.h>

#include <set>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "qstruct/enumerate.hpp"
#include "qstruct/errors.hpp"
#include "qstruct/isomorphism.hpp"

using namespace qstruct;
using namespace qstruct::testing;

TEST(Enumerate, BinaryRelationTypeCounts) {
  auto all = enumerate_structures(rel_vocab(), 2, true);
  EXPECT_EQ(all.size(), 13u);  // 1 + 2 + 10
  EXPECT_EQ(iso_types_of_size(rel_vocab(), 3).size(), 104u);
  EXPECT_EQ(iso_types_of_size(rel_vocab(), 4).size(), 3044u);
}

TEST(Enumerate, DegenerateCases) {
  EXPECT_EQ(enumerate_structures(empty_vocab(), 3, true).size(), 4u);
  auto with_const = share(Vocabulary{}.add_constant("c").add_relation("P", 1));
  EXPECT_TRUE(enumerate_structures(with_const, 0, true).empty());
  auto only_empty = enumerate_structures(order_vocab(), 0, true);
  ASSERT_EQ(only_empty.size(), 1u);
  EXPECT_EQ(only_empty[0].size(), 0u);
}

TEST(Enumerate, UpToIsoIsCompleteAndIrredundant) {
  for (auto vocab : {rel_vocab(), unary_fn_vocab()}) {
    for (std::size_t n = 0; n <= 3; ++n) {
      auto reps = iso_types_of_size(vocab, n);
      std::set<std::string> keys;
      for (const auto& r : reps) {
        EXPECT_TRUE(r.initial_segment());
        EXPECT_TRUE(keys.insert(canonical_key(r)).second);
      }
      for (std::size_t i = 0; i < reps.size() && i < 40; ++i)
        for (std::size_t j = i + 1; j < reps.size() && j < 40; ++j)
          EXPECT_FALSE(naive_isomorphic(DecoratedStructure(reps[i]), DecoratedStructure(reps[j])));
      for (const auto& s : naive_all_structures(vocab, n)) EXPECT_TRUE(keys.count(canonical_key(s)));
    }
  }
}

TEST(Enumerate, LabelledEnumerationMatchesNaive) {
  EXPECT_EQ(enumerate_structures(unary_fn_vocab(), 2, false).size(), 1u + 2u * 1u + 4u * 4u);
  EXPECT_EQ(enumerate_structures(rel_vocab(), 2, false).size(), 1u + 2u + 16u);
}

TEST(Enumerate, CapacityErrorReportsCount) {
  try {
    enumerate_structures(rel_vocab(), 3, false, 100);
    FAIL();
  } catch (const CapacityError& e) {
    EXPECT_GT(e.reached(), 100u);
  }
}

TEST(Enumerate, Expansions) {
  auto with_p = share(Vocabulary{}.add_relation("<", 2).add_relation("P", 1));
  auto exps = enumerate_expansions(chain(2), with_p);
  EXPECT_EQ(exps.size(), 4u);
  for (const auto& e : exps) EXPECT_EQ(reduct(e, order_vocab()), chain(2));
  EXPECT_EQ(enumerate_expansions(chain(2), order_vocab()).size(), 1u);
  auto just_p = share(Vocabulary{}.add_relation("P", 1));
  EXPECT_EQ(enumerate_expansions(bare(2), just_p).size(), 3u);
  auto with_c = share(Vocabulary{}.add_constant("c"));
  EXPECT_THROW(enumerate_expansions(bare(0), with_c), DomainError);
  EXPECT_EQ(enumerate_expansions(bare(2), with_c).size(), 1u);
  // Subsets can separate expansions that are isomorphic as plain structures.
  auto decorated = enumerate_expansions(DecoratedStructure(bare(2), {{0}}), just_p);
  EXPECT_EQ(decorated.size(), 4u);
}
