#include <gtest/gtest.h>

#include <map>

#include "fixtures.hpp"
#include "qstruct/closure.hpp"
#include "qstruct/errors.hpp"
#include "qstruct/isomorphism.hpp"
#include "qstruct/semantics.hpp"
#include "qstruct/syntax.hpp"

using namespace qstruct;
using namespace qstruct::testing;

namespace {

Caps caps_at(std::size_t size) {
  Caps c;
  c.max_size = size;
  return c;
}

const ModelClass& linear() {
  static const ClassSpec spec = corpus_class("linear_orders");
  return *spec.model_class;
}

std::vector<std::string> corpus_names() { return {"linear_orders", "triangle_free", "frozen_predicate", "bounded_blocks"}; }

FiniteStructure graph(std::size_t n, std::vector<std::pair<Element, Element>> edges) {
  StructureBuilder b(graph_vocab(), n);
  for (auto [u, v] : edges) {
    b.add_tuple("E", {u, v});
    b.add_tuple("E", {v, u});
  }
  return std::move(b).build();
}

}  // namespace

TEST(ModelClassTest, CorpusSpecsLoad) {
  for (const auto& name : corpus_names()) {
    ClassSpec spec = corpus_class(name);
    EXPECT_EQ(spec.kind, ClassKind::Defined) << name;
    ASSERT_NE(spec.defined(), nullptr);
    for (const auto& s : spec.defined()->theory().sentences) EXPECT_TRUE(is_forall_qstruct(s).ok) << name;
    EXPECT_EQ(spec.hash.size(), 16u);
  }
  EXPECT_EQ(corpus_class("linear_orders").hash, corpus_class("linear_orders").hash);
  EXPECT_NE(corpus_class("linear_orders").hash, corpus_class("triangle_free").hash);
}

TEST(ModelClassTest, LinearOrderMembers) {
  auto members = linear().members(4);
  ASSERT_EQ(members.size(), 5u);
  for (std::size_t n = 0; n < members.size(); ++n) EXPECT_EQ(canonical_key(members[n]), canonical_key(chain(n)));
  EXPECT_TRUE(linear().strong_leq(chain(2), chain(3)));
  EXPECT_FALSE(linear().strong_leq(chain_on({1, 2}), chain(3)));
  EXPECT_FALSE(linear().strong_leq(chain(3), chain(2)));
}

TEST(ModelClassTest, ExplicitOrderTransportsAlongIsomorphism) {
  ClassSpec spec = data_class("incoherent_chains");
  const auto& k = *spec.model_class;
  EXPECT_TRUE(k.contains(chain_on({5, 9})));
  EXPECT_TRUE(k.strong_leq(chain_on({7}), chain_on({7, 8, 9})));
  EXPECT_FALSE(k.strong_leq(chain_on({8}), chain_on({7, 8, 9})));
  EXPECT_TRUE(k.strong_leq(chain_on({7, 8}), chain_on({7, 8, 9})));
  EXPECT_FALSE(k.strong_leq(chain_on({7}), chain_on({7, 8})));
  EXPECT_TRUE(k.strong_leq(chain_on({7, 8}), chain_on({7, 8})));
}

TEST(ModelClassTest, ExplicitSpecRejectsBadOrder) {
  auto text = "(class (vocab (rel < 2)) (members (structure (universe 2)) (structure (universe 2) (rel < (0 1)))) "
              "(order (0 1)))";
  EXPECT_THROW(parse_class_spec(read_sexpr(text), "."), ParseError);
  EXPECT_THROW(parse_class_spec(read_sexpr("(class (members) (order (0 1)))"), "."), ParseError);
  EXPECT_THROW(parse_class_spec(read_sexpr("(class (theory a) (members))"), "."), ParseError);
  EXPECT_THROW(load_class_spec("/nonexistent/x.class"), FileError);
}

TEST(ModelClassTest, PropertiesHoldOnCorpus) {
  for (const auto& name : corpus_names()) {
    ClassSpec spec = corpus_class(name);
    Report r = check_class_properties(*spec.model_class, caps_at(4));
    EXPECT_TRUE(r.passed()) << name << "\n" << to_json_lines(r);
    ASSERT_NE(r.find("union-of-chains"), nullptr);
    EXPECT_EQ(r.find("union-of-chains")->status, CheckStatus::NotFinitelyTestable);
    EXPECT_EQ(r.find("lowenheim-skolem")->status, CheckStatus::NotFinitelyTestable);
  }
}

TEST(ModelClassTest, PropertiesCatchIncoherence) {
  ClassSpec spec = data_class("incoherent_chains");
  Report r = check_class_properties(*spec.model_class, caps_at(4));
  EXPECT_FALSE(r.passed());
  ASSERT_NE(r.find("coherence"), nullptr);
  EXPECT_EQ(r.find("coherence")->status, CheckStatus::Fail);
  EXPECT_FALSE(r.find("coherence")->witnesses.empty());
  EXPECT_EQ(r.find("order-reflexive")->status, CheckStatus::Pass);
}

TEST(Closure, InitialSegmentsOfChain) {
  auto subs = strong_submodels(chain(3), linear());
  ASSERT_EQ(subs.size(), 4u);
  for (std::size_t n = 0; n < 4; ++n) EXPECT_EQ(subs[n].universe(), chain(n).universe());
  EXPECT_EQ(subs.back().universe(), chain(3).universe());
}

TEST(Closure, ChainClosureKeepsPredecessors) {
  auto c = cl(chain(3), {2}, linear());
  EXPECT_EQ(c.structure.universe(), (ElementSet{0, 1, 2}));
  EXPECT_TRUE(c.strong);
  EXPECT_EQ(cl(chain(3), {1}, linear()).structure.universe(), (ElementSet{0, 1}));
  EXPECT_EQ(cl(chain(3), {}, linear()).structure.size(), 0u);
  EXPECT_EQ(cl(chain(3), {0, 1, 2}, linear()).structure.universe(), chain(3).universe());
  EXPECT_THROW(cl(chain(3), {7}, linear()), DomainError);
  StructureBuilder unordered(order_vocab(), 2);
  EXPECT_THROW(cl(std::move(unordered).build(), {0}, linear()), DomainError);
}

TEST(Closure, UniversalClassClosureIsGenerated) {
  ClassSpec spec = corpus_class("triangle_free");
  FiniteStructure path = graph(3, {{0, 1}, {1, 2}});
  EXPECT_EQ(strong_submodels(path, *spec.model_class).size(), 8u);
  for (const auto& n : spec.model_class->members(4)) {
    ClosureOracle oracle(*spec.model_class, n, 1 << 16);
    for (SubsetMask a = 0; a < oracle.strong().size(); ++a) {
      ElementSet set = mask_to_set(n, a);
      EXPECT_EQ(oracle.closure(a).structure.universe(), generated_substructure(n, set).universe());
    }
  }
}

TEST(Closure, OperatorLaws) {
  for (const auto& name : corpus_names()) {
    ClassSpec spec = corpus_class(name);
    for (const auto& n : spec.model_class->members(4)) {
      ClosureOracle o(*spec.model_class, n, 1 << 16);
      const SubsetMask full = o.strong().size() - 1;
      for (SubsetMask a = 0; a <= full; ++a) {
        const SubsetMask c = o.closure_mask(a);
        EXPECT_EQ(a & ~c, 0u) << name;
        EXPECT_EQ(o.closure_mask(c), c) << name;
        for (SubsetMask b = a;; b = (b + 1) | a) {  // supersets of a
          EXPECT_EQ(c & ~o.closure_mask(b), 0u) << name;
          if (b == full) break;
        }
      }
    }
  }
}

TEST(Closure, IntersectionsOnCorpus) {
  for (const auto& name : corpus_names()) {
    Report r = verify_intersections(*corpus_class(name).model_class, caps_at(4));
    EXPECT_TRUE(r.passed()) << name << "\n" << to_json_lines(r);
  }
  EXPECT_TRUE(verify_intersections(*data_class("single_structure").model_class, caps_at(4)).passed());
  EXPECT_TRUE(verify_intersections(*data_class("empty").model_class, caps_at(4)).passed());
}

TEST(Closure, NonIntersectionWitness) {
  Report r = verify_intersections(*data_class("non_intersection").model_class, caps_at(4));
  EXPECT_FALSE(r.passed());
  const auto* c = r.find("intersections");
  ASSERT_NE(c, nullptr);
  ASSERT_FALSE(c->witnesses.empty());
  EXPECT_EQ(c->witnesses.front().at(0).first, "N");
  EXPECT_EQ(c->failures, 11u);  // every subset of the 4-set with at most two elements
}

TEST(Closure, Coherence) {
  EXPECT_TRUE(check_cl_coherence(linear(), caps_at(4)).passed());
  EXPECT_TRUE(check_cl_coherence(*corpus_class("triangle_free").model_class, caps_at(4)).passed());
  EXPECT_FALSE(check_cl_coherence(*data_class("incoherent_chains").model_class, caps_at(4)).passed());
}

TEST(Closure, SubsetCap) {
  EXPECT_THROW(strong_submodels(chain(4), linear(), 8), CapacityError);
}

TEST(Galois, ChainExamples) {
  EXPECT_TRUE(galois_equiv({chain(3), {1}}, {chain(2), {1}}, linear()));
  EXPECT_FALSE(galois_equiv({chain(3), {0}}, {chain(3), {2}}, linear()));
  EXPECT_TRUE(galois_equiv({chain(3), {2, 0}}, {chain(3), {2, 0}}, linear()));
  EXPECT_FALSE(galois_equiv({chain(3), {0, 0}}, {chain(3), {0, 1}}, linear()));
  EXPECT_THROW(galois_equiv({chain(3), {0}}, {chain(3), {0, 1}}, linear()), ArityError);
}

TEST(Galois, EquivalenceRelation) {
  for (const auto& name : corpus_names()) {
    ClassSpec spec = corpus_class(name);
    const auto& k = *spec.model_class;
    for (std::size_t len = 0; len <= 2; ++len) {
      std::vector<PointedModel> pool;
      for (const auto& n : k.members(3)) {
        if (n.size() == 0 && len > 0) continue;
        std::vector<Position> d(len, 0);
        while (true) {
          std::vector<Element> t;
          for (Position p : d) t.push_back(n.element(p));
          pool.push_back({n, t});
          std::size_t i = 0;
          while (i < len && ++d[i] == n.size()) d[i++] = 0;
          if (i == len) break;
        }
      }
      const std::size_t m = pool.size();
      std::vector<std::vector<char>> eq(m, std::vector<char>(m));
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) eq[i][j] = galois_equiv(pool[i], pool[j], k);
      for (std::size_t i = 0; i < m; ++i) {
        EXPECT_TRUE(eq[i][i]) << name;
        for (std::size_t j = 0; j < m; ++j) {
          EXPECT_EQ(eq[i][j], eq[j][i]) << name;
          if (!eq[i][j]) continue;
          for (std::size_t l = 0; l < m; ++l)
            if (eq[j][l]) EXPECT_TRUE(eq[i][l]) << name;
        }
      }
    }
  }
}

TEST(DK, LinearOrderCounts) {
  auto one = enumerate_dk(linear(), 1, caps_at(3));
  ASSERT_EQ(one.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(one[i].structure.size(), i + 1);
    ASSERT_EQ(one[i].tuple.size(), 1u);
    // the pinned element is the top of its closure
    EXPECT_EQ(solution_set(one[i].structure, parse_formula("(rel < y x)", order_vocab()), "y", {{"x", one[i].tuple[0]}})
                  .size(),
              i);
  }
  auto zero = enumerate_dk(linear(), 0, caps_at(3));
  ASSERT_EQ(zero.size(), 1u);
  EXPECT_EQ(zero[0].structure.size(), 0u);
  EXPECT_TRUE(enumerate_dk(*data_class("empty").model_class, 1, caps_at(3)).empty());
}

TEST(DK, RepresentativesAreClosedAndDistinct) {
  for (const auto& name : corpus_names()) {
    ClassSpec spec = corpus_class(name);
    for (std::size_t len = 0; len <= 2; ++len) {
      auto reps = enumerate_dk(*spec.model_class, len, caps_at(3));
      for (std::size_t i = 0; i < reps.size(); ++i) {
        const auto& p = reps[i];
        EXPECT_EQ(cl(p.structure, make_set(p.tuple), *spec.model_class).structure.universe(), p.structure.universe())
            << name;
        for (std::size_t j = 0; j < i; ++j) EXPECT_FALSE(galois_equiv(reps[j], p, *spec.model_class)) << name;
      }
    }
  }
}
