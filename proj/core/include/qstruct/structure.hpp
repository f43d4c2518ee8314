#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "qstruct/vocabulary.hpp"

namespace qstruct {

using Element = std::uint32_t;
using Position = std::uint32_t;
using Tuple = std::vector<Element>;
/// Sorted, duplicate-free list of element ids.
using ElementSet = std::vector<Element>;

ElementSet make_set(std::vector<Element> elements);
bool is_subset(const ElementSet& a, const ElementSet& b);
ElementSet set_union(const ElementSet& a, const ElementSet& b);
ElementSet set_intersection(const ElementSet& a, const ElementSet& b);
ElementSet iota_set(std::size_t n);

/// A finite structure over a shared, immutable vocabulary.
///
/// The universe is a sorted set of element ids. Interpretations are stored
/// densely by position (the index of an element in the universe): relation
/// r of arity k is a bitmap over n^k tuples, function f a table of n^k
/// positions. Tuples are indexed with the first coordinate most significant,
/// so index order is lexicographic order.
class FiniteStructure {
 public:
  FiniteStructure();

  const Vocabulary& vocabulary() const noexcept { return *vocab_; }
  const VocabularyPtr& vocabulary_ptr() const noexcept { return vocab_; }

  std::size_t size() const noexcept { return universe_.size(); }
  const ElementSet& universe() const noexcept { return universe_; }
  bool contains(Element e) const { return position(e).has_value(); }
  std::optional<Position> position(Element e) const;
  Element element(Position p) const { return universe_[p]; }
  /// Universe is exactly {0, ..., n-1}.
  bool initial_segment() const;

  std::size_t table_size(std::size_t arity) const;
  std::size_t index_of(std::span<const Position> positions) const;

  bool relation_bit(std::size_t rel, std::size_t index) const { return relations_[rel][index]; }
  Position function_entry(std::size_t fn, std::size_t index) const { return functions_[fn][index]; }
  bool holds(std::size_t rel, std::span<const Position> positions) const {
    return relations_[rel][index_of(positions)];
  }
  Position apply(std::size_t fn, std::span<const Position> positions) const {
    return functions_[fn][index_of(positions)];
  }

  bool holds(std::string_view rel, const Tuple& ids) const;
  Element value(std::string_view fn, const Tuple& ids) const;
  /// Tuples of relation `rel` as element ids, lexicographic.
  std::vector<Tuple> tuples(std::size_t rel) const;

  friend bool operator==(const FiniteStructure& a, const FiniteStructure& b);

 private:
  friend class StructureBuilder;

  VocabularyPtr vocab_;
  ElementSet universe_;
  std::vector<std::vector<bool>> relations_;
  std::vector<std::vector<Position>> functions_;
};

class StructureBuilder {
 public:
  StructureBuilder(VocabularyPtr vocab, ElementSet universe);
  StructureBuilder(VocabularyPtr vocab, std::size_t n);

  std::size_t size() const noexcept { return s_.universe_.size(); }
  const FiniteStructure& peek() const noexcept { return s_; }

  StructureBuilder& add_tuple(std::string_view rel, const Tuple& ids);
  StructureBuilder& set_value(std::string_view fn, const Tuple& args, Element value);

  void set_bit(std::size_t rel, std::size_t index, bool value = true) { s_.relations_[rel][index] = value; }
  void set_entry(std::size_t fn, std::size_t index, Position value) { s_.functions_[fn][index] = value; }

  /// Throws DomainError if any function table entry is still undefined.
  FiniteStructure build() &&;

 private:
  std::vector<Position> positions_of(const Tuple& ids) const;

  FiniteStructure s_;
};

/// Restriction to a sub-vocabulary; throws SignatureError on a missing symbol
/// or arity mismatch.
FiniteStructure reduct(const FiniteStructure& s, const VocabularyPtr& sub);

/// M ⊆ N: same vocabulary, universe inclusion, agreeing interpretations.
bool is_substructure(const FiniteStructure& m, const FiniteStructure& n);

/// The induced structure on `subset`, or nothing when the subset is not
/// closed under the functions (or misses a constant).
std::optional<FiniteStructure> induced_substructure(const FiniteStructure& n, const ElementSet& subset);

/// Smallest function-closed superset of `seed` (constants included).
ElementSet generated_set(const FiniteStructure& s, const ElementSet& seed);
FiniteStructure generated_substructure(const FiniteStructure& s, const ElementSet& seed);

/// Copy with element at position p renamed to image[p]; image must be injective.
FiniteStructure relabel(const FiniteStructure& s, const std::vector<Element>& image);

/// A structure with an ordered list of distinguished subsets of its universe.
struct DecoratedStructure {
  FiniteStructure base;
  std::vector<ElementSet> subsets;

  DecoratedStructure() = default;
  explicit DecoratedStructure(FiniteStructure b, std::vector<ElementSet> s = {});

  friend bool operator==(const DecoratedStructure&, const DecoratedStructure&) = default;
};

}  // namespace qstruct
