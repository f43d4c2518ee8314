#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qstruct/caps.hpp"
#include "qstruct/kappa.hpp"
#include "qstruct/report.hpp"
#include "qstruct/theory.hpp"

namespace qstruct {

/// Bitmask over positions of a structure's universe (|N| <= 63).
using SubsetMask = std::uint64_t;

ElementSet mask_to_set(const FiniteStructure& n, SubsetMask mask);
SubsetMask set_to_mask(const FiniteStructure& n, const ElementSet& s);

/// A class of finite structures with a strong-substructure order, closed
/// under isomorphism.
class ModelClass {
 public:
  virtual ~ModelClass() = default;

  virtual const VocabularyPtr& vocabulary() const = 0;
  /// One normalized representative per isomorphism type, size <= max_size,
  /// ordered by size then canonical key.
  virtual std::vector<FiniteStructure> members(std::size_t max_size) const = 0;
  virtual bool contains(const FiniteStructure& n) const = 0;
  /// M <= N in the class order; false unless both are members and M is a substructure of N.
  virtual bool strong_leq(const FiniteStructure& m, const FiniteStructure& n) const = 0;
  virtual std::string describe() const = 0;

  /// Bit `mask` is set iff the induced structure on `mask` exists, is a member
  /// and is strong in `n`. Size 2^|N|; CapacityError above `max_subsets`.
  virtual std::vector<bool> strong_subsets(const FiniteStructure& n, std::size_t max_subsets) const;
};

/// (Mod(T), <=*_F) with F the subformula closure of T.
class DefinedClass : public ModelClass {
 public:
  DefinedClass(Theory theory, Kappa kappa = {}, std::size_t max_size = 4);

  const VocabularyPtr& vocabulary() const override { return theory_.vocab; }
  std::vector<FiniteStructure> members(std::size_t max_size) const override;
  bool contains(const FiniteStructure& n) const override;
  bool strong_leq(const FiniteStructure& m, const FiniteStructure& n) const override;
  std::string describe() const override;
  std::vector<bool> strong_subsets(const FiniteStructure& n, std::size_t max_subsets) const override;

  const Theory& theory() const noexcept { return theory_; }
  const Fragment& fragment() const noexcept { return fragment_; }
  const Kappa& kappa() const noexcept { return kappa_; }
  std::size_t max_size() const noexcept { return max_size_; }

 private:
  Theory theory_;
  Fragment fragment_;
  Kappa kappa_;
  std::size_t max_size_;
};

/// Listed structures L_0, L_1, ... and order pairs (i, j) meaning L_i <= L_j;
/// L_i must be a literal substructure of L_j. Reflexive pairs are implicit.
/// Membership is isomorphism to a listed structure; M <= N holds when some
/// isomorphism from N onto some L_j carries |M| onto |L_i| for a pair (i, j).
class ExplicitClass : public ModelClass {
 public:
  ExplicitClass(VocabularyPtr vocab, std::vector<FiniteStructure> listed,
                std::vector<std::pair<std::size_t, std::size_t>> order);

  const VocabularyPtr& vocabulary() const override { return vocab_; }
  std::vector<FiniteStructure> members(std::size_t max_size) const override;
  bool contains(const FiniteStructure& n) const override;
  bool strong_leq(const FiniteStructure& m, const FiniteStructure& n) const override;
  std::string describe() const override;

  const std::vector<FiniteStructure>& listed() const noexcept { return listed_; }
  const std::vector<std::pair<std::size_t, std::size_t>>& order() const noexcept { return order_; }

 private:
  VocabularyPtr vocab_;
  std::vector<FiniteStructure> listed_;
  std::vector<std::pair<std::size_t, std::size_t>> order_;
  std::unordered_map<std::string, std::vector<std::size_t>> by_key_;
};

/// Finite slice of the abstract-elementary-class axioms: order properties,
/// substructure refinement, coherence and isomorphism closure over all
/// members up to caps.max_size. Chain and Lowenheim-Skolem axioms are listed
/// as not finitely testable.
Report check_class_properties(const ModelClass& k, const Caps& caps);

}  // namespace qstruct
