#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "qstruct/caps.hpp"
#include "qstruct/model_class.hpp"
#include "qstruct/report.hpp"

namespace qstruct {

struct ClosureResult {
  FiniteStructure structure;  // induced on the intersection
  SubsetMask mask = 0;
  bool strong = false;  // the intersection is itself a strong submodel of N
};

/// Strong submodels of one member N, computed once; closures are
/// intersections of the strong submodels containing the argument.
class ClosureOracle {
 public:
  ClosureOracle(const ModelClass& k, FiniteStructure n, std::size_t max_subsets);

  const FiniteStructure& structure() const noexcept { return n_; }
  const std::vector<bool>& strong() const noexcept { return strong_; }

  SubsetMask closure_mask(SubsetMask a) const;
  ClosureResult closure(SubsetMask a) const;
  ClosureResult closure(const ElementSet& a) const;
  std::vector<FiniteStructure> strong_submodels() const;

 private:
  FiniteStructure n_;
  std::vector<bool> strong_;
  mutable std::vector<std::optional<SubsetMask>> cache_;
};

/// Members M of the class with M <= N, smallest first; N is always last.
std::vector<FiniteStructure> strong_submodels(const FiniteStructure& n, const ModelClass& k,
                                              std::size_t max_subsets = Caps{}.max_subsets);
ClosureResult cl(const FiniteStructure& n, const ElementSet& a, const ModelClass& k,
                 std::size_t max_subsets = Caps{}.max_subsets);

/// Every member up to caps.max_size and every A: cl(N, A) is strong in N.
Report verify_intersections(const ModelClass& k, const Caps& caps);
/// For M <= N within caps and every A in |M|: cl in M equals cl in N.
Report check_cl_coherence(const ModelClass& k, const Caps& caps);

struct PointedModel {
  FiniteStructure structure;
  std::vector<Element> tuple;
};

/// An isomorphism between the two closures carrying one tuple onto the other.
bool galois_equiv(const PointedModel& p, const PointedModel& q, const ModelClass& k,
                  std::size_t max_subsets = Caps{}.max_subsets);

/// One representative per class of pointed models with tuples of exactly
/// `tuple_len` elements over members up to caps.max_size. Each
/// representative is its own closure, relabelled canonically; the list is
/// ordered by size then canonical key.
std::vector<PointedModel> enumerate_dk(const ModelClass& k, std::size_t tuple_len, const Caps& caps);

}  // namespace qstruct
