#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "qstruct/caps.hpp"
#include "qstruct/closure.hpp"
#include "qstruct/model_class.hpp"
#include "qstruct/report.hpp"

namespace qstruct {

/// Name of the (n+1)-ary closure relation: E<n>(a, b0 ... b(n-1)) iff a is in cl(b).
std::string closure_relation(std::size_t n);

/// The class expanded by closure relations E_n for n < arity_cap. Members
/// are exactly the expansions of source members; the order is the source
/// order on reducts.
class ExpandedClass : public ModelClass {
 public:
  ExpandedClass(std::shared_ptr<const ModelClass> source, std::size_t arity_cap, std::size_t max_subsets);

  const VocabularyPtr& vocabulary() const override { return vocab_; }
  std::vector<FiniteStructure> members(std::size_t max_size) const override;
  bool contains(const FiniteStructure& n) const override;
  bool strong_leq(const FiniteStructure& m, const FiniteStructure& n) const override;
  std::string describe() const override;
  std::vector<bool> strong_subsets(const FiniteStructure& n, std::size_t max_subsets) const override;

  const ModelClass& source() const noexcept { return *source_; }
  std::size_t arity_cap() const noexcept { return arity_cap_; }
  /// DomainError unless `n` is a source member.
  FiniteStructure expand(const FiniteStructure& n) const;
  FiniteStructure restrict(const FiniteStructure& expanded) const;

 private:
  std::shared_ptr<const ModelClass> source_;
  std::size_t arity_cap_;
  std::size_t max_subsets_;
  VocabularyPtr vocab_;
};

struct ExpansionMap {
  std::shared_ptr<const ExpandedClass> expanded;
  std::vector<std::pair<FiniteStructure, FiniteStructure>> members;  // (N, N+)
  Report report;  // reduct identity, order commutation, isomorphism invariance
};

/// Refuses classes without intersections (IntersectionFailure naming N and A).
ExpansionMap functorial_expansion(std::shared_ptr<const ModelClass> k, std::size_t arity_cap, const Caps& caps);

/// For each length pair (m, k): decorated structures (M2, |M1|) over the
/// expanded vocabulary with M2 = cl(ab), M1 = cl(a), ℓ(a) = m, ℓ(b) = k.
struct PairCatalog {
  std::map<std::pair<std::size_t, std::size_t>, std::vector<DecoratedStructure>> entries;
  std::size_t total() const;
};

struct Emission {
  Theory theory;
  PairCatalog catalog;
  std::size_t arity_cap = 0;
  std::size_t pair_cap = 0;
  bool empty_class = false;
  /// Index into theory.sentences of the sentence for each length pair.
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> pair_sentence;
};

/// Reflexivity sentences for E_n (rewritten into ∀Q^struct form) and one
/// disjunction per length pair m + k <= pair_cap. Needs arity_cap > pair_cap.
/// An empty class gets the two contradictory sentences instead.
Emission emit_aq_theory(const ExpansionMap& x, std::size_t pair_cap, const Caps& caps, const std::string& spec_hash = "");

/// Four checks at caps: expanded members model the theory; the class order
/// implies the starred fragment order; models are expanded members; and the
/// starred order between models coincides with the class order.
Report verify_presentation(const ExpansionMap& x, const Emission& e, const Caps& caps);

/// Universal sentences forbidding every minimal non-member of size at most
/// caps.max_size. UniversalityError when the class is not closed under
/// substructures within caps.
Theory tarski_universal_theory(const ModelClass& k, const Caps& caps);

/// The emitted theory for a relational universal class with each E_n(x, y)
/// replaced by x = y0 ∨ ... and each pair disjunction by the quantifier-free
/// types its catalog entries realize. Sentences that become valid are dropped.
Theory tarski_specialize(const Emission& e, const VocabularyPtr& tau);

/// Theory models over the class vocabulary up to caps.max_size, compared
/// with the class members by isomorphism type.
CheckResult compare_model_sets(const Theory& t, const ModelClass& k, const Caps& caps, const std::string& name);

struct Morleyization {
  VocabularyPtr vocab;
  std::vector<std::string> relations;  // one per Galois type
  std::vector<PointedModel> types;     // types[i] is realized by relations[i]
  std::vector<std::pair<FiniteStructure, FiniteStructure>> members;
  Report report;  // model-completeness at caps
};

/// One relation per class of pointed models with tuple length 1 .. arity_cap - 1.
Morleyization galois_morleyization(const ModelClass& k, std::size_t arity_cap, const Caps& caps);

}  // namespace qstruct
