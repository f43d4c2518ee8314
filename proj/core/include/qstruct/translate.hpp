#pragma once

#include <string>
#include <vector>

#include "qstruct/formula.hpp"
#include "qstruct/kappa.hpp"

namespace qstruct {

/// ∀z ψ with ψ quantifier-free becomes ∀z Q^struct_1 x (x = z0 ∧ ψ); an empty
/// prefix gets a dummy ∀z0 first. ShapeError unless ψ is quantifier-free and
/// free of structural quantifiers.
FormulaPtr univ_gen_rewrite(const FormulaPtr& s);

/// A structural quantifier over τ0 as the disjunction over all τ-expansions
/// of its target. τ may only add relation symbols (ShapeError otherwise);
/// returns `q` itself when τ0 = τ.
FormulaPtr eliminate_subvocab(const FormulaPtr& q, const VocabularyPtr& tau);
/// Applies eliminate_subvocab to every structural quantifier in `f`.
FormulaPtr eliminate_subvocab_all(const FormulaPtr& f, const VocabularyPtr& tau);

struct ScottSentence {
  FormulaPtr sentence;
  VocabularyPtr vocab;                  // the target's plus one unary predicate per subset
  std::vector<std::string> predicates;  // predicate for subset i
};

/// Exact-diagram sentence: distinct witnesses realizing the full atomic
/// diagram, a universal clause closing the universe, and subset membership
/// pinned through the placeholder predicates.
ScottSentence scott_sentence(const DecoratedStructure& d);
/// Every structural quantifier replaced by the ψ_i ⊆ φ conjuncts and the
/// Scott sentence of its target, relativized to φ with P_i read as ψ_i.
FormulaPtr scott_rewrite(const FormulaPtr& f);

/// Every structural quantifier replaced by: the ψ_i are contained in φ, the
/// φ-solutions realize the target's relativized exact diagram (with P_i read
/// as ψ_i), and for finite κ = k, fewer than k elements satisfy φ.
FormulaPtr qstruct_to_counting(const FormulaPtr& f, const Kappa& kappa);

/// Literals fixing the isomorphism type of `m` on distinct witnesses, where
/// xs[p] names the element at position p: pairwise distinctness, every
/// relation tuple positively or negatively, function values and constants.
std::vector<FormulaPtr> exact_diagram(const FiniteStructure& m, const std::vector<Var>& xs);

/// ∃^{≥k} v φ(v) as a first-order formula.
FormulaPtr at_least(std::size_t k, const Var& v, const FormulaPtr& phi);

}  // namespace qstruct
