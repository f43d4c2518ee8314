#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "qstruct/caps.hpp"
#include "qstruct/formula.hpp"
#include "qstruct/kappa.hpp"
#include "qstruct/theory.hpp"

namespace qstruct {

using Assignment = std::map<Var, Element>;

/// Evaluates formulas on one fixed structure. Formulas are compiled on first
/// use; solution sets of structural quantifiers are memoized per parameter
/// values, so repeated evaluation of a theory is cheap.
///
/// Errors: AssignmentError for an unassigned free variable, KappaError for a
/// target of size >= k under a finite kappa, SignatureError for symbols the
/// structure does not interpret.
class Evaluator {
 public:
  explicit Evaluator(FiniteStructure n, Kappa kappa = {});
  ~Evaluator();
  Evaluator(Evaluator&&) noexcept;
  Evaluator& operator=(Evaluator&&) noexcept;

  const FiniteStructure& structure() const;
  const Kappa& kappa() const;

  bool eval(const FormulaPtr& f, const Assignment& a = {});
  ElementSet solution_set(const FormulaPtr& f, const Var& x, const Assignment& a = {});

  /// phi(N, b) and each psi_i(N, b) for a structural-quantifier node.
  struct QStructSets {
    ElementSet phi;
    std::vector<ElementSet> psis;
  };
  QStructSets qstruct_sets(const FormulaPtr& q, const Assignment& a);

  bool models(const Theory& t);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

bool eval(const FiniteStructure& n, const FormulaPtr& f, const Assignment& a = {}, Kappa kappa = {});
ElementSet solution_set(const FiniteStructure& n, const FormulaPtr& f, const Var& x, const Assignment& a = {},
                        Kappa kappa = {});
bool models(const FiniteStructure& n, const Theory& t, Kappa kappa = {});

/// Calls `visit` with every map from `vars` into `universe` (lexicographic);
/// stops early when `visit` returns false. Returns false iff stopped.
bool for_each_assignment(const std::vector<Var>& vars, const ElementSet& universe,
                         const std::function<bool(const Assignment&)>& visit);

enum class ElemStatus { Holds, NotSubstructure, Fails };

struct ElemVerdict {
  ElemStatus status = ElemStatus::Holds;
  FormulaPtr witness;     // offending fragment member
  Assignment assignment;  // offending parameters
  std::string detail;

  bool holds() const noexcept { return status == ElemStatus::Holds; }
  explicit operator bool() const noexcept { return holds(); }
};

/// N1 <=_F N2: N1 is a substructure of N2 and every fragment member has the
/// same truth value in both under every assignment of its free variables into
/// |N1|. Quantifier-free members agree automatically on substructures and are
/// skipped. CapacityError when a member has more than `max_free_vars` free variables.
ElemVerdict elem_F(const FiniteStructure& n1, const FiniteStructure& n2, const Fragment& f, Kappa kappa = {},
                   std::size_t max_free_vars = Caps{}.max_free_vars);
/// N1 <=*_F N2: additionally every structural quantifier in F whose solution
/// set in N1 is below kappa has the same phi and psi solution sets in N2.
ElemVerdict elem_F_star(const FiniteStructure& n1, const FiniteStructure& n2, const Fragment& f, Kappa kappa = {},
                        std::size_t max_free_vars = Caps{}.max_free_vars);
/// Variants reusing evaluators (and their memo tables) across calls.
ElemVerdict elem_F(Evaluator& n1, Evaluator& n2, const Fragment& f, std::size_t max_free_vars = Caps{}.max_free_vars);
ElemVerdict elem_F_star(Evaluator& n1, Evaluator& n2, const Fragment& f,
                        std::size_t max_free_vars = Caps{}.max_free_vars);

/// Models of `t` among enumerate_structures(vocab, max_size, up_to_iso).
std::vector<FiniteStructure> enumerate_models(const Theory& t, const VocabularyPtr& vocab, std::size_t max_size,
                                              Kappa kappa = {}, bool up_to_iso = true,
                                              std::size_t max_structures = Caps{}.max_structures);

}  // namespace qstruct
