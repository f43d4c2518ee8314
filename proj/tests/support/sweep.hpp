#pragma once

#include <cstddef>
#include <string>

#include "qstruct/formula.hpp"
#include "qstruct/kappa.hpp"

namespace qstruct::testing {

struct SweepResult {
  std::size_t structures = 0;
  std::size_t cases = 0;  // (structure, assignment) pairs
  std::size_t disagreements = 0;
  std::string first;  // printed structure and assignment of the first disagreement
};

/// Evaluates both formulas on every labelled structure over `vocab` with at
/// most `max_size` elements and every assignment of their free variables.
SweepResult compare_formulas(const FormulaPtr& a, const FormulaPtr& b, const VocabularyPtr& vocab,
                             std::size_t max_size, const Kappa& kappa = {});

}  // namespace qstruct::testing
