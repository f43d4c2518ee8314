#pragma once

#include <map>
#include <string>
#include <vector>

#include "qstruct/formula.hpp"

// Reference implementations written independently of the library's
// evaluator, isomorphism search and canonical forms. Slow on purpose.
namespace qstruct::testing {

using NaiveAssignment = std::map<std::string, Element>;

bool naive_eval(const FiniteStructure& n, const Formula& f, const NaiveAssignment& a);

/// Tries every bijection.
std::size_t naive_iso_count(const DecoratedStructure& a, const DecoratedStructure& b);
inline bool naive_isomorphic(const DecoratedStructure& a, const DecoratedStructure& b) {
  return naive_iso_count(a, b) > 0;
}

/// Every structure over `vocab` on {0, ..., n-1}, built symbol by symbol.
std::vector<FiniteStructure> naive_all_structures(const VocabularyPtr& vocab, std::size_t n);

/// All k-tuples over `universe`.
std::vector<std::vector<Element>> naive_tuples(const ElementSet& universe, std::size_t k);

}  // namespace qstruct::testing
