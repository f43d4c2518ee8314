#pragma once

#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qstruct/formula.hpp"

namespace qstruct {

struct Theory {
  std::string name;
  VocabularyPtr vocab;
  std::vector<FormulaPtr> sentences;
  /// Free-form key/value header, written back verbatim.
  std::vector<std::pair<std::string, std::string>> provenance;

  /// ShapeError when `s` has free variables.
  void add(FormulaPtr s);
};

/// A finite, duplicate-free set of formulas in insertion order. Formulas are
/// identified by their printed form.
class Fragment {
 public:
  bool add(const FormulaPtr& f);
  bool contains(const Formula& f) const;
  const std::vector<FormulaPtr>& members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }

 private:
  std::vector<FormulaPtr> members_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Smallest subformula-closed set containing the given formulas.
Fragment subformula_closure(const std::vector<FormulaPtr>& formulas);
Fragment subformula_closure(const Theory& t);
bool is_subformula_closed(const Fragment& f);

struct ShapeReport {
  bool ok = false;
  std::string offending;  // printed offending node when !ok
};

/// A universal prefix over a non-empty disjunction of structural quantifiers
/// whose bodies are quantifier-free and free of structural quantifiers.
ShapeReport is_forall_qstruct(const FormulaPtr& s);

/// Strips the leading universal prefix.
std::pair<std::vector<Var>, FormulaPtr> split_universal_prefix(const FormulaPtr& s);

}  // namespace qstruct
