#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "qstruct/structure.hpp"

namespace qstruct {

using Var = std::string;
using VarSet = std::set<Var>;

/// A variable, or a function symbol applied to terms (constants take no
/// arguments). Arity against a vocabulary is checked by `well_formed`.
struct Term {
  bool is_var = true;
  std::string name;
  std::vector<Term> args;

  static Term var(Var v) { return Term{true, std::move(v), {}}; }
  static Term app(std::string f, std::vector<Term> args = {}) { return Term{false, std::move(f), std::move(args)}; }

  friend bool operator==(const Term&, const Term&) = default;
};

void term_vars(const Term& t, VarSet& out);

enum class FormulaKind { Atomic, Equal, Not, And, Or, Exists, Forall, QStruct };

class Formula;
struct FormulaFactory;
using FormulaPtr = std::shared_ptr<const Formula>;

struct QStructNode {
  DecoratedStructure target;  // normalized
  Var x;
  std::vector<Var> ys;
  FormulaPtr phi;
  std::vector<FormulaPtr> psis;
  std::string target_key;  // canonical key of the target
  // Nodes that differ only in their target share this key.
  std::string family_key;
};

/// Immutable formula node. Build through the factory functions below.
class Formula {
 public:
  FormulaKind kind() const noexcept { return kind_; }

  // Atomic: relation name and arguments. Equal: two terms.
  const std::string& relation() const noexcept { return symbol_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  // Not: one child. And/Or: the operands. Exists/Forall: the body.
  const std::vector<FormulaPtr>& children() const noexcept { return children_; }
  const FormulaPtr& child() const { return children_.front(); }
  const Var& bound() const noexcept { return symbol_; }
  const QStructNode& qstruct() const { return *q_; }

  const VarSet& free_vars() const noexcept { return free_; }
  bool is_sentence() const noexcept { return free_.empty(); }

 private:
  friend struct FormulaFactory;

  FormulaKind kind_ = FormulaKind::Atomic;
  std::string symbol_;
  std::vector<Term> terms_;
  std::vector<FormulaPtr> children_;
  std::shared_ptr<const QStructNode> q_;
  VarSet free_;
};

FormulaPtr atomic(std::string relation, std::vector<Term> args);
FormulaPtr equal(Term a, Term b);
FormulaPtr negation(FormulaPtr f);
/// And/Or require a non-empty operand list (ShapeError otherwise).
FormulaPtr conjunction(std::vector<FormulaPtr> fs);
FormulaPtr disjunction(std::vector<FormulaPtr> fs);
FormulaPtr exists(Var v, FormulaPtr body);
FormulaPtr forall(Var v, FormulaPtr body);
FormulaPtr exists(const std::vector<Var>& vs, FormulaPtr body);
FormulaPtr forall(const std::vector<Var>& vs, FormulaPtr body);
/// Normalizes the target. ArityError unless ys, psis and target subsets agree in length.
FormulaPtr structural(DecoratedStructure target, Var x, std::vector<Var> ys, FormulaPtr phi, std::vector<FormulaPtr> psis);
FormulaPtr structural(FiniteStructure target, Var x, FormulaPtr phi);

FormulaPtr not_equal(Term a, Term b);
FormulaPtr implies(FormulaPtr a, FormulaPtr b);

bool structurally_equal(const Formula& a, const Formula& b);

/// First name of the pool v0, v1, ... not in `avoid`.
Var fresh_var(const VarSet& avoid);
/// All variable names occurring anywhere, bound or free.
VarSet all_vars(const Formula& f);

/// Capture-avoiding substitution of `t` for free occurrences of `v`.
FormulaPtr substitute(const FormulaPtr& f, const Var& v, const Term& t);
Term substitute(const Term& t, const Var& v, const Term& with);

/// Immediate subformulas: the operands, the quantifier body, or phi followed by the psis.
std::vector<FormulaPtr> immediate_subformulas(const FormulaPtr& f);
bool quantifier_free(const Formula& f);
bool qstruct_free(const Formula& f);

/// Checks symbols and arities against `vocab`, target vocabularies being
/// included in `vocab`, and target normalization. Throws SignatureError.
void well_formed(const Formula& f, const Vocabulary& vocab);

}  // namespace qstruct
