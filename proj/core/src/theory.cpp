#include "qstruct/theory.hpp"

#include "qstruct/errors.hpp"
#include "qstruct/syntax.hpp"

namespace qstruct {

void Theory::add(FormulaPtr s) {
  if (!s->is_sentence()) throw ShapeError("theory member has free variables: " + print_formula(*s));
  sentences.push_back(std::move(s));
}

bool Fragment::add(const FormulaPtr& f) {
  auto [it, fresh] = index_.emplace(print_formula(*f), members_.size());
  if (fresh) members_.push_back(f);
  return fresh;
}

bool Fragment::contains(const Formula& f) const { return index_.count(print_formula(f)) > 0; }

Fragment subformula_closure(const std::vector<FormulaPtr>& formulas) {
  Fragment out;
  std::vector<FormulaPtr> stack(formulas.rbegin(), formulas.rend());
  while (!stack.empty()) {
    FormulaPtr f = stack.back();
    stack.pop_back();
    if (!out.add(f)) continue;
    auto subs = immediate_subformulas(f);
    stack.insert(stack.end(), subs.rbegin(), subs.rend());
  }
  return out;
}

Fragment subformula_closure(const Theory& t) { return subformula_closure(t.sentences); }

bool is_subformula_closed(const Fragment& f) {
  for (const auto& m : f.members())
    for (const auto& s : immediate_subformulas(m))
      if (!f.contains(*s)) return false;
  return true;
}

std::pair<std::vector<Var>, FormulaPtr> split_universal_prefix(const FormulaPtr& s) {
  std::vector<Var> vars;
  FormulaPtr body = s;
  while (body->kind() == FormulaKind::Forall) {
    vars.push_back(body->bound());
    body = body->child();
  }
  return {std::move(vars), body};
}

ShapeReport is_forall_qstruct(const FormulaPtr& s) {
  auto [vars, body] = split_universal_prefix(s);
  std::vector<FormulaPtr> disjuncts;
  if (body->kind() == FormulaKind::Or)
    disjuncts = body->children();
  else
    disjuncts = {body};
  for (const auto& d : disjuncts) {
    if (d->kind() != FormulaKind::QStruct) return {false, print_formula(*d)};
    const auto& q = d->qstruct();
    if (!quantifier_free(*q.phi)) return {false, print_formula(*q.phi)};
    for (const auto& p : q.psis)
      if (!quantifier_free(*p)) return {false, print_formula(*p)};
  }
  return {true, {}};
}

}  // namespace qstruct
