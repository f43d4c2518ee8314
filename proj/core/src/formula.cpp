#include "qstruct/formula.hpp"

#include <algorithm>

#include "qstruct/errors.hpp"
#include "qstruct/isomorphism.hpp"
#include "qstruct/syntax.hpp"

namespace qstruct {

void term_vars(const Term& t, VarSet& out) {
  if (t.is_var) {
    out.insert(t.name);
    return;
  }
  for (const auto& a : t.args) term_vars(a, out);
}

struct FormulaFactory {
  static std::shared_ptr<Formula> make(FormulaKind kind) {
    std::shared_ptr<Formula> f(new Formula());
    f->kind_ = kind;
    return f;
  }

  static FormulaPtr with_terms(FormulaKind kind, std::string relation, std::vector<Term> args) {
    auto f = make(kind);
    f->symbol_ = std::move(relation);
    f->terms_ = std::move(args);
    for (const auto& t : f->terms_) term_vars(t, f->free_);
    return f;
  }

  static FormulaPtr with_children(FormulaKind kind, std::vector<FormulaPtr> fs) {
    auto f = make(kind);
    for (const auto& g : fs) f->free_.insert(g->free_vars().begin(), g->free_vars().end());
    f->children_ = std::move(fs);
    return f;
  }

  static FormulaPtr binder(FormulaKind kind, Var v, FormulaPtr body) {
    auto f = make(kind);
    f->free_ = body->free_vars();
    f->free_.erase(v);
    f->symbol_ = std::move(v);
    f->children_ = {std::move(body)};
    return f;
  }

  static FormulaPtr structural(std::shared_ptr<QStructNode> node) {
    auto f = make(FormulaKind::QStruct);
    f->free_ = node->phi->free_vars();
    f->free_.erase(node->x);
    for (std::size_t i = 0; i < node->ys.size(); ++i) {
      VarSet fv = node->psis[i]->free_vars();
      fv.erase(node->ys[i]);
      f->free_.insert(fv.begin(), fv.end());
    }
    f->q_ = std::move(node);
    return f;
  }
};

FormulaPtr atomic(std::string relation, std::vector<Term> args) {
  return FormulaFactory::with_terms(FormulaKind::Atomic, std::move(relation), std::move(args));
}

FormulaPtr equal(Term a, Term b) {
  return FormulaFactory::with_terms(FormulaKind::Equal, "", {std::move(a), std::move(b)});
}

FormulaPtr negation(FormulaPtr g) { return FormulaFactory::with_children(FormulaKind::Not, {std::move(g)}); }

FormulaPtr conjunction(std::vector<FormulaPtr> fs) {
  if (fs.empty()) throw ShapeError("empty conjunction");
  return FormulaFactory::with_children(FormulaKind::And, std::move(fs));
}

FormulaPtr disjunction(std::vector<FormulaPtr> fs) {
  if (fs.empty()) throw ShapeError("empty disjunction");
  return FormulaFactory::with_children(FormulaKind::Or, std::move(fs));
}

FormulaPtr exists(Var v, FormulaPtr body) {
  return FormulaFactory::binder(FormulaKind::Exists, std::move(v), std::move(body));
}

FormulaPtr forall(Var v, FormulaPtr body) {
  return FormulaFactory::binder(FormulaKind::Forall, std::move(v), std::move(body));
}

FormulaPtr exists(const std::vector<Var>& vs, FormulaPtr body) {
  for (auto it = vs.rbegin(); it != vs.rend(); ++it) body = exists(*it, std::move(body));
  return body;
}

FormulaPtr forall(const std::vector<Var>& vs, FormulaPtr body) {
  for (auto it = vs.rbegin(); it != vs.rend(); ++it) body = forall(*it, std::move(body));
  return body;
}

FormulaPtr structural(DecoratedStructure target, Var x, std::vector<Var> ys, FormulaPtr phi, std::vector<FormulaPtr> psis) {
  if (ys.size() != psis.size() || ys.size() != target.subsets.size())
    throw ArityError("structural quantifier needs one bound variable and one formula per distinguished subset");
  auto node = std::make_shared<QStructNode>();
  CanonicalForm cf = canonical_form(target);
  node->target = std::move(cf.normalized);
  node->target_key = std::move(cf.key);
  node->family_key = print_vocabulary(node->target.base.vocabulary()) + " " + atom_text(x) + " (";
  for (const auto& y : ys) node->family_key += atom_text(y) + " ";
  node->family_key += ") " + print_formula(*phi);
  for (const auto& p : psis) node->family_key += " " + print_formula(*p);
  node->x = std::move(x);
  node->ys = std::move(ys);
  node->phi = std::move(phi);
  node->psis = std::move(psis);
  return FormulaFactory::structural(std::move(node));
}

FormulaPtr structural(FiniteStructure target, Var x, FormulaPtr phi) {
  return structural(DecoratedStructure(std::move(target)), std::move(x), {}, std::move(phi), {});
}

FormulaPtr not_equal(Term a, Term b) { return negation(equal(std::move(a), std::move(b))); }

FormulaPtr implies(FormulaPtr a, FormulaPtr b) { return disjunction({negation(std::move(a)), std::move(b)}); }

bool structurally_equal(const Formula& a, const Formula& b) {
  if (&a == &b) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case FormulaKind::Atomic:
      return a.relation() == b.relation() && a.terms() == b.terms();
    case FormulaKind::Equal:
      return a.terms() == b.terms();
    case FormulaKind::Exists:
    case FormulaKind::Forall:
      if (a.bound() != b.bound()) return false;
      [[fallthrough]];
    case FormulaKind::Not:
    case FormulaKind::And:
    case FormulaKind::Or:
      if (a.children().size() != b.children().size()) return false;
      for (std::size_t i = 0; i < a.children().size(); ++i)
        if (!structurally_equal(*a.children()[i], *b.children()[i])) return false;
      return true;
    case FormulaKind::QStruct: {
      const auto& p = a.qstruct();
      const auto& q = b.qstruct();
      if (p.x != q.x || p.ys != q.ys || !(p.target == q.target)) return false;
      if (!structurally_equal(*p.phi, *q.phi)) return false;
      for (std::size_t i = 0; i < p.psis.size(); ++i)
        if (!structurally_equal(*p.psis[i], *q.psis[i])) return false;
      return true;
    }
  }
  return false;
}

Var fresh_var(const VarSet& avoid) {
  for (std::size_t i = 0;; ++i) {
    Var v = "v" + std::to_string(i);
    if (!avoid.count(v)) return v;
  }
}

namespace {

void collect_vars(const Formula& f, VarSet& out) {
  for (const auto& t : f.terms()) term_vars(t, out);
  switch (f.kind()) {
    case FormulaKind::Exists:
    case FormulaKind::Forall:
      out.insert(f.bound());
      break;
    case FormulaKind::QStruct:
      out.insert(f.qstruct().x);
      out.insert(f.qstruct().ys.begin(), f.qstruct().ys.end());
      collect_vars(*f.qstruct().phi, out);
      for (const auto& p : f.qstruct().psis) collect_vars(*p, out);
      break;
    default:
      break;
  }
  for (const auto& c : f.children()) collect_vars(*c, out);
}

// Substitutes under a binder for `bound`; renames the binder when `t` mentions it.
std::pair<Var, FormulaPtr> under_binder(const Var& bound, const FormulaPtr& body, const Var& v, const Term& t,
                                        const VarSet& t_vars) {
  if (bound == v || !body->free_vars().count(v)) return {bound, body};
  if (!t_vars.count(bound)) return {bound, substitute(body, v, t)};
  VarSet avoid = all_vars(*body);
  avoid.insert(t_vars.begin(), t_vars.end());
  avoid.insert(v);
  Var renamed = fresh_var(avoid);
  FormulaPtr moved = substitute(body, bound, Term::var(renamed));
  return {renamed, substitute(moved, v, t)};
}

}  // namespace

VarSet all_vars(const Formula& f) {
  VarSet out;
  collect_vars(f, out);
  return out;
}

Term substitute(const Term& t, const Var& v, const Term& with) {
  if (t.is_var) return t.name == v ? with : t;
  Term out = t;
  for (auto& a : out.args) a = substitute(a, v, with);
  return out;
}

FormulaPtr substitute(const FormulaPtr& f, const Var& v, const Term& t) {
  if (!f->free_vars().count(v)) return f;
  VarSet t_vars;
  term_vars(t, t_vars);
  switch (f->kind()) {
    case FormulaKind::Atomic: {
      std::vector<Term> args;
      for (const auto& a : f->terms()) args.push_back(substitute(a, v, t));
      return atomic(f->relation(), std::move(args));
    }
    case FormulaKind::Equal:
      return equal(substitute(f->terms()[0], v, t), substitute(f->terms()[1], v, t));
    case FormulaKind::Not:
      return negation(substitute(f->child(), v, t));
    case FormulaKind::And:
    case FormulaKind::Or: {
      std::vector<FormulaPtr> cs;
      for (const auto& c : f->children()) cs.push_back(substitute(c, v, t));
      return f->kind() == FormulaKind::And ? conjunction(std::move(cs)) : disjunction(std::move(cs));
    }
    case FormulaKind::Exists:
    case FormulaKind::Forall: {
      auto [b, body] = under_binder(f->bound(), f->child(), v, t, t_vars);
      return f->kind() == FormulaKind::Exists ? exists(b, body) : forall(b, body);
    }
    case FormulaKind::QStruct: {
      const auto& q = f->qstruct();
      auto [x, phi] = under_binder(q.x, q.phi, v, t, t_vars);
      std::vector<Var> ys;
      std::vector<FormulaPtr> psis;
      for (std::size_t i = 0; i < q.ys.size(); ++i) {
        auto [y, psi] = under_binder(q.ys[i], q.psis[i], v, t, t_vars);
        ys.push_back(y);
        psis.push_back(psi);
      }
      return structural(q.target, x, std::move(ys), phi, std::move(psis));
    }
  }
  return f;
}

std::vector<FormulaPtr> immediate_subformulas(const FormulaPtr& f) {
  if (f->kind() != FormulaKind::QStruct) return f->children();
  std::vector<FormulaPtr> out{f->qstruct().phi};
  out.insert(out.end(), f->qstruct().psis.begin(), f->qstruct().psis.end());
  return out;
}

bool quantifier_free(const Formula& f) {
  if (f.kind() == FormulaKind::Exists || f.kind() == FormulaKind::Forall || f.kind() == FormulaKind::QStruct)
    return false;
  return std::all_of(f.children().begin(), f.children().end(), [](const FormulaPtr& c) { return quantifier_free(*c); });
}

bool qstruct_free(const Formula& f) {
  if (f.kind() == FormulaKind::QStruct) return false;
  return std::all_of(f.children().begin(), f.children().end(), [](const FormulaPtr& c) { return qstruct_free(*c); });
}

namespace {

void check_term(const Term& t, const Vocabulary& vocab) {
  if (t.is_var) return;
  auto f = vocab.find_function(t.name);
  if (!f) throw SignatureError("unknown function symbol '" + t.name + "'");
  if (vocab.functions()[*f].arity != t.args.size())
    throw SignatureError("function '" + t.name + "' applied to " + std::to_string(t.args.size()) + " arguments");
  for (const auto& a : t.args) check_term(a, vocab);
}

}  // namespace

void well_formed(const Formula& f, const Vocabulary& vocab) {
  for (const auto& t : f.terms()) check_term(t, vocab);
  if (f.kind() == FormulaKind::Atomic) {
    auto r = vocab.find_relation(f.relation());
    if (!r) throw SignatureError("unknown relation symbol '" + f.relation() + "'");
    if (vocab.relations()[*r].arity != f.terms().size())
      throw SignatureError("relation '" + f.relation() + "' applied to " + std::to_string(f.terms().size()) +
                           " arguments");
  }
  if (f.kind() == FormulaKind::QStruct) {
    const auto& q = f.qstruct();
    if (!vocab.includes(q.target.base.vocabulary()))
      throw SignatureError("structural quantifier target vocabulary is not included in the formula vocabulary");
    if (!q.target.base.initial_segment()) throw SignatureError("structural quantifier target is not normalized");
    well_formed(*q.phi, vocab);
    for (const auto& p : q.psis) well_formed(*p, vocab);
  }
  for (const auto& c : f.children()) well_formed(*c, vocab);
}

}  // namespace qstruct
