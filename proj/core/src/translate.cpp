#include "qstruct/translate.hpp"

#include <functional>
#include <map>

#include "qstruct/enumerate.hpp"
#include "qstruct/errors.hpp"

namespace qstruct {

namespace {

FormulaPtr falsum(const Var& v) { return not_equal(Term::var(v), Term::var(v)); }

FormulaPtr all_of(std::vector<FormulaPtr> fs) {
  if (fs.size() == 1) return fs.front();
  return conjunction(std::move(fs));
}

// Rebuilds `f` bottom-up, letting `visit` replace structural quantifiers
// after their own subformulas have been rewritten.
FormulaPtr rewrite_qstruct(const FormulaPtr& f, const std::function<FormulaPtr(const FormulaPtr&)>& visit) {
  auto again = [&](const FormulaPtr& g) { return rewrite_qstruct(g, visit); };
  switch (f->kind()) {
    case FormulaKind::Atomic:
    case FormulaKind::Equal:
      return f;
    case FormulaKind::Not:
      return negation(again(f->child()));
    case FormulaKind::And:
    case FormulaKind::Or: {
      std::vector<FormulaPtr> cs;
      for (const auto& c : f->children()) cs.push_back(again(c));
      return f->kind() == FormulaKind::And ? conjunction(std::move(cs)) : disjunction(std::move(cs));
    }
    case FormulaKind::Exists:
      return exists(f->bound(), again(f->child()));
    case FormulaKind::Forall:
      return forall(f->bound(), again(f->child()));
    case FormulaKind::QStruct: {
      const auto& q = f->qstruct();
      std::vector<FormulaPtr> psis;
      for (const auto& p : q.psis) psis.push_back(again(p));
      return visit(structural(q.target, q.x, q.ys, again(q.phi), std::move(psis)));
    }
  }
  return f;
}

// Variable names `prefix`0, `prefix`1, ... skipping anything in `avoid`.
std::vector<Var> fresh_names(const std::string& prefix, std::size_t count, VarSet& avoid) {
  std::vector<Var> out;
  for (std::size_t i = 0; out.size() < count; ++i) {
    Var v = prefix + std::to_string(i);
    if (avoid.insert(v).second) out.push_back(v);
  }
  return out;
}

Var fresh_like(const Var& preferred, VarSet& avoid) {
  Var v = avoid.count(preferred) ? fresh_var(avoid) : preferred;
  avoid.insert(v);
  return v;
}

}  // namespace

std::vector<FormulaPtr> exact_diagram(const FiniteStructure& m, const std::vector<Var>& xs) {
  std::vector<FormulaPtr> out;
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) out.push_back(not_equal(Term::var(xs[i]), Term::var(xs[j])));
  const Vocabulary& v = m.vocabulary();
  auto args_of = [&](const std::vector<Position>& ps) {
    std::vector<Term> ts;
    for (Position p : ps) ts.push_back(Term::var(xs[p]));
    return ts;
  };
  for (std::size_t r = 0; r < v.relations().size(); ++r) {
    const auto& sym = v.relations()[r];
    std::vector<Position> ps(sym.arity, 0);
    if (n == 0 && sym.arity > 0) continue;
    for (std::size_t idx = 0; idx < m.table_size(sym.arity); ++idx) {
      for (std::size_t i = sym.arity, rest = idx; i-- > 0; rest /= n) ps[i] = static_cast<Position>(rest % n);
      FormulaPtr a = atomic(sym.name, args_of(ps));
      out.push_back(m.relation_bit(r, idx) ? a : negation(a));
    }
  }
  for (std::size_t f = 0; f < v.functions().size(); ++f) {
    const auto& sym = v.functions()[f];
    std::vector<Position> ps(sym.arity, 0);
    if (n == 0) continue;
    for (std::size_t idx = 0; idx < m.table_size(sym.arity); ++idx) {
      for (std::size_t i = sym.arity, rest = idx; i-- > 0; rest /= n) ps[i] = static_cast<Position>(rest % n);
      out.push_back(equal(Term::app(sym.name, args_of(ps)), Term::var(xs[m.function_entry(f, idx)])));
    }
  }
  return out;
}

namespace {

// ∃xs (domain(x_i) ∧ diagram ∧ membership ∧ ∀w (domain(w) → ⋁ w = x_i)).
// `domain` may be null (the whole universe); `member(i, v)` says v is in subset i.
FormulaPtr exact_description(const DecoratedStructure& d, const std::function<FormulaPtr(const Var&)>& domain,
                             const std::function<FormulaPtr(std::size_t, const Var&)>& member, VarSet avoid) {
  const FiniteStructure& m = d.base;
  std::vector<Var> xs = fresh_names("x", m.size(), avoid);
  const Var w = fresh_like("y", avoid);
  std::vector<FormulaPtr> closing;
  for (const auto& x : xs) closing.push_back(equal(Term::var(w), Term::var(x)));
  FormulaPtr covered = closing.empty() ? falsum(w) : (closing.size() == 1 ? closing[0] : disjunction(closing));
  FormulaPtr universe_clause = forall(w, domain ? implies(domain(w), covered) : covered);
  if (m.size() == 0) return domain ? negation(exists(w, domain(w))) : universe_clause;

  std::vector<FormulaPtr> body;
  if (domain)
    for (const auto& x : xs) body.push_back(domain(x));
  for (auto& lit : exact_diagram(m, xs)) body.push_back(std::move(lit));
  for (std::size_t i = 0; i < d.subsets.size(); ++i)
    for (Position p = 0; p < m.size(); ++p) {
      FormulaPtr in = member(i, xs[p]);
      bool inside = false;
      for (Element e : d.subsets[i]) inside = inside || e == m.element(p);
      body.push_back(inside ? in : negation(in));
    }
  body.push_back(universe_clause);
  return exists(xs, all_of(std::move(body)));
}

}  // namespace

FormulaPtr univ_gen_rewrite(const FormulaPtr& s) {
  if (!s->is_sentence()) throw ShapeError("univ-gen rewrite expects a sentence");
  std::vector<Var> zs;
  FormulaPtr body = s;
  while (body->kind() == FormulaKind::Forall) {
    zs.push_back(body->bound());
    body = body->child();
  }
  if (!quantifier_free(*body)) throw ShapeError("matrix is not quantifier-free");
  VarSet avoid = all_vars(*s);
  if (zs.empty()) zs.push_back(fresh_like("z0", avoid));
  const Var x = fresh_like("x", avoid);
  StructureBuilder one(share(Vocabulary{}), 1);
  FormulaPtr q = structural(std::move(one).build(), x,
                            conjunction({equal(Term::var(x), Term::var(zs.front())), body}));
  return forall(zs, q);
}

FormulaPtr eliminate_subvocab(const FormulaPtr& q, const VocabularyPtr& tau) {
  if (q->kind() != FormulaKind::QStruct) throw ShapeError("expected a structural quantifier");
  const auto& node = q->qstruct();
  const Vocabulary& sub = node.target.base.vocabulary();
  if (!tau->includes(sub)) throw SignatureError("target vocabulary is not contained in the formula vocabulary");
  if (sub == *tau) return q;
  if (tau->functions().size() != sub.functions().size())
    throw ShapeError("eliminating function or constant symbols changes which solution sets qualify");
  std::vector<FormulaPtr> ds;
  for (auto& e : enumerate_expansions(node.target, tau)) ds.push_back(structural(std::move(e), node.x, node.ys, node.phi, node.psis));
  return disjunction(std::move(ds));
}

FormulaPtr eliminate_subvocab_all(const FormulaPtr& f, const VocabularyPtr& tau) {
  return rewrite_qstruct(f, [&](const FormulaPtr& q) { return eliminate_subvocab(q, tau); });
}

ScottSentence scott_sentence(const DecoratedStructure& d) {
  ScottSentence out;
  Vocabulary v = d.base.vocabulary();
  for (std::size_t i = 0; i < d.subsets.size(); ++i) {
    std::string name = "P" + std::to_string(i);
    while (v.has_symbol(name)) name += "'";
    v.add_relation(name, 1);
    out.predicates.push_back(name);
  }
  out.vocab = share(std::move(v));
  out.sentence = exact_description(
      d, nullptr, [&](std::size_t i, const Var& x) { return atomic(out.predicates[i], {Term::var(x)}); }, {});
  return out;
}

FormulaPtr at_least(std::size_t k, const Var& v, const FormulaPtr& phi) {
  VarSet avoid = all_vars(*phi);
  avoid.insert(v);
  std::vector<Var> vs = fresh_names("c", k, avoid);
  std::vector<FormulaPtr> body;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) body.push_back(not_equal(Term::var(vs[i]), Term::var(vs[j])));
  for (const auto& w : vs) body.push_back(substitute(phi, v, Term::var(w)));
  if (body.empty()) return equal(Term::var(v), Term::var(v));  // k = 0 holds everywhere
  return exists(vs, all_of(std::move(body)));
}

FormulaPtr qstruct_to_counting(const FormulaPtr& f, const Kappa& kappa) {
  return rewrite_qstruct(f, [&](const FormulaPtr& qf) {
    const auto& q = qf->qstruct();
    VarSet avoid = all_vars(*qf);
    for (const auto& v : qf->free_vars()) avoid.insert(v);
    std::vector<FormulaPtr> parts;
    for (std::size_t i = 0; i < q.psis.size(); ++i) {
      const Var w = fresh_like("w", avoid);
      parts.push_back(forall(w, implies(substitute(q.psis[i], q.ys[i], Term::var(w)), substitute(q.phi, q.x, Term::var(w)))));
    }
    if (kappa.is_finite()) parts.push_back(negation(at_least(kappa.threshold(), q.x, q.phi)));
    if (q.target.base.size() == 0) {
      parts.push_back(negation(exists(q.x, q.phi)));
      return all_of(std::move(parts));
    }
    parts.push_back(exact_description(
        q.target, [&](const Var& v) { return substitute(q.phi, q.x, Term::var(v)); },
        [&](std::size_t i, const Var& v) { return substitute(q.psis[i], q.ys[i], Term::var(v)); }, avoid));
    return all_of(std::move(parts));
  });
}

namespace {

Term rename_term(const Term& t, const std::map<Var, Var>& env) {
  if (t.is_var) {
    auto it = env.find(t.name);
    return it == env.end() ? t : Term::var(it->second);
  }
  std::vector<Term> args;
  for (const auto& a : t.args) args.push_back(rename_term(a, env));
  return Term::app(t.name, std::move(args));
}

// Relativizes the quantifiers of a first-order sentence to `domain`, reads
// each placeholder predicate through `pred`, and renames bound variables
// apart from `avoid`.
struct Relativizer {
  std::function<FormulaPtr(const Var&)> domain;
  std::map<std::string, std::function<FormulaPtr(const Var&)>> pred;
  VarSet& avoid;

  FormulaPtr operator()(const FormulaPtr& f, std::map<Var, Var> env) const {
    switch (f->kind()) {
      case FormulaKind::Atomic: {
        std::vector<Term> ts;
        for (const auto& t : f->terms()) ts.push_back(rename_term(t, env));
        auto it = pred.find(f->relation());
        if (it != pred.end()) return it->second(ts.front().name);
        return atomic(f->relation(), std::move(ts));
      }
      case FormulaKind::Equal:
        return equal(rename_term(f->terms()[0], env), rename_term(f->terms()[1], env));
      case FormulaKind::Not:
        return negation((*this)(f->child(), env));
      case FormulaKind::And:
      case FormulaKind::Or: {
        std::vector<FormulaPtr> cs;
        for (const auto& c : f->children()) cs.push_back((*this)(c, env));
        return f->kind() == FormulaKind::And ? conjunction(std::move(cs)) : disjunction(std::move(cs));
      }
      case FormulaKind::Exists:
      case FormulaKind::Forall: {
        const Var v = fresh_like(f->bound(), avoid);
        env[f->bound()] = v;
        FormulaPtr body = (*this)(f->child(), env);
        return f->kind() == FormulaKind::Exists ? exists(v, conjunction({domain(v), body}))
                                                : forall(v, implies(domain(v), body));
      }
      case FormulaKind::QStruct:
        break;
    }
    throw ShapeError("relativization expects a first-order sentence");
  }
};

}  // namespace

FormulaPtr scott_rewrite(const FormulaPtr& f) {
  return rewrite_qstruct(f, [&](const FormulaPtr& qf) {
    const auto& q = qf->qstruct();
    VarSet avoid = all_vars(*qf);
    for (const auto& v : qf->free_vars()) avoid.insert(v);
    std::vector<FormulaPtr> parts;
    for (std::size_t i = 0; i < q.psis.size(); ++i) {
      const Var w = fresh_like("w", avoid);
      parts.push_back(forall(w, implies(substitute(q.psis[i], q.ys[i], Term::var(w)), substitute(q.phi, q.x, Term::var(w)))));
    }
    const ScottSentence rho = scott_sentence(q.target);
    Relativizer rel{[&](const Var& v) { return substitute(q.phi, q.x, Term::var(v)); }, {}, avoid};
    for (std::size_t i = 0; i < rho.predicates.size(); ++i)
      rel.pred[rho.predicates[i]] = [&, i](const Var& v) { return substitute(q.psis[i], q.ys[i], Term::var(v)); };
    parts.push_back(rel(rho.sentence, {}));
    return all_of(std::move(parts));
  });
}

}  // namespace qstruct
