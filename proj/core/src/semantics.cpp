#include "qstruct/semantics.hpp"

#include <algorithm>
#include <optional>
#include <unordered_map>
#include <unordered_set>

#include "qstruct/enumerate.hpp"
#include "qstruct/errors.hpp"
#include "qstruct/isomorphism.hpp"
#include "qstruct/syntax.hpp"

namespace qstruct {

namespace {

enum class Op { Atomic, Equal, Not, And, Or, Exists, Forall, QStruct, OrFamily };

struct TermIR {
  int slot = -1;  // variable slot, or -1 for an application
  std::size_t fn = 0;
  std::vector<TermIR> args;
};

struct Node {
  Op op = Op::Atomic;
  std::size_t rel = 0;
  std::vector<TermIR> terms;
  std::vector<int> kids;
  int slot = -1;
  int family = -1;
  std::size_t target_size = 0;
  std::string target_key;
  // OrFamily: the admissible (size, key) pairs of the disjuncts.
  std::unordered_set<std::size_t> sizes;
  std::unordered_set<std::string> keys;
};

struct FamilyResult {
  std::vector<Position> phi;
  std::vector<std::vector<Position>> psis;
  bool subset_ok = true;
  std::optional<bool> closed;  // filled on demand together with key
  std::string key;
};

struct Family {
  int x = -1;
  std::vector<int> ys;
  int phi = -1;
  std::vector<int> psis;
  std::vector<int> params;
  VocabularyPtr tau0;
  std::map<std::vector<Position>, FamilyResult> memo;
};

constexpr std::size_t kInlineArity = 16;

}  // namespace

struct Evaluator::Impl {
  FiniteStructure n;
  Kappa kappa;
  std::vector<Node> nodes;
  std::vector<Family> families;
  std::unordered_map<const Formula*, int> compiled;
  std::vector<FormulaPtr> keep_alive;
  std::unordered_map<std::string, int> family_index;
  std::unordered_map<Var, int> slot_index;
  std::vector<Position> slots;
  std::unordered_map<std::string, FiniteStructure> reducts;

  int slot(const Var& v) {
    auto [it, fresh] = slot_index.emplace(v, static_cast<int>(slots.size()));
    if (fresh) slots.push_back(0);
    return it->second;
  }

  TermIR compile_term(const Term& t) {
    TermIR out;
    if (t.is_var) {
      out.slot = slot(t.name);
      return out;
    }
    auto fn = n.vocabulary().find_function(t.name);
    if (!fn) throw SignatureError("structure does not interpret function '" + t.name + "'");
    if (n.vocabulary().functions()[*fn].arity != t.args.size())
      throw SignatureError("function '" + t.name + "' applied with wrong arity");
    out.fn = *fn;
    for (const auto& a : t.args) out.args.push_back(compile_term(a));
    return out;
  }

  int push(Node node) {
    nodes.push_back(std::move(node));
    return static_cast<int>(nodes.size()) - 1;
  }

  int compile(const FormulaPtr& f) {
    if (auto it = compiled.find(f.get()); it != compiled.end()) return it->second;
    Node node;
    switch (f->kind()) {
      case FormulaKind::Atomic: {
        auto rel = n.vocabulary().find_relation(f->relation());
        if (!rel) throw SignatureError("structure does not interpret relation '" + f->relation() + "'");
        if (n.vocabulary().relations()[*rel].arity != f->terms().size())
          throw SignatureError("relation '" + f->relation() + "' applied with wrong arity");
        node.op = Op::Atomic;
        node.rel = *rel;
        for (const auto& t : f->terms()) node.terms.push_back(compile_term(t));
        break;
      }
      case FormulaKind::Equal:
        node.op = Op::Equal;
        for (const auto& t : f->terms()) node.terms.push_back(compile_term(t));
        break;
      case FormulaKind::Not:
      case FormulaKind::And:
      case FormulaKind::Or:
        node.op = f->kind() == FormulaKind::Not ? Op::Not : f->kind() == FormulaKind::And ? Op::And : Op::Or;
        for (const auto& c : f->children()) node.kids.push_back(compile(c));
        if (node.op == Op::Or) fold_family(node);
        break;
      case FormulaKind::Exists:
      case FormulaKind::Forall:
        node.op = f->kind() == FormulaKind::Exists ? Op::Exists : Op::Forall;
        node.slot = slot(f->bound());
        node.kids.push_back(compile(f->child()));
        break;
      case FormulaKind::QStruct: {
        const auto& q = f->qstruct();
        if (!kappa.below(q.target.base.size()))
          throw KappaError("structural quantifier target of size " + std::to_string(q.target.base.size()) +
                           " is not below kappa = " + kappa.to_string());
        node.op = Op::QStruct;
        node.family = family_of(f);
        node.target_size = q.target.base.size();
        node.target_key = q.target_key;
        break;
      }
    }
    int id = push(std::move(node));
    compiled.emplace(f.get(), id);
    keep_alive.push_back(f);
    return id;
  }

  int family_of(const FormulaPtr& f) {
    const auto& q = f->qstruct();
    if (auto it = family_index.find(q.family_key); it != family_index.end()) return it->second;
    if (!n.vocabulary().includes(q.target.base.vocabulary()))
      throw SignatureError("structural quantifier target vocabulary is not interpreted by the structure");
    Family fam;
    fam.x = slot(q.x);
    for (const auto& y : q.ys) fam.ys.push_back(slot(y));
    fam.phi = compile(q.phi);
    for (const auto& p : q.psis) fam.psis.push_back(compile(p));
    for (const auto& v : f->free_vars()) fam.params.push_back(slot(v));
    fam.tau0 = q.target.base.vocabulary_ptr();
    families.push_back(std::move(fam));
    int id = static_cast<int>(families.size()) - 1;
    family_index.emplace(q.family_key, id);
    return id;
  }

  // A disjunction of structural quantifiers that differ only in their
  // targets becomes one lookup.
  void fold_family(Node& node) {
    if (node.kids.size() < 2) return;
    const int fam = nodes[node.kids[0]].family;
    for (int k : node.kids)
      if (nodes[k].op != Op::QStruct || nodes[k].family != fam) return;
    Node folded;
    folded.op = Op::OrFamily;
    folded.family = fam;
    for (int k : node.kids) {
      folded.sizes.insert(nodes[k].target_size);
      folded.keys.insert(nodes[k].target_key);
    }
    node = std::move(folded);
  }

  Position term(const TermIR& t) {
    if (t.slot >= 0) return slots[t.slot];
    Position buf[kInlineArity];
    if (t.args.size() <= kInlineArity) {
      for (std::size_t i = 0; i < t.args.size(); ++i) buf[i] = term(t.args[i]);
      return n.apply(t.fn, std::span<const Position>(buf, t.args.size()));
    }
    std::vector<Position> args;
    for (const auto& a : t.args) args.push_back(term(a));
    return n.apply(t.fn, args);
  }

  const FiniteStructure& reduct_for(const VocabularyPtr& tau0) {
    if (same_vocabulary(tau0, n.vocabulary_ptr())) return n;
    std::string id = print_vocabulary(*tau0);
    auto it = reducts.find(id);
    if (it == reducts.end()) it = reducts.emplace(id, reduct(n, tau0)).first;
    return it->second;
  }

  FamilyResult& family_result(int id) {
    Family& fam = families[id];
    std::vector<Position> params;
    params.reserve(fam.params.size());
    for (int s : fam.params) params.push_back(slots[s]);
    if (auto it = fam.memo.find(params); it != fam.memo.end()) return it->second;
    FamilyResult r;
    const std::size_t size = n.size();
    const Position saved_x = slots[fam.x];
    for (Position p = 0; p < size; ++p) {
      slots[fam.x] = p;
      if (eval(fam.phi)) r.phi.push_back(p);
    }
    slots[fam.x] = saved_x;
    for (std::size_t i = 0; i < fam.ys.size(); ++i) {
      const Position saved = slots[fam.ys[i]];
      std::vector<Position> set;
      for (Position p = 0; p < size; ++p) {
        slots[fam.ys[i]] = p;
        if (eval(fam.psis[i])) set.push_back(p);
      }
      slots[fam.ys[i]] = saved;
      if (!std::includes(r.phi.begin(), r.phi.end(), set.begin(), set.end())) r.subset_ok = false;
      r.psis.push_back(std::move(set));
    }
    return fam.memo.emplace(std::move(params), std::move(r)).first->second;
  }

  void fill_key(const Family& fam, FamilyResult& r) {
    if (r.closed) return;
    const FiniteStructure& base = reduct_for(fam.tau0);
    auto ids = [&](const std::vector<Position>& ps) {
      ElementSet out;
      for (Position p : ps) out.push_back(base.element(p));
      return out;
    };
    auto sub = induced_substructure(base, ids(r.phi));
    r.closed = sub.has_value();
    if (!sub) return;
    std::vector<ElementSet> subsets;
    for (const auto& s : r.psis) subsets.push_back(ids(s));
    r.key = canonical_key(DecoratedStructure(std::move(*sub), std::move(subsets)));
  }

  bool eval(int id) {
    const Node& node = nodes[id];
    switch (node.op) {
      case Op::Atomic: {
        Position buf[kInlineArity];
        const std::size_t a = node.terms.size();
        if (a <= kInlineArity) {
          for (std::size_t i = 0; i < a; ++i) buf[i] = term(node.terms[i]);
          return n.holds(node.rel, std::span<const Position>(buf, a));
        }
        std::vector<Position> args;
        for (const auto& t : node.terms) args.push_back(term(t));
        return n.holds(node.rel, args);
      }
      case Op::Equal:
        return term(node.terms[0]) == term(node.terms[1]);
      case Op::Not:
        return !eval(node.kids[0]);
      case Op::And:
        for (int k : node.kids)
          if (!eval(k)) return false;
        return true;
      case Op::Or:
        for (int k : node.kids)
          if (eval(k)) return true;
        return false;
      case Op::Exists:
      case Op::Forall: {
        const bool want = node.op == Op::Exists;
        const int s = node.slot;
        const int body = node.kids[0];
        const Position saved = slots[s];
        bool result = !want;
        for (Position p = 0; p < n.size(); ++p) {
          slots[s] = p;
          if (eval(body) == want) {
            result = want;
            break;
          }
        }
        slots[s] = saved;
        return result;
      }
      case Op::QStruct:
      case Op::OrFamily: {
        FamilyResult& r = family_result(node.family);
        if (!r.subset_ok) return false;
        const bool size_ok =
            node.op == Op::QStruct ? r.phi.size() == node.target_size : node.sizes.count(r.phi.size()) > 0;
        if (!size_ok) return false;
        fill_key(families[node.family], r);
        if (!*r.closed) return false;
        return node.op == Op::QStruct ? r.key == node.target_key : node.keys.count(r.key) > 0;
      }
    }
    return false;
  }

  void bind(const VarSet& needed, const Assignment& a) {
    for (const auto& v : needed) {
      auto it = a.find(v);
      if (it == a.end()) throw AssignmentError("free variable '" + v + "' is unassigned");
      auto p = n.position(it->second);
      if (!p) throw DomainError("variable '" + v + "' assigned element " + std::to_string(it->second) + " outside the universe");
      slots[slot(v)] = *p;
    }
  }
};

Evaluator::Evaluator(FiniteStructure n, Kappa kappa) : impl_(std::make_unique<Impl>()) {
  impl_->n = std::move(n);
  impl_->kappa = kappa;
}

Evaluator::~Evaluator() = default;
Evaluator::Evaluator(Evaluator&&) noexcept = default;
Evaluator& Evaluator::operator=(Evaluator&&) noexcept = default;

const FiniteStructure& Evaluator::structure() const { return impl_->n; }
const Kappa& Evaluator::kappa() const { return impl_->kappa; }

bool Evaluator::eval(const FormulaPtr& f, const Assignment& a) {
  const int id = impl_->compile(f);
  impl_->bind(f->free_vars(), a);
  return impl_->eval(id);
}

ElementSet Evaluator::solution_set(const FormulaPtr& f, const Var& x, const Assignment& a) {
  const int id = impl_->compile(f);
  VarSet needed = f->free_vars();
  needed.erase(x);
  impl_->bind(needed, a);
  const int s = impl_->slot(x);
  ElementSet out;
  for (Position p = 0; p < impl_->n.size(); ++p) {
    impl_->slots[s] = p;
    if (impl_->eval(id)) out.push_back(impl_->n.element(p));
  }
  return out;
}

Evaluator::QStructSets Evaluator::qstruct_sets(const FormulaPtr& q, const Assignment& a) {
  if (q->kind() != FormulaKind::QStruct) throw ShapeError("expected a structural quantifier");
  const int id = impl_->compile(q);
  impl_->bind(q->free_vars(), a);
  const FamilyResult& r = impl_->family_result(impl_->nodes[id].family);
  auto ids = [&](const std::vector<Position>& ps) {
    ElementSet out;
    for (Position p : ps) out.push_back(impl_->n.element(p));
    return out;
  };
  QStructSets out;
  out.phi = ids(r.phi);
  for (const auto& s : r.psis) out.psis.push_back(ids(s));
  return out;
}

bool Evaluator::models(const Theory& t) {
  for (const auto& s : t.sentences)
    if (!eval(s)) return false;
  return true;
}

bool eval(const FiniteStructure& n, const FormulaPtr& f, const Assignment& a, Kappa kappa) {
  return Evaluator(n, kappa).eval(f, a);
}

ElementSet solution_set(const FiniteStructure& n, const FormulaPtr& f, const Var& x, const Assignment& a, Kappa kappa) {
  return Evaluator(n, kappa).solution_set(f, x, a);
}

bool models(const FiniteStructure& n, const Theory& t, Kappa kappa) { return Evaluator(n, kappa).models(t); }

bool for_each_assignment(const std::vector<Var>& vars, const ElementSet& universe,
                         const std::function<bool(const Assignment&)>& visit) {
  Assignment a;
  if (vars.empty()) return visit(a);
  if (universe.empty()) return true;
  std::vector<std::size_t> digits(vars.size(), 0);
  for (const auto& v : vars) a[v] = universe[0];
  while (true) {
    if (!visit(a)) return false;
    std::size_t i = vars.size();
    while (i-- > 0) {
      if (++digits[i] < universe.size()) {
        a[vars[i]] = universe[digits[i]];
        break;
      }
      digits[i] = 0;
      a[vars[i]] = universe[0];
      if (i == 0) return true;
    }
  }
}

namespace {

std::vector<Var> checked_vars(const FormulaPtr& f, std::size_t max_free_vars) {
  if (f->free_vars().size() > max_free_vars)
    throw CapacityError("formula " + print_formula(*f) + " has too many free variables", f->free_vars().size());
  return {f->free_vars().begin(), f->free_vars().end()};
}

}  // namespace

ElemVerdict elem_F(Evaluator& e1, Evaluator& e2, const Fragment& f, std::size_t max_free_vars) {
  ElemVerdict out;
  if (!is_substructure(e1.structure(), e2.structure())) {
    out.status = ElemStatus::NotSubstructure;
    out.detail = "first structure is not a substructure of the second";
    return out;
  }
  const ElementSet& universe = e1.structure().universe();
  for (const auto& m : f.members()) {
    if (quantifier_free(*m)) continue;
    auto vars = checked_vars(m, max_free_vars);
    for_each_assignment(vars, universe, [&](const Assignment& a) {
      if (e1.eval(m, a) == e2.eval(m, a)) return true;
      out.status = ElemStatus::Fails;
      out.witness = m;
      out.assignment = a;
      out.detail = "truth value differs";
      return false;
    });
    if (!out.holds()) return out;
  }
  return out;
}

ElemVerdict elem_F_star(Evaluator& e1, Evaluator& e2, const Fragment& f, std::size_t max_free_vars) {
  ElemVerdict out = elem_F(e1, e2, f, max_free_vars);
  if (!out.holds()) return out;
  const ElementSet& universe = e1.structure().universe();
  for (const auto& m : f.members()) {
    if (m->kind() != FormulaKind::QStruct) continue;
    auto vars = checked_vars(m, max_free_vars);
    for_each_assignment(vars, universe, [&](const Assignment& a) {
      auto s1 = e1.qstruct_sets(m, a);
      if (!e1.kappa().below(s1.phi.size())) return true;
      auto s2 = e2.qstruct_sets(m, a);
      if (s1.phi == s2.phi && s1.psis == s2.psis) return true;
      out.status = ElemStatus::Fails;
      out.witness = m;
      out.assignment = a;
      out.detail = "solution sets differ";
      return false;
    });
    if (!out.holds()) return out;
  }
  return out;
}

ElemVerdict elem_F(const FiniteStructure& n1, const FiniteStructure& n2, const Fragment& f, Kappa kappa,
                   std::size_t max_free_vars) {
  Evaluator e1(n1, kappa);
  Evaluator e2(n2, kappa);
  return elem_F(e1, e2, f, max_free_vars);
}

ElemVerdict elem_F_star(const FiniteStructure& n1, const FiniteStructure& n2, const Fragment& f, Kappa kappa,
                        std::size_t max_free_vars) {
  Evaluator e1(n1, kappa);
  Evaluator e2(n2, kappa);
  return elem_F_star(e1, e2, f, max_free_vars);
}

std::vector<FiniteStructure> enumerate_models(const Theory& t, const VocabularyPtr& vocab, std::size_t max_size,
                                              Kappa kappa, bool up_to_iso, std::size_t max_structures) {
  std::vector<FiniteStructure> out;
  for (auto& s : enumerate_structures(vocab ? vocab : t.vocab, max_size, up_to_iso, max_structures)) {
    if (Evaluator(s, kappa).models(t)) out.push_back(std::move(s));
  }
  return out;
}

}  // namespace qstruct
