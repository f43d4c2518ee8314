#include "qstruct/axiomatizer.hpp"

#include <set>

#include "qstruct/enumerate.hpp"
#include "qstruct/errors.hpp"
#include "qstruct/isomorphism.hpp"
#include "qstruct/semantics.hpp"
#include "qstruct/syntax.hpp"
#include "qstruct/translate.hpp"
#include "tuple_index.hpp"

namespace qstruct {

namespace {

std::string ids_text(const ElementSet& s) {
  std::string out = "(";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? " " : "") + std::to_string(s[i]);
  return out + ")";
}

// `s` re-interpreted over a vocabulary that includes its own; new symbols start empty.
StructureBuilder copy_into(const FiniteStructure& s, const VocabularyPtr& v) {
  StructureBuilder b(v, s.universe());
  const Vocabulary& sv = s.vocabulary();
  for (std::size_t r = 0; r < sv.relations().size(); ++r) {
    const std::size_t to = *v->find_relation(sv.relations()[r].name);
    for (std::size_t i = 0; i < s.table_size(sv.relations()[r].arity); ++i)
      if (s.relation_bit(r, i)) b.set_bit(to, i);
  }
  for (std::size_t f = 0; f < sv.functions().size(); ++f) {
    const std::size_t to = *v->find_function(sv.functions()[f].name);
    for (std::size_t i = 0; i < s.table_size(sv.functions()[f].arity); ++i) b.set_entry(to, i, s.function_entry(f, i));
  }
  return b;
}

std::size_t power(std::size_t base, std::size_t exp) {
  std::size_t out = 1;
  while (exp--) out *= base;
  return out;
}

// Visits every tuple of positions of length `len` over an n-element universe.
template <typename F>
void for_each_tuple(std::size_t n, std::size_t len, F&& visit) {
  if (n == 0 && len > 0) return;
  std::vector<Position> digits(len, 0);
  do visit(digits);
  while (detail::advance(digits, n));
}

std::vector<Var> names(const std::string& prefix, std::size_t count, const Vocabulary& v) {
  std::vector<Var> out;
  for (std::size_t i = 0; i < count; ++i) {
    Var name = prefix + std::to_string(i);
    while (v.has_symbol(name)) name += "_";
    out.push_back(name);
  }
  return out;
}

Var name(const std::string& preferred, const Vocabulary& v) {
  Var out = preferred;
  while (v.has_symbol(out)) out += "_";
  return out;
}

std::vector<Term> vars(const std::vector<Var>& vs) {
  std::vector<Term> out;
  for (const auto& v : vs) out.push_back(Term::var(v));
  return out;
}

std::vector<Element> reversed_ids(const FiniteStructure& n) {
  std::vector<Element> image(n.size());
  for (std::size_t p = 0; p < n.size(); ++p) image[p] = static_cast<Element>(20 + n.size() - 1 - p);
  return image;
}

}  // namespace

std::string closure_relation(std::size_t n) { return "E" + std::to_string(n); }

ExpandedClass::ExpandedClass(std::shared_ptr<const ModelClass> source, std::size_t arity_cap, std::size_t max_subsets)
    : source_(std::move(source)), arity_cap_(arity_cap), max_subsets_(max_subsets) {
  Vocabulary v = source_->vocabulary() ? *source_->vocabulary() : Vocabulary{};
  for (std::size_t n = 0; n < arity_cap_; ++n) {
    if (v.has_symbol(closure_relation(n)))
      throw SignatureError("the class vocabulary already uses the closure relation name " + closure_relation(n));
    v.add_relation(closure_relation(n), n + 1);
  }
  vocab_ = share(std::move(v));
}

FiniteStructure ExpandedClass::expand(const FiniteStructure& n) const {
  ClosureOracle oracle(*source_, n, max_subsets_);
  StructureBuilder b = copy_into(n, vocab_);
  const std::size_t size = n.size();
  for (std::size_t len = 0; len < arity_cap_; ++len) {
    const std::size_t rel = *vocab_->find_relation(closure_relation(len));
    const std::size_t stride = power(size, len);
    for_each_tuple(size, len, [&](const std::vector<Position>& tuple) {
      SubsetMask a = 0;
      for (Position p : tuple) a |= SubsetMask{1} << p;
      const SubsetMask c = oracle.closure_mask(a);
      const std::size_t base = detail::encode(tuple, size);
      for (Position p = 0; p < size; ++p)
        if (c & (SubsetMask{1} << p)) b.set_bit(rel, p * stride + base);
    });
  }
  return std::move(b).build();
}

FiniteStructure ExpandedClass::restrict(const FiniteStructure& expanded) const {
  return reduct(expanded, source_->vocabulary());
}

std::vector<FiniteStructure> ExpandedClass::members(std::size_t max_size) const {
  std::vector<FiniteStructure> out;
  for (const auto& m : source_->members(max_size)) out.push_back(expand(m));
  return out;
}

bool ExpandedClass::contains(const FiniteStructure& n) const {
  if (!same_vocabulary(n.vocabulary_ptr(), vocab_)) return false;
  FiniteStructure base = restrict(n);
  return source_->contains(base) && expand(base) == n;
}

bool ExpandedClass::strong_leq(const FiniteStructure& m, const FiniteStructure& n) const {
  return contains(m) && contains(n) && is_substructure(m, n) && source_->strong_leq(restrict(m), restrict(n));
}

std::vector<bool> ExpandedClass::strong_subsets(const FiniteStructure& n, std::size_t max_subsets) const {
  if (!contains(n)) return std::vector<bool>(std::size_t{1} << n.size(), false);
  const FiniteStructure base = restrict(n);
  std::vector<bool> out = source_->strong_subsets(base, max_subsets);
  for (SubsetMask mask = 0; mask < out.size(); ++mask) {
    if (!out[mask]) continue;
    const ElementSet set = mask_to_set(n, mask);
    auto sub = induced_substructure(n, set);
    out[mask] = sub && *sub == expand(*induced_substructure(base, set));
  }
  return out;
}

std::string ExpandedClass::describe() const {
  return "closure expansion (E0 .. E" + std::to_string(arity_cap_ ? arity_cap_ - 1 : 0) + ") of " + source_->describe();
}

ExpansionMap functorial_expansion(std::shared_ptr<const ModelClass> k, std::size_t arity_cap, const Caps& caps) {
  Report inter = verify_intersections(*k, caps);
  if (!inter.passed()) {
    std::string what = "class has no intersections within caps";
    for (const auto& [label, text] : inter.checks.front().witnesses.front()) what += "; " + label + " = " + text;
    throw IntersectionFailure(what);
  }
  auto ex = std::make_shared<const ExpandedClass>(k, arity_cap, caps.max_subsets);
  ExpansionMap out{ex, {}, {}};
  Report& r = out.report;
  r.command = "expand";
  r.caps = {{"max-size", std::to_string(caps.max_size)}, {"arity-cap", std::to_string(arity_cap)}};
  r.checks.reserve(4);
  auto& ident = r.add("reduct-identity");
  auto& comm = r.add("order-commutes");
  auto& iso = r.add("isomorphism-invariance");
  for (const auto& n : k->members(caps.max_size)) {
    FiniteStructure np = ex->expand(n);
    ident.count("members");
    if (!(ex->restrict(np) == n)) ident.fail({{"N", print_structure(n)}});
    const auto strong = k->strong_subsets(n, caps.max_subsets);
    for (SubsetMask mask = 0; mask < strong.size(); ++mask) {
      if (!strong[mask]) continue;
      const ElementSet set = mask_to_set(n, mask);
      comm.count("strong pairs");
      auto sub_plus = induced_substructure(np, set);
      if (!sub_plus || !(*sub_plus == ex->expand(*induced_substructure(n, set))))
        comm.fail({{"N", print_structure(n)}, {"M", ids_text(set)}});
    }
    iso.count("members");
    const auto image = reversed_ids(n);
    if (!(ex->expand(relabel(n, image)) == relabel(np, image))) iso.fail({{"N", print_structure(n)}});
    out.members.emplace_back(n, std::move(np));
  }
  return out;
}

std::size_t PairCatalog::total() const {
  std::size_t n = 0;
  for (const auto& [pair, list] : entries) n += list.size();
  return n;
}

Emission emit_aq_theory(const ExpansionMap& x, std::size_t pair_cap, const Caps& caps, const std::string& spec_hash) {
  const ExpandedClass& ex = *x.expanded;
  if (ex.arity_cap() <= pair_cap)
    throw ArityError("arity cap " + std::to_string(ex.arity_cap()) + " must exceed pair cap " + std::to_string(pair_cap));
  Emission e;
  e.arity_cap = ex.arity_cap();
  e.pair_cap = pair_cap;
  Theory& t = e.theory;
  t.name = "presentation";
  t.vocab = ex.vocabulary();
  const Vocabulary& v = *t.vocab;
  const Var x_var = name("x", v);
  const Var y_var = name("y", v);

  if (x.members.empty()) {
    e.empty_class = true;
    const auto empty = share(Vocabulary{});
    t.add(structural(StructureBuilder(empty, 0).peek(), x_var, equal(Term::var(x_var), Term::var(x_var))));
    t.add(structural(StructureBuilder(empty, 1).peek(), x_var, not_equal(Term::var(x_var), Term::var(x_var))));
  } else {
    for (std::size_t n = 1; n < e.arity_cap; ++n) {
      const auto zs = names("z", n, v);
      for (std::size_t k = 0; k < n; ++k) {
        std::vector<Term> args{Term::var(zs[k])};
        for (const auto& z : zs) args.push_back(Term::var(z));
        t.add(univ_gen_rewrite(forall(zs, atomic(closure_relation(n), std::move(args)))));
      }
    }
    for (std::size_t len = 0; len <= pair_cap; ++len) {
      std::map<std::size_t, std::map<std::pair<std::size_t, std::string>, DecoratedStructure>> found;
      for (const auto& rep : enumerate_dk(ex, len, caps)) {
        ClosureOracle oracle(ex, rep.structure, caps.max_subsets);
        for (std::size_t m = 0; m <= len; ++m) {
          const ElementSet a = make_set({rep.tuple.begin(), rep.tuple.begin() + m});
          DecoratedStructure d(rep.structure, {oracle.closure(a).structure.universe()});
          CanonicalForm cf = canonical_form(d);
          found[m].try_emplace({rep.structure.size(), cf.key}, std::move(cf.normalized));
        }
      }
      for (std::size_t m = 0; m <= len; ++m) {
        const std::pair<std::size_t, std::size_t> pair{m, len - m};
        auto& list = e.catalog.entries[pair];
        for (auto& [slot, d] : found[m]) list.push_back(std::move(d));
        if (list.empty())
          throw EmissionError("no catalog entry for length pair (" + std::to_string(m) + ", " +
                              std::to_string(len - m) + ")");
        const auto zs = names("z", m, v);
        const auto us = names("u", len - m, v);
        std::vector<Var> all = zs;
        all.insert(all.end(), us.begin(), us.end());
        std::vector<Term> phi_args{Term::var(x_var)}, psi_args{Term::var(y_var)};
        for (const auto& a : vars(all)) phi_args.push_back(a);
        for (const auto& a : vars(zs)) psi_args.push_back(a);
        const FormulaPtr phi = atomic(closure_relation(len), std::move(phi_args));
        const FormulaPtr psi = atomic(closure_relation(m), std::move(psi_args));
        std::vector<FormulaPtr> ds;
        for (const auto& d : list) ds.push_back(structural(d, x_var, {y_var}, phi, {psi}));
        e.pair_sentence[pair] = t.sentences.size();
        t.add(forall(all, disjunction(std::move(ds))));
      }
    }
  }
  t.provenance = {{"source", ex.source().describe()},
                  {"spec-hash", spec_hash.empty() ? "none" : spec_hash},
                  {"max-size", std::to_string(caps.max_size)},
                  {"arity-cap", std::to_string(e.arity_cap)},
                  {"pair-cap", std::to_string(pair_cap)},
                  {"catalog-total", std::to_string(e.catalog.total())}};
  for (const auto& [pair, list] : e.catalog.entries)
    t.provenance.emplace_back("catalog-" + std::to_string(pair.first) + "-" + std::to_string(pair.second),
                              std::to_string(list.size()));
  return e;
}

namespace {

FiniteStructure flipped(const FiniteStructure& s, std::size_t rel, std::size_t index) {
  StructureBuilder b = copy_into(s, s.vocabulary_ptr());
  b.set_bit(rel, index, !s.relation_bit(rel, index));
  return std::move(b).build();
}

}  // namespace

Report verify_presentation(const ExpansionMap& x, const Emission& e, const Caps& caps) {
  Report r;
  r.command = "roundtrip";
  r.caps = {{"max-size", std::to_string(caps.max_size)},
            {"arity-cap", std::to_string(e.arity_cap)},
            {"pair-cap", std::to_string(e.pair_cap)}};
  r.checks.reserve(4);
  auto& models = r.add("expanded-members-are-models");
  auto& preserved = r.add("strong-order-preserved");
  auto& complete = r.add("models-are-expanded-members");
  auto& coincide = r.add("order-coincides");
  const ExpandedClass& ex = *x.expanded;
  const Theory& t = e.theory;
  const Fragment f = subformula_closure(t);
  const Vocabulary* ctx = t.vocab.get();

  for (const auto& [n, np] : x.members) {
    if (n.size() > caps.max_size) continue;
    Evaluator en(np);
    models.count("members");
    if (!en.models(t)) models.fail({{"N+", print_structure(np, ctx)}});
    const auto strong = ex.strong_subsets(np, caps.max_subsets);
    for (SubsetMask mask = 0; mask < strong.size(); ++mask) {
      auto sub = induced_substructure(np, mask_to_set(np, mask));
      if (!sub) continue;
      Evaluator em(*sub);
      const bool is_model = em.models(t);
      if (!is_model && !strong[mask]) continue;
      const ElemVerdict verdict = elem_F_star(em, en, f, caps.max_free_vars);
      const Witness w{{"N+", print_structure(np, ctx)}, {"M", ids_text(sub->universe())}};
      if (strong[mask]) {
        preserved.count("strong pairs");
        if (!verdict.holds()) preserved.fail(w);
      }
      if (is_model) {
        coincide.count("model pairs");
        if (verdict.holds() != static_cast<bool>(strong[mask])) coincide.fail(w);
      }
    }
  }

  // Models of size n <= pair cap are pinned down by the pair (n, 0) sentence
  // applied to an enumerating tuple: the E_n-solution set is the whole model
  // and its type is a catalog entry. So the catalog must consist of expanded
  // members, and the pair cap must reach the size cap.
  if (e.pair_cap < caps.max_size) {
    complete.fail({{"pair-cap", std::to_string(e.pair_cap)}, {"max-size", std::to_string(caps.max_size)}});
    complete.note = "pair cap below the size cap leaves larger models unchecked";
  }
  for (const auto& [pair, list] : e.catalog.entries)
    for (const auto& d : list) {
      complete.count("catalog entries");
      auto m1 = induced_substructure(d.base, d.subsets.front());
      if (!ex.contains(d.base) || !m1 || !ex.strong_leq(*m1, d.base))
        complete.fail({{"pair", "(" + std::to_string(pair.first) + " " + std::to_string(pair.second) + ")"},
                       {"M2", print_structure(d.base, ctx)},
                       {"M1", ids_text(d.subsets.front())}});
    }
  // Every single-tuple change to an expanded member is either no model or
  // again an expanded member.
  for (const auto& [n, np] : x.members) {
    if (n.size() > caps.max_size) continue;
    for (std::size_t rel = 0; rel < ctx->relations().size(); ++rel)
      for (std::size_t i = 0; i < np.table_size(ctx->relations()[rel].arity); ++i) {
        complete.count("perturbations");
        FiniteStructure g = flipped(np, rel, i);
        if (Evaluator(g).models(t) && !ex.contains(g)) complete.fail({{"model", print_structure(g, ctx)}});
      }
  }
  return r;
}

Theory tarski_universal_theory(const ModelClass& k, const Caps& caps) {
  const VocabularyPtr& v = k.vocabulary();
  for (const auto& n : k.members(caps.max_size)) {
    if (n.size() >= 63) throw CapacityError("structure too large for a subset sweep", n.size());
    const auto strong = k.strong_subsets(n, caps.max_subsets);
    for (SubsetMask mask = 0; mask < (SubsetMask{1} << n.size()); ++mask) {
      auto sub = induced_substructure(n, mask_to_set(n, mask));
      if (sub && !k.contains(*sub))
        throw UniversalityError("not closed under substructure: " + print_structure(*sub) + " inside " +
                                print_structure(n));
      if (sub && !strong[mask])
        throw UniversalityError("order is not the substructure relation: " + print_structure(*sub) + " inside " +
                                print_structure(n));
    }
  }
  Theory t;
  t.name = "universal";
  t.vocab = v;
  for (const auto& s : enumerate_structures(v, caps.max_size, true, caps.max_structures)) {
    if (k.contains(s)) continue;
    bool minimal = true;
    for (SubsetMask mask = 0; minimal && mask + 1 < (SubsetMask{1} << s.size()); ++mask) {
      auto sub = induced_substructure(s, mask_to_set(s, mask));
      minimal = !sub || k.contains(*sub);
    }
    if (!minimal) continue;
    if (s.size() == 0) throw UniversalityError("the empty structure is not a member");
    const auto zs = names("z", s.size(), *v);
    auto lits = exact_diagram(s, zs);
    t.add(forall(zs, negation(lits.size() == 1 ? lits.front() : conjunction(std::move(lits)))));
  }
  t.provenance = {{"source", k.describe()},
                  {"max-size", std::to_string(caps.max_size)},
                  {"forbidden", std::to_string(t.sentences.size())}};
  return t;
}

namespace {

// E_n(a, b0 ...) becomes a = b0 ∨ ...; the empty disjunction is a ≠ a.
FormulaPtr define_closure_relations(const FormulaPtr& f) {
  switch (f->kind()) {
    case FormulaKind::Atomic: {
      const std::string& rel = f->relation();
      if (rel.size() < 2 || rel[0] != 'E' || rel.find_first_not_of("0123456789", 1) != std::string::npos) return f;
      const auto& ts = f->terms();
      if (ts.size() == 1) return not_equal(ts[0], ts[0]);
      std::vector<FormulaPtr> ds;
      for (std::size_t i = 1; i < ts.size(); ++i) ds.push_back(equal(ts[0], ts[i]));
      return ds.size() == 1 ? ds.front() : disjunction(std::move(ds));
    }
    case FormulaKind::Equal:
      return f;
    case FormulaKind::Not:
      return negation(define_closure_relations(f->child()));
    case FormulaKind::And:
    case FormulaKind::Or: {
      std::vector<FormulaPtr> cs;
      for (const auto& c : f->children()) cs.push_back(define_closure_relations(c));
      return f->kind() == FormulaKind::And ? conjunction(std::move(cs)) : disjunction(std::move(cs));
    }
    case FormulaKind::Exists:
      return exists(f->bound(), define_closure_relations(f->child()));
    case FormulaKind::Forall:
      return forall(f->bound(), define_closure_relations(f->child()));
    case FormulaKind::QStruct: {
      const auto& q = f->qstruct();
      std::vector<FormulaPtr> psis;
      for (const auto& p : q.psis) psis.push_back(define_closure_relations(p));
      return structural(q.target, q.x, q.ys, define_closure_relations(q.phi), std::move(psis));
    }
  }
  return f;
}

// Atomic type of the tuple (positions) over the variables: equalities and
// every relation of tau, positively or negatively.
std::vector<FormulaPtr> qf_type(const FiniteStructure& m, const std::vector<Position>& tuple,
                                const std::vector<Var>& zs, const Vocabulary& tau) {
  std::vector<FormulaPtr> out;
  for (std::size_t i = 0; i < tuple.size(); ++i)
    for (std::size_t j = i + 1; j < tuple.size(); ++j) {
      FormulaPtr eq = equal(Term::var(zs[i]), Term::var(zs[j]));
      out.push_back(tuple[i] == tuple[j] ? eq : negation(eq));
    }
  for (const auto& sym : tau.relations()) {
    const std::size_t r = *m.vocabulary().find_relation(sym.name);
    for_each_tuple(tuple.size(), sym.arity, [&](const std::vector<Position>& picks) {
      std::vector<Position> ps;
      std::vector<Term> args;
      for (Position p : picks) {
        ps.push_back(tuple[p]);
        args.push_back(Term::var(zs[p]));
      }
      FormulaPtr a = atomic(sym.name, std::move(args));
      out.push_back(m.holds(r, ps) ? a : negation(a));
    });
  }
  return out;
}

}  // namespace

Theory tarski_specialize(const Emission& e, const VocabularyPtr& tau) {
  if (!tau->relational()) throw ShapeError("closure relations are only definable by variables in a relational vocabulary");
  Theory out;
  out.name = "universal-specialization";
  out.vocab = tau;
  std::map<std::size_t, std::pair<std::size_t, std::size_t>> pair_of;
  for (const auto& [pair, index] : e.pair_sentence) pair_of[index] = pair;
  for (std::size_t i = 0; i < e.theory.sentences.size(); ++i) {
    auto it = pair_of.find(i);
    if (it == pair_of.end()) {
      out.add(define_closure_relations(e.theory.sentences[i]));
      continue;
    }
    const auto [m, k] = it->second;
    const auto zs = names("z", m, *tau);
    const auto us = names("u", k, *tau);
    std::vector<Var> all = zs;
    all.insert(all.end(), us.begin(), us.end());
    std::vector<FormulaPtr> ds;
    std::set<std::string> seen;
    bool valid = false;
    for (const auto& d : e.catalog.entries.at(it->second)) {
      const FiniteStructure& m2 = d.base;
      const SubsetMask m1 = set_to_mask(m2, d.subsets.front());
      const SubsetMask whole = (SubsetMask{1} << m2.size()) - 1;
      for_each_tuple(m2.size(), m + k, [&](const std::vector<Position>& tuple) {
        SubsetMask head = 0, range = 0;
        for (std::size_t j = 0; j < tuple.size(); ++j) {
          range |= SubsetMask{1} << tuple[j];
          if (j < m) head |= SubsetMask{1} << tuple[j];
        }
        if (range != whole || head != m1) return;
        auto lits = qf_type(m2, tuple, all, *tau);
        if (lits.empty()) {
          valid = true;
          return;
        }
        FormulaPtr c = lits.size() == 1 ? lits.front() : conjunction(std::move(lits));
        if (seen.insert(print_formula(*c)).second) ds.push_back(c);
      });
    }
    if (valid) continue;
    if (ds.empty()) throw EmissionError("a catalog entry has no realization by variables; is the class universal?");
    out.add(forall(all, ds.size() == 1 ? ds.front() : disjunction(std::move(ds))));
  }
  return out;
}

CheckResult compare_model_sets(const Theory& t, const ModelClass& k, const Caps& caps, const std::string& name) {
  CheckResult c;
  c.name = name;
  std::set<std::string> members;
  for (const auto& m : k.members(caps.max_size)) members.insert(canonical_key(m));
  for (const auto& s : enumerate_structures(k.vocabulary(), caps.max_size, true, caps.max_structures)) {
    c.count("structures");
    const bool is_model = Evaluator(s).models(t);
    if (is_model) c.count("models");
    if (is_model != static_cast<bool>(members.count(canonical_key(s))))
      c.fail({{"structure", print_structure(s)}, {"model", is_model ? "yes" : "no"}});
  }
  return c;
}

Morleyization galois_morleyization(const ModelClass& k, std::size_t arity_cap, const Caps& caps) {
  Report inter = verify_intersections(k, caps);
  if (!inter.passed()) throw IntersectionFailure("class has no intersections within caps");
  Morleyization out;
  Vocabulary v = *k.vocabulary();
  std::map<std::string, std::size_t> by_key;
  auto marked_key = [](const FiniteStructure& closure, const std::vector<Element>& tuple) {
    std::vector<ElementSet> marks;
    for (Element e : tuple) marks.push_back({e});
    return canonical_key(DecoratedStructure(closure, marks));
  };
  for (std::size_t len = 1; len < arity_cap; ++len)
    for (auto& rep : enumerate_dk(k, len, caps)) {
      std::string rel = "G" + std::to_string(len) + "_" + std::to_string(out.types.size());
      while (v.has_symbol(rel)) rel = "G" + rel;
      v.add_relation(rel, len);
      by_key[marked_key(rep.structure, rep.tuple)] = out.types.size();
      out.relations.push_back(rel);
      out.types.push_back(std::move(rep));
    }
  out.vocab = share(std::move(v));

  auto expand = [&](const FiniteStructure& n) {
    ClosureOracle oracle(k, n, caps.max_subsets);
    StructureBuilder b = copy_into(n, out.vocab);
    for (std::size_t len = 1; len < arity_cap; ++len)
      for_each_tuple(n.size(), len, [&](const std::vector<Position>& tuple) {
        std::vector<Element> ids;
        for (Position p : tuple) ids.push_back(n.element(p));
        auto it = by_key.find(marked_key(oracle.closure(make_set(ids)).structure, ids));
        if (it == by_key.end()) throw CapacityError("tuple type not realized within the size cap", n.size());
        b.add_tuple(out.relations[it->second], ids);
      });
    return std::move(b).build();
  };

  Report& r = out.report;
  r.command = "morleyize";
  r.caps = {{"max-size", std::to_string(caps.max_size)}, {"arity-cap", std::to_string(arity_cap)}};
  auto& mc = r.add("model-completeness");
  for (const auto& n : k.members(caps.max_size)) {
    FiniteStructure np = expand(n);
    const auto strong = k.strong_subsets(n, caps.max_subsets);
    for (SubsetMask mask = 0; mask < strong.size(); ++mask) {
      const ElementSet set = mask_to_set(n, mask);
      auto sub = induced_substructure(n, set);
      if (!sub || !k.contains(*sub)) continue;
      mc.count("substructure pairs");
      const bool expanded_sub = *induced_substructure(np, set) == expand(*sub);
      if (expanded_sub != static_cast<bool>(strong[mask]))
        mc.fail({{"N", print_structure(n)}, {"M", ids_text(set)}, {"strong", strong[mask] ? "yes" : "no"}});
    }
    out.members.emplace_back(n, std::move(np));
  }
  return out;
}

}  // namespace qstruct
