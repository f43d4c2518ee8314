#include "qstruct/syntax.hpp"

#include <set>
#include <sstream>

#include "qstruct/errors.hpp"
#include "tuple_index.hpp"

namespace qstruct {

namespace {

std::string join_ids(const std::vector<Element>& ids) {
  std::string out = "(";
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(ids[i]);
  }
  return out + ")";
}

std::vector<Element> parse_ids(const SExpr& e, const char* role) {
  if (!e.is_list()) e.fail(std::string("expected a list of element ids for ") + role);
  std::vector<Element> ids;
  for (const auto& item : e.items) ids.push_back(static_cast<Element>(item.expect_count("element id")));
  return ids;
}

}  // namespace

VocabularyPtr parse_vocabulary(const SExpr& e) {
  if (!e.head_is("vocab")) e.fail("expected (vocab ...)");
  Vocabulary v;
  for (std::size_t i = 1; i < e.size(); ++i) {
    const SExpr& d = e[i];
    try {
      if (d.head_is("rel") && d.size() == 3) {
        std::size_t k = d[2].expect_count("relation arity");
        if (k == 0) d[2].fail("relation arity must be positive");
        v.add_relation(d[1].expect_atom("relation name"), k);
      } else if (d.head_is("fun") && d.size() == 3) {
        v.add_function(d[1].expect_atom("function name"), d[2].expect_count("function arity"));
      } else if (d.head_is("const") && d.size() == 2) {
        v.add_constant(d[1].expect_atom("constant name"));
      } else {
        d.fail("expected (rel R k), (fun f k) or (const c)");
      }
    } catch (const ParseError&) {
      throw;
    } catch (const Error& err) {
      d.fail(err.what());
    }
  }
  return share(std::move(v));
}

std::string print_vocabulary(const Vocabulary& v) {
  std::string out = "(vocab";
  for (const auto& r : v.relations()) out += " (rel " + atom_text(r.name) + " " + std::to_string(r.arity) + ")";
  for (const auto& f : v.functions())
    if (f.arity > 0) out += " (fun " + atom_text(f.name) + " " + std::to_string(f.arity) + ")";
  for (const auto& f : v.functions())
    if (f.arity == 0) out += " (const " + atom_text(f.name) + ")";
  return out + ")";
}

FiniteStructure parse_structure(const SExpr& e, const VocabularyPtr& context) {
  if (!e.head_is("structure")) e.fail("expected (structure ...)");
  VocabularyPtr vocab = context;
  std::size_t i = 1;
  if (i < e.size() && e[i].head_is("vocab")) vocab = parse_vocabulary(e[i++]);
  if (!vocab) e.fail("structure has no vocab clause and no enclosing vocabulary");
  if (i >= e.size() || !e[i].head_is("universe") || e[i].size() != 2) e.fail("expected (universe n) or (universe (ids...))");
  const SExpr& u = e[i++];
  ElementSet universe;
  if (u[1].atom) {
    universe = iota_set(u[1].expect_count("universe size"));
  } else {
    auto ids = parse_ids(u[1], "the universe");
    universe = make_set(ids);
    if (universe.size() != ids.size()) u.fail("duplicate element id in universe");
  }
  try {
    StructureBuilder b(vocab, universe);
    for (; i < e.size(); ++i) {
      const SExpr& c = e[i];
      if (c.head_is("rel") && c.size() >= 2) {
        const std::string& name = c[1].expect_atom("relation name");
        for (std::size_t j = 2; j < c.size(); ++j) {
          try {
            b.add_tuple(name, parse_ids(c[j], "a relation tuple"));
          } catch (const ParseError&) {
            throw;
          } catch (const Error& err) {
            c[j].fail(err.what());
          }
        }
      } else if (c.head_is("fun") && c.size() >= 2) {
        const std::string& name = c[1].expect_atom("function name");
        for (std::size_t j = 2; j < c.size(); ++j) {
          auto ids = parse_ids(c[j], "a function entry");
          if (ids.empty()) c[j].fail("function entry needs a value");
          Element value = ids.back();
          ids.pop_back();
          try {
            b.set_value(name, ids, value);
          } catch (const Error& err) {
            c[j].fail(err.what());
          }
        }
      } else if (c.head_is("const") && c.size() == 3) {
        try {
          b.set_value(c[1].expect_atom("constant name"), {}, static_cast<Element>(c[2].expect_count("element id")));
        } catch (const ParseError&) {
          throw;
        } catch (const Error& err) {
          c.fail(err.what());
        }
      } else {
        c.fail("expected (rel ...), (fun ...) or (const c id)");
      }
    }
    return std::move(b).build();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& err) {
    e.fail(err.what());
  }
}

FiniteStructure parse_structure(std::string_view text, const VocabularyPtr& context) {
  return parse_structure(read_sexpr(text), context);
}

std::string print_structure(const FiniteStructure& s, const Vocabulary* context) {
  const Vocabulary& v = s.vocabulary();
  std::string out = "(structure";
  if (!context || !(*context == v)) out += " " + print_vocabulary(v);
  out += s.initial_segment() ? " (universe " + std::to_string(s.size()) + ")" : " (universe " + join_ids(s.universe()) + ")";
  for (std::size_t r = 0; r < v.relations().size(); ++r) {
    auto ts = s.tuples(r);
    if (ts.empty()) continue;
    out += " (rel " + atom_text(v.relations()[r].name);
    for (const auto& t : ts) out += " " + join_ids(t);
    out += ")";
  }
  std::vector<Position> args;
  for (std::size_t f = 0; f < v.functions().size(); ++f) {
    const std::size_t a = v.functions()[f].arity;
    if (a == 0) continue;
    out += " (fun " + atom_text(v.functions()[f].name);
    args.assign(a, 0);
    const std::size_t count = s.table_size(a);
    for (std::size_t i = 0; i < count; ++i) {
      detail::decode(i, s.size(), args);
      std::vector<Element> entry;
      for (Position p : args) entry.push_back(s.element(p));
      entry.push_back(s.element(s.function_entry(f, i)));
      out += " " + join_ids(entry);
    }
    out += ")";
  }
  for (std::size_t f = 0; f < v.functions().size(); ++f)
    if (v.functions()[f].arity == 0)
      out += " (const " + atom_text(v.functions()[f].name) + " " + std::to_string(s.element(s.function_entry(f, 0))) + ")";
  return out + ")";
}

namespace {

class FormulaParser {
 public:
  explicit FormulaParser(VocabularyPtr vocab) : vocab_(std::move(vocab)) {}

  Term term(const SExpr& e) const {
    if (e.atom) {
      const std::string& name = e.expect_atom("term");
      if (vocab_->is_constant(name)) return Term::app(name);
      if (vocab_->find_function(name)) e.fail("function '" + name + "' used without arguments");
      return Term::var(name);
    }
    if (e.size() == 0) e.fail("empty term");
    const std::string& f = e[0].expect_atom("function symbol");
    auto idx = vocab_->find_function(f);
    if (!idx) e.fail("unknown function symbol '" + f + "'");
    if (vocab_->functions()[*idx].arity != e.size() - 1)
      e.fail("function '" + f + "' expects " + std::to_string(vocab_->functions()[*idx].arity) + " arguments");
    std::vector<Term> args;
    for (std::size_t i = 1; i < e.size(); ++i) args.push_back(term(e[i]));
    return Term::app(f, std::move(args));
  }

  FormulaPtr formula(const SExpr& e) const {
    if (e.atom || e.size() == 0) e.fail("expected a formula");
    const std::string& head = e[0].expect_atom("connective");
    auto arity = [&](std::size_t n) {
      if (e.size() != n + 1) e.fail("'" + head + "' takes " + std::to_string(n) + " operands");
    };
    if (head == "rel") {
      if (e.size() < 2) e.fail("(rel R t...) needs a relation");
      return relation_atom(e, e[1].expect_atom("relation name"), 2);
    }
    if (head == "=" || head == "!=") {
      arity(2);
      auto f = equal(term(e[1]), term(e[2]));
      return head == "=" ? f : negation(f);
    }
    if (head == "not") {
      arity(1);
      return negation(formula(e[1]));
    }
    if (head == "and" || head == "or") {
      if (e.size() < 2) e.fail("'" + head + "' needs at least one operand");
      std::vector<FormulaPtr> fs;
      for (std::size_t i = 1; i < e.size(); ++i) fs.push_back(formula(e[i]));
      return head == "and" ? conjunction(std::move(fs)) : disjunction(std::move(fs));
    }
    if (head == "implies") {
      arity(2);
      return implies(formula(e[1]), formula(e[2]));
    }
    if (head == "exists" || head == "forall") {
      arity(2);
      std::vector<Var> vs;
      if (e[1].atom) {
        vs.push_back(variable(e[1]));
      } else {
        for (const auto& v : e[1].items) vs.push_back(variable(v));
        if (vs.empty()) e[1].fail("empty variable list");
      }
      auto body = formula(e[2]);
      return head == "exists" ? exists(vs, body) : forall(vs, body);
    }
    if (head == "qstruct") return quantifier_node(e);
    if (vocab_->find_relation(head)) return relation_atom(e, head, 1);
    e[0].fail("unknown connective or relation '" + head + "'");
  }

 private:
  Var variable(const SExpr& e) const {
    const std::string& v = e.expect_atom("variable");
    if (vocab_->has_symbol(v)) e.fail("'" + v + "' is a vocabulary symbol, not a variable");
    return v;
  }

  FormulaPtr relation_atom(const SExpr& e, const std::string& name, std::size_t first) const {
    auto idx = vocab_->find_relation(name);
    if (!idx) e.fail("unknown relation symbol '" + name + "'");
    if (vocab_->relations()[*idx].arity != e.size() - first)
      e.fail("relation '" + name + "' expects " + std::to_string(vocab_->relations()[*idx].arity) + " arguments");
    std::vector<Term> args;
    for (std::size_t i = first; i < e.size(); ++i) args.push_back(term(e[i]));
    return atomic(name, std::move(args));
  }

  FormulaPtr quantifier_node(const SExpr& e) const {
    if (e.size() != 4 && e.size() != 7)
      e.fail("expected (qstruct STRUCT x phi) or (qstruct STRUCT (subsets ...) x (ys...) phi (psis...))");
    FiniteStructure target = parse_structure(e[1], vocab_);
    if (!vocab_->includes(target.vocabulary())) e[1].fail("target vocabulary is not included in the formula vocabulary");
    if (e.size() == 4) return structural(std::move(target), variable(e[2]), formula(e[3]));
    const SExpr& subs = e[2];
    if (!subs.head_is("subsets")) subs.fail("expected (subsets (ids...)...)");
    std::vector<ElementSet> subsets;
    for (std::size_t i = 1; i < subs.size(); ++i) {
      auto ids = parse_ids(subs[i], "a distinguished subset");
      for (Element id : ids)
        if (!target.contains(id)) subs[i].fail("subset element " + std::to_string(id) + " is outside the target universe");
      subsets.push_back(make_set(std::move(ids)));
    }
    Var x = variable(e[3]);
    if (!e[4].is_list()) e[4].fail("expected a list of bound variables");
    std::vector<Var> ys;
    for (const auto& y : e[4].items) ys.push_back(variable(y));
    FormulaPtr phi = formula(e[5]);
    if (!e[6].is_list()) e[6].fail("expected a list of formulas");
    std::vector<FormulaPtr> psis;
    for (const auto& p : e[6].items) psis.push_back(formula(p));
    if (ys.size() != subsets.size() || psis.size() != subsets.size())
      e.fail("need one bound variable and one formula per distinguished subset");
    return structural(DecoratedStructure(std::move(target), std::move(subsets)), std::move(x), std::move(ys),
                   std::move(phi), std::move(psis));
  }

  VocabularyPtr vocab_;
};

bool is_keyword(const std::string& head) {
  static const std::set<std::string> words{"rel", "=", "!=", "not", "and", "or", "implies", "exists", "forall", "qstruct"};
  return words.count(head) > 0;
}

void print_into(const Formula& f, const Vocabulary* ctx, std::string& out) {
  switch (f.kind()) {
    case FormulaKind::Atomic:
      out += (is_keyword(f.relation()) ? "(rel " : "(") + atom_text(f.relation());
      for (const auto& t : f.terms()) out += " " + print_term(t);
      out += ")";
      return;
    case FormulaKind::Equal:
      out += "(= " + print_term(f.terms()[0]) + " " + print_term(f.terms()[1]) + ")";
      return;
    case FormulaKind::Not:
      if (f.child()->kind() == FormulaKind::Equal) {
        const auto& ts = f.child()->terms();
        out += "(!= " + print_term(ts[0]) + " " + print_term(ts[1]) + ")";
        return;
      }
      [[fallthrough]];
    case FormulaKind::And:
    case FormulaKind::Or:
      out += f.kind() == FormulaKind::Not ? "(not" : f.kind() == FormulaKind::And ? "(and" : "(or";
      for (const auto& c : f.children()) {
        out += " ";
        print_into(*c, ctx, out);
      }
      out += ")";
      return;
    case FormulaKind::Exists:
    case FormulaKind::Forall:
    {
      // a run of binders of one kind prints as a variable list
      std::vector<std::string> vars{atom_text(f.bound())};
      const Formula* body = f.child().get();
      while (body->kind() == f.kind()) {
        vars.push_back(atom_text(body->bound()));
        body = body->child().get();
      }
      out += f.kind() == FormulaKind::Exists ? "(exists " : "(forall ";
      if (vars.size() == 1) {
        out += vars[0];
      } else {
        out += "(";
        for (std::size_t i = 0; i < vars.size(); ++i) out += (i ? " " : "") + vars[i];
        out += ")";
      }
      out += " ";
      print_into(*body, ctx, out);
      out += ")";
      return;
    }
    case FormulaKind::QStruct: {
      const auto& q = f.qstruct();
      out += "(qstruct " + print_structure(q.target.base, ctx);
      if (q.ys.empty()) {
        out += " " + atom_text(q.x) + " ";
        print_into(*q.phi, ctx, out);
        out += ")";
        return;
      }
      out += " (subsets";
      for (const auto& s : q.target.subsets) out += " " + join_ids(s);
      out += ") " + atom_text(q.x) + " (";
      for (std::size_t i = 0; i < q.ys.size(); ++i) out += (i ? " " : "") + atom_text(q.ys[i]);
      out += ") ";
      print_into(*q.phi, ctx, out);
      out += " (";
      for (std::size_t i = 0; i < q.psis.size(); ++i) {
        if (i) out += " ";
        print_into(*q.psis[i], ctx, out);
      }
      out += "))";
      return;
    }
  }
}

}  // namespace

FormulaPtr parse_formula(const SExpr& e, const VocabularyPtr& vocab) {
  return FormulaParser(vocab ? vocab : share(Vocabulary{})).formula(e);
}

FormulaPtr parse_formula(std::string_view text, const VocabularyPtr& vocab) { return parse_formula(read_sexpr(text), vocab); }

std::string print_term(const Term& t) {
  if (t.args.empty()) return atom_text(t.name);
  std::string out = "(" + atom_text(t.name);
  for (const auto& a : t.args) out += " " + print_term(a);
  return out + ")";
}

std::string print_formula(const Formula& f, const Vocabulary* context) {
  std::string out;
  print_into(f, context, out);
  return out;
}

Theory parse_theory(const SExpr& e) {
  if (!e.head_is("theory")) e.fail("expected (theory ...)");
  Theory t;
  t.vocab = share(Vocabulary{});
  std::vector<const SExpr*> sentences;
  for (std::size_t i = 1; i < e.size(); ++i) {
    const SExpr& c = e[i];
    if (c.head_is("name") && c.size() == 2) {
      t.name = c[1].expect_atom("theory name");
    } else if (c.head_is("vocab")) {
      t.vocab = parse_vocabulary(c);
    } else if (c.head_is("provenance")) {
      for (std::size_t j = 1; j < c.size(); ++j) {
        if (!c[j].is_list() || c[j].size() != 2) c[j].fail("expected (key value)");
        t.provenance.emplace_back(c[j][0].expect_atom("provenance key"), c[j][1].expect_atom("provenance value"));
      }
    } else if (c.head_is("sentence") && c.size() == 2) {
      sentences.push_back(&c[1]);
    } else {
      c.fail("expected (name ...), (vocab ...), (provenance ...) or (sentence f)");
    }
  }
  for (const SExpr* s : sentences) {
    auto f = parse_formula(*s, t.vocab);
    if (!f->is_sentence()) s->fail("theory member has free variables");
    t.sentences.push_back(std::move(f));
  }
  return t;
}

Theory parse_theory(std::string_view text) { return parse_theory(read_sexpr(text)); }

std::string print_theory(const Theory& t) {
  std::ostringstream out;
  out << "(theory\n";
  if (!t.name.empty()) out << "  (name " << atom_text(t.name) << ")\n";
  out << "  " << print_vocabulary(t.vocab ? *t.vocab : Vocabulary{}) << "\n";
  if (!t.provenance.empty()) {
    out << "  (provenance";
    for (const auto& [k, v] : t.provenance) out << "\n    (" << atom_text(k) << " " << atom_text(v) << ")";
    out << ")\n";
  }
  for (const auto& s : t.sentences) out << "  (sentence " << print_formula(*s, t.vocab.get()) << ")\n";
  out << ")\n";
  return out.str();
}

}  // namespace qstruct
