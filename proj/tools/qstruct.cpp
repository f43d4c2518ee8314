// qstruct: command-line front end over the qstruct library.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or input error.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qstruct/axiomatizer.hpp"
#include "qstruct/closure.hpp"
#include "qstruct/errors.hpp"
#include "qstruct/io.hpp"
#include "qstruct/model_class.hpp"
#include "qstruct/semantics.hpp"
#include "qstruct/syntax.hpp"
#include "qstruct/translate.hpp"

using namespace qstruct;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct Options {
  bool time = false;
  std::size_t jobs = 1;
  std::size_t max_size = 4;
  std::string kappa = "unbounded";
};

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

Caps caps_of(const Options& o) {
  Caps c;
  c.max_size = o.max_size;
  c.jobs = o.jobs;
  return c;
}

int emit_report(const Report& r, const Options& o, const Stopwatch& clock) {
  std::cout << to_json_lines(r, o.time ? clock.seconds() : -1.0);
  return r.passed() ? kOk : kFailed;
}

std::string ids_text(const ElementSet& s) {
  std::string out = "(";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? " " : "") + std::to_string(s[i]);
  return out + ")";
}

// "0 2", "0,2" or "(0 2)".
ElementSet parse_ids(const std::string& text) {
  std::string cleaned;
  for (char c : text) cleaned += (c == ',' || c == '(' || c == ')') ? ' ' : c;
  std::istringstream in(cleaned);
  std::vector<Element> ids;
  std::string word;
  while (in >> word) {
    if (word.find_first_not_of("0123456789") != std::string::npos) throw DomainError("not an element id: " + word);
    ids.push_back(static_cast<Element>(std::stoul(word)));
  }
  return make_set(std::move(ids));
}

Assignment parse_assignment(const std::vector<std::string>& items) {
  Assignment a;
  for (const auto& item : items) {
    auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw DomainError("assignment must look like var=id: " + item);
    ElementSet id = parse_ids(item.substr(eq + 1));
    if (id.size() != 1) throw DomainError("assignment must name one element: " + item);
    a[item.substr(0, eq)] = id.front();
  }
  return a;
}

// Inline "(vocab ...)" text or a file holding it.
VocabularyPtr parse_vocab_arg(const std::string& text) {
  if (text.find('(') != std::string::npos) return parse_vocabulary(read_sexpr(text));
  return parse_vocabulary(read_sexpr(read_text_file(text)));
}

void trace_qstructs(const FormulaPtr& f, Evaluator& ev, const Assignment& a, std::ostream& out) {
  if (f->kind() == FormulaKind::QStruct) {
    VarSet free = f->free_vars();
    bool assigned = true;
    for (const auto& v : free) assigned &= a.count(v) > 0;
    if (assigned) {
      auto sets = ev.qstruct_sets(f, a);
      out << "; " << print_formula(*f) << "\n;   phi = " << ids_text(sets.phi);
      for (std::size_t i = 0; i < sets.psis.size(); ++i) out << " psi" << i << " = " << ids_text(sets.psis[i]);
      out << " -> " << (ev.eval(f, a) ? "true" : "false") << "\n";
    }
    return;
  }
  for (const auto& s : immediate_subformulas(f)) trace_qstructs(s, ev, a, out);
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw FileError(path, "cannot open for writing");
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Structural-quantifier logic on finite structures"};
  app.require_subcommand(1);
  Options opt;
  app.add_flag("--time", opt.time, "Include wall time in reports");
  int status = kOk;
  Stopwatch clock;

  auto add_caps = [&](CLI::App* sub) {
    sub->add_option("--max-size", opt.max_size, "Largest structure size swept")->capture_default_str()->check(CLI::PositiveNumber);
    sub->add_option("--jobs", opt.jobs, "Worker threads for sweeps")->capture_default_str()->check(CLI::PositiveNumber);
  };

  // eval
  std::string structure_file, formula_file, theory_file, class_file, vocab_text, out_file;
  std::vector<std::string> assign;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a formula on a structure");
  eval_cmd->add_option("structure", structure_file)->required();
  eval_cmd->add_option("formula", formula_file)->required();
  eval_cmd->add_option("--assign", assign, "Assignment var=id (repeatable)");
  eval_cmd->add_option("--kappa", opt.kappa)->capture_default_str();
  eval_cmd->callback([&] {
    FiniteStructure n = load_structure(structure_file);
    FormulaPtr f = load_formula(formula_file, n.vocabulary_ptr());
    Evaluator ev(n, Kappa::parse(opt.kappa));
    Assignment a = parse_assignment(assign);
    const bool truth = ev.eval(f, a);
    std::cout << (truth ? "true" : "false") << "\n";
    trace_qstructs(f, ev, a, std::cout);
  });

  // models
  bool up_to_iso = false;
  auto* models_cmd = app.add_subcommand("models", "List the models of a theory");
  models_cmd->add_option("theory", theory_file)->required();
  models_cmd->add_option("--vocab", vocab_text, "Vocabulary s-expression or file (default: the theory's)");
  models_cmd->add_option("--kappa", opt.kappa)->capture_default_str();
  models_cmd->add_flag("--up-to-iso", up_to_iso, "One model per isomorphism type");
  add_caps(models_cmd);
  models_cmd->callback([&] {
    Theory t = load_theory(theory_file);
    VocabularyPtr v = vocab_text.empty() ? t.vocab : parse_vocab_arg(vocab_text);
    auto ms = enumerate_models(t, v, opt.max_size, Kappa::parse(opt.kappa), up_to_iso);
    for (const auto& m : ms) std::cout << print_structure(m) << "\n";
    std::cout << "; " << ms.size() << " models of size <= " << opt.max_size << "\n";
  });

  // elem
  std::string second_file;
  bool star = false;
  auto* elem_cmd = app.add_subcommand("elem", "Decide N1 <=_F N2 for the fragment generated by a theory");
  elem_cmd->add_option("n1", structure_file)->required();
  elem_cmd->add_option("n2", second_file)->required();
  elem_cmd->add_option("theory", theory_file)->required();
  elem_cmd->add_flag("--star", star, "Use the starred relation");
  elem_cmd->add_option("--kappa", opt.kappa)->capture_default_str();
  elem_cmd->callback([&] {
    Theory t = load_theory(theory_file);
    FiniteStructure n1 = load_structure(structure_file, t.vocab);
    FiniteStructure n2 = load_structure(second_file, t.vocab);
    const Fragment f = subformula_closure(t);
    const Kappa k = Kappa::parse(opt.kappa);
    ElemVerdict v = star ? elem_F_star(n1, n2, f, k) : elem_F(n1, n2, f, k);
    if (v.holds()) {
      std::cout << "holds\n";
      return;
    }
    std::cout << (v.status == ElemStatus::NotSubstructure ? "not-substructure" : "fails") << "\n";
    if (v.witness) std::cout << "; witness " << print_formula(*v.witness, t.vocab.get()) << "\n";
    for (const auto& [var, e] : v.assignment) std::cout << "; " << var << " = " << e << "\n";
    if (!v.detail.empty()) std::cout << "; " << v.detail << "\n";
    status = kFailed;
  });

  // closure
  std::string subset_text;
  auto* closure_cmd = app.add_subcommand("closure", "Closure of a subset inside a class member");
  closure_cmd->add_option("structure", structure_file)->required();
  closure_cmd->add_option("class", class_file)->required();
  closure_cmd->add_option("--subset", subset_text, "Element ids, e.g. \"0 2\"")->required();
  closure_cmd->callback([&] {
    ClassSpec spec = load_class_spec(class_file);
    FiniteStructure n = load_structure(structure_file, spec.model_class->vocabulary());
    ClosureResult c = cl(n, parse_ids(subset_text), *spec.model_class, Caps{}.max_subsets);
    std::cout << print_structure(c.structure) << "\n; strong " << (c.strong ? "yes" : "no") << "\n";
    if (!c.strong) status = kFailed;
  });

  // verify
  std::string check = "intersections";
  auto* verify_cmd = app.add_subcommand("verify", "Run a class-level check and print a report");
  verify_cmd->add_option("class", class_file)->required();
  verify_cmd->add_option("--check", check)
      ->capture_default_str()
      ->check(CLI::IsMember({"intersections", "coherence", "axioms", "cl-coherence"}));
  add_caps(verify_cmd);
  verify_cmd->callback([&] {
    ClassSpec spec = load_class_spec(class_file);
    const Caps caps = caps_of(opt);
    Report r;
    if (check == "intersections") {
      r = verify_intersections(*spec.model_class, caps);
    } else if (check == "cl-coherence") {
      r = check_cl_coherence(*spec.model_class, caps);
    } else {
      r = check_class_properties(*spec.model_class, caps);
      if (check == "coherence") {
        const CheckResult* c = r.find("coherence");
        r.checks = {*c};
      }
      r.command = "verify --check " + check;
    }
    status = emit_report(r, opt, clock);
  });

  // emit
  std::size_t arity_cap = 0, pair_cap = 0;
  auto* emit_cmd = app.add_subcommand("emit", "Emit the presentation theory of a class");
  emit_cmd->add_option("class", class_file)->required();
  emit_cmd->add_option("--pair-cap", pair_cap, "Longest tuple in the pair sentences (default: max size)");
  emit_cmd->add_option("--arity-cap", arity_cap, "Number of closure relations (default: pair cap + 1)");
  emit_cmd->add_option("--out", out_file, "Theory file to write (default: stdout)");
  add_caps(emit_cmd);

  auto resolve_caps = [&] {
    if (pair_cap == 0) pair_cap = opt.max_size;
    if (arity_cap == 0) arity_cap = pair_cap + 1;
  };
  emit_cmd->callback([&] {
    resolve_caps();
    ClassSpec spec = load_class_spec(class_file);
    const Caps caps = caps_of(opt);
    auto x = functorial_expansion(spec.model_class, arity_cap, caps);
    Emission e = emit_aq_theory(x, pair_cap, caps, spec.hash);
    write_output(out_file, print_theory(e.theory));
    std::ostream& summary = out_file.empty() || out_file == "-" ? std::cerr : std::cout;
    summary << "; " << e.theory.sentences.size() << " sentences, " << e.catalog.total() << " catalog entries\n";
    for (const auto& [pair, list] : e.catalog.entries)
      summary << "; pair (" << pair.first << " " << pair.second << "): " << list.size() << "\n";
  });

  // roundtrip
  auto* roundtrip_cmd = app.add_subcommand("roundtrip", "Emit the presentation theory and verify it");
  roundtrip_cmd->add_option("class", class_file)->required();
  roundtrip_cmd->add_option("--pair-cap", pair_cap, "Longest tuple in the pair sentences (default: max size)");
  roundtrip_cmd->add_option("--arity-cap", arity_cap, "Number of closure relations (default: pair cap + 1)");
  add_caps(roundtrip_cmd);
  roundtrip_cmd->callback([&] {
    resolve_caps();
    ClassSpec spec = load_class_spec(class_file);
    const Caps caps = caps_of(opt);
    auto x = functorial_expansion(spec.model_class, arity_cap, caps);
    Emission e = emit_aq_theory(x, pair_cap, caps, spec.hash);
    Report r = verify_presentation(x, e, caps);
    for (const auto& c : x.report.checks)
      if (c.status == CheckStatus::Fail) r.checks.push_back(c);
    status = emit_report(r, opt, clock);
  });

  // translate
  std::string mode;
  auto* translate_cmd = app.add_subcommand("translate", "Rewrite a formula");
  translate_cmd->add_option("formula", formula_file)->required();
  translate_cmd->add_option("--mode", mode)
      ->required()
      ->check(CLI::IsMember({"univ-gen", "no-subvocab", "counting", "scott"}));
  translate_cmd->add_option("--vocab", vocab_text, "Vocabulary s-expression or file")->required();
  translate_cmd->add_option("--kappa", opt.kappa)->capture_default_str();
  translate_cmd->add_option("--out", out_file, "File to write (default: stdout)");
  translate_cmd->callback([&] {
    VocabularyPtr v = parse_vocab_arg(vocab_text);
    FormulaPtr f = load_formula(formula_file, v);
    FormulaPtr g;
    if (mode == "univ-gen")
      g = univ_gen_rewrite(f);
    else if (mode == "no-subvocab")
      g = eliminate_subvocab_all(f, v);
    else if (mode == "counting")
      g = qstruct_to_counting(f, Kappa::parse(opt.kappa));
    else
      g = scott_rewrite(f);
    write_output(out_file, print_formula(*g, v.get()) + "\n");
  });

  // dk
  std::size_t tuple_len = 2;
  auto* dk_cmd = app.add_subcommand("dk", "Galois types of finite tuples");
  dk_cmd->add_option("class", class_file)->required();
  dk_cmd->add_option("--tuple-len", tuple_len)->capture_default_str();
  add_caps(dk_cmd);
  dk_cmd->callback([&] {
    ClassSpec spec = load_class_spec(class_file);
    auto reps = enumerate_dk(*spec.model_class, tuple_len, caps_of(opt));
    for (const auto& p : reps) {
      std::cout << "(pointed " << print_structure(p.structure) << " (tuple";
      for (Element e : p.tuple) std::cout << " " << e;
      std::cout << "))\n";
    }
    std::cout << "; " << reps.size() << " types of length " << tuple_len << " at size <= " << opt.max_size << "\n";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::Error& e) {
    app.exit(e);
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "qstruct: parse error at " << e.what() << "\n";
    return kUsage;
  } catch (const IntersectionFailure& e) {
    std::cerr << "qstruct: " << e.what() << "\n";
    return kFailed;
  } catch (const UniversalityError& e) {
    std::cerr << "qstruct: " << e.what() << "\n";
    return kFailed;
  } catch (const EmissionError& e) {
    std::cerr << "qstruct: " << e.what() << "\n";
    return kFailed;
  } catch (const std::exception& e) {
    std::cerr << "qstruct: " << e.what() << "\n";
    return kUsage;
  }
  return status;
}
