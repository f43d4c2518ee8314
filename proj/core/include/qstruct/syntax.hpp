#pragma once

#include <string>
#include <string_view>

#include "qstruct/formula.hpp"
#include "qstruct/sexpr.hpp"
#include "qstruct/theory.hpp"

namespace qstruct {

// Grammar (see README for the full description):
//   vocab     (vocab (rel R k) (fun f k) (const c) ...)
//   structure (structure [vocab] (universe n | (ids...)) (rel R (ids...)...) (fun f (args... value)...) (const c id))
//   formula   (rel R t...) | (= t t) | (!= t t) | (not f) | (and f...) | (or f...) | (implies f f)
//             | (exists x f) | (forall (x y) f) | (qstruct STRUCT x f)
//             | (qstruct STRUCT (subsets (ids...)...) x (ys...) f (psis...))
//   term      variable | constant | (f t...)
//   theory    (theory (name N) [vocab] (provenance (key value)...) (sentence f)...)

VocabularyPtr parse_vocabulary(const SExpr& e);
std::string print_vocabulary(const Vocabulary& v);

/// A structure without its own vocab clause takes `context`.
FiniteStructure parse_structure(const SExpr& e, const VocabularyPtr& context = nullptr);
FiniteStructure parse_structure(std::string_view text, const VocabularyPtr& context = nullptr);
/// Omits the vocab clause when it equals `context`.
std::string print_structure(const FiniteStructure& s, const Vocabulary* context = nullptr);

FormulaPtr parse_formula(const SExpr& e, const VocabularyPtr& vocab);
FormulaPtr parse_formula(std::string_view text, const VocabularyPtr& vocab);
std::string print_term(const Term& t);
std::string print_formula(const Formula& f, const Vocabulary* context = nullptr);

Theory parse_theory(const SExpr& e);
Theory parse_theory(std::string_view text);
std::string print_theory(const Theory& t);

}  // namespace qstruct
