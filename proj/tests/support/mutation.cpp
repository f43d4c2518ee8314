#include "mutation.hpp"

#include <stdexcept>

#include "qstruct/formula.hpp"

namespace qstruct::testing {

Theory drop_disjunct(const Theory& t, std::size_t index, std::size_t which) {
  Theory out = t;
  auto [vars, body] = split_universal_prefix(t.sentences.at(index));
  if (body->kind() != FormulaKind::Or || which >= body->children().size())
    throw std::invalid_argument("sentence has no such disjunct");
  std::vector<FormulaPtr> rest;
  for (std::size_t i = 0; i < body->children().size(); ++i)
    if (i != which) rest.push_back(body->children()[i]);
  out.sentences[index] = forall(vars, rest.size() == 1 ? rest.front() : disjunction(std::move(rest)));
  return out;
}

}  // namespace qstruct::testing
