#include "qstruct/vocabulary.hpp"

#include <algorithm>

#include "qstruct/errors.hpp"

namespace qstruct {

namespace {

std::optional<std::size_t> find_in(const std::vector<Symbol>& symbols, std::string_view name) {
  auto it = std::lower_bound(symbols.begin(), symbols.end(), name,
                             [](const Symbol& s, std::string_view n) { return s.name < n; });
  if (it == symbols.end() || it->name != name) return std::nullopt;
  return static_cast<std::size_t>(it - symbols.begin());
}

void insert_sorted(std::vector<Symbol>& symbols, Symbol s) {
  auto it = std::lower_bound(symbols.begin(), symbols.end(), s.name,
                             [](const Symbol& a, const std::string& n) { return a.name < n; });
  symbols.insert(it, std::move(s));
}

}  // namespace

Vocabulary& Vocabulary::add_relation(std::string name, std::size_t arity) {
  if (name.empty()) throw SignatureError("empty relation name");
  if (arity == 0) throw SignatureError("relation '" + name + "' must have positive arity");
  if (has_symbol(name)) throw SignatureError("duplicate symbol '" + name + "'");
  insert_sorted(relations_, Symbol{std::move(name), arity});
  return *this;
}

Vocabulary& Vocabulary::add_function(std::string name, std::size_t arity) {
  if (name.empty()) throw SignatureError("empty function name");
  if (has_symbol(name)) throw SignatureError("duplicate symbol '" + name + "'");
  insert_sorted(functions_, Symbol{std::move(name), arity});
  return *this;
}

std::optional<std::size_t> Vocabulary::find_relation(std::string_view name) const {
  return find_in(relations_, name);
}

std::optional<std::size_t> Vocabulary::find_function(std::string_view name) const {
  return find_in(functions_, name);
}

bool Vocabulary::has_symbol(std::string_view name) const {
  return find_relation(name).has_value() || find_function(name).has_value();
}

bool Vocabulary::is_constant(std::string_view name) const {
  auto f = find_function(name);
  return f && functions_[*f].arity == 0;
}

bool Vocabulary::has_constants() const {
  return std::any_of(functions_.begin(), functions_.end(), [](const Symbol& s) { return s.arity == 0; });
}

bool Vocabulary::includes(const Vocabulary& sub) const {
  for (const auto& r : sub.relations_) {
    auto i = find_relation(r.name);
    if (!i || relations_[*i].arity != r.arity) return false;
  }
  for (const auto& f : sub.functions_) {
    auto i = find_function(f.name);
    if (!i || functions_[*i].arity != f.arity) return false;
  }
  return true;
}

Vocabulary Vocabulary::merged_with(const Vocabulary& other) const {
  Vocabulary out = *this;
  for (const auto& r : other.relations_) {
    if (auto i = out.find_relation(r.name)) {
      if (out.relations_[*i].arity != r.arity) throw SignatureError("arity clash on relation '" + r.name + "'");
      continue;
    }
    out.add_relation(r.name, r.arity);
  }
  for (const auto& f : other.functions_) {
    if (auto i = out.find_function(f.name)) {
      if (out.functions_[*i].arity != f.arity) throw SignatureError("arity clash on function '" + f.name + "'");
      continue;
    }
    out.add_function(f.name, f.arity);
  }
  return out;
}

bool same_vocabulary(const VocabularyPtr& a, const VocabularyPtr& b) {
  return a == b || (a && b && *a == *b);
}

}  // namespace qstruct
