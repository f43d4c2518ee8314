#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qstruct {

struct Symbol {
  std::string name;
  std::size_t arity = 0;

  friend bool operator==(const Symbol&, const Symbol&) = default;
};

/// A finitary signature. Relations and functions are each kept sorted by
/// name, so two vocabularies with the same symbols index them identically.
/// Constants are functions of arity 0.
class Vocabulary {
 public:
  Vocabulary() = default;

  Vocabulary& add_relation(std::string name, std::size_t arity);
  Vocabulary& add_function(std::string name, std::size_t arity);
  Vocabulary& add_constant(std::string name) { return add_function(std::move(name), 0); }

  const std::vector<Symbol>& relations() const noexcept { return relations_; }
  const std::vector<Symbol>& functions() const noexcept { return functions_; }

  std::optional<std::size_t> find_relation(std::string_view name) const;
  std::optional<std::size_t> find_function(std::string_view name) const;
  bool has_symbol(std::string_view name) const;
  bool is_constant(std::string_view name) const;

  bool has_constants() const;
  bool has_functions() const { return !functions_.empty(); }
  bool relational() const { return functions_.empty(); }
  bool empty() const { return relations_.empty() && functions_.empty(); }

  /// True when every symbol of `sub` occurs here with the same kind and arity.
  bool includes(const Vocabulary& sub) const;

  /// Union; throws SignatureError when a shared name disagrees on kind or arity.
  Vocabulary merged_with(const Vocabulary& other) const;

  friend bool operator==(const Vocabulary&, const Vocabulary&) = default;

 private:
  std::vector<Symbol> relations_;
  std::vector<Symbol> functions_;
};

using VocabularyPtr = std::shared_ptr<const Vocabulary>;

inline VocabularyPtr share(Vocabulary v) { return std::make_shared<const Vocabulary>(std::move(v)); }

bool same_vocabulary(const VocabularyPtr& a, const VocabularyPtr& b);

}  // namespace qstruct
