#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace qstruct {

/// A parsed s-expression with its source position (1-based).
struct SExpr {
  bool atom = false;
  bool quoted = false;  // atom came from a "..." string
  std::string text;
  std::vector<SExpr> items;
  std::size_t line = 1;
  std::size_t column = 1;

  bool is_list() const noexcept { return !atom; }
  std::size_t size() const noexcept { return items.size(); }
  const SExpr& operator[](std::size_t i) const { return items.at(i); }
  /// A list whose first item is the atom `head`.
  bool head_is(std::string_view head) const;

  [[noreturn]] void fail(const std::string& what) const;
  const std::string& expect_atom(const char* role) const;
  std::size_t expect_count(const char* role) const;
};

/// Every top-level expression in `text`; `;` starts a line comment.
std::vector<SExpr> read_sexprs(std::string_view text);
/// Exactly one top-level expression.
SExpr read_sexpr(std::string_view text);

/// Quotes an atom when it would not read back as a bare atom.
std::string atom_text(const std::string& s);

}  // namespace qstruct
