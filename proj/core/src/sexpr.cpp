#include "qstruct/sexpr.hpp"

#include <cctype>
#include <charconv>

#include "qstruct/errors.hpp"

namespace qstruct {

bool SExpr::head_is(std::string_view head) const {
  return is_list() && !items.empty() && items[0].atom && !items[0].quoted && items[0].text == head;
}

void SExpr::fail(const std::string& what) const { throw ParseError(what, line, column); }

const std::string& SExpr::expect_atom(const char* role) const {
  if (!atom) fail(std::string("expected ") + role + ", found a list");
  return text;
}

std::size_t SExpr::expect_count(const char* role) const {
  const std::string& t = expect_atom(role);
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (quoted || ec != std::errc() || ptr != t.data() + t.size())
    fail(std::string("expected ") + role + " (a nonnegative integer), found '" + t + "'");
  return value;
}

namespace {

bool delimiter(char c) {
  return std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == ';' || c == '"';
}

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  std::vector<SExpr> all() {
    std::vector<SExpr> out;
    skip();
    while (pos_ < text_.size()) {
      out.push_back(read());
      skip();
    }
    return out;
  }

 private:
  void skip() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') bump();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        bump();
      } else {
        return;
      }
    }
  }

  void bump() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  SExpr read() {
    SExpr e;
    e.line = line_;
    e.column = col_;
    char c = text_[pos_];
    if (c == ')') throw ParseError("unexpected ')'", line_, col_);
    if (c == '(') {
      bump();
      while (true) {
        skip();
        if (pos_ >= text_.size()) throw ParseError("unterminated list", e.line, e.column);
        if (text_[pos_] == ')') {
          bump();
          return e;
        }
        e.items.push_back(read());
      }
    }
    e.atom = true;
    if (c == '"') {
      e.quoted = true;
      bump();
      while (true) {
        if (pos_ >= text_.size()) throw ParseError("unterminated string", e.line, e.column);
        char d = text_[pos_];
        if (d == '"') {
          bump();
          return e;
        }
        if (d == '\\' && pos_ + 1 < text_.size()) {
          bump();
          d = text_[pos_];
        }
        e.text.push_back(d);
        bump();
      }
    }
    while (pos_ < text_.size() && !delimiter(text_[pos_])) {
      e.text.push_back(text_[pos_]);
      bump();
    }
    return e;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

}  // namespace

std::vector<SExpr> read_sexprs(std::string_view text) { return Reader(text).all(); }

SExpr read_sexpr(std::string_view text) {
  auto all = read_sexprs(text);
  if (all.empty()) throw ParseError("empty input", 1, 1);
  if (all.size() > 1) throw ParseError("trailing input after expression", all[1].line, all[1].column);
  return std::move(all[0]);
}

std::string atom_text(const std::string& s) {
  bool bare = !s.empty();
  for (char c : s)
    if (delimiter(c)) bare = false;
  if (bare) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out + "\"";
}

}  // namespace qstruct
