#include "qstruct/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "qstruct/errors.hpp"
#include "qstruct/syntax.hpp"

namespace qstruct {

namespace fs = std::filesystem;

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError(path.string(), "cannot open file");
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

namespace {

template <typename F>
auto in_file(const fs::path& path, F&& body) {
  try {
    return body();
  } catch (const FileError&) {
    throw;
  } catch (const Error& e) {
    throw FileError(path.string(), e.what());
  }
}

}  // namespace

Theory load_theory(const fs::path& path) {
  return in_file(path, [&] { return parse_theory(read_text_file(path)); });
}

std::vector<FiniteStructure> load_structures(const fs::path& path, const VocabularyPtr& context) {
  return in_file(path, [&] {
    std::vector<FiniteStructure> out;
    for (const auto& e : read_sexprs(read_text_file(path))) out.push_back(parse_structure(e, context));
    return out;
  });
}

FiniteStructure load_structure(const fs::path& path, const VocabularyPtr& context) {
  return in_file(path, [&] { return parse_structure(read_sexpr(read_text_file(path)), context); });
}

FormulaPtr load_formula(const fs::path& path, const VocabularyPtr& vocab) {
  return in_file(path, [&] { return parse_formula(read_sexpr(read_text_file(path)), vocab); });
}

std::string content_hash(const std::string& text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ClassSpec parse_class_spec(const SExpr& e, const fs::path& base_dir) {
  if (!e.head_is("class")) e.fail("expected (class ...)");
  const SExpr* theory = nullptr;
  const SExpr* vocab = nullptr;
  const SExpr* members = nullptr;
  const SExpr* order = nullptr;
  Kappa kappa;
  std::size_t max_size = Caps{}.max_size;
  for (std::size_t i = 1; i < e.size(); ++i) {
    const SExpr& c = e[i];
    if (c.head_is("theory") && c.size() == 2) {
      theory = &c[1];
    } else if (c.head_is("kappa") && c.size() == 2) {
      try {
        kappa = Kappa::parse(c[1].expect_atom("kappa"));
      } catch (const KappaError& err) {
        c[1].fail(err.what());
      }
    } else if (c.head_is("max-size") && c.size() == 2) {
      max_size = c[1].expect_count("max-size");
    } else if (c.head_is("vocab")) {
      vocab = &c;
    } else if (c.head_is("members")) {
      members = &c;
    } else if (c.head_is("order")) {
      order = &c;
    } else {
      c.fail("expected (theory ...), (kappa ...), (max-size ...), (vocab ...), (members ...) or (order ...)");
    }
  }
  if (static_cast<bool>(theory) == static_cast<bool>(members)) e.fail("a class has either a theory or members");

  ClassSpec spec;
  std::string hashed;
  auto resolve = [&](const SExpr& name) {
    fs::path p = name.expect_atom("file name");
    return p.is_absolute() ? p : base_dir / p;
  };
  if (theory) {
    if (vocab || order) e.fail("(vocab ...) and (order ...) belong to explicit classes");
    const fs::path p = resolve(*theory);
    hashed += read_text_file(p);
    spec.kind = ClassKind::Defined;
    spec.model_class = std::make_shared<DefinedClass>(load_theory(p), kappa, max_size);
  } else {
    VocabularyPtr v = vocab ? parse_vocabulary(*vocab) : nullptr;
    std::vector<FiniteStructure> listed;
    for (std::size_t i = 1; i < members->size(); ++i) {
      const SExpr& m = (*members)[i];
      if (m.is_list()) {
        listed.push_back(parse_structure(m, v));
      } else {
        const fs::path p = resolve(m);
        hashed += read_text_file(p);
        for (auto& s : load_structures(p, v)) listed.push_back(std::move(s));
      }
      if (!v && !listed.empty()) v = listed.front().vocabulary_ptr();
    }
    if (!v) v = share(Vocabulary{});
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    if (order)
      for (std::size_t i = 1; i < order->size(); ++i) {
        const SExpr& pr = (*order)[i];
        if (!pr.is_list() || pr.size() != 2) pr.fail("expected (i j)");
        pairs.emplace_back(pr[0].expect_count("member index"), pr[1].expect_count("member index"));
      }
    spec.kind = ClassKind::Explicit;
    try {
      spec.model_class = std::make_shared<ExplicitClass>(v, std::move(listed), std::move(pairs));
    } catch (const ParseError&) {
      throw;
    } catch (const Error& err) {
      e.fail(err.what());
    }
  }
  spec.hash = content_hash(hashed);
  return spec;
}

ClassSpec load_class_spec(const fs::path& path) {
  return in_file(path, [&] {
    const std::string text = read_text_file(path);
    ClassSpec spec = parse_class_spec(read_sexpr(text), path.parent_path());
    spec.hash = content_hash(text + spec.hash);
    spec.source = path.string();
    return spec;
  });
}

}  // namespace qstruct
