#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "qstruct/model_class.hpp"
#include "qstruct/sexpr.hpp"

namespace qstruct {

/// Reads a whole file; FileError when it cannot be opened.
std::string read_text_file(const std::filesystem::path& path);

// Loaders wrap every library error in FileError naming the file.
Theory load_theory(const std::filesystem::path& path);
/// Every (structure ...) expression in the file.
std::vector<FiniteStructure> load_structures(const std::filesystem::path& path, const VocabularyPtr& context = nullptr);
FiniteStructure load_structure(const std::filesystem::path& path, const VocabularyPtr& context = nullptr);
FormulaPtr load_formula(const std::filesystem::path& path, const VocabularyPtr& vocab);

/// 64-bit FNV-1a, printed as 16 hex digits.
std::string content_hash(const std::string& text);

enum class ClassKind { Defined, Explicit };

struct ClassSpec {
  ClassKind kind = ClassKind::Defined;
  std::shared_ptr<const ModelClass> model_class;
  std::string hash;  // over the spec text and every file it names, in order
  std::string source;

  const DefinedClass* defined() const { return dynamic_cast<const DefinedClass*>(model_class.get()); }
  const ExplicitClass* explicit_class() const { return dynamic_cast<const ExplicitClass*>(model_class.get()); }
};

/// Class spec grammar:
///   (class (theory FILE) [(kappa unbounded|k)] [(max-size n)])
///   (class [(vocab ...)] (members FILE-or-(structure ...)...) [(order (i j)...)])
/// Relative file names resolve against `base_dir`.
ClassSpec parse_class_spec(const SExpr& e, const std::filesystem::path& base_dir);
ClassSpec load_class_spec(const std::filesystem::path& path);

}  // namespace qstruct
