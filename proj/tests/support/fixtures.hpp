#pragma once

#include <string>

#include "qstruct/io.hpp"
#include "qstruct/structure.hpp"

namespace qstruct::testing {

VocabularyPtr empty_vocab();
VocabularyPtr order_vocab();  // {< / 2}
VocabularyPtr graph_vocab();  // {E / 2}
VocabularyPtr rel_vocab();    // {R / 2}
VocabularyPtr unary_fn_vocab();  // {P / 1, f / 1}

/// Strict linear order 0 < 1 < ... < n-1 over the given ids (default 0..n-1).
FiniteStructure chain(std::size_t n);
FiniteStructure chain_on(const ElementSet& ids);
FiniteStructure bare(std::size_t n);
FiniteStructure complete_graph(std::size_t n);

std::string source_path(const std::string& relative);
std::string read_file(const std::string& path);
/// Loads corpus/<name>.class.
ClassSpec corpus_class(const std::string& name);
ClassSpec data_class(const std::string& name);  // tests/data/<name>.class

}  // namespace qstruct::testing
