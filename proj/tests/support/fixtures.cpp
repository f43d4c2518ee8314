#include "fixtures.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qstruct::testing {

VocabularyPtr empty_vocab() {
  static VocabularyPtr v = share(Vocabulary{});
  return v;
}

VocabularyPtr order_vocab() {
  static VocabularyPtr v = share(Vocabulary{}.add_relation("<", 2));
  return v;
}

VocabularyPtr graph_vocab() {
  static VocabularyPtr v = share(Vocabulary{}.add_relation("E", 2));
  return v;
}

VocabularyPtr rel_vocab() {
  static VocabularyPtr v = share(Vocabulary{}.add_relation("R", 2));
  return v;
}

VocabularyPtr unary_fn_vocab() {
  static VocabularyPtr v = share(Vocabulary{}.add_relation("P", 1).add_function("f", 1));
  return v;
}

FiniteStructure chain_on(const ElementSet& ids) {
  StructureBuilder b(order_vocab(), ids);
  for (std::size_t i = 0; i < ids.size(); ++i)
    for (std::size_t j = i + 1; j < ids.size(); ++j) b.add_tuple("<", {ids[i], ids[j]});
  return std::move(b).build();
}

FiniteStructure chain(std::size_t n) { return chain_on(iota_set(n)); }

FiniteStructure bare(std::size_t n) { return StructureBuilder(empty_vocab(), n).build(); }

FiniteStructure complete_graph(std::size_t n) {
  StructureBuilder b(graph_vocab(), n);
  for (Element i = 0; i < n; ++i)
    for (Element j = 0; j < n; ++j)
      if (i != j) b.add_tuple("E", {i, j});
  return std::move(b).build();
}

std::string source_path(const std::string& relative) { return std::string(QSTRUCT_SOURCE_DIR) + "/" + relative; }

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

ClassSpec corpus_class(const std::string& name) { return load_class_spec(source_path("corpus/" + name + ".class")); }

ClassSpec data_class(const std::string& name) { return load_class_spec(source_path("tests/data/" + name + ".class")); }

}  // namespace qstruct::testing
