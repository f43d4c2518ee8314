#include "qstruct/structure.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <string>

#include "qstruct/errors.hpp"
#include "tuple_index.hpp"

namespace qstruct {

using detail::decode;

namespace {

constexpr Position kUnset = std::numeric_limits<Position>::max();
constexpr std::size_t kMaxTable = std::size_t{1} << 26;

std::size_t power(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && r > kMaxTable / base) throw CapacityError("interpretation table too large", r);
    r *= base;
  }
  return r;
}

}  // namespace

ElementSet make_set(std::vector<Element> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  return elements;
}

bool is_subset(const ElementSet& a, const ElementSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

ElementSet set_union(const ElementSet& a, const ElementSet& b) {
  ElementSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

ElementSet set_intersection(const ElementSet& a, const ElementSet& b) {
  ElementSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

ElementSet iota_set(std::size_t n) {
  ElementSet out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<Element>(i);
  return out;
}

FiniteStructure::FiniteStructure() : vocab_(share(Vocabulary{})) {}

std::optional<Position> FiniteStructure::position(Element e) const {
  auto it = std::lower_bound(universe_.begin(), universe_.end(), e);
  if (it == universe_.end() || *it != e) return std::nullopt;
  return static_cast<Position>(it - universe_.begin());
}

bool FiniteStructure::initial_segment() const {
  return universe_.empty() || universe_.back() + 1 == universe_.size();
}

std::size_t FiniteStructure::table_size(std::size_t arity) const { return power(universe_.size(), arity); }

std::size_t FiniteStructure::index_of(std::span<const Position> positions) const {
  std::size_t idx = 0;
  const std::size_t n = universe_.size();
  for (Position p : positions) idx = idx * n + p;
  return idx;
}

bool FiniteStructure::holds(std::string_view rel, const Tuple& ids) const {
  auto r = vocab_->find_relation(rel);
  if (!r) throw SignatureError("unknown relation '" + std::string(rel) + "'");
  if (vocab_->relations()[*r].arity != ids.size()) throw SignatureError("arity mismatch on '" + std::string(rel) + "'");
  auto locate = [&](Element e) {
    auto p = position(e);
    if (!p) throw DomainError("element " + std::to_string(e) + " not in universe");
    return *p;
  };
  std::array<Position, 8> small;
  if (ids.size() <= small.size()) {
    for (std::size_t i = 0; i < ids.size(); ++i) small[i] = locate(ids[i]);
    return holds(*r, std::span<const Position>(small.data(), ids.size()));
  }
  std::vector<Position> pos;
  for (Element e : ids) pos.push_back(locate(e));
  return holds(*r, pos);
}

Element FiniteStructure::value(std::string_view fn, const Tuple& ids) const {
  auto f = vocab_->find_function(fn);
  if (!f) throw SignatureError("unknown function '" + std::string(fn) + "'");
  if (vocab_->functions()[*f].arity != ids.size()) throw SignatureError("arity mismatch on '" + std::string(fn) + "'");
  std::vector<Position> pos;
  for (Element e : ids) {
    auto p = position(e);
    if (!p) throw DomainError("element " + std::to_string(e) + " not in universe");
    pos.push_back(*p);
  }
  return universe_[apply(*f, pos)];
}

std::vector<Tuple> FiniteStructure::tuples(std::size_t rel) const {
  std::vector<Tuple> out;
  const std::size_t arity = vocab_->relations()[rel].arity;
  const std::size_t n = universe_.size();
  std::vector<Position> pos(arity);
  for (std::size_t i = 0; i < relations_[rel].size(); ++i) {
    if (!relations_[rel][i]) continue;
    decode(i, n, pos);
    Tuple t(arity);
    for (std::size_t k = 0; k < arity; ++k) t[k] = universe_[pos[k]];
    out.push_back(std::move(t));
  }
  return out;
}

bool operator==(const FiniteStructure& a, const FiniteStructure& b) {
  return same_vocabulary(a.vocab_, b.vocab_) && a.universe_ == b.universe_ && a.relations_ == b.relations_ &&
         a.functions_ == b.functions_;
}

StructureBuilder::StructureBuilder(VocabularyPtr vocab, ElementSet universe) {
  if (!vocab) vocab = share(Vocabulary{});
  if (!std::is_sorted(universe.begin(), universe.end()) ||
      std::adjacent_find(universe.begin(), universe.end()) != universe.end()) {
    universe = make_set(std::move(universe));
  }
  if (universe.empty() && vocab->has_constants())
    throw DomainError("empty universe is not allowed when the vocabulary has constants");
  s_.vocab_ = std::move(vocab);
  s_.universe_ = std::move(universe);
  const std::size_t n = s_.universe_.size();
  for (const auto& r : s_.vocab_->relations()) s_.relations_.emplace_back(power(n, r.arity), false);
  for (const auto& f : s_.vocab_->functions()) s_.functions_.emplace_back(power(n, f.arity), kUnset);
}

StructureBuilder::StructureBuilder(VocabularyPtr vocab, std::size_t n) : StructureBuilder(std::move(vocab), iota_set(n)) {}

std::vector<Position> StructureBuilder::positions_of(const Tuple& ids) const {
  std::vector<Position> pos;
  pos.reserve(ids.size());
  for (Element e : ids) {
    auto p = s_.position(e);
    if (!p) throw DomainError("element " + std::to_string(e) + " not in universe");
    pos.push_back(*p);
  }
  return pos;
}

StructureBuilder& StructureBuilder::add_tuple(std::string_view rel, const Tuple& ids) {
  auto r = s_.vocab_->find_relation(rel);
  if (!r) throw SignatureError("unknown relation '" + std::string(rel) + "'");
  if (s_.vocab_->relations()[*r].arity != ids.size())
    throw SignatureError("arity mismatch on relation '" + std::string(rel) + "'");
  s_.relations_[*r][s_.index_of(positions_of(ids))] = true;
  return *this;
}

StructureBuilder& StructureBuilder::set_value(std::string_view fn, const Tuple& args, Element value) {
  auto f = s_.vocab_->find_function(fn);
  if (!f) throw SignatureError("unknown function '" + std::string(fn) + "'");
  if (s_.vocab_->functions()[*f].arity != args.size())
    throw SignatureError("arity mismatch on function '" + std::string(fn) + "'");
  auto v = s_.position(value);
  if (!v) throw DomainError("function value " + std::to_string(value) + " not in universe");
  s_.functions_[*f][s_.index_of(positions_of(args))] = *v;
  return *this;
}

FiniteStructure StructureBuilder::build() && {
  for (std::size_t f = 0; f < s_.functions_.size(); ++f) {
    for (Position p : s_.functions_[f]) {
      if (p == kUnset)
        throw DomainError("function '" + s_.vocab_->functions()[f].name + "' is not total on the universe");
    }
  }
  return std::move(s_);
}

FiniteStructure reduct(const FiniteStructure& s, const VocabularyPtr& sub) {
  const Vocabulary& full = s.vocabulary();
  if (!full.includes(*sub)) throw SignatureError("reduct vocabulary is not a sub-vocabulary");
  StructureBuilder b(sub, s.universe());
  for (std::size_t r = 0; r < sub->relations().size(); ++r) {
    const std::size_t src = *full.find_relation(sub->relations()[r].name);
    const std::size_t count = s.table_size(sub->relations()[r].arity);
    for (std::size_t i = 0; i < count; ++i)
      if (s.relation_bit(src, i)) b.set_bit(r, i);
  }
  for (std::size_t f = 0; f < sub->functions().size(); ++f) {
    const std::size_t src = *full.find_function(sub->functions()[f].name);
    const std::size_t count = s.table_size(sub->functions()[f].arity);
    for (std::size_t i = 0; i < count; ++i) b.set_entry(f, i, s.function_entry(src, i));
  }
  return std::move(b).build();
}

bool is_substructure(const FiniteStructure& m, const FiniteStructure& n) {
  if (!same_vocabulary(m.vocabulary_ptr(), n.vocabulary_ptr())) return false;
  if (!is_subset(m.universe(), n.universe())) return false;
  std::vector<Position> embed(m.size());
  for (Position p = 0; p < m.size(); ++p) embed[p] = *n.position(m.element(p));
  const Vocabulary& v = m.vocabulary();
  std::vector<Position> local;
  std::vector<Position> outer;
  for (std::size_t r = 0; r < v.relations().size(); ++r) {
    const std::size_t arity = v.relations()[r].arity;
    local.assign(arity, 0);
    outer.assign(arity, 0);
    const std::size_t count = m.table_size(arity);
    for (std::size_t i = 0; i < count; ++i) {
      decode(i, m.size(), local);
      for (std::size_t k = 0; k < arity; ++k) outer[k] = embed[local[k]];
      if (m.relation_bit(r, i) != n.holds(r, outer)) return false;
    }
  }
  for (std::size_t f = 0; f < v.functions().size(); ++f) {
    const std::size_t arity = v.functions()[f].arity;
    local.assign(arity, 0);
    outer.assign(arity, 0);
    const std::size_t count = m.table_size(arity);
    for (std::size_t i = 0; i < count; ++i) {
      decode(i, m.size(), local);
      for (std::size_t k = 0; k < arity; ++k) outer[k] = embed[local[k]];
      if (embed[m.function_entry(f, i)] != n.apply(f, outer)) return false;
    }
  }
  return true;
}

std::optional<FiniteStructure> induced_substructure(const FiniteStructure& n, const ElementSet& subset) {
  const Vocabulary& v = n.vocabulary();
  if (subset.empty() && v.has_constants()) return std::nullopt;
  std::vector<Position> embed;
  embed.reserve(subset.size());
  for (Element e : subset) {
    auto p = n.position(e);
    if (!p) throw DomainError("element " + std::to_string(e) + " not in universe");
    embed.push_back(*p);
  }
  // Position of each outer element inside the subset, or kUnset.
  std::vector<Position> inner(n.size(), kUnset);
  for (Position i = 0; i < embed.size(); ++i) inner[embed[i]] = i;

  StructureBuilder b(n.vocabulary_ptr(), subset);
  std::vector<Position> local;
  std::vector<Position> outer;
  for (std::size_t f = 0; f < v.functions().size(); ++f) {
    const std::size_t arity = v.functions()[f].arity;
    local.assign(arity, 0);
    outer.assign(arity, 0);
    const std::size_t count = b.peek().table_size(arity);
    for (std::size_t i = 0; i < count; ++i) {
      decode(i, subset.size(), local);
      for (std::size_t k = 0; k < arity; ++k) outer[k] = embed[local[k]];
      const Position value = inner[n.apply(f, outer)];
      if (value == kUnset) return std::nullopt;
      b.set_entry(f, i, value);
    }
  }
  for (std::size_t r = 0; r < v.relations().size(); ++r) {
    const std::size_t arity = v.relations()[r].arity;
    local.assign(arity, 0);
    outer.assign(arity, 0);
    const std::size_t count = b.peek().table_size(arity);
    for (std::size_t i = 0; i < count; ++i) {
      decode(i, subset.size(), local);
      for (std::size_t k = 0; k < arity; ++k) outer[k] = embed[local[k]];
      if (n.holds(r, outer)) b.set_bit(r, i);
    }
  }
  return std::move(b).build();
}

ElementSet generated_set(const FiniteStructure& s, const ElementSet& seed) {
  std::vector<bool> in(s.size(), false);
  for (Element e : seed) {
    auto p = s.position(e);
    if (!p) throw DomainError("element " + std::to_string(e) + " not in universe");
    in[*p] = true;
  }
  const Vocabulary& v = s.vocabulary();
  std::vector<Position> args;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t f = 0; f < v.functions().size(); ++f) {
      const std::size_t arity = v.functions()[f].arity;
      args.assign(arity, 0);
      const std::size_t count = s.table_size(arity);
      for (std::size_t i = 0; i < count; ++i) {
        decode(i, s.size(), args);
        if (!std::all_of(args.begin(), args.end(), [&](Position p) { return in[p]; })) continue;
        const Position value = s.function_entry(f, i);
        if (!in[value]) {
          in[value] = true;
          changed = true;
        }
      }
    }
  }
  ElementSet out;
  for (Position p = 0; p < s.size(); ++p)
    if (in[p]) out.push_back(s.element(p));
  return out;
}

FiniteStructure generated_substructure(const FiniteStructure& s, const ElementSet& seed) {
  return *induced_substructure(s, generated_set(s, seed));
}

FiniteStructure relabel(const FiniteStructure& s, const std::vector<Element>& image) {
  if (image.size() != s.size()) throw DomainError("relabeling has wrong length");
  ElementSet target = make_set(image);
  if (target.size() != image.size()) throw DomainError("relabeling is not injective");
  // new position of each old position
  std::vector<Position> moved(s.size());
  for (Position p = 0; p < s.size(); ++p)
    moved[p] = static_cast<Position>(std::lower_bound(target.begin(), target.end(), image[p]) - target.begin());
  StructureBuilder b(s.vocabulary_ptr(), target);
  const Vocabulary& v = s.vocabulary();
  std::vector<Position> args;
  for (std::size_t r = 0; r < v.relations().size(); ++r) {
    const std::size_t arity = v.relations()[r].arity;
    args.assign(arity, 0);
    const std::size_t count = s.table_size(arity);
    for (std::size_t i = 0; i < count; ++i) {
      if (!s.relation_bit(r, i)) continue;
      decode(i, s.size(), args);
      for (auto& a : args) a = moved[a];
      b.set_bit(r, b.peek().index_of(args));
    }
  }
  for (std::size_t f = 0; f < v.functions().size(); ++f) {
    const std::size_t arity = v.functions()[f].arity;
    args.assign(arity, 0);
    const std::size_t count = s.table_size(arity);
    for (std::size_t i = 0; i < count; ++i) {
      decode(i, s.size(), args);
      for (auto& a : args) a = moved[a];
      b.set_entry(f, b.peek().index_of(args), moved[s.function_entry(f, i)]);
    }
  }
  return std::move(b).build();
}

DecoratedStructure::DecoratedStructure(FiniteStructure b, std::vector<ElementSet> s)
    : base(std::move(b)), subsets(std::move(s)) {
  for (auto& sub : subsets) {
    sub = make_set(std::move(sub));
    if (!is_subset(sub, base.universe())) throw DomainError("distinguished subset is not inside the universe");
  }
}

}  // namespace qstruct
