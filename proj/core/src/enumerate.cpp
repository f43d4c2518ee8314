#include "qstruct/enumerate.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <string>

#include "qstruct/errors.hpp"
#include "qstruct/isomorphism.hpp"
#include "tuple_index.hpp"

namespace qstruct {

namespace {

std::string vocab_id(const Vocabulary& v) {
  std::string id;
  for (const auto& r : v.relations()) id += "r" + r.name + "/" + std::to_string(r.arity) + ";";
  for (const auto& f : v.functions()) id += "f" + f.name + "/" + std::to_string(f.arity) + ";";
  return id;
}

// One free slot of an interpretation: a relation bit or a function entry.
struct Slot {
  bool relation;
  std::size_t symbol;
  std::size_t index;
};

std::size_t slot_base(const Slot& s, std::size_t n) { return s.relation ? 2 : n; }

// Runs `visit` over every assignment of values to `slots` on top of `seed`.
template <typename Visit>
void for_each_filling(const StructureBuilder& seed, const std::vector<Slot>& slots, std::size_t n,
                      std::size_t max_structures, std::size_t& examined, Visit&& visit) {
  if (n == 0 && std::any_of(slots.begin(), slots.end(), [](const Slot& s) { return !s.relation; })) return;
  std::vector<Position> digits(slots.size(), 0);
  while (true) {
    if (++examined > max_structures) throw CapacityError("structure enumeration exceeds cap", examined);
    StructureBuilder b = seed;
    for (std::size_t i = 0; i < slots.size(); ++i) {
      if (slots[i].relation)
        b.set_bit(slots[i].symbol, slots[i].index, digits[i] != 0);
      else
        b.set_entry(slots[i].symbol, slots[i].index, digits[i]);
    }
    visit(std::move(b).build());
    std::size_t i = slots.size();
    bool advanced = false;
    while (i-- > 0) {
      if (++digits[i] < slot_base(slots[i], n)) {
        advanced = true;
        break;
      }
      digits[i] = 0;
    }
    if (!advanced) return;
  }
}

std::vector<Slot> all_slots(const Vocabulary& v, std::size_t n, const Vocabulary* fixed = nullptr) {
  std::vector<Slot> slots;
  FiniteStructure probe = StructureBuilder(share(Vocabulary{}), n).peek();
  for (std::size_t r = 0; r < v.relations().size(); ++r) {
    if (fixed && fixed->find_relation(v.relations()[r].name)) continue;
    const std::size_t count = probe.table_size(v.relations()[r].arity);
    for (std::size_t i = 0; i < count; ++i) slots.push_back({true, r, i});
  }
  for (std::size_t f = 0; f < v.functions().size(); ++f) {
    if (fixed && fixed->find_function(v.functions()[f].name)) continue;
    const std::size_t count = probe.table_size(v.functions()[f].arity);
    for (std::size_t i = 0; i < count; ++i) slots.push_back({false, f, i});
  }
  return slots;
}

std::vector<FiniteStructure> labelled_of_size(const VocabularyPtr& vocab, std::size_t n, std::size_t max_structures,
                                              std::size_t& examined) {
  std::vector<FiniteStructure> out;
  if (n == 0 && vocab->has_constants()) return out;
  StructureBuilder seed(vocab, n);
  for_each_filling(seed, all_slots(*vocab, n), n, max_structures, examined,
                   [&](FiniteStructure s) { out.push_back(std::move(s)); });
  return out;
}

class IsoCache {
 public:
  std::vector<FiniteStructure> get(const VocabularyPtr& vocab, std::size_t size, std::size_t max_structures) {
    std::lock_guard lock(mu_);
    auto& levels = cache_[vocab_id(*vocab)];
    while (levels.size() <= size) levels.push_back(next_level(vocab, levels, max_structures));
    return levels[size];
  }

 private:
  static std::vector<FiniteStructure> dedupe(std::map<std::string, FiniteStructure>& by_key) {
    std::vector<FiniteStructure> out;
    out.reserve(by_key.size());
    for (auto& [key, s] : by_key) out.push_back(std::move(s));
    return out;
  }

  static std::vector<FiniteStructure> next_level(const VocabularyPtr& vocab,
                                                 const std::vector<std::vector<FiniteStructure>>& levels,
                                                 std::size_t max_structures) {
    const std::size_t n = levels.size();
    std::size_t examined = 0;
    std::map<std::string, FiniteStructure> by_key;
    auto keep = [&](FiniteStructure s) {
      CanonicalForm cf = canonical_form(DecoratedStructure(std::move(s)));
      by_key.try_emplace(std::move(cf.key), std::move(cf.normalized.base));
    };
    if (n == 0 || !vocab->relational()) {
      for (auto& s : labelled_of_size(vocab, n, max_structures, examined)) keep(std::move(s));
      return dedupe(by_key);
    }
    // Every structure on n points restricts to one on the first n-1 points,
    // so extending the previous representatives by one point is complete.
    const Vocabulary& v = *vocab;
    std::vector<Slot> fresh;
    std::vector<std::vector<std::size_t>> moved(v.relations().size());
    std::vector<Position> pos;
    for (std::size_t r = 0; r < v.relations().size(); ++r) {
      const std::size_t a = v.relations()[r].arity;
      pos.assign(a, 0);
      do {
        if (std::find(pos.begin(), pos.end(), n - 1) != pos.end())
          fresh.push_back({true, r, detail::encode(pos, n)});
      } while (detail::advance(pos, n));
      pos.assign(a, 0);
      if (n > 1) {
        do {
          moved[r].push_back(detail::encode(pos, n));
        } while (detail::advance(pos, n - 1));
      }
    }
    for (const auto& prev : levels[n - 1]) {
      StructureBuilder seed(vocab, n);
      for (std::size_t r = 0; r < v.relations().size(); ++r)
        for (std::size_t i = 0; i < moved[r].size(); ++i)
          if (prev.relation_bit(r, i)) seed.set_bit(r, moved[r][i]);
      for_each_filling(seed, fresh, n, max_structures, examined, keep);
    }
    return dedupe(by_key);
  }

  std::mutex mu_;
  std::map<std::string, std::vector<std::vector<FiniteStructure>>> cache_;
};

IsoCache& iso_cache() {
  static IsoCache cache;
  return cache;
}

// Rebinds cached structures to the caller's vocabulary pointer.
FiniteStructure rebind(const FiniteStructure& s, const VocabularyPtr& vocab) {
  if (s.vocabulary_ptr() == vocab) return s;
  return reduct(s, vocab);
}

}  // namespace

std::vector<FiniteStructure> iso_types_of_size(const VocabularyPtr& vocab, std::size_t size,
                                               std::size_t max_structures) {
  std::vector<FiniteStructure> out;
  for (const auto& s : iso_cache().get(vocab, size, max_structures)) out.push_back(rebind(s, vocab));
  return out;
}

std::vector<FiniteStructure> enumerate_structures(const VocabularyPtr& vocab, std::size_t max_size, bool up_to_iso,
                                                  std::size_t max_structures) {
  std::vector<FiniteStructure> out;
  std::size_t examined = 0;
  for (std::size_t k = 0; k <= max_size; ++k) {
    auto level = up_to_iso ? iso_types_of_size(vocab, k, max_structures)
                           : labelled_of_size(vocab, k, max_structures, examined);
    if (out.size() + level.size() > max_structures)
      throw CapacityError("structure enumeration exceeds cap", out.size() + level.size());
    for (auto& s : level) out.push_back(std::move(s));
  }
  return out;
}

std::vector<DecoratedStructure> enumerate_expansions(const DecoratedStructure& m, const VocabularyPtr& tau,
                                                     std::size_t max_structures) {
  const Vocabulary& small = m.base.vocabulary();
  if (!tau->includes(small)) throw SignatureError("expansion vocabulary does not include the structure's vocabulary");
  const std::size_t n = m.base.size();
  for (const auto& f : tau->functions())
    if (f.arity == 0 && !small.find_function(f.name) && n == 0)
      throw DomainError("cannot expand an empty structure by constant '" + f.name + "'");

  StructureBuilder seed(tau, m.base.universe());
  for (std::size_t r = 0; r < small.relations().size(); ++r) {
    const std::size_t dst = *tau->find_relation(small.relations()[r].name);
    const std::size_t count = m.base.table_size(small.relations()[r].arity);
    for (std::size_t i = 0; i < count; ++i)
      if (m.base.relation_bit(r, i)) seed.set_bit(dst, i);
  }
  for (std::size_t f = 0; f < small.functions().size(); ++f) {
    const std::size_t dst = *tau->find_function(small.functions()[f].name);
    const std::size_t count = m.base.table_size(small.functions()[f].arity);
    for (std::size_t i = 0; i < count; ++i) seed.set_entry(dst, i, m.base.function_entry(f, i));
  }

  std::vector<DecoratedStructure> out;
  std::set<std::string> seen;
  std::size_t examined = 0;
  for_each_filling(seed, all_slots(*tau, n, &small), n, max_structures, examined, [&](FiniteStructure s) {
    DecoratedStructure d(std::move(s), m.subsets);
    if (seen.insert(canonical_key(d)).second) out.push_back(std::move(d));
  });
  return out;
}

std::vector<FiniteStructure> enumerate_expansions(const FiniteStructure& m, const VocabularyPtr& tau,
                                                  std::size_t max_structures) {
  std::vector<FiniteStructure> out;
  for (auto& d : enumerate_expansions(DecoratedStructure(m), tau, max_structures)) out.push_back(std::move(d.base));
  return out;
}

}  // namespace qstruct
