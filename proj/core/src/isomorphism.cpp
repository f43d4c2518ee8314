#include "qstruct/isomorphism.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>

#include "qstruct/errors.hpp"
#include "tuple_index.hpp"

namespace qstruct {

namespace {

constexpr Position kNone = std::numeric_limits<Position>::max();

using Signature = std::vector<std::uint64_t>;

std::vector<std::vector<bool>> membership(const DecoratedStructure& s) {
  std::vector<std::vector<bool>> out;
  for (const auto& sub : s.subsets) {
    std::vector<bool> m(s.base.size(), false);
    for (Element e : sub) m[*s.base.position(e)] = true;
    out.push_back(std::move(m));
  }
  return out;
}

// Isomorphism-invariant coloring of positions.
std::vector<Signature> colors(const DecoratedStructure& d, const std::vector<std::vector<bool>>& member) {
  const FiniteStructure& s = d.base;
  const std::size_t n = s.size();
  const Vocabulary& v = s.vocabulary();
  std::vector<Signature> sig(n);
  for (const auto& m : member)
    for (std::size_t p = 0; p < n; ++p) sig[p].push_back(m[p] ? 1 : 0);

  std::vector<Position> pos;
  for (std::size_t r = 0; r < v.relations().size(); ++r) {
    const std::size_t a = v.relations()[r].arity;
    std::vector<std::uint64_t> counts(n * (a + 1), 0);
    pos.assign(a, 0);
    const std::size_t total = s.table_size(a);
    for (std::size_t i = 0; i < total; ++i) {
      if (!s.relation_bit(r, i)) continue;
      detail::decode(i, n, pos);
      bool diagonal = true;
      for (std::size_t j = 0; j < a; ++j) {
        ++counts[pos[j] * (a + 1) + j];
        diagonal = diagonal && pos[j] == pos[0];
      }
      if (diagonal) ++counts[pos[0] * (a + 1) + a];
    }
    for (std::size_t p = 0; p < n; ++p)
      sig[p].insert(sig[p].end(), counts.begin() + p * (a + 1), counts.begin() + (p + 1) * (a + 1));
  }
  for (std::size_t f = 0; f < v.functions().size(); ++f) {
    const std::size_t a = v.functions()[f].arity;
    if (a == 0) {
      const Position c = s.function_entry(f, 0);
      for (std::size_t p = 0; p < n; ++p) sig[p].push_back(p == c ? 1 : 0);
      continue;
    }
    std::vector<std::uint64_t> preimages(n, 0);
    const std::size_t total = s.table_size(a);
    for (std::size_t i = 0; i < total; ++i) ++preimages[s.function_entry(f, i)];
    pos.assign(a, 0);
    for (std::size_t p = 0; p < n; ++p) {
      std::fill(pos.begin(), pos.end(), static_cast<Position>(p));
      sig[p].push_back(preimages[p]);
      sig[p].push_back(s.apply(f, pos) == p ? 1 : 0);
    }
  }
  return sig;
}

class Search {
 public:
  Search(const DecoratedStructure& src, const DecoratedStructure& dst, const PinMap& pins)
      : src_(src.base), dst_(dst.base), n_(src.base.size()) {
    if (!same_vocabulary(src.base.vocabulary_ptr(), dst.base.vocabulary_ptr()))
      throw SignatureError("isomorphism search between different vocabularies");
    if (src.subsets.size() != dst.subsets.size())
      throw SignatureError("isomorphism search between different subset counts");
    std::map<Element, Element> forward;
    std::map<Element, Element> backward;
    for (auto [a, b] : pins) {
      if (!src.base.contains(a) || !dst.base.contains(b)) throw PinError("pin outside the universe");
      auto [fi, fnew] = forward.emplace(a, b);
      auto [bi, bnew] = backward.emplace(b, a);
      if ((!fnew && fi->second != b) || (!bnew && bi->second != a)) throw PinError("pins are not injective");
    }
    if (n_ != dst.base.size()) {
      feasible_ = false;
      return;
    }
    const auto src_sig = colors(src, membership(src));
    const auto dst_sig = colors(dst, membership(dst));
    {
      auto a = src_sig;
      auto b = dst_sig;
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      if (a != b) {
        feasible_ = false;
        return;
      }
    }
    candidates_.resize(n_);
    for (Position p = 0; p < n_; ++p) {
      auto pin = forward.find(src.base.element(p));
      for (Position q = 0; q < n_; ++q) {
        if (src_sig[p] != dst_sig[q]) continue;
        if (pin != forward.end() && dst.base.element(q) != pin->second) continue;
        if (pin == forward.end() && backward.count(dst.base.element(q))) continue;
        candidates_[p].push_back(q);
      }
      if (candidates_[p].empty()) {
        feasible_ = false;
        return;
      }
    }
    order_.resize(n_);
    for (Position p = 0; p < n_; ++p) order_[p] = p;
    std::stable_sort(order_.begin(), order_.end(),
                     [&](Position a, Position b) { return candidates_[a].size() < candidates_[b].size(); });
    map_.assign(n_, kNone);
    used_.assign(n_, false);
  }

  std::size_t run(const std::function<bool(const Isomorphism&)>& visit) {
    if (!feasible_) return 0;
    visit_ = &visit;
    count_ = 0;
    stop_ = false;
    extend(0);
    return count_;
  }

 private:
  bool consistent(std::size_t depth) {
    const Vocabulary& v = src_.vocabulary();
    const std::size_t base = depth + 1;
    std::vector<Position> digits;
    std::vector<Position> s_args;
    std::vector<Position> d_args;
    for (std::size_t r = 0; r < v.relations().size(); ++r) {
      const std::size_t a = v.relations()[r].arity;
      digits.assign(a, 0);
      s_args.assign(a, 0);
      d_args.assign(a, 0);
      do {
        if (std::find(digits.begin(), digits.end(), depth) == digits.end()) continue;
        for (std::size_t j = 0; j < a; ++j) {
          s_args[j] = order_[digits[j]];
          d_args[j] = map_[s_args[j]];
        }
        if (src_.holds(r, s_args) != dst_.holds(r, d_args)) return false;
      } while (detail::advance(digits, base));
    }
    for (std::size_t f = 0; f < v.functions().size(); ++f) {
      const std::size_t a = v.functions()[f].arity;
      if (a == 0) continue;
      digits.assign(a, 0);
      s_args.assign(a, 0);
      d_args.assign(a, 0);
      do {
        if (std::find(digits.begin(), digits.end(), depth) == digits.end()) continue;
        for (std::size_t j = 0; j < a; ++j) {
          s_args[j] = order_[digits[j]];
          d_args[j] = map_[s_args[j]];
        }
        const Position s_val = src_.apply(f, s_args);
        const Position d_val = dst_.apply(f, d_args);
        if (map_[s_val] != kNone) {
          if (map_[s_val] != d_val) return false;
        } else if (used_[d_val]) {
          return false;
        }
      } while (detail::advance(digits, base));
    }
    return true;
  }

  bool functions_agree() const {
    const Vocabulary& v = src_.vocabulary();
    std::vector<Position> s_args;
    std::vector<Position> d_args;
    for (std::size_t f = 0; f < v.functions().size(); ++f) {
      const std::size_t a = v.functions()[f].arity;
      s_args.assign(a, 0);
      d_args.assign(a, 0);
      const std::size_t total = src_.table_size(a);
      for (std::size_t i = 0; i < total; ++i) {
        detail::decode(i, n_, s_args);
        for (std::size_t j = 0; j < a; ++j) d_args[j] = map_[s_args[j]];
        if (map_[src_.function_entry(f, i)] != dst_.apply(f, d_args)) return false;
      }
    }
    return true;
  }

  void extend(std::size_t depth) {
    if (stop_) return;
    if (depth == n_) {
      if (!functions_agree()) return;
      std::vector<Element> image(n_);
      for (Position p = 0; p < n_; ++p) image[p] = dst_.element(map_[p]);
      ++count_;
      if (!(*visit_)(Isomorphism(src_.universe(), std::move(image)))) stop_ = true;
      return;
    }
    const Position p = order_[depth];
    for (Position q : candidates_[p]) {
      if (used_[q]) continue;
      map_[p] = q;
      used_[q] = true;
      if (consistent(depth)) extend(depth + 1);
      map_[p] = kNone;
      used_[q] = false;
      if (stop_) return;
    }
  }

  const FiniteStructure& src_;
  const FiniteStructure& dst_;
  std::size_t n_;
  bool feasible_ = true;
  std::vector<std::vector<Position>> candidates_;
  std::vector<Position> order_;
  std::vector<Position> map_;
  std::vector<bool> used_;
  const std::function<bool(const Isomorphism&)>* visit_ = nullptr;
  std::size_t count_ = 0;
  bool stop_ = false;
};

std::string vocabulary_tag(const Vocabulary& v, std::size_t n, std::size_t subsets) {
  std::string tag = "n" + std::to_string(n) + "s" + std::to_string(subsets);
  for (const auto& r : v.relations()) tag += ";r" + r.name + "/" + std::to_string(r.arity);
  for (const auto& f : v.functions()) tag += ";f" + f.name + "/" + std::to_string(f.arity);
  return tag + "|";
}

// Encoding of the structure read through `order` (new label i is the element
// at old position order[i]). Present tuples encode as '0' so that the least
// encoding lists relation tuples as early as possible.
void encode(const DecoratedStructure& d, const std::vector<std::vector<bool>>& member,
            const std::vector<Position>& order, const std::vector<Position>& inverse, std::string& out) {
  const FiniteStructure& s = d.base;
  const std::size_t n = s.size();
  const Vocabulary& v = s.vocabulary();
  out.clear();
  std::vector<Position> digits;
  std::vector<Position> old;
  for (std::size_t r = 0; r < v.relations().size(); ++r) {
    const std::size_t a = v.relations()[r].arity;
    if (n == 0) continue;
    digits.assign(a, 0);
    old.assign(a, 0);
    do {
      for (std::size_t j = 0; j < a; ++j) old[j] = order[digits[j]];
      out.push_back(s.holds(r, old) ? '0' : '1');
    } while (detail::advance(digits, n));
  }
  for (std::size_t f = 0; f < v.functions().size(); ++f) {
    const std::size_t a = v.functions()[f].arity;
    if (n == 0) continue;
    digits.assign(a, 0);
    old.assign(a, 0);
    do {
      for (std::size_t j = 0; j < a; ++j) old[j] = order[digits[j]];
      out.push_back(static_cast<char>(inverse[s.apply(f, old)] + 1));
    } while (a > 0 && detail::advance(digits, n));
  }
  for (const auto& m : member)
    for (std::size_t i = 0; i < n; ++i) out.push_back(m[order[i]] ? '0' : '1');
}

}  // namespace

Element Isomorphism::operator()(Element e) const {
  auto it = std::lower_bound(domain_.begin(), domain_.end(), e);
  if (it == domain_.end() || *it != e) throw DomainError("element " + std::to_string(e) + " outside isomorphism domain");
  return image_[static_cast<std::size_t>(it - domain_.begin())];
}

ElementSet Isomorphism::image_of(const ElementSet& s) const {
  std::vector<Element> out;
  out.reserve(s.size());
  for (Element e : s) out.push_back((*this)(e));
  return make_set(std::move(out));
}

std::size_t for_each_isomorphism(const DecoratedStructure& src, const DecoratedStructure& dst, const PinMap& pins,
                                 const std::function<bool(const Isomorphism&)>& visit) {
  Search search(src, dst, pins);
  return search.run(visit);
}

std::optional<Isomorphism> find_isomorphism(const DecoratedStructure& src, const DecoratedStructure& dst,
                                            const PinMap& pins) {
  std::optional<Isomorphism> found;
  for_each_isomorphism(src, dst, pins, [&](const Isomorphism& iso) {
    found = iso;
    return false;
  });
  return found;
}

std::optional<Isomorphism> find_isomorphism(const FiniteStructure& src, const FiniteStructure& dst,
                                            const PinMap& pins) {
  return find_isomorphism(DecoratedStructure(src), DecoratedStructure(dst), pins);
}

std::size_t count_isomorphisms(const DecoratedStructure& src, const DecoratedStructure& dst, const PinMap& pins) {
  return for_each_isomorphism(src, dst, pins, [](const Isomorphism&) { return true; });
}

CanonicalForm canonical_form(const DecoratedStructure& d) {
  const FiniteStructure& s = d.base;
  const std::size_t n = s.size();
  const auto member = membership(d);
  const auto sig = colors(d, member);

  std::vector<Position> order(n);
  for (Position p = 0; p < n; ++p) order[p] = p;
  std::stable_sort(order.begin(), order.end(), [&](Position a, Position b) { return sig[a] > sig[b]; });

  // Color classes as [begin, end) ranges of `order`. Descending colors put
  // the least element of a chain first, so orders normalize to 0 < 1 < ...
  std::vector<std::pair<std::size_t, std::size_t>> classes;
  std::size_t orderings = 1;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i + 1;
    while (j < n && sig[order[j]] == sig[order[i]]) ++j;
    classes.emplace_back(i, j);
    for (std::size_t k = 2; k <= j - i; ++k) {
      orderings *= k;
      if (orderings > kCanonicalOrderingCap) throw CapacityError("canonical labeling exceeds ordering cap", orderings);
    }
    i = j;
  }
  for (auto [b, e] : classes) std::sort(order.begin() + b, order.begin() + e);

  std::string best;
  std::vector<Position> best_order;
  std::string current;
  std::vector<Position> inverse(n);
  bool first = true;
  while (true) {
    for (Position i = 0; i < n; ++i) inverse[order[i]] = i;
    encode(d, member, order, inverse, current);
    if (first || current < best) {
      best = current;
      best_order = order;
      first = false;
    }
    // Next ordering: odometer over per-class permutations.
    std::size_t c = classes.size();
    bool advanced = false;
    while (c-- > 0) {
      auto [b, e] = classes[c];
      if (std::next_permutation(order.begin() + b, order.begin() + e)) {
        advanced = true;
        break;
      }
    }
    if (!advanced) break;
  }

  CanonicalForm out;
  out.labeling.assign(n, 0);
  for (Position i = 0; i < n; ++i) out.labeling[best_order[i]] = i;
  FiniteStructure relabeled = relabel(s, out.labeling);
  std::vector<ElementSet> subsets;
  for (const auto& m : member) {
    ElementSet sub;
    for (Position p = 0; p < n; ++p)
      if (m[p]) sub.push_back(out.labeling[p]);
    subsets.push_back(make_set(std::move(sub)));
  }
  out.normalized = DecoratedStructure(std::move(relabeled), std::move(subsets));
  out.key = vocabulary_tag(s.vocabulary(), n, d.subsets.size()) + best;
  return out;
}

DecoratedStructure normalize(const DecoratedStructure& s) { return canonical_form(s).normalized; }

FiniteStructure normalize(const FiniteStructure& s) { return canonical_form(DecoratedStructure(s)).normalized.base; }

std::string canonical_key(const DecoratedStructure& s) { return canonical_form(s).key; }

std::string canonical_key(const FiniteStructure& s) { return canonical_form(DecoratedStructure(s)).key; }

}  // namespace qstruct
