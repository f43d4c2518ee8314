#include "qstruct/closure.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "qstruct/errors.hpp"
#include "qstruct/isomorphism.hpp"
#include "qstruct/parallel.hpp"
#include "qstruct/syntax.hpp"

namespace qstruct {

namespace {

std::string ids_text(const ElementSet& s) {
  std::string out = "(";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? " " : "") + std::to_string(s[i]);
  return out + ")";
}

bool is_subset(SubsetMask a, SubsetMask b) { return (a & ~b) == 0; }

}  // namespace

ClosureOracle::ClosureOracle(const ModelClass& k, FiniteStructure n, std::size_t max_subsets)
    : n_(std::move(n)), strong_(k.strong_subsets(n_, max_subsets)), cache_(strong_.size()) {
  if (!strong_.back()) throw DomainError("structure is not a member of the class");
}

SubsetMask ClosureOracle::closure_mask(SubsetMask a) const {
  if (a >= cache_.size()) throw DomainError("subset mask outside the universe");
  if (cache_[a]) return *cache_[a];
  SubsetMask meet = cache_.size() - 1;
  for (SubsetMask m = 0; m < strong_.size(); ++m)
    if (strong_[m] && is_subset(a, m)) meet &= m;
  cache_[a] = meet;
  return meet;
}

ClosureResult ClosureOracle::closure(SubsetMask a) const {
  const SubsetMask c = closure_mask(a);
  auto sub = induced_substructure(n_, mask_to_set(n_, c));
  // The intersection of function-closed sets is function-closed.
  if (!sub) throw IntersectionFailure("intersection of strong submodels is not a substructure");
  return {std::move(*sub), c, static_cast<bool>(strong_[c])};
}

ClosureResult ClosureOracle::closure(const ElementSet& a) const { return closure(set_to_mask(n_, a)); }

std::vector<FiniteStructure> ClosureOracle::strong_submodels() const {
  std::vector<std::pair<std::pair<int, SubsetMask>, SubsetMask>> order;
  for (SubsetMask m = 0; m < strong_.size(); ++m)
    if (strong_[m]) order.push_back({{__builtin_popcountll(m), m}, m});
  std::sort(order.begin(), order.end());
  std::vector<FiniteStructure> out;
  for (const auto& [key, m] : order) out.push_back(*induced_substructure(n_, mask_to_set(n_, m)));
  return out;
}

std::vector<FiniteStructure> strong_submodels(const FiniteStructure& n, const ModelClass& k, std::size_t max_subsets) {
  return ClosureOracle(k, n, max_subsets).strong_submodels();
}

ClosureResult cl(const FiniteStructure& n, const ElementSet& a, const ModelClass& k, std::size_t max_subsets) {
  return ClosureOracle(k, n, max_subsets).closure(a);
}

Report verify_intersections(const ModelClass& k, const Caps& caps) {
  Report r;
  r.command = "verify --check intersections";
  r.caps = {{"max-size", std::to_string(caps.max_size)}, {"max-subsets", std::to_string(caps.max_subsets)}};
  auto& check = r.add("intersections");
  const auto members = k.members(caps.max_size);
  auto parts = parallel_map<CheckResult>(members.size(), caps.jobs, [&](std::size_t i) {
    const FiniteStructure& n = members[i];
    CheckResult part;
    part.count("members");
    ClosureOracle oracle(k, n, caps.max_subsets);
    for (SubsetMask a = 0; a < oracle.strong().size(); ++a) {
      part.count("subsets");
      const SubsetMask c = oracle.closure_mask(a);
      if (!oracle.strong()[c])
        part.fail({{"N", print_structure(n)}, {"A", ids_text(mask_to_set(n, a))}, {"cl", ids_text(mask_to_set(n, c))}});
    }
    return part;
  });
  for (const auto& part : parts) check.merge(part);
  return r;
}

Report check_cl_coherence(const ModelClass& k, const Caps& caps) {
  Report r;
  r.command = "verify --check coherence";
  r.caps = {{"max-size", std::to_string(caps.max_size)}, {"max-subsets", std::to_string(caps.max_subsets)}};
  auto& check = r.add("closure-coherence");
  const auto members = k.members(caps.max_size);
  auto parts = parallel_map<CheckResult>(members.size(), caps.jobs, [&](std::size_t i) {
    const FiniteStructure& n = members[i];
    CheckResult part;
    part.count("members");
    ClosureOracle on(k, n, caps.max_subsets);
    for (SubsetMask m = 0; m < on.strong().size(); ++m) {
      if (!on.strong()[m]) continue;
      part.count("strong pairs");
      const ElementSet universe = mask_to_set(n, m);
      ClosureOracle om(k, *induced_substructure(n, universe), caps.max_subsets);
      for (SubsetMask a = m;; a = (a - 1) & m) {
        const ElementSet a_set = mask_to_set(n, a);
        const ElementSet in_m = mask_to_set(om.structure(), om.closure_mask(set_to_mask(om.structure(), a_set)));
        const ElementSet in_n = mask_to_set(n, on.closure_mask(a));
        part.count("subsets");
        if (in_m != in_n)
          part.fail({{"N", print_structure(n)},
                     {"M", ids_text(universe)},
                     {"A", ids_text(a_set)},
                     {"cl in M", ids_text(in_m)},
                     {"cl in N", ids_text(in_n)}});
        if (a == 0) break;
      }
    }
    return part;
  });
  for (const auto& part : parts) check.merge(part);
  return r;
}

bool galois_equiv(const PointedModel& p, const PointedModel& q, const ModelClass& k, std::size_t max_subsets) {
  if (p.tuple.size() != q.tuple.size())
    throw ArityError("tuples of length " + std::to_string(p.tuple.size()) + " and " + std::to_string(q.tuple.size()));
  std::map<Element, Element> forward, backward;
  for (std::size_t i = 0; i < p.tuple.size(); ++i) {
    auto [f, fresh_f] = forward.emplace(p.tuple[i], q.tuple[i]);
    auto [b, fresh_b] = backward.emplace(q.tuple[i], p.tuple[i]);
    if (f->second != q.tuple[i] || b->second != p.tuple[i]) return false;
  }
  const ClosureResult cp = cl(p.structure, make_set(p.tuple), k, max_subsets);
  const ClosureResult cq = cl(q.structure, make_set(q.tuple), k, max_subsets);
  if (cp.structure.size() != cq.structure.size()) return false;
  PinMap pins(forward.begin(), forward.end());
  return find_isomorphism(cp.structure, cq.structure, pins).has_value();
}

std::vector<PointedModel> enumerate_dk(const ModelClass& k, std::size_t tuple_len, const Caps& caps) {
  std::map<std::pair<std::size_t, std::string>, PointedModel> found;
  for (const auto& n : k.members(caps.max_size)) {
    ClosureOracle oracle(k, n, caps.max_subsets);
    const std::size_t size = n.size();
    if (size == 0 && tuple_len > 0) continue;
    std::vector<Position> digits(tuple_len, 0);
    while (true) {
      std::vector<Element> tuple;
      SubsetMask a = 0;
      for (Position d : digits) {
        tuple.push_back(n.element(d));
        a |= SubsetMask{1} << d;
      }
      const ClosureResult c = oracle.closure(a);
      std::vector<ElementSet> marks;
      for (Element e : tuple) marks.push_back({e});
      CanonicalForm cf = canonical_form(DecoratedStructure(c.structure, marks));
      const auto slot = std::make_pair(c.structure.size(), cf.key);
      if (!found.count(slot)) {
        std::vector<Element> moved;
        for (Element e : tuple) moved.push_back(cf.labeling[*c.structure.position(e)]);
        found.emplace(slot, PointedModel{std::move(cf.normalized.base), std::move(moved)});
      }
      std::size_t i = 0;
      while (i < tuple_len && ++digits[i] == size) digits[i++] = 0;
      if (i == tuple_len) break;
    }
  }
  std::vector<PointedModel> out;
  for (auto& [slot, p] : found) out.push_back(std::move(p));
  return out;
}

}  // namespace qstruct
