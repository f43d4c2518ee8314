#include "qstruct/model_class.hpp"

#include <algorithm>
#include <map>

#include "qstruct/errors.hpp"
#include "qstruct/isomorphism.hpp"
#include "qstruct/semantics.hpp"
#include "qstruct/syntax.hpp"

namespace qstruct {

ElementSet mask_to_set(const FiniteStructure& n, SubsetMask mask) {
  ElementSet out;
  for (Position p = 0; p < n.size(); ++p)
    if (mask & (SubsetMask{1} << p)) out.push_back(n.element(p));
  return out;
}

SubsetMask set_to_mask(const FiniteStructure& n, const ElementSet& s) {
  SubsetMask mask = 0;
  for (Element e : s) {
    auto p = n.position(e);
    if (!p) throw DomainError("element " + std::to_string(e) + " is outside the universe");
    mask |= SubsetMask{1} << *p;
  }
  return mask;
}

namespace {

std::size_t subset_count(const FiniteStructure& n, std::size_t max_subsets) {
  if (n.size() >= 63 || (std::size_t{1} << n.size()) > max_subsets)
    throw CapacityError("subset sweep over a " + std::to_string(n.size()) + "-element structure exceeds cap",
                        n.size() >= 63 ? SIZE_MAX : std::size_t{1} << n.size());
  return std::size_t{1} << n.size();
}

std::string ids_text(const ElementSet& s) {
  std::string out = "(";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? " " : "") + std::to_string(s[i]);
  return out + ")";
}

}  // namespace

std::vector<bool> ModelClass::strong_subsets(const FiniteStructure& n, std::size_t max_subsets) const {
  const std::size_t count = subset_count(n, max_subsets);
  std::vector<bool> out(count, false);
  if (!contains(n)) return out;
  for (SubsetMask mask = 0; mask < count; ++mask) {
    auto sub = induced_substructure(n, mask_to_set(n, mask));
    if (sub && strong_leq(*sub, n)) out[mask] = true;
  }
  return out;
}

DefinedClass::DefinedClass(Theory theory, Kappa kappa, std::size_t max_size)
    : theory_(std::move(theory)), kappa_(kappa), max_size_(max_size) {
  if (!theory_.vocab) theory_.vocab = share(Vocabulary{});
  for (const auto& s : theory_.sentences) well_formed(*s, *theory_.vocab);
  fragment_ = subformula_closure(theory_);
}

std::vector<FiniteStructure> DefinedClass::members(std::size_t max_size) const {
  return enumerate_models(theory_, theory_.vocab, std::min(max_size, max_size_), kappa_);
}

bool DefinedClass::contains(const FiniteStructure& n) const { return Evaluator(n, kappa_).models(theory_); }

bool DefinedClass::strong_leq(const FiniteStructure& m, const FiniteStructure& n) const {
  Evaluator em(m, kappa_);
  Evaluator en(n, kappa_);
  if (!em.models(theory_) || !en.models(theory_)) return false;
  return elem_F_star(em, en, fragment_).holds();
}

std::vector<bool> DefinedClass::strong_subsets(const FiniteStructure& n, std::size_t max_subsets) const {
  const std::size_t count = subset_count(n, max_subsets);
  std::vector<bool> out(count, false);
  Evaluator en(n, kappa_);
  if (!en.models(theory_)) return out;
  for (SubsetMask mask = 0; mask < count; ++mask) {
    auto sub = induced_substructure(n, mask_to_set(n, mask));
    if (!sub) continue;
    Evaluator em(std::move(*sub), kappa_);
    if (em.models(theory_) && elem_F_star(em, en, fragment_).holds()) out[mask] = true;
  }
  return out;
}

std::string DefinedClass::describe() const {
  return "defined class " + (theory_.name.empty() ? std::string("(unnamed)") : theory_.name) + ", " +
         std::to_string(theory_.sentences.size()) + " sentences, kappa " + kappa_.to_string();
}

ExplicitClass::ExplicitClass(VocabularyPtr vocab, std::vector<FiniteStructure> listed,
                             std::vector<std::pair<std::size_t, std::size_t>> order)
    : vocab_(std::move(vocab)), listed_(std::move(listed)), order_(std::move(order)) {
  for (std::size_t i = 0; i < listed_.size(); ++i) {
    if (!same_vocabulary(listed_[i].vocabulary_ptr(), vocab_))
      throw SignatureError("listed structure " + std::to_string(i) + " has a different vocabulary");
    by_key_[canonical_key(listed_[i])].push_back(i);
  }
  for (auto [i, j] : order_) {
    if (i >= listed_.size() || j >= listed_.size())
      throw DomainError("order pair (" + std::to_string(i) + " " + std::to_string(j) + ") is out of range");
    if (!is_substructure(listed_[i], listed_[j]))
      throw DomainError("order pair (" + std::to_string(i) + " " + std::to_string(j) +
                        "): the first structure is not a substructure of the second");
  }
}

std::vector<FiniteStructure> ExplicitClass::members(std::size_t max_size) const {
  std::map<std::pair<std::size_t, std::string>, FiniteStructure> sorted;
  for (const auto& l : listed_) {
    if (l.size() > max_size) continue;
    CanonicalForm cf = canonical_form(DecoratedStructure(l));
    sorted.try_emplace({l.size(), cf.key}, std::move(cf.normalized.base));
  }
  std::vector<FiniteStructure> out;
  for (auto& [k, s] : sorted) out.push_back(std::move(s));
  return out;
}

bool ExplicitClass::contains(const FiniteStructure& n) const {
  if (!same_vocabulary(n.vocabulary_ptr(), vocab_)) return false;
  return by_key_.count(canonical_key(n)) > 0;
}

bool ExplicitClass::strong_leq(const FiniteStructure& m, const FiniteStructure& n) const {
  if (!same_vocabulary(n.vocabulary_ptr(), vocab_) || !is_substructure(m, n)) return false;
  auto it = by_key_.find(canonical_key(n));
  if (it == by_key_.end()) return false;
  DecoratedStructure src(n, {m.universe()});
  for (std::size_t j : it->second) {
    auto try_pair = [&](std::size_t i) {
      if (listed_[i].size() != m.size()) return false;
      return find_isomorphism(src, DecoratedStructure(listed_[j], {listed_[i].universe()})).has_value();
    };
    if (try_pair(j)) return true;
    for (auto [i, jj] : order_)
      if (jj == j && try_pair(i)) return true;
  }
  return false;
}

std::string ExplicitClass::describe() const {
  return "explicit class, " + std::to_string(listed_.size()) + " listed structures, " + std::to_string(order_.size()) +
         " order pairs";
}

Report check_class_properties(const ModelClass& k, const Caps& caps) {
  Report r;
  r.command = "verify --check axioms";
  r.caps = {{"max-size", std::to_string(caps.max_size)}, {"max-subsets", std::to_string(caps.max_subsets)}};
  const auto members = k.members(caps.max_size);
  r.checks.reserve(8);
  auto& refl = r.add("order-reflexive");
  auto& anti = r.add("order-antisymmetric");
  auto& trans = r.add("order-transitive");
  auto& refine = r.add("order-refines-substructure");
  auto& coh = r.add("coherence");
  auto& iso = r.add("isomorphism-closure");
  // The reserve above keeps these references valid across the later add() calls.
  auto witness = [](const FiniteStructure& n, std::initializer_list<std::pair<std::string, ElementSet>> sets) {
    Witness w{{"N", print_structure(n)}};
    for (const auto& [label, s] : sets) w.emplace_back(label, ids_text(s));
    return w;
  };

  for (const auto& n : members) {
    refl.count("members");
    if (!k.strong_leq(n, n)) refl.fail(witness(n, {}));
    const auto strong = k.strong_subsets(n, caps.max_subsets);
    const std::size_t count = strong.size();
    std::vector<std::optional<FiniteStructure>> sub(count);
    std::vector<bool> in_class(count, false);
    for (SubsetMask a = 0; a < count; ++a) {
      sub[a] = induced_substructure(n, mask_to_set(n, a));
      in_class[a] = sub[a] && k.contains(*sub[a]);
      if (!strong[a]) continue;
      refine.count("strong pairs");
      if (!in_class[a] || !is_substructure(*sub[a], n)) refine.fail(witness(n, {{"M", mask_to_set(n, a)}}));
      anti.count("strong pairs");
      if (k.strong_leq(n, *sub[a]) && sub[a]->universe() != n.universe())
        anti.fail(witness(n, {{"M", mask_to_set(n, a)}}));
    }
    for (SubsetMask a1 = 0; a1 < count; ++a1) {
      if (!in_class[a1]) continue;
      // a0 ranges over the subsets of a1
      for (SubsetMask a0 = a1;; a0 = (a0 - 1) & a1) {
        if (in_class[a0]) {
          const bool low = k.strong_leq(*sub[a0], *sub[a1]);
          if (low && strong[a1]) {
            trans.count("chains");
            if (!strong[a0]) trans.fail(witness(n, {{"M0", mask_to_set(n, a0)}, {"M1", mask_to_set(n, a1)}}));
          }
          if (strong[a0] && strong[a1]) {
            coh.count("triples");
            if (!low) coh.fail(witness(n, {{"M0", mask_to_set(n, a0)}, {"M1", mask_to_set(n, a1)}}));
          }
        }
        if (a0 == 0) break;
      }
    }
    // Transport along two relabelings: a shifted reversal and a rotation.
    const std::size_t size = n.size();
    std::vector<std::vector<Element>> images(2, std::vector<Element>(size));
    for (std::size_t p = 0; p < size; ++p) {
      images[0][p] = static_cast<Element>(10 + size - 1 - p);
      images[1][p] = static_cast<Element>(100 + (p + 1) % std::max<std::size_t>(size, 1));
    }
    for (const auto& image : images) {
      iso.count("relabelings");
      FiniteStructure moved = relabel(n, image);
      if (!k.contains(moved)) {
        iso.fail(witness(moved, {}));
        continue;
      }
      for (SubsetMask a = 0; a < count; ++a) {
        if (!sub[a]) continue;
        ElementSet moved_set;
        for (Position p = 0; p < size; ++p)
          if (a & (SubsetMask{1} << p)) moved_set.push_back(image[p]);
        moved_set = make_set(std::move(moved_set));
        auto moved_sub = induced_substructure(moved, moved_set);
        iso.count("transported pairs");
        if (k.strong_leq(*moved_sub, moved) != static_cast<bool>(strong[a]))
          iso.fail(witness(n, {{"M", mask_to_set(n, a)}}));
      }
    }
  }
  refl.count("members", 0);
  auto& chains = r.add("union-of-chains");
  chains.status = CheckStatus::NotFinitelyTestable;
  chains.note = "a finite directed family of finite structures has a maximum, so chain unions are trivial here";
  auto& ls = r.add("lowenheim-skolem");
  ls.status = CheckStatus::NotFinitelyTestable;
  ls.note = "no Lowenheim-Skolem number is claimed; size caps stand in for it";
  return r;
}

}  // namespace qstruct
