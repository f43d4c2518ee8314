#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qstruct/structure.hpp"

namespace qstruct {

using PinMap = std::vector<std::pair<Element, Element>>;

/// A bijection between two universes, stored as the image of each source
/// element in source-universe order.
class Isomorphism {
 public:
  Isomorphism(ElementSet domain, std::vector<Element> image) : domain_(std::move(domain)), image_(std::move(image)) {}

  Element operator()(Element e) const;
  const ElementSet& domain() const noexcept { return domain_; }
  const std::vector<Element>& image() const noexcept { return image_; }
  ElementSet image_of(const ElementSet& s) const;

 private:
  ElementSet domain_;
  std::vector<Element> image_;
};

/// Complete backtracking search for a bijection preserving every relation
/// and function in both directions, mapping subset i of `src` onto subset i
/// of `dst`, and extending `pins`. Both sides must share a vocabulary and a
/// subset count (SignatureError otherwise); malformed pins raise PinError.
std::optional<Isomorphism> find_isomorphism(const DecoratedStructure& src, const DecoratedStructure& dst,
                                            const PinMap& pins = {});
std::optional<Isomorphism> find_isomorphism(const FiniteStructure& src, const FiniteStructure& dst,
                                            const PinMap& pins = {});

/// Visits every isomorphism until `visit` returns false; returns the number visited.
std::size_t for_each_isomorphism(const DecoratedStructure& src, const DecoratedStructure& dst, const PinMap& pins,
                                 const std::function<bool(const Isomorphism&)>& visit);
std::size_t count_isomorphisms(const DecoratedStructure& src, const DecoratedStructure& dst, const PinMap& pins = {});

/// Orderings tried by canonical labeling are capped at 8! per structure.
inline constexpr std::size_t kCanonicalOrderingCap = 40320;

struct CanonicalForm {
  DecoratedStructure normalized;  // universe {0, ..., n-1}
  std::string key;                // equal iff the inputs are isomorphic
  std::vector<Element> labeling;  // labeling[p] = new id of the element at position p
};

/// Canonical labeling: the least encoding over all orderings that respect an
/// isomorphism-invariant element coloring. Throws CapacityError when the
/// number of such orderings exceeds kCanonicalOrderingCap.
CanonicalForm canonical_form(const DecoratedStructure& s);
DecoratedStructure normalize(const DecoratedStructure& s);
FiniteStructure normalize(const FiniteStructure& s);
std::string canonical_key(const DecoratedStructure& s);
std::string canonical_key(const FiniteStructure& s);

}  // namespace qstruct
