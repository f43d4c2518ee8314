#pragma once

#include <cstddef>
#include <vector>

#include "qstruct/structure.hpp"

namespace qstruct {

inline constexpr std::size_t kDefaultMaxStructures = 4'000'000;

/// All structures over `vocab` with universe {0, ..., k-1} for k <= max_size,
/// ordered by size. With `up_to_iso` there is one canonical representative per
/// isomorphism type, ordered by canonical key within each size. Throws
/// CapacityError once more than `max_structures` candidates would be examined.
std::vector<FiniteStructure> enumerate_structures(const VocabularyPtr& vocab, std::size_t max_size, bool up_to_iso,
                                                  std::size_t max_structures = kDefaultMaxStructures);

/// Canonical representatives of exactly `size` elements. Results are cached
/// per vocabulary.
std::vector<FiniteStructure> iso_types_of_size(const VocabularyPtr& vocab, std::size_t size,
                                               std::size_t max_structures = kDefaultMaxStructures);

/// Expansions of `m` to the larger vocabulary `tau`, one per isomorphism type
/// over `tau`. Universes stay those of `m`. DomainError when `tau` adds a
/// constant and `m` is empty.
std::vector<FiniteStructure> enumerate_expansions(const FiniteStructure& m, const VocabularyPtr& tau,
                                                  std::size_t max_structures = kDefaultMaxStructures);

/// As above, but two expansions are identified only when an isomorphism also
/// respects the distinguished subsets.
std::vector<DecoratedStructure> enumerate_expansions(const DecoratedStructure& m, const VocabularyPtr& tau,
                                                     std::size_t max_structures = kDefaultMaxStructures);

}  // namespace qstruct
