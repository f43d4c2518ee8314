#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qstruct/structure.hpp"

namespace qstruct::detail {

// Lexicographic tuple index over an n-element universe, first coordinate
// most significant.
inline void decode(std::size_t index, std::size_t n, std::span<Position> out) {
  for (std::size_t i = out.size(); i-- > 0;) {
    out[i] = static_cast<Position>(index % n);
    index /= n;
  }
}

inline std::size_t encode(std::span<const Position> positions, std::size_t n) {
  std::size_t idx = 0;
  for (Position p : positions) idx = idx * n + p;
  return idx;
}

// Advances `digits` as a base-`base` counter; false once it wraps around.
inline bool advance(std::vector<Position>& digits, std::size_t base) {
  for (std::size_t i = digits.size(); i-- > 0;) {
    if (++digits[i] < base) return true;
    digits[i] = 0;
  }
  return false;
}

}  // namespace qstruct::detail
