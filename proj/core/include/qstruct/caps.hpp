#pragma once

#include <cstddef>

namespace qstruct {

/// Bounds for exhaustive sweeps. Every report names the caps it ran under.
struct Caps {
  std::size_t max_size = 4;
  std::size_t tuple_len = 2;
  std::size_t max_subsets = std::size_t{1} << 16;  // 2^|N| per structure
  std::size_t max_structures = 4'000'000;
  std::size_t max_free_vars = 6;
  std::size_t jobs = 1;
};

}  // namespace qstruct
