#pragma once

#include <cstddef>
#include <string>

namespace qstruct {

/// The cardinal bound on structural-quantifier targets: either a finite
/// threshold k >= 1 or unbounded (every finite set counts as small).
class Kappa {
 public:
  Kappa() = default;
  static Kappa unbounded() { return Kappa(); }
  static Kappa finite(std::size_t k);
  /// Accepts "unbounded" or a positive integer; throws Error otherwise.
  static Kappa parse(const std::string& text);

  bool is_finite() const noexcept { return finite_; }
  std::size_t threshold() const noexcept { return k_; }
  /// m < kappa
  bool below(std::size_t m) const noexcept { return !finite_ || m < k_; }
  std::string to_string() const;

  friend bool operator==(const Kappa&, const Kappa&) = default;

 private:
  bool finite_ = false;
  std::size_t k_ = 0;
};

}  // namespace qstruct
