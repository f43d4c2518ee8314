#include "qstruct/kappa.hpp"

#include <charconv>

#include "qstruct/errors.hpp"

namespace qstruct {

Kappa Kappa::finite(std::size_t k) {
  if (k == 0) throw Error("finite kappa must be at least 1");
  Kappa out;
  out.finite_ = true;
  out.k_ = k;
  return out;
}

Kappa Kappa::parse(const std::string& text) {
  if (text == "unbounded") return unbounded();
  std::size_t k = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), k);
  if (ec != std::errc() || ptr != text.data() + text.size() || k == 0)
    throw Error("kappa must be 'unbounded' or a positive integer, got '" + text + "'");
  return finite(k);
}

std::string Kappa::to_string() const { return finite_ ? std::to_string(k_) : "unbounded"; }

}  // namespace qstruct
