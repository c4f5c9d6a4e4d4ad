#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace permutab {

/// Malformed input: bad tables, ill-formed terms, mismatched dimensions.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A bounded search or enumeration ran into its cap. `partial` is how far it
/// got before stopping; the result is inconclusive, never a refutation.
class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(const std::string& what, std::size_t partial)
      : std::runtime_error(what), partial_(partial) {}
  std::size_t partial() const noexcept { return partial_; }

 private:
  std::size_t partial_;
};

/// Raised when a derived object breaks an invariant that the construction
/// guarantees. Seeing one means a bug, not bad input.
class InternalInconsistency : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace permutab
