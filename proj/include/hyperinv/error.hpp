// SPDX-License-Identifier: Apache-2.0
#ifndef HYPERINV_ERROR_HPP
#define HYPERINV_ERROR_HPP

#include <stdexcept>
#include <string>

namespace hyperinv {

/// Raised on malformed input: shape mismatches, non-Hermitian states,
/// odd direction counts and similar contract violations.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// Raised when a permutation-sum evaluation would exceed the leaf budget.
class BudgetError : public std::runtime_error {
 public:
  explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {
inline void require(bool condition, const std::string& message) {
  if (!condition) throw ValidationError(message);
}
}  // namespace detail

}  // namespace hyperinv

#endif  // HYPERINV_ERROR_HPP
