#pragma once

#include <concepts>
#include <stdexcept>

namespace algtel {

// The single interface shared by every coefficient domain of the tower
// Q -> Q(t) -> Q(t)(x): field operations, a zero test and exact equality on
// canonical representatives.
template <class F>
concept Field = std::regular<F> && std::constructible_from<F, long> &&
                requires(const F a, const F b, F c) {
                  { a + b } -> std::convertible_to<F>;
                  { a - b } -> std::convertible_to<F>;
                  { a * b } -> std::convertible_to<F>;
                  { a / b } -> std::convertible_to<F>;
                  { -a } -> std::convertible_to<F>;
                  { c += a } -> std::same_as<F&>;
                  { c -= a } -> std::same_as<F&>;
                  { c *= a } -> std::same_as<F&>;
                  { a.is_zero() } -> std::convertible_to<bool>;
                  { a.inverse() } -> std::convertible_to<F>;
                };

// Raised whenever an operation's mathematical precondition fails.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace algtel
