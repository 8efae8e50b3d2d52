#pragma once

#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>

namespace distcat {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input data (a presentation, a file, a table) is structurally broken.
class MalformedInput : public Error {
 public:
  using Error::Error;
};

class UnknownObject : public Error {
 public:
  using Error::Error;
};

/// Sources and targets of composed or paired morphisms disagree.
class TypeMismatch : public Error {
 public:
  using Error::Error;
};

/// A model does not supply the chosen (co)product structure an operation needs.
class MissingStructure : public Error {
 public:
  using Error::Error;
};

class ShapeRestriction : public Error {
 public:
  using Error::Error;
};

class NotALattice : public Error {
 public:
  using Error::Error;
};

class EnumerationBudgetExceeded : public Error {
 public:
  using Error::Error;
};

inline constexpr std::size_t kDefaultBudget = 1'000'000;

/// Counts enumerated candidates and fails loudly once the cap is passed.
/// Never truncates silently.
class Budget {
 public:
  explicit Budget(std::size_t cap = kDefaultBudget) : cap_(cap) {}

  void charge(std::size_t n, const char* what = "enumeration") {
    if (n > cap_ || used_ > cap_ - n) {
      throw EnumerationBudgetExceeded(std::string(what) + ": budget of " +
                                      std::to_string(cap_) + " exceeded");
    }
    used_ += n;
  }

  /// Throws without consuming anything when a single request is larger than the cap.
  void require(std::size_t n, const char* what = "enumeration") const {
    if (n > cap_) {
      throw EnumerationBudgetExceeded(std::string(what) + ": " + std::to_string(n) +
                                      " candidates exceed budget of " + std::to_string(cap_));
    }
  }

  std::size_t cap() const { return cap_; }
  std::size_t used() const { return used_; }

 private:
  std::size_t cap_;
  std::size_t used_ = 0;
};

namespace detail {

inline constexpr std::size_t kSaturated = std::numeric_limits<std::size_t>::max();

inline std::size_t sat_mul(std::size_t a, std::size_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > kSaturated / b) return kSaturated;
  return a * b;
}

inline std::size_t sat_add(std::size_t a, std::size_t b) {
  return a > kSaturated - b ? kSaturated : a + b;
}

inline std::size_t sat_pow(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  for (std::size_t k = 0; k < exp; ++k) r = sat_mul(r, base);
  return r;
}

}  // namespace detail

}  // namespace distcat
