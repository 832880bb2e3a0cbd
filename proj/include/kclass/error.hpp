#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace kclass {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller passed something outside an operation's domain (bad discriminant,
// infinite group where a finite one is required, mismatched dimensions).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A computation contradicted a structural theorem the code relies on. Seeing
// one of these means a bug, not bad input.
class InternalContradiction : public Error {
 public:
  using Error::Error;
};

// A brute-force oracle refused to run past its hard size guard.
class QuotientTooLarge : public Error {
 public:
  using Error::Error;
};

// The bundle handed to reconstruction is not the image of any arithmetic data:
// non-homogeneous entries, torsion that is not N^k - 1, torsion in the empty
// entry.
class CorruptBundle : public Error {
 public:
  using Error::Error;
};

// The bundle has no entry for a requested label set and no way to compute it.
class MissingEntry : public Error {
 public:
  using Error::Error;
};

// The odd-norm labels in the bundle do not generate the class group, so the
// greedy chain ends short of the class number.
class InsufficientGenerators : public Error {
 public:
  using Error::Error;
};

// Synthetic field specification rejected; every violation is listed.
class ValidationError : public Error {
 public:
  enum class Kind { non_prime_power_norm, odd_norm_classes_do_not_generate, malformed };

  struct Violation {
    Kind kind;
    std::string message;
  };

  explicit ValidationError(std::vector<Violation> violations);

  const std::vector<Violation>& violations() const noexcept { return violations_; }
  bool has(Kind kind) const noexcept;

 private:
  std::vector<Violation> violations_;
};

}  // namespace kclass
