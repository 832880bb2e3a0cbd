#pragma once

// Ground-truth arithmetic: class groups and prime ideals of imaginary quadratic
// fields via binary quadratic forms, and synthetic field specifications that
// carry an arbitrary finite class group with a hand-made prime stream.

#include "kclass/kdelta.hpp"

#include <compare>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace kclass {

// a x^2 + b x y + c y^2
struct QuadraticForm {
  Integer a;
  Integer b;
  Integer c;

  Integer discriminant() const { return b * b - 4 * a * c; }
  Integer evaluate(const Integer& x, const Integer& y) const { return a * x * x + b * x * y + c * y * y; }
  std::string to_string() const;

  bool operator==(const QuadraticForm&) const = default;
  std::strong_ordering operator<=>(const QuadraticForm& o) const;
};

bool is_fundamental_discriminant(const Integer& d);

// Unique reduced form equivalent to a positive definite form.
QuadraticForm reduce(QuadraticForm f);

// Gauss composition followed by reduction. Both forms must share a negative
// discriminant.
QuadraticForm compose(const QuadraticForm& f, const QuadraticForm& g);

// All reduced forms of a negative fundamental discriminant, ordered by (a, b).
// Throws InvalidArgument otherwise.
std::vector<QuadraticForm> reduced_forms(const Integer& d);

// Form class group of discriminant d with an explicit isomorphism to an
// invariant-factor group: forms()[i] is the reduced form of class index i in
// model().
class QuadraticClassGroup {
 public:
  explicit QuadraticClassGroup(const Integer& d);

  const Integer& discriminant() const noexcept { return d_; }
  const ClassGroupModel& model() const noexcept { return model_; }
  const std::vector<QuadraticForm>& forms() const noexcept { return forms_; }

  // Class index of any form of this discriminant.
  std::size_t class_of(const QuadraticForm& f) const;

 private:
  Integer d_;
  ClassGroupModel model_;
  std::vector<QuadraticForm> forms_;
  std::map<QuadraticForm, std::size_t> index_;
};

QuadraticClassGroup class_group_of_discriminant(const Integer& d);

enum class Splitting { split, inert, ramified };

struct PrimeSplitting {
  Splitting kind;
  Integer norm;          // norm of each prime ideal above q
  unsigned ideal_count;  // 2 for split, 1 otherwise
};

std::string to_string(Splitting s);

// Splitting of the rational prime q in the field of discriminant d, decided by
// the Kronecker symbol (d|q).
PrimeSplitting kronecker_splitting(const Integer& d, const Integer& q);

// Class of the prime ideal above a non-inert q: the class of the form (q, b, c)
// with 0 <= b <= q and b^2 = d mod 4q. The conjugate prime (split case) has the
// inverse class.
GroupElement ideal_class_of_prime(const QuadraticClassGroup& cl, const Integer& q);
GroupElement ideal_class_of_prime(const Integer& d, const Integer& q);

struct QuadraticSpec {
  Integer discriminant;
};

struct SyntheticPrime {
  Integer norm;
  IntVector cls;  // coordinates w.r.t. the declared invariant factors
  Integer residue_char;
};

struct SyntheticSpec {
  IntVector invariant_factors;  // canonical: d_1 | d_2 | ..., no 1s, all positive
  std::vector<SyntheticPrime> primes;
  // Also require sum over primes above q of f_p <= 2, as in a quadratic field.
  bool quadratic_like = false;
};

using FieldSpec = std::variant<QuadraticSpec, SyntheticSpec>;

std::string describe(const FieldSpec& spec);

// Checks prime-power norms, class coordinates, and that odd-norm classes
// generate. Returns the spec unchanged or throws ValidationError listing every
// violation.
SyntheticSpec validate_synthetic(SyntheticSpec spec);

struct FieldData {
  ClassGroupModel cl;
  std::vector<PrimeIdealDatum> primes;
};

ClassGroupModel class_group_of(const FieldSpec& spec);

// Every prime ideal of norm <= bound, once each; labels are 0, 1, 2, ... in
// output order. Quadratic fields list by residue characteristic, named "p_q"
// and "p_q'" for the conjugate of a split prime. Synthetic specs keep their
// declared order, named "P<i>" after the position i in the spec.
std::vector<PrimeIdealDatum> enumerate_prime_ideals(const FieldSpec& spec, const Integer& bound);

FieldData field_data(const FieldSpec& spec, const Integer& bound);

// Rational primes up to bound.
std::vector<Integer> primes_up_to(const Integer& bound);

}  // namespace kclass
