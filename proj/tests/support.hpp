#pragma once

// Shared builders and fixed-seed generators for the test binaries.

#include "kclass/abgroup.hpp"
#include "kclass/fields.hpp"
#include "kclass/kdelta.hpp"

#include <algorithm>
#include <initializer_list>
#include <random>
#include <string>
#include <vector>

namespace kclass::testing {

inline FinGenAbGroup G(std::initializer_list<long> orders) { return FinGenAbGroup::from_cyclic_orders(orders); }

inline IntVector V(std::initializer_list<long> xs) {
  IntVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

inline GroupElement E(std::initializer_list<long> xs) { return {V(xs)}; }

inline PrimeIdealDatum prime(Label label, long norm, IntVector cls) {
  Integer q = as_prime_power(Integer(norm))->first;
  return {label, "P" + std::to_string(label), Integer(norm), {std::move(cls)}, q};
}

// Odd prime powers small enough that singleton torsion stays printable.
inline const std::vector<long> kOddNorms = {3, 5, 7, 9, 11, 13, 17, 19, 23, 25, 27, 29, 31, 37, 41, 43, 47, 49};
inline const std::vector<long> kAllNorms = {2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32, 37, 41};

// Synthetic spec with the class group and prime stream of a quadratic field.
inline SyntheticSpec synthetic_clone(long disc, long bound) {
  FieldData fd = field_data(QuadraticSpec{Integer(disc)}, Integer(bound));
  SyntheticSpec s;
  s.invariant_factors = fd.cl.group().factors();
  for (const auto& p : fd.primes) s.primes.push_back({p.norm, p.cls.coords, p.residue_char});
  s.quadratic_like = true;
  return s;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(eng_); }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform(0, static_cast<long>(n) - 1)); }
  bool coin() { return uniform(0, 1) == 1; }
  template <class T>
  const T& pick(const std::vector<T>& xs) { return xs[index(xs.size())]; }
  std::mt19937_64& engine() { return eng_; }

  // Random finite group of order <= max_order, built from random cyclic orders.
  FinGenAbGroup finite_group(long max_order) {
    IntVector orders;
    long total = 1;
    const long parts = uniform(0, 4);
    for (long i = 0; i < parts; ++i) {
      long room = max_order / total;
      if (room < 2) break;
      long d = uniform(2, std::min(room, 32L));
      orders.emplace_back(d);
      total *= d;
    }
    return FinGenAbGroup::from_cyclic_orders(orders);
  }

  GroupElement element(const FinGenAbGroup& g) {
    IntVector c;
    for (const auto& d : g.factors()) c.emplace_back(d == 0 ? uniform(-20, 20) : uniform(0, d.get_si() - 1));
    return {std::move(c)};
  }

  IntVector vector(std::size_t n, long lo, long hi) {
    IntVector v;
    for (std::size_t i = 0; i < n; ++i) v.emplace_back(uniform(lo, hi));
    return v;
  }

  std::vector<IntVector> columns(std::size_t n, std::size_t count, long lo, long hi) {
    std::vector<IntVector> cols;
    for (std::size_t j = 0; j < count; ++j) cols.push_back(vector(n, lo, hi));
    return cols;
  }

  // A family of at most max_size elements generating g.
  std::vector<GroupElement> generating_family(const FinGenAbGroup& g, std::size_t max_size) {
    std::vector<GroupElement> fam;
    max_size = std::max(max_size, g.factors().size());
    for (std::size_t i = 0; i < max_size; ++i) fam.push_back(element(g));
    while (subgroup_index(g, fam) != 1) fam[index(fam.size())] = element(g);
    return fam;
  }

  // count primes with norms drawn from `norms` and uniformly random classes.
  std::vector<PrimeIdealDatum> primes(const ClassGroupModel& cl, std::size_t count, const std::vector<long>& norms) {
    std::vector<PrimeIdealDatum> out;
    for (std::size_t i = 0; i < count; ++i)
      out.push_back(prime(static_cast<Label>(i), pick(norms), cl.element(index(cl.size())).coords));
    return out;
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace kclass::testing
