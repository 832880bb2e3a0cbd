#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace kclass {

// Exact integers everywhere. Torsion orders such as N^k - 1 leave 64-bit range
// in routine examples.
using Integer = mpz_class;
using IntVector = std::vector<Integer>;

std::string to_string(const Integer& n);

// Parses an optionally signed decimal string. Throws InvalidArgument.
Integer parse_integer(std::string_view text);

// Least non-negative residue. m == 0 returns n unchanged.
Integer mod_floor(const Integer& n, const Integer& m);

Integer ipow(const Integer& base, unsigned long exponent);

// Exact k-th root by binary search; nullopt when n is not a perfect k-th power.
std::optional<Integer> exact_root(const Integer& n, unsigned long k);

bool is_prime(const Integer& n);

// (q, e) with n = q^e and q prime, or nullopt.
std::optional<std::pair<Integer, unsigned long>> as_prime_power(const Integer& n);

// Trial division; callers only factor class-group-sized numbers.
std::vector<std::pair<Integer, unsigned long>> factorize(const Integer& n);

// Largest power of the prime p dividing n >= 1.
Integer p_part(const Integer& n, const Integer& p);

// Narrowing conversion that throws InvalidArgument instead of truncating.
std::size_t to_size(const Integer& n);

}  // namespace kclass
