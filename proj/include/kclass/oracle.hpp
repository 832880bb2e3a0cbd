#pragma once

// Naive reference implementations. Each is deliberately simple and bounded by
// a hard size guard; they exist to certify the fast paths, never to replace
// them.

#include "kclass/fields.hpp"

#include <optional>
#include <span>
#include <utility>

namespace kclass::oracle {

inline constexpr std::size_t kDefaultLimit = 10000;

// Z^ambient_rank / span(columns) by enumerating cosets of a triangular basis,
// with the group structure read from p-power torsion counts. Throws
// QuotientTooLarge for infinite quotients or more than `limit` elements.
FinGenAbGroup naive_cokernel(std::size_t ambient_rank, std::span<const IntVector> columns,
                             std::size_t limit = kDefaultLimit);

// Membership by reducing v against an echelon basis of the columns.
bool naive_lattice_contains(std::size_t ambient_rank, std::span<const IntVector> columns, const IntVector& v);

struct OrderIndex {
  Integer order;  // of the element
  Integer index;  // of the subgroup
};

// Element order by repeated addition and subgroup index by closure, over an
// explicit listing of G.
OrderIndex naive_order_index(const FinGenAbGroup& g, std::span<const GroupElement> gens, const GroupElement& x,
                             std::size_t limit = kDefaultLimit);

struct Representation {
  QuadraticForm form;
  Integer x;
  Integer y;
};

// First reduced form of discriminant d (in reduced_forms order) that takes the
// value q at some |x|, |y| <= q, searched by increasing |x| then |y| with
// non-negative coordinates first; nullopt when none does.
std::optional<Representation> naive_represented_primes(const Integer& d, const Integer& q);

}  // namespace kclass::oracle
