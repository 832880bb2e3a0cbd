#pragma once

// Exact integer linear algebra and finitely generated abelian groups.
//
// Everything here is a value type; no operation mutates its inputs, so all of
// it is safe to call concurrently.

#include "kclass/integer.hpp"

#include <cstddef>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace kclass {

// Dense row-major matrix of exact integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(std::initializer_list<std::initializer_list<long>> rows);
  // Columns must all have length `rows`.
  static IntMatrix from_columns(std::size_t rows, std::span<const IntVector> columns);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntVector column(std::size_t c) const;
  std::vector<IntVector> columns() const;

  IntMatrix operator*(const IntMatrix& rhs) const;
  IntVector operator*(const IntVector& v) const;
  bool operator==(const IntMatrix&) const = default;

  // Fraction-free (Bareiss) determinant of a square matrix.
  Integer determinant() const;

  bool is_diagonal() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

// U * A * V = S with U, V unimodular and S diagonal, s_1 | s_2 | ..., zeros last.
struct SmithForm {
  IntMatrix S;
  IntMatrix U;
  IntMatrix V;
};

SmithForm smith_normal_form(const IntMatrix& a);

// Column-style Hermite normal form. The returned matrix has one column per
// lattice rank; column j has a positive pivot in row pivot_rows[j], zeros above
// it, and the entries to its left in the pivot row reduced into [0, pivot).
struct HermiteForm {
  IntMatrix H;
  // A * transform = [H | 0]; unimodular, cols(A) x cols(A).
  IntMatrix transform;
  std::vector<std::size_t> pivot_rows;
};

HermiteForm hermite_decomposition(const IntMatrix& a);
IntMatrix hermite_normal_form(const IntMatrix& a);

// Coefficients c with sum_j c_j * columns[j] = v, or nullopt when v is not in
// the integer span. `columns` may be empty; v fixes the dimension.
std::optional<IntVector> lattice_membership(std::span<const IntVector> columns, const IntVector& v);

struct GroupElement {
  IntVector coords;
  bool operator==(const GroupElement&) const = default;
};

// Finitely generated abelian group in invariant-factor form: nonzero factors
// d_1 | d_2 | ..., none equal to 1, then the zeros (free summands). Because the
// form is canonical, isomorphism is equality.
class FinGenAbGroup {
 public:
  FinGenAbGroup() = default;  // trivial group

  // Accepts any list of cyclic orders (0 = Z) and normalizes it.
  static FinGenAbGroup from_cyclic_orders(std::span<const Integer> orders);
  static FinGenAbGroup from_cyclic_orders(std::initializer_list<long> orders);
  static FinGenAbGroup free(std::size_t rank);

  const IntVector& factors() const noexcept { return factors_; }
  std::size_t free_rank() const noexcept;
  std::size_t torsion_rank() const noexcept { return factors_.size() - free_rank(); }
  bool is_finite() const noexcept { return free_rank() == 0; }
  bool is_trivial() const noexcept { return factors_.empty(); }
  // Throws InvalidArgument for infinite groups.
  Integer order() const;

  GroupElement zero() const;
  // Reduces each coordinate into its canonical range; length must match.
  GroupElement reduce(IntVector coords) const;
  GroupElement add(const GroupElement& x, const GroupElement& y) const;
  GroupElement negate(const GroupElement& x) const;
  GroupElement scale(const Integer& k, const GroupElement& x) const;
  bool is_valid(const GroupElement& x) const;

  // "trivial", or summands joined by " + ", e.g. "Z/2 + Z/4 + Z".
  std::string to_string() const;

  bool operator==(const FinGenAbGroup&) const = default;

 private:
  explicit FinGenAbGroup(IntVector canonical) : factors_(std::move(canonical)) {}
  IntVector factors_;
};

// Z^ambient_rank modulo the span of `columns`, plus the image of each standard
// basis vector.
struct Cokernel {
  FinGenAbGroup group;
  std::vector<GroupElement> projection;
};

Cokernel cokernel_of_columns(std::size_t ambient_rank, std::span<const IntVector> columns);

// Least n >= 1 with n * g = 0. Requires a finite group.
Integer element_order(const FinGenAbGroup& g, const GroupElement& x);

// [G : <gens>] for finite G.
Integer subgroup_index(const FinGenAbGroup& g, std::span<const GroupElement> gens);

// prime -> ascending prime-power invariant factors of the p-primary part.
using PrimaryDecomposition = std::map<Integer, IntVector>;
PrimaryDecomposition primary_decomposition(const FinGenAbGroup& g);

bool iso_equal(const FinGenAbGroup& g, const FinGenAbGroup& h);

}  // namespace kclass
