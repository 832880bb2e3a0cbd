#include "kclass/oracle.hpp"

#include "kclass/error.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace kclass::oracle {

namespace {

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// Echelon basis of the column lattice: row by row, Euclid on the entries of
// the not-yet-used columns. Column j of the basis has a positive pivot in row
// rows[j] and zeros above it.
struct Echelon {
  std::size_t n = 0;
  std::vector<IntVector> basis;
  std::vector<std::size_t> rows;

  Echelon(std::size_t ambient, std::vector<IntVector> cols) : n(ambient) {
    for (const auto& c : cols)
      if (c.size() != n) throw InvalidArgument("oracle: column length mismatch");
    for (std::size_t r = 0; r < n; ++r) {
      for (;;) {
        std::size_t best = cols.size();
        for (std::size_t j = 0; j < cols.size(); ++j)
          if (cols[j][r] != 0 && (best == cols.size() || abs(cols[j][r]) < abs(cols[best][r]))) best = j;
        if (best == cols.size()) break;
        bool single = true;
        for (std::size_t j = 0; j < cols.size(); ++j) {
          if (j == best || cols[j][r] == 0) continue;
          Integer q = floor_div(cols[j][r], cols[best][r]);
          for (std::size_t i = 0; i < n; ++i) cols[j][i] -= q * cols[best][i];
          if (cols[j][r] != 0) single = false;
        }
        if (!single) continue;
        IntVector pivot = cols[best];
        if (pivot[r] < 0)
          for (auto& x : pivot) x = -x;
        basis.push_back(std::move(pivot));
        rows.push_back(r);
        cols.erase(cols.begin() + static_cast<std::ptrdiff_t>(best));
        break;
      }
    }
  }

  // Coset representative with coordinate rows[j] in [0, pivot_j); zero iff v
  // lies in the lattice.
  IntVector canon(IntVector v) const {
    for (std::size_t j = 0; j < basis.size(); ++j) {
      Integer q = floor_div(v[rows[j]], basis[j][rows[j]]);
      if (q != 0)
        for (std::size_t i = rows[j]; i < n; ++i) v[i] -= q * basis[j][i];
    }
    return v;
  }
};

bool is_zero(const IntVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& z) { return z == 0; });
}

}  // namespace

FinGenAbGroup naive_cokernel(std::size_t ambient_rank, std::span<const IntVector> columns, std::size_t limit) {
  const std::size_t n = ambient_rank;
  const Echelon lat(n, {columns.begin(), columns.end()});
  if (lat.basis.size() != n) throw QuotientTooLarge("naive_cokernel: quotient is infinite");

  Integer size = 1;
  for (std::size_t j = 0; j < n; ++j) size *= lat.basis[j][j];
  if (size > static_cast<unsigned long>(limit))
    throw QuotientTooLarge("naive_cokernel: " + to_string(size) + " cosets exceed the limit " + std::to_string(limit));
  auto canon = [&](IntVector v) { return lat.canon(std::move(v)); };

  std::set<IntVector> seen{IntVector(n, Integer(0))};
  std::deque<IntVector> todo{IntVector(n, Integer(0))};
  while (!todo.empty()) {
    IntVector v = todo.front();
    todo.pop_front();
    for (std::size_t i = 0; i < n; ++i) {
      IntVector w = v;
      w[i] += 1;
      w = canon(std::move(w));
      if (seen.insert(w).second) todo.push_back(std::move(w));
    }
  }
  if (seen.size() != size) throw InternalContradiction("naive_cokernel: coset count disagrees with the basis volume");

  // For each prime p, c_k = #{x : p^k x = 0} = p^(sum_i min(k, e_i)) over the
  // p-primary exponents e_i, so log_p(c_k / c_{k-1}) counts the exponents >= k.
  IntVector orders;
  for (const auto& [p, e_max] : factorize(size)) {
    std::vector<unsigned long> log_c(e_max + 2, 0);
    std::vector<std::size_t> killed(e_max + 1, 0);  // killed[k] = #{x : k least with p^k x = 0}
    for (const auto& x : seen) {
      IntVector y = x;
      unsigned long k = 0;
      while (k <= e_max && !is_zero(y)) {
        for (auto& z : y) z *= p;
        y = canon(std::move(y));
        ++k;
      }
      if (is_zero(y)) ++killed[k];
    }
    Integer c = 0;
    for (unsigned long k = 0; k <= e_max; ++k) {
      c += static_cast<unsigned long>(killed[k]);
      Integer t = c;
      while (mpz_divisible_p(t.get_mpz_t(), p.get_mpz_t()) && t > 1) {
        t /= p;
        ++log_c[k];
      }
      if (t != 1) throw InternalContradiction("naive_cokernel: p-torsion count is not a power of p");
    }
    log_c[e_max + 1] = log_c[e_max];
    for (unsigned long k = 1; k <= e_max; ++k) {
      unsigned long at_least_k = log_c[k] - log_c[k - 1];
      unsigned long at_least_next = log_c[k + 1] - log_c[k];
      for (unsigned long i = at_least_next; i < at_least_k; ++i) orders.push_back(ipow(p, k));
    }
  }
  return FinGenAbGroup::from_cyclic_orders(orders);
}

OrderIndex naive_order_index(const FinGenAbGroup& g, std::span<const GroupElement> gens, const GroupElement& x,
                             std::size_t limit) {
  if (!g.is_finite()) throw InvalidArgument("naive_order_index: infinite group");
  const Integer total = g.order();
  if (total > static_cast<unsigned long>(limit))
    throw QuotientTooLarge("naive_order_index: group of order " + to_string(total) + " exceeds the limit");

  OrderIndex out;
  GroupElement acc = g.reduce(x.coords);
  out.order = 1;
  while (acc != g.zero()) {
    acc = g.add(acc, x);
    out.order += 1;
  }

  std::set<IntVector> sub{g.zero().coords};
  std::deque<GroupElement> todo{g.zero()};
  while (!todo.empty()) {
    GroupElement y = todo.front();
    todo.pop_front();
    for (const auto& h : gens) {
      GroupElement z = g.add(y, h);
      if (sub.insert(z.coords).second) todo.push_back(std::move(z));
    }
  }
  out.index = total / Integer(static_cast<unsigned long>(sub.size()));
  return out;
}

bool naive_lattice_contains(std::size_t ambient_rank, std::span<const IntVector> columns, const IntVector& v) {
  if (v.size() != ambient_rank) throw InvalidArgument("naive_lattice_contains: vector length mismatch");
  return is_zero(Echelon(ambient_rank, {columns.begin(), columns.end()}).canon(v));
}

std::optional<Representation> naive_represented_primes(const Integer& d, const Integer& q) {
  if (!is_prime(q)) throw InvalidArgument(to_string(q) + " is not prime");
  // 0, 1, -1, 2, -2, ...: the first hit has the smallest |x|, then |y|,
  // preferring non-negative coordinates.
  IntVector walk{Integer(0)};
  for (Integer k = 1; k <= q; ++k) {
    walk.push_back(k);
    walk.push_back(-k);
  }
  for (const auto& f : reduced_forms(d))
    for (const auto& x : walk)
      for (const auto& y : walk)
        if (f.evaluate(x, y) == q) return Representation{f, x, y};
  return std::nullopt;
}

}  // namespace kclass::oracle
