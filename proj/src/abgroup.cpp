#include "kclass/abgroup.hpp"

#include "kclass/error.hpp"

#include <algorithm>
#include <utility>

namespace kclass {

// ---------------------------------------------------------------------------
// IntMatrix

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Integer(0)) {}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(std::initializer_list<std::initializer_list<long>> rows) {
  std::size_t r = rows.size();
  std::size_t c = r ? rows.begin()->size() : 0;
  IntMatrix m(r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) throw InvalidArgument("from_rows: ragged rows");
    std::size_t j = 0;
    for (long v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

IntMatrix IntMatrix::from_columns(std::size_t rows, std::span<const IntVector> columns) {
  IntMatrix m(rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != rows)
      throw InvalidArgument("column " + std::to_string(j) + " has length " +
                            std::to_string(columns[j].size()) + ", expected " + std::to_string(rows));
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
  }
  return m;
}

IntVector IntMatrix::column(std::size_t c) const {
  IntVector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, c);
  return v;
}

std::vector<IntVector> IntMatrix::columns() const {
  std::vector<IntVector> out;
  out.reserve(cols_);
  for (std::size_t j = 0; j < cols_; ++j) out.push_back(column(j));
  return out;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw InvalidArgument("matrix product: dimension mismatch");
  IntMatrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Integer& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
    }
  return out;
}

IntVector IntMatrix::operator*(const IntVector& v) const {
  if (cols_ != v.size()) throw InvalidArgument("matrix-vector product: dimension mismatch");
  IntVector out(rows_, Integer(0));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
  return out;
}

Integer IntMatrix::determinant() const {
  if (rows_ != cols_) throw InvalidArgument("determinant of a non-square matrix");
  std::size_t n = rows_;
  if (n == 0) return 1;
  IntMatrix m = *this;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

bool IntMatrix::is_diagonal() const {
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (i != j && (*this)(i, j) != 0) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Elementary operations

namespace {

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

// row dst += k * row src
void add_row(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& k) {
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (m(src, j) != 0) m(dst, j) += k * m(src, j);
}

// col dst += k * col src
void add_col(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& k) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (m(i, src) != 0) m(i, dst) += k * m(i, src);
}

void negate_row(IntMatrix& m, std::size_t r) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = -m(r, j);
}

void negate_col(IntMatrix& m, std::size_t c) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, c) = -m(i, c);
}

Integer tdiv(const Integer& a, const Integer& b) {
  Integer q;
  mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Integer fdiv(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

// ---------------------------------------------------------------------------
// Smith normal form: minimal-|pivot| strategy with gcd reduction.

SmithForm smith_normal_form(const IntMatrix& a) {
  const std::size_t n = a.rows();
  const std::size_t m = a.cols();
  SmithForm f{a, IntMatrix::identity(n), IntMatrix::identity(m)};
  IntMatrix& s = f.S;

  for (std::size_t t = 0; t < std::min(n, m); ++t) {
    for (;;) {
      std::size_t pi = n, pj = m;
      for (std::size_t i = t; i < n; ++i)
        for (std::size_t j = t; j < m; ++j) {
          if (s(i, j) == 0) continue;
          if (pi == n || abs(s(i, j)) < abs(s(pi, pj))) {
            pi = i;
            pj = j;
          }
        }
      if (pi == n) return f;  // remaining block is zero

      swap_rows(s, t, pi);
      swap_rows(f.U, t, pi);
      swap_cols(s, t, pj);
      swap_cols(f.V, t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < n; ++i) {
        if (s(i, t) == 0) continue;
        Integer q = -tdiv(s(i, t), s(t, t));
        add_row(s, i, t, q);
        add_row(f.U, i, t, q);
        if (s(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < m; ++j) {
        if (s(t, j) == 0) continue;
        Integer q = -tdiv(s(t, j), s(t, t));
        add_col(s, j, t, q);
        add_col(f.V, j, t, q);
        if (s(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Pivot must divide the whole remaining block.
      std::size_t bad = n;
      for (std::size_t i = t + 1; i < n && bad == n; ++i)
        for (std::size_t j = t + 1; j < m; ++j)
          if (!mpz_divisible_p(s(i, j).get_mpz_t(), s(t, t).get_mpz_t())) {
            bad = i;
            break;
          }
      if (bad == n) break;
      add_row(s, t, bad, Integer(1));
      add_row(f.U, t, bad, Integer(1));
    }
    if (s(t, t) < 0) {
      negate_row(s, t);
      negate_row(f.U, t);
    }
  }
  return f;
}

// ---------------------------------------------------------------------------
// Hermite normal form

HermiteForm hermite_decomposition(const IntMatrix& a) {
  const std::size_t n = a.rows();
  const std::size_t m = a.cols();
  IntMatrix h = a;
  IntMatrix t = IntMatrix::identity(m);
  std::vector<std::size_t> pivots;
  std::size_t c = 0;

  for (std::size_t r = 0; r < n && c < m; ++r) {
    bool have_pivot = false;
    for (;;) {
      std::size_t k = m;
      for (std::size_t j = c; j < m; ++j)
        if (h(r, j) != 0 && (k == m || abs(h(r, j)) < abs(h(r, k)))) k = j;
      if (k == m) break;
      have_pivot = true;
      swap_cols(h, c, k);
      swap_cols(t, c, k);
      bool done = true;
      for (std::size_t j = c + 1; j < m; ++j) {
        if (h(r, j) == 0) continue;
        Integer q = -tdiv(h(r, j), h(r, c));
        add_col(h, j, c, q);
        add_col(t, j, c, q);
        if (h(r, j) != 0) done = false;
      }
      if (done) break;
    }
    if (!have_pivot) continue;
    if (h(r, c) < 0) {
      negate_col(h, c);
      negate_col(t, c);
    }
    for (std::size_t k = 0; k < c; ++k) {
      Integer q = -fdiv(h(r, k), h(r, c));
      if (q == 0) continue;
      add_col(h, k, c, q);
      add_col(t, k, c, q);
    }
    pivots.push_back(r);
    ++c;
  }

  IntMatrix trimmed(n, c);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < c; ++j) trimmed(i, j) = h(i, j);
  return {std::move(trimmed), std::move(t), std::move(pivots)};
}

IntMatrix hermite_normal_form(const IntMatrix& a) { return hermite_decomposition(a).H; }

std::optional<IntVector> lattice_membership(std::span<const IntVector> columns, const IntVector& v) {
  const std::size_t n = v.size();
  IntMatrix a = IntMatrix::from_columns(n, columns);
  HermiteForm hf = hermite_decomposition(a);

  IntVector residual = v;
  IntVector y(hf.pivot_rows.size());
  for (std::size_t j = 0; j < hf.pivot_rows.size(); ++j) {
    std::size_t r = hf.pivot_rows[j];
    const Integer& p = hf.H(r, j);
    if (!mpz_divisible_p(residual[r].get_mpz_t(), p.get_mpz_t())) return std::nullopt;
    y[j] = residual[r] / p;
    for (std::size_t i = r; i < n; ++i) residual[i] -= y[j] * hf.H(i, j);
  }
  for (const auto& x : residual)
    if (x != 0) return std::nullopt;

  IntVector coeffs(columns.size(), Integer(0));
  for (std::size_t k = 0; k < columns.size(); ++k)
    for (std::size_t j = 0; j < y.size(); ++j) coeffs[k] += hf.transform(k, j) * y[j];
  return coeffs;
}

// ---------------------------------------------------------------------------
// FinGenAbGroup

FinGenAbGroup FinGenAbGroup::from_cyclic_orders(std::span<const Integer> orders) {
  IntVector finite;
  std::size_t zeros = 0;
  for (const auto& o : orders) {
    if (o == 0)
      ++zeros;
    else
      finite.push_back(abs(o));
  }
  // One pass of pairwise (gcd, lcm) leaves a divisibility chain.
  for (std::size_t i = 0; i < finite.size(); ++i)
    for (std::size_t j = i + 1; j < finite.size(); ++j) {
      Integer g = gcd(finite[i], finite[j]);
      Integer l = finite[i] / g * finite[j];
      finite[i] = g;
      finite[j] = l;
    }
  IntVector out;
  for (auto& f : finite)
    if (f != 1) out.push_back(std::move(f));
  out.insert(out.end(), zeros, Integer(0));
  return FinGenAbGroup(std::move(out));
}

FinGenAbGroup FinGenAbGroup::from_cyclic_orders(std::initializer_list<long> orders) {
  IntVector v;
  for (long o : orders) v.emplace_back(o);
  return from_cyclic_orders(std::span<const Integer>(v));
}

FinGenAbGroup FinGenAbGroup::free(std::size_t rank) { return FinGenAbGroup(IntVector(rank, Integer(0))); }

std::size_t FinGenAbGroup::free_rank() const noexcept {
  return static_cast<std::size_t>(std::count(factors_.begin(), factors_.end(), Integer(0)));
}

Integer FinGenAbGroup::order() const {
  if (!is_finite()) throw InvalidArgument("order of an infinite group " + to_string());
  Integer r = 1;
  for (const auto& f : factors_) r *= f;
  return r;
}

GroupElement FinGenAbGroup::zero() const { return GroupElement{IntVector(factors_.size(), Integer(0))}; }

GroupElement FinGenAbGroup::reduce(IntVector coords) const {
  if (coords.size() != factors_.size())
    throw InvalidArgument("element has " + std::to_string(coords.size()) + " coordinates, group " +
                          to_string() + " needs " + std::to_string(factors_.size()));
  for (std::size_t i = 0; i < coords.size(); ++i) coords[i] = mod_floor(coords[i], factors_[i]);
  return GroupElement{std::move(coords)};
}

GroupElement FinGenAbGroup::add(const GroupElement& x, const GroupElement& y) const {
  if (x.coords.size() != y.coords.size()) throw InvalidArgument("add: length mismatch");
  IntVector c(x.coords.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = x.coords[i] + y.coords[i];
  return reduce(std::move(c));
}

GroupElement FinGenAbGroup::negate(const GroupElement& x) const {
  IntVector c(x.coords.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = -x.coords[i];
  return reduce(std::move(c));
}

GroupElement FinGenAbGroup::scale(const Integer& k, const GroupElement& x) const {
  IntVector c(x.coords.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = k * x.coords[i];
  return reduce(std::move(c));
}

bool FinGenAbGroup::is_valid(const GroupElement& x) const {
  if (x.coords.size() != factors_.size()) return false;
  for (std::size_t i = 0; i < factors_.size(); ++i)
    if (factors_[i] != 0 && (x.coords[i] < 0 || x.coords[i] >= factors_[i])) return false;
  return true;
}

std::string FinGenAbGroup::to_string() const {
  if (factors_.empty()) return "trivial";
  std::string s;
  for (const auto& f : factors_) {
    if (!s.empty()) s += " + ";
    s += f == 0 ? std::string("Z") : "Z/" + kclass::to_string(f);
  }
  return s;
}

// ---------------------------------------------------------------------------
// Group computations

Cokernel cokernel_of_columns(std::size_t ambient_rank, std::span<const IntVector> columns) {
  if (columns.empty()) {
    Cokernel out{FinGenAbGroup::free(ambient_rank), {}};
    for (std::size_t j = 0; j < ambient_rank; ++j) {
      IntVector e(ambient_rank, Integer(0));
      e[j] = 1;
      out.projection.push_back(GroupElement{std::move(e)});
    }
    return out;
  }
  IntMatrix a = IntMatrix::from_columns(ambient_rank, columns);
  SmithForm snf = smith_normal_form(a);
  const std::size_t diag = std::min(ambient_rank, columns.size());

  IntVector orders;
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < ambient_rank; ++i) {
    Integer s = i < diag ? snf.S(i, i) : Integer(0);
    if (s == 1) continue;
    kept.push_back(i);
    orders.push_back(s);
  }
  Cokernel out{FinGenAbGroup::from_cyclic_orders(orders), {}};
  if (out.group.factors() != orders)
    throw InternalContradiction("Smith diagonal is not in invariant-factor form");
  for (std::size_t j = 0; j < ambient_rank; ++j) {
    IntVector c;
    c.reserve(kept.size());
    for (std::size_t i : kept) c.push_back(snf.U(i, j));
    out.projection.push_back(out.group.reduce(std::move(c)));
  }
  return out;
}

Integer element_order(const FinGenAbGroup& g, const GroupElement& x) {
  if (!g.is_finite()) throw InvalidArgument("element_order: group " + g.to_string() + " is infinite");
  GroupElement r = g.reduce(x.coords);
  Integer order = 1;
  for (std::size_t i = 0; i < r.coords.size(); ++i) {
    const Integer& d = g.factors()[i];
    order = lcm(order, d / gcd(r.coords[i], d));
  }
  return order;
}

Integer subgroup_index(const FinGenAbGroup& g, std::span<const GroupElement> gens) {
  if (!g.is_finite()) throw InvalidArgument("subgroup_index: group " + g.to_string() + " is infinite");
  const std::size_t k = g.factors().size();
  if (k == 0) return 1;
  std::vector<IntVector> cols;
  for (const auto& x : gens) cols.push_back(g.reduce(x.coords).coords);
  for (std::size_t i = 0; i < k; ++i) {
    IntVector e(k, Integer(0));
    e[i] = g.factors()[i];
    cols.push_back(std::move(e));
  }
  HermiteForm hf = hermite_decomposition(IntMatrix::from_columns(k, cols));
  if (hf.pivot_rows.size() != k) throw InternalContradiction("relation lattice of a finite group is not full rank");
  Integer index = 1;
  for (std::size_t j = 0; j < k; ++j) index *= hf.H(hf.pivot_rows[j], j);
  return index;
}

PrimaryDecomposition primary_decomposition(const FinGenAbGroup& g) {
  if (!g.is_finite()) throw InvalidArgument("primary_decomposition: group " + g.to_string() + " is infinite");
  PrimaryDecomposition out;
  for (const auto& d : g.factors())
    for (const auto& [p, e] : factorize(d)) out[p].push_back(ipow(p, e));
  for (auto& [p, powers] : out) std::sort(powers.begin(), powers.end());
  return out;
}

bool iso_equal(const FinGenAbGroup& g, const FinGenAbGroup& h) { return g.factors() == h.factors(); }

}  // namespace kclass
