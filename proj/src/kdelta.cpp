#include "kclass/kdelta.hpp"

#include "kclass/error.hpp"

#include <algorithm>

namespace kclass {

ClassGroupModel::ClassGroupModel(FinGenAbGroup group) : group_(std::move(group)) {
  if (!group_.is_finite()) throw InvalidArgument("class group model needs a finite group, got " + group_.to_string());
  const std::size_t n = to_size(group_.order());
  const auto& f = group_.factors();
  elements_.reserve(n);
  IntVector coords(f.size(), Integer(0));
  for (std::size_t idx = 0; idx < n; ++idx) {
    elements_.push_back(GroupElement{coords});
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (++coords[i] < f[i]) break;
      coords[i] = 0;
    }
  }
}

std::size_t ClassGroupModel::index_of(const GroupElement& x) const {
  if (!group_.is_valid(x)) throw InvalidArgument("element is not a reduced element of " + group_.to_string());
  std::size_t idx = 0;
  std::size_t radix = 1;
  const auto& f = group_.factors();
  for (std::size_t i = 0; i < f.size(); ++i) {
    idx += to_size(x.coords[i]) * radix;
    radix *= to_size(f[i]);
  }
  return idx;
}

std::size_t ClassGroupModel::multiply(std::size_t a, std::size_t b) const {
  return index_of(group_.add(element(a), element(b)));
}

std::size_t ClassGroupModel::inverse(std::size_t a) const { return index_of(group_.negate(element(a))); }

namespace {

std::size_t class_index(const ClassGroupModel& cl, const PrimeIdealDatum& p) {
  if (!cl.group().is_valid(p.cls))
    throw InvalidArgument("prime '" + p.name + "' has a class outside " + cl.group().to_string());
  return cl.index_of(p.cls);
}

}  // namespace

IntMatrix m_operator_matrix(const ClassGroupModel& cl, const PrimeIdealDatum& p) {
  const std::size_t n = cl.size();
  const std::size_t pc = class_index(cl, p);
  IntMatrix m(n, n);
  for (std::size_t a = 0; a < n; ++a) m(cl.multiply(pc, a), a) = p.norm;
  return m;
}

std::vector<IntVector> delta_f_generators(const ClassGroupModel& cl, std::span<const PrimeIdealDatum> f) {
  const std::size_t n = cl.size();
  std::vector<IntVector> cols;
  cols.reserve(n * f.size());
  for (const auto& p : f) {
    const std::size_t pc = class_index(cl, p);
    for (std::size_t a = 0; a < n; ++a) {
      IntVector c(n, Integer(0));
      c[a] += 1;
      c[cl.multiply(pc, a)] -= p.norm;
      cols.push_back(std::move(c));
    }
  }
  return cols;
}

Cokernel quotient_delta(const ClassGroupModel& cl, std::span<const PrimeIdealDatum> f) {
  return cokernel_of_columns(cl.size(), delta_f_generators(cl, f));
}

IntMatrix cycle_matrix(std::span<const Integer> ns) {
  const std::size_t n = ns.size();
  if (n == 0) throw InvalidArgument("cycle_matrix: empty cycle");
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) += 1;
    m((i + n - 1) % n, i) -= ns[i];
  }
  return m;
}

CycleCokernel coker_cycle_formula(std::span<const Integer> ns, const Integer& d) {
  if (ns.empty()) throw InvalidArgument("coker_cycle_formula: empty cycle");
  if (d < 0) throw InvalidArgument("coker_cycle_formula: negative modulus");
  Integer product = 1;
  for (const auto& x : ns) {
    if (x < 1) throw InvalidArgument("coker_cycle_formula: cycle factors must be positive");
    product *= x;
  }
  CycleCokernel out;
  out.d_alpha = gcd(product - 1, d);
  Integer running = 1;
  for (const auto& x : ns) {
    running = mod_floor(running * x, out.d_alpha);
    out.coefficients.push_back(running);
  }
  return out;
}

FinGenAbGroup PredictedQuotient::as_group() const {
  IntVector orders(coset_count, d_f);
  return FinGenAbGroup::from_cyclic_orders(orders);
}

namespace {

// Representative of x modulo an even d with odd parity. Parity is well defined
// modulo an even number; d == 0 keeps the exact integer.
Integer odd_lift(const Integer& x, const Integer& d) {
  Integer r = mod_floor(x, d);
  if (d != 0 && mpz_even_p(r.get_mpz_t())) r += d;
  return r;
}

}  // namespace

PredictedQuotient predicted_quotient(const ClassGroupModel& cl, std::span<const PrimeIdealDatum> f) {
  const std::size_t n = cl.size();
  PredictedQuotient q;
  q.d_f = 0;
  q.coset_count = n;
  for (std::size_t a = 0; a < n; ++a) {
    q.reps.push_back(a);
    q.l_map.push_back({a, Integer(1)});
  }

  for (const auto& p : f) {
    if (mpz_even_p(p.norm.get_mpz_t()))
      throw InvalidArgument("prime '" + p.name + "' has even norm " + to_string(p.norm) +
                            "; the homogeneous quotient needs odd norms");
    const std::size_t pc = class_index(cl, p);

    // Orbits of multiplication by [p] on the current cosets. Walking the reps in
    // ascending class index makes the first rep of each orbit its smallest one,
    // and that rep survives as the generator of the orbit's summand.
    std::vector<std::size_t> sorted_reps = q.reps;
    std::sort(sorted_reps.begin(), sorted_reps.end());
    std::vector<bool> visited(n, false);
    std::optional<Integer> d_next;
    std::vector<std::size_t> next_reps;
    std::vector<Integer> coset_coeff(n);   // per old rep: pi_{m+1}[e_rep] = coeff * pi_{m+1}[e_root]
    std::vector<std::size_t> coset_root(n);

    for (std::size_t start : sorted_reps) {
      if (visited[start]) continue;
      // orbit[k] = r_k; cycle_factor[k] = c_k with pi_m M(e_{r_k}) = c_k pi_m[e_{r_{k+1}}].
      std::vector<std::size_t> orbit;
      std::vector<Integer> cycle_factor;
      std::size_t r = start;
      do {
        visited[r] = true;
        orbit.push_back(r);
        const ClassMultiplier& target = q.l_map[cl.multiply(pc, r)];
        cycle_factor.push_back(p.norm * target.multiplier);
        r = target.rep;
      } while (r != start);
      const std::size_t len = orbit.size();

      // Relabel so that e_n = r_0 and e_i = r_{len-i}; then the relation
      // pi(e_i) = N_i pi(e_{i-1}) holds with N_i = c_{len-i}.
      std::vector<Integer> ns(len);
      for (std::size_t i = 1; i <= len; ++i) ns[i - 1] = cycle_factor[len - i];
      CycleCokernel cc = coker_cycle_formula(ns, q.d_f);

      if (!d_next)
        d_next = cc.d_alpha;
      else if (*d_next != cc.d_alpha)
        throw InternalContradiction("orbits of [" + p.name + "] give different cyclic orders " + to_string(*d_next) +
                                    " and " + to_string(cc.d_alpha));

      coset_root[start] = start;
      coset_coeff[start] = 1;
      for (std::size_t i = 1; i < len; ++i) {
        coset_root[orbit[len - i]] = start;
        coset_coeff[orbit[len - i]] = cc.coefficients[i - 1];
      }
      next_reps.push_back(start);
    }

    q.d_f = *d_next;
    for (std::size_t a = 0; a < n; ++a) {
      const ClassMultiplier old = q.l_map[a];
      q.l_map[a] = {coset_root[old.rep], odd_lift(old.multiplier * coset_coeff[old.rep], q.d_f)};
    }
    q.reps = std::move(next_reps);
    q.coset_count = q.reps.size();
  }
  return q;
}

FinGenAbGroup singleton_structure(const ClassGroupModel& cl, const PrimeIdealDatum& p) {
  const Integer ord = element_order(cl.group(), p.cls);
  const GroupElement gens[] = {p.cls};
  const Integer index = subgroup_index(cl.group(), gens);
  IntVector orders(to_size(index), ipow(p.norm, to_size(ord)) - 1);
  return FinGenAbGroup::from_cyclic_orders(orders);
}

bool verify_relation(const ClassGroupModel& cl, std::span<const PrimeIdealDatum> f, std::size_t a,
                     const Integer& l, std::size_t rep) {
  const std::size_t n = cl.size();
  if (a >= n || rep >= n) throw InvalidArgument("verify_relation: class index out of range");
  IntVector v(n, Integer(0));
  v[a] += 1;
  v[rep] -= l;
  return lattice_membership(delta_f_generators(cl, f), v).has_value();
}

}  // namespace kclass
