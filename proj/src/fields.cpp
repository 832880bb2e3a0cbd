#include "kclass/fields.hpp"

#include "kclass/error.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace kclass {

std::string QuadraticForm::to_string() const {
  return "(" + kclass::to_string(a) + "," + kclass::to_string(b) + "," + kclass::to_string(c) + ")";
}

std::strong_ordering QuadraticForm::operator<=>(const QuadraticForm& o) const {
  auto cmp3 = [](const Integer& x, const Integer& y) {
    int r = cmp(x, y);
    return r < 0 ? std::strong_ordering::less : r > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  };
  if (auto r = cmp3(a, o.a); r != 0) return r;
  if (auto r = cmp3(b, o.b); r != 0) return r;
  return cmp3(c, o.c);
}

namespace {

bool is_squarefree(const Integer& n) {
  for (const auto& [p, e] : factorize(abs(n)))
    if (e > 1) return false;
  return true;
}

Integer fdiv(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// (g, s, t) with g = s*a + t*b.
struct ExtGcd {
  Integer g, s, t;
};

ExtGcd ext_gcd(const Integer& a, const Integer& b) {
  ExtGcd r;
  mpz_gcdext(r.g.get_mpz_t(), r.s.get_mpz_t(), r.t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

bool divides(const Integer& d, const Integer& n) { return mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0; }

void require_negative_fundamental(const Integer& d) {
  if (d >= 0) throw InvalidArgument("discriminant " + to_string(d) + " is not negative");
  if (!is_fundamental_discriminant(d))
    throw InvalidArgument("discriminant " + to_string(d) + " is not fundamental");
}

QuadraticForm normalize(QuadraticForm f) {
  if (-f.a < f.b && f.b <= f.a) return f;
  Integer r = fdiv(f.a - f.b, 2 * f.a);
  f.c = f.a * r * r + f.b * r + f.c;
  f.b = f.b + 2 * r * f.a;
  return f;
}

}  // namespace

bool is_fundamental_discriminant(const Integer& d) {
  if (d == 0 || d == 1) return false;
  Integer r = mod_floor(d, 4);
  if (r == 1) return is_squarefree(d);
  if (r != 0) return false;
  Integer m = d / 4;
  Integer rm = mod_floor(m, 4);
  return (rm == 2 || rm == 3) && is_squarefree(m);
}

QuadraticForm reduce(QuadraticForm f) {
  if (f.a <= 0 || f.discriminant() >= 0) throw InvalidArgument("reduce: form " + f.to_string() + " is not positive definite");
  f = normalize(std::move(f));
  while (f.a > f.c) {
    std::swap(f.a, f.c);
    f.b = -f.b;
    f = normalize(std::move(f));
  }
  if (f.a == f.c && f.b < 0) f.b = -f.b;
  return f;
}

QuadraticForm compose(const QuadraticForm& f, const QuadraticForm& g) {
  const Integer disc = f.discriminant();
  if (disc != g.discriminant()) throw InvalidArgument("compose: discriminants differ");
  const QuadraticForm& f1 = f.a > g.a ? g : f;
  const QuadraticForm& f2 = f.a > g.a ? f : g;

  const Integer s = (f1.b + f2.b) / 2;
  const Integer n = f2.b - s;
  Integer y1, d;
  if (divides(f1.a, f2.a)) {
    y1 = 0;
    d = f1.a;
  } else {
    ExtGcd e = ext_gcd(f2.a, f1.a);
    y1 = e.s;
    d = e.g;
  }
  Integer x2, y2, d1;
  if (divides(d, s)) {
    y2 = -1;
    x2 = 0;
    d1 = d;
  } else {
    ExtGcd e = ext_gcd(s, d);
    x2 = e.s;
    y2 = -e.t;
    d1 = e.g;
  }
  const Integer v1 = f1.a / d1;
  const Integer v2 = f2.a / d1;
  const Integer r = mod_floor(y1 * y2 * n - x2 * f2.c, v1);
  QuadraticForm out;
  out.a = v1 * v2;
  out.b = f2.b + 2 * v2 * r;
  const Integer num = out.b * out.b - disc;
  if (!divides(4 * out.a, num)) throw InternalContradiction("composition produced a non-integral form");
  out.c = num / (4 * out.a);
  return reduce(std::move(out));
}

std::vector<QuadraticForm> reduced_forms(const Integer& d) {
  require_negative_fundamental(d);
  std::vector<QuadraticForm> out;
  const Integer absd = -d;
  for (Integer a = 1; 3 * a * a <= absd; ++a) {
    for (Integer b = -a + 1; b <= a; ++b) {
      Integer num = b * b - d;
      if (!divides(4 * a, num)) continue;
      Integer c = num / (4 * a);
      if (c < a) continue;
      if (a == c && b < 0) continue;
      out.push_back({a, b, c});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// QuadraticClassGroup

namespace {

struct ClassGroupParts {
  FinGenAbGroup group;
  std::vector<QuadraticForm> forms;          // in reduced_forms order
  std::vector<GroupElement> coords;          // coordinates of forms[i]
};

QuadraticForm principal_form(const Integer& d) {
  Integer b = mod_floor(d, 2);
  return reduce({Integer(1), b, (b * b - d) / 4});
}

ClassGroupParts build_class_group(const Integer& d) {
  ClassGroupParts parts;
  parts.forms = reduced_forms(d);
  const QuadraticForm id = principal_form(d);

  // Greedy generating set: take each form not yet in the span of the previous ones.
  std::vector<QuadraticForm> gens;
  std::set<QuadraticForm> span{id};
  for (const auto& f : parts.forms) {
    if (span.count(f)) continue;
    gens.push_back(f);
    std::deque<QuadraticForm> todo(span.begin(), span.end());
    while (!todo.empty()) {
      QuadraticForm x = todo.front();
      todo.pop_front();
      for (const auto& g : gens) {
        QuadraticForm y = compose(x, g);
        if (span.insert(y).second) todo.push_back(y);
      }
    }
  }
  if (span.size() != parts.forms.size())
    throw InternalContradiction("composition does not close on the reduced forms of " + to_string(d));

  // Breadth-first search over exponent vectors; every revisit yields a relation.
  const std::size_t k = gens.size();
  std::map<QuadraticForm, IntVector> exps;
  std::vector<IntVector> relations;
  std::deque<QuadraticForm> todo{id};
  exps[id] = IntVector(k, Integer(0));
  while (!todo.empty()) {
    QuadraticForm x = todo.front();
    todo.pop_front();
    const IntVector v = exps[x];
    for (std::size_t j = 0; j < k; ++j) {
      QuadraticForm y = compose(x, gens[j]);
      IntVector w = v;
      w[j] += 1;
      auto it = exps.find(y);
      if (it == exps.end()) {
        exps.emplace(y, std::move(w));
        todo.push_back(y);
      } else {
        for (std::size_t i = 0; i < k; ++i) w[i] -= it->second[i];
        if (std::any_of(w.begin(), w.end(), [](const Integer& z) { return z != 0; })) relations.push_back(std::move(w));
      }
    }
  }

  Cokernel ck = cokernel_of_columns(k, relations);
  if (!ck.group.is_finite() || ck.group.order() != Integer(static_cast<unsigned long>(parts.forms.size())))
    throw InternalContradiction("relation lattice of the form class group has the wrong order");
  parts.group = ck.group;
  for (const auto& f : parts.forms) {
    GroupElement x = ck.group.zero();
    const IntVector& e = exps.at(f);
    for (std::size_t j = 0; j < k; ++j) x = ck.group.add(x, ck.group.scale(e[j], ck.projection[j]));
    parts.coords.push_back(std::move(x));
  }
  return parts;
}

}  // namespace

QuadraticClassGroup::QuadraticClassGroup(const Integer& d) : d_(d), model_(FinGenAbGroup()) {
  ClassGroupParts parts = build_class_group(d);
  model_ = ClassGroupModel(parts.group);
  forms_.assign(model_.size(), QuadraticForm{});
  std::vector<bool> seen(model_.size(), false);
  for (std::size_t i = 0; i < parts.forms.size(); ++i) {
    std::size_t idx = model_.index_of(parts.coords[i]);
    if (seen[idx]) throw InternalContradiction("two reduced forms map to the same class");
    seen[idx] = true;
    forms_[idx] = parts.forms[i];
    index_.emplace(parts.forms[i], idx);
  }
}

std::size_t QuadraticClassGroup::class_of(const QuadraticForm& f) const {
  if (f.discriminant() != d_)
    throw InvalidArgument("form " + f.to_string() + " does not have discriminant " + kclass::to_string(d_));
  return index_.at(reduce(f));
}

QuadraticClassGroup class_group_of_discriminant(const Integer& d) { return QuadraticClassGroup(d); }

// ---------------------------------------------------------------------------
// Primes

std::string to_string(Splitting s) {
  switch (s) {
    case Splitting::split: return "split";
    case Splitting::inert: return "inert";
    case Splitting::ramified: return "ramified";
  }
  return "?";
}

PrimeSplitting kronecker_splitting(const Integer& d, const Integer& q) {
  if (!is_prime(q)) throw InvalidArgument(to_string(q) + " is not prime");
  if (!is_fundamental_discriminant(d)) throw InvalidArgument("discriminant " + to_string(d) + " is not fundamental");
  int k = mpz_kronecker(d.get_mpz_t(), q.get_mpz_t());
  if (k == 0) return {Splitting::ramified, q, 1};
  if (k == 1) return {Splitting::split, q, 2};
  return {Splitting::inert, q * q, 1};
}

GroupElement ideal_class_of_prime(const QuadraticClassGroup& cl, const Integer& q) {
  const Integer& d = cl.discriminant();
  if (kronecker_splitting(d, q).kind == Splitting::inert)
    throw InvalidArgument(to_string(q) + " is inert in discriminant " + to_string(d) + "; its prime is principal");
  for (Integer b = 0; b <= q; ++b) {
    Integer num = b * b - d;
    if (divides(4 * q, num)) return cl.model().element(cl.class_of({q, b, num / (4 * q)}));
  }
  throw InternalContradiction("no square root of " + to_string(d) + " mod 4*" + to_string(q) + " for a non-inert prime");
}

GroupElement ideal_class_of_prime(const Integer& d, const Integer& q) {
  return ideal_class_of_prime(QuadraticClassGroup(d), q);
}

std::vector<Integer> primes_up_to(const Integer& bound) {
  std::vector<Integer> out;
  if (bound < 2) return out;
  const std::size_t n = to_size(bound);
  std::vector<bool> composite(n + 1, false);
  for (std::size_t i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    out.emplace_back(static_cast<unsigned long>(i));
    for (std::size_t j = i * i; j <= n; j += i) composite[j] = true;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Field specifications

std::string describe(const FieldSpec& spec) {
  if (const auto* q = std::get_if<QuadraticSpec>(&spec)) return "discriminant " + to_string(q->discriminant);
  const auto& s = std::get<SyntheticSpec>(spec);
  return "synthetic " + FinGenAbGroup::from_cyclic_orders(s.invariant_factors).to_string() + " with " +
         std::to_string(s.primes.size()) + " primes";
}

SyntheticSpec validate_synthetic(SyntheticSpec spec) {
  using Kind = ValidationError::Kind;
  std::vector<ValidationError::Violation> bad;

  FinGenAbGroup g = FinGenAbGroup::from_cyclic_orders(spec.invariant_factors);
  bool group_ok = g.factors() == spec.invariant_factors && g.is_finite();
  if (!group_ok)
    bad.push_back({Kind::malformed, "invariant factors must be positive, without 1s, and form a divisibility chain"});

  std::map<Integer, unsigned long> degree_above;
  std::vector<GroupElement> odd_classes;
  for (std::size_t i = 0; i < spec.primes.size(); ++i) {
    auto& p = spec.primes[i];
    const std::string where = "prime #" + std::to_string(i);
    auto pp = as_prime_power(p.norm);
    if (!pp) {
      bad.push_back({Kind::non_prime_power_norm, where + " has norm " + to_string(p.norm) + ", not a prime power"});
    } else {
      if (p.residue_char == 0) p.residue_char = pp->first;
      if (p.residue_char != pp->first)
        bad.push_back({Kind::malformed, where + ": norm " + to_string(p.norm) + " is not a power of residue characteristic " +
                                            to_string(p.residue_char)});
      degree_above[pp->first] += pp->second;
    }
    if (group_ok) {
      GroupElement x{p.cls};
      if (!g.is_valid(x)) {
        bad.push_back({Kind::malformed, where + " has a class outside " + g.to_string()});
      } else if (pp && mpz_odd_p(p.norm.get_mpz_t())) {
        odd_classes.push_back(std::move(x));
      }
    }
  }
  if (spec.quadratic_like)
    for (const auto& [q, f] : degree_above)
      if (f > 2)
        bad.push_back({Kind::malformed, "primes above " + to_string(q) + " have total residue degree " + std::to_string(f) +
                                            " > 2"});
  if (group_ok && subgroup_index(g, odd_classes) != 1)
    bad.push_back({Kind::odd_norm_classes_do_not_generate,
                   "classes of odd-norm primes generate a subgroup of index " + to_string(subgroup_index(g, odd_classes))});
  if (!bad.empty()) throw ValidationError(std::move(bad));
  return spec;
}

ClassGroupModel class_group_of(const FieldSpec& spec) {
  if (const auto* q = std::get_if<QuadraticSpec>(&spec)) return QuadraticClassGroup(q->discriminant).model();
  const auto& s = std::get<SyntheticSpec>(spec);
  return ClassGroupModel(FinGenAbGroup::from_cyclic_orders(s.invariant_factors));
}

namespace {

std::vector<PrimeIdealDatum> quadratic_primes(const QuadraticClassGroup& cl, const Integer& bound) {
  std::vector<PrimeIdealDatum> out;
  const auto& g = cl.model().group();
  auto push = [&](std::string name, Integer norm, GroupElement cls, const Integer& q) {
    out.push_back({static_cast<Label>(out.size()), std::move(name), std::move(norm), std::move(cls), q});
  };
  for (const auto& q : primes_up_to(bound)) {
    PrimeSplitting s = kronecker_splitting(cl.discriminant(), q);
    if (s.norm > bound) continue;
    const std::string name = "p_" + to_string(q);
    switch (s.kind) {
      case Splitting::split: {
        GroupElement c = ideal_class_of_prime(cl, q);
        push(name, q, c, q);
        push(name + "'", q, g.negate(c), q);
        break;
      }
      case Splitting::ramified: push(name, q, ideal_class_of_prime(cl, q), q); break;
      case Splitting::inert: push(name, s.norm, g.zero(), q); break;
    }
  }
  return out;
}

std::vector<PrimeIdealDatum> synthetic_primes(const SyntheticSpec& spec, const Integer& bound) {
  SyntheticSpec s = validate_synthetic(spec);
  FinGenAbGroup g = FinGenAbGroup::from_cyclic_orders(s.invariant_factors);
  std::vector<PrimeIdealDatum> out;
  for (std::size_t i = 0; i < s.primes.size(); ++i) {
    const auto& p = s.primes[i];
    if (p.norm > bound) continue;
    out.push_back({static_cast<Label>(out.size()), "P" + std::to_string(i), p.norm, g.reduce(p.cls), p.residue_char});
  }
  return out;
}

}  // namespace

std::vector<PrimeIdealDatum> enumerate_prime_ideals(const FieldSpec& spec, const Integer& bound) {
  if (const auto* q = std::get_if<QuadraticSpec>(&spec)) return quadratic_primes(QuadraticClassGroup(q->discriminant), bound);
  return synthetic_primes(std::get<SyntheticSpec>(spec), bound);
}

FieldData field_data(const FieldSpec& spec, const Integer& bound) {
  if (const auto* q = std::get_if<QuadraticSpec>(&spec)) {
    QuadraticClassGroup cl(q->discriminant);
    return {cl.model(), quadratic_primes(cl, bound)};
  }
  const auto& s = std::get<SyntheticSpec>(spec);
  return {class_group_of(spec), synthetic_primes(s, bound)};
}

}  // namespace kclass
