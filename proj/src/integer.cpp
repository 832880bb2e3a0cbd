#include "kclass/integer.hpp"

#include "kclass/error.hpp"

#include <limits>

namespace kclass {

ValidationError::ValidationError(std::vector<Violation> violations)
    : Error([&] {
        std::string msg = "invalid field specification:";
        for (const auto& v : violations) msg += " " + v.message + ";";
        return msg;
      }()),
      violations_(std::move(violations)) {}

bool ValidationError::has(Kind kind) const noexcept {
  for (const auto& v : violations_)
    if (v.kind == kind) return true;
  return false;
}

std::string to_string(const Integer& n) { return n.get_str(10); }

Integer parse_integer(std::string_view text) {
  std::string s(text);
  std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (start == s.size()) throw InvalidArgument("not an integer: '" + s + "'");
  for (std::size_t i = start; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') throw InvalidArgument("not an integer: '" + s + "'");
  if (s[0] == '+') s.erase(0, 1);
  return Integer(s, 10);
}

Integer mod_floor(const Integer& n, const Integer& m) {
  if (m == 0) return n;
  Integer r;
  mpz_mod(r.get_mpz_t(), n.get_mpz_t(), m.get_mpz_t());
  return r;
}

Integer ipow(const Integer& base, unsigned long exponent) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
  return r;
}

std::optional<Integer> exact_root(const Integer& n, unsigned long k) {
  if (k == 0) throw InvalidArgument("root of order 0");
  if (n < 0) return std::nullopt;
  if (k == 1 || n < 2) return n;
  // Invariant: lo^k <= n < hi^k.
  Integer lo = 1;
  Integer hi = 2;
  while (ipow(hi, k) <= n) hi *= 2;
  while (hi - lo > 1) {
    Integer mid = (lo + hi) / 2;
    if (ipow(mid, k) <= n)
      lo = mid;
    else
      hi = mid;
  }
  if (ipow(lo, k) == n) return lo;
  return std::nullopt;
}

bool is_prime(const Integer& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

std::optional<std::pair<Integer, unsigned long>> as_prime_power(const Integer& n) {
  if (n < 2) return std::nullopt;
  auto f = factorize(n);
  if (f.size() != 1) return std::nullopt;
  return f.front();
}

std::vector<std::pair<Integer, unsigned long>> factorize(const Integer& n) {
  if (n < 1) throw InvalidArgument("factorize: expected a positive integer, got " + to_string(n));
  std::vector<std::pair<Integer, unsigned long>> out;
  Integer m = n;
  auto strip = [&](const Integer& p) {
    unsigned long e = 0;
    while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
      m /= p;
      ++e;
    }
    if (e) out.emplace_back(p, e);
  };
  strip(2);
  strip(3);
  // 6k +- 1 wheel.
  for (Integer p = 5; p * p <= m; p += 6) {
    strip(p);
    strip(p + 2);
  }
  if (m > 1) out.emplace_back(m, 1);
  return out;
}

Integer p_part(const Integer& n, const Integer& p) {
  if (n < 1) throw InvalidArgument("p_part: n must be positive");
  if (!is_prime(p)) throw InvalidArgument("p_part: " + to_string(p) + " is not prime");
  Integer m = n;
  Integer r = 1;
  while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
    m /= p;
    r *= p;
  }
  return r;
}

std::size_t to_size(const Integer& n) {
  if (n < 0 || !n.fits_ulong_p() || n.get_ui() > std::numeric_limits<std::size_t>::max())
    throw InvalidArgument("value out of range for a count: " + to_string(n));
  return static_cast<std::size_t>(n.get_ui());
}

}  // namespace kclass
