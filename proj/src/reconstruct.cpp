#include "kclass/reconstruct.hpp"

#include "kclass/error.hpp"

#include <algorithm>
#include <memory>
#include <mutex>

namespace kclass {

LabelSet make_label_set(std::vector<Label> labels) {
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  return labels;
}

namespace {

std::string show(const LabelSet& f) {
  std::string s = "{";
  for (std::size_t i = 0; i < f.size(); ++i) s += (i ? "," : "") + std::to_string(f[i]);
  return s + "}";
}

}  // namespace

// ---------------------------------------------------------------------------
// InvariantBundle

InvariantBundle::InvariantBundle(std::size_t rank, std::vector<Label> labels)
    : rank_(rank), labels_(make_label_set(std::move(labels))) {}

InvariantBundle::InvariantBundle(const InvariantBundle& other) : rank_(other.rank_), labels_(other.labels_) {
  std::shared_lock lock(other.mutex_);
  entries_ = other.entries_;
  provider_ = other.provider_;
}

InvariantBundle& InvariantBundle::operator=(const InvariantBundle& other) {
  if (this == &other) return *this;
  std::map<LabelSet, FinGenAbGroup> copy;
  Provider provider;
  {
    std::shared_lock lock(other.mutex_);
    copy = other.entries_;
    provider = other.provider_;
  }
  std::unique_lock lock(mutex_);
  rank_ = other.rank_;
  labels_ = other.labels_;
  entries_ = std::move(copy);
  provider_ = std::move(provider);
  return *this;
}

void InvariantBundle::insert(const LabelSet& f, FinGenAbGroup g) {
  std::unique_lock lock(mutex_);
  entries_.insert_or_assign(make_label_set(f), std::move(g));
}

FinGenAbGroup InvariantBundle::entry(const LabelSet& f) const {
  {
    std::shared_lock lock(mutex_);
    if (auto it = entries_.find(f); it != entries_.end()) return it->second;
  }
  if (!provider_) throw MissingEntry("bundle has no entry for label set " + show(f));
  for (Label l : f)
    if (!std::binary_search(labels_.begin(), labels_.end(), l))
      throw MissingEntry("label " + std::to_string(l) + " is not in the bundle");
  FinGenAbGroup g = provider_(f);
  std::unique_lock lock(mutex_);
  return entries_.emplace(f, std::move(g)).first->second;
}

bool InvariantBundle::contains(const LabelSet& f) const {
  std::shared_lock lock(mutex_);
  return entries_.count(f) != 0;
}

std::map<LabelSet, FinGenAbGroup> InvariantBundle::entries() const {
  std::shared_lock lock(mutex_);
  return entries_;
}

void InvariantBundle::validate() const {
  if (rank_ < 1) throw CorruptBundle("bundle rank must be at least 1");
  auto all = entries();
  auto empty = all.find(LabelSet{});
  if (empty == all.end()) throw CorruptBundle("bundle has no entry for the empty set");
  if (!iso_equal(empty->second, FinGenAbGroup::free(rank_)))
    throw CorruptBundle("empty-set entry is " + empty->second.to_string() + ", expected Z^" + std::to_string(rank_));
  for (Label l : labels_)
    if (!all.count(LabelSet{l})) throw CorruptBundle("bundle has no singleton entry for label " + std::to_string(l));
  for (const auto& [f, g] : all) {
    if (f != make_label_set(f)) throw CorruptBundle("label set " + show(f) + " is not sorted");
    for (Label l : f)
      if (!std::binary_search(labels_.begin(), labels_.end(), l))
        throw CorruptBundle("entry " + show(f) + " uses unknown label " + std::to_string(l));
  }
}

bool InvariantBundle::operator==(const InvariantBundle& other) const {
  return rank_ == other.rank_ && labels_ == other.labels_ && entries() == other.entries();
}

// ---------------------------------------------------------------------------
// Building bundles

namespace {

std::vector<PrimeIdealDatum> select(std::span<const PrimeIdealDatum> primes, const LabelSet& f) {
  std::vector<PrimeIdealDatum> out;
  for (Label l : f) {
    auto it = std::find_if(primes.begin(), primes.end(), [&](const PrimeIdealDatum& p) { return p.label == l; });
    if (it == primes.end()) throw InvalidArgument("unknown label " + std::to_string(l));
    out.push_back(*it);
  }
  return out;
}

std::vector<Label> labels_of(std::span<const PrimeIdealDatum> primes) {
  std::vector<Label> out;
  for (const auto& p : primes) out.push_back(p.label);
  return out;
}

}  // namespace

InvariantBundle build_bundle(const ClassGroupModel& cl, std::span<const PrimeIdealDatum> primes,
                             std::span<const LabelSet> subsets) {
  InvariantBundle b(cl.size(), labels_of(primes));
  if (b.labels().size() != primes.size()) throw InvalidArgument("duplicate prime labels");
  b.insert({}, FinGenAbGroup::free(cl.size()));
  for (const auto& p : primes) {
    const PrimeIdealDatum one[] = {p};
    b.insert({p.label}, quotient_delta(cl, one).group);
  }
  for (const auto& s : subsets) {
    LabelSet f = make_label_set(s);
    if (b.contains(f)) continue;
    b.insert(f, quotient_delta(cl, select(primes, f)).group);
  }
  return b;
}

InvariantBundle make_lazy_bundle(const ClassGroupModel& cl, std::vector<PrimeIdealDatum> primes) {
  InvariantBundle b = build_bundle(cl, primes);
  auto data = std::make_shared<const std::pair<ClassGroupModel, std::vector<PrimeIdealDatum>>>(cl, std::move(primes));
  b.set_provider([data](const LabelSet& f) { return quotient_delta(data->first, select(data->second, f)).group; });
  return b;
}

// ---------------------------------------------------------------------------
// Reading the bundle

std::size_t recover_class_number(const InvariantBundle& b) {
  FinGenAbGroup e = b.entry({});
  if (e.torsion_rank() != 0) throw CorruptBundle("empty-set entry " + e.to_string() + " has torsion");
  if (e.free_rank() == 0) throw CorruptBundle("empty-set entry has rank 0");
  return e.free_rank();
}

namespace {

// Common value t of a homogeneous entry (Z/t)^s, with s returned alongside.
std::pair<Integer, std::size_t> homogeneous(const FinGenAbGroup& g, const std::string& what) {
  if (!g.is_finite()) throw CorruptBundle(what + " entry " + g.to_string() + " has free summands");
  const auto& f = g.factors();
  if (f.empty()) return {Integer(1), 0};
  for (const auto& x : f)
    if (x != f.front()) throw CorruptBundle(what + " entry " + g.to_string() + " is not homogeneous");
  return {f.front(), f.size()};
}

}  // namespace

Integer recover_norm(const InvariantBundle& b, Label label) {
  const std::size_t h = recover_class_number(b);
  const std::string what = "singleton {" + std::to_string(label) + "}";
  auto [t, s] = homogeneous(b.entry({label}), what);
  // t = N^ord - 1 with s = h / ord summands. t = 1 forces N = 2, ord = 1; the
  // summands are then invisible.
  if (t == 1) return 2;
  if (h % s != 0)
    throw CorruptBundle(what + ": " + std::to_string(s) + " summands do not divide class number " + std::to_string(h));
  const unsigned long ord = h / s;
  auto n = exact_root(t + 1, ord);
  if (!n) throw CorruptBundle(what + ": " + to_string(t + 1) + " is not a perfect " + std::to_string(ord) + "-th power");
  if (!as_prime_power(*n)) throw CorruptBundle(what + ": recovered norm " + to_string(*n) + " is not a prime power");
  return *n;
}

bool label_has_odd_norm(const InvariantBundle& b, Label label) { return mpz_odd_p(recover_norm(b, label).get_mpz_t()) != 0; }

Integer subgroup_order_from_bundle(const InvariantBundle& b, const LabelSet& f) {
  if (f.empty()) throw InvalidArgument("subgroup_order_from_bundle: empty label set");
  for (Label l : f)
    if (!label_has_odd_norm(b, l)) throw InvalidArgument("label " + std::to_string(l) + " has even norm");
  const std::size_t h = recover_class_number(b);
  auto [t, s] = homogeneous(b.entry(f), "label set " + show(f));
  if (s == 0 || t < 2) throw CorruptBundle("entry for " + show(f) + " is trivial; odd-norm quotients never are");
  if (h % s != 0) throw CorruptBundle("entry for " + show(f) + " has a summand count not dividing the class number");
  return Integer(static_cast<unsigned long>(h / s));
}

// ---------------------------------------------------------------------------
// Greedy chain

PrimaryDecomposition greedy_primary_decomposition(const Integer& group_order, std::size_t candidate_count,
                                                  const SubgroupOrderFn& subgroup_order, const TieBreak& tie_break) {
  PrimaryDecomposition out;
  if (group_order == 1) return out;
  Integer product = 1;
  for (const auto& [p, e] : factorize(group_order)) {
    std::vector<std::size_t> chosen;
    Integer current = 1;  // order of <chosen>
    IntVector chain;
    for (;;) {
      Integer best = 1;
      std::vector<std::size_t> tied;
      for (std::size_t c = 0; c < candidate_count; ++c) {
        if (std::find(chosen.begin(), chosen.end(), c) != chosen.end()) continue;
        std::vector<std::size_t> s = chosen;
        s.insert(std::upper_bound(s.begin(), s.end(), c), c);
        Integer bigger = subgroup_order(s);
        if (!mpz_divisible_p(bigger.get_mpz_t(), current.get_mpz_t()))
          throw InternalContradiction("subgroup order " + to_string(bigger) + " is not a multiple of " + to_string(current));
        Integer contribution = p_part(bigger / current, p);
        if (contribution > best) {
          best = contribution;
          tied = {c};
        } else if (contribution == best && best > 1) {
          tied.push_back(c);
        }
      }
      if (best == 1) break;
      std::size_t pick = tie_break ? tied.at(tie_break(tied)) : tied.front();
      chosen.insert(std::upper_bound(chosen.begin(), chosen.end(), pick), pick);
      current = subgroup_order(chosen);
      chain.push_back(best);
      product *= best;
    }
    if (!chain.empty()) {
      std::sort(chain.begin(), chain.end());
      out.emplace(p, std::move(chain));
    }
  }
  if (product != group_order)
    throw InsufficientGenerators("candidates generate a subgroup with chain product " + to_string(product) +
                                 " but the group has order " + to_string(group_order));
  return out;
}

FinGenAbGroup reconstruct_class_group(const InvariantBundle& b, const TieBreak& tie_break) {
  const std::size_t h = recover_class_number(b);
  if (h == 1) return {};
  std::vector<Label> candidates;
  for (Label l : b.labels())
    if (label_has_odd_norm(b, l)) candidates.push_back(l);
  auto order = [&](std::span<const std::size_t> idx) {
    std::vector<Label> f;
    for (std::size_t i : idx) f.push_back(candidates[i]);
    return subgroup_order_from_bundle(b, make_label_set(std::move(f)));
  };
  PrimaryDecomposition pd;
  try {
    pd = greedy_primary_decomposition(Integer(static_cast<unsigned long>(h)), candidates.size(), order, tie_break);
  } catch (const InsufficientGenerators& e) {
    throw InsufficientGenerators(std::string(e.what()) + " (" + std::to_string(candidates.size()) +
                                 " odd-norm labels; supply more primes)");
  }
  IntVector orders;
  for (const auto& [p, powers] : pd) orders.insert(orders.end(), powers.begin(), powers.end());
  return FinGenAbGroup::from_cyclic_orders(orders);
}

// ---------------------------------------------------------------------------
// Zeta

std::vector<std::uint64_t> zeta_coefficients(std::span<const Integer> norms, std::size_t bound) {
  std::vector<std::uint64_t> a(bound + 1, 0);
  if (bound >= 1) a[1] = 1;
  for (const auto& n : norms) {
    if (n < 2) throw InvalidArgument("norm " + to_string(n) + " is below 2");
    if (n > static_cast<unsigned long>(bound)) continue;
    const std::size_t step = to_size(n);
    // Ascending order lets a[m / step] already include higher powers of n.
    for (std::size_t m = step; m <= bound; m += step) a[m] += a[m / step];
  }
  a.erase(a.begin());
  return a;
}

ZetaData make_zeta(std::span<const Integer> norms, std::size_t bound) {
  ZetaData z;
  for (const auto& n : norms)
    if (n <= static_cast<unsigned long>(bound)) z.norms.push_back(n);
  std::sort(z.norms.begin(), z.norms.end());
  z.coefficients = zeta_coefficients(norms, bound);
  return z;
}

// ---------------------------------------------------------------------------
// Drivers

bool ReconstructionReport::all_passed() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.passed; });
}

ReconstructionReport reconstruct(const InvariantBundle& b, std::size_t zeta_bound) {
  ReconstructionReport r;
  r.class_number = recover_class_number(b);
  IntVector norms;
  for (Label l : b.labels()) {
    Integer n = recover_norm(b, l);
    norms.push_back(n);
    r.norms.emplace(l, std::move(n));
  }
  r.class_group = reconstruct_class_group(b);
  r.zeta = make_zeta(norms, zeta_bound);
  bool consistent = r.class_group.order() == static_cast<unsigned long>(r.class_number);
  r.verdicts.push_back({"class_group_order", consistent,
                        "order of " + r.class_group.to_string() + " vs class number " + std::to_string(r.class_number)});
  return r;
}

ReconstructionReport roundtrip(const ClassGroupModel& cl, std::span<const PrimeIdealDatum> primes, std::size_t zeta_bound) {
  InvariantBundle b = make_lazy_bundle(cl, std::vector<PrimeIdealDatum>(primes.begin(), primes.end()));
  ReconstructionReport r = reconstruct(b, zeta_bound);

  r.verdicts.push_back({"class_number", r.class_number == cl.size(),
                        "recovered " + std::to_string(r.class_number) + ", expected " + std::to_string(cl.size())});
  r.verdicts.push_back({"class_group", iso_equal(r.class_group, cl.group()),
                        "recovered " + r.class_group.to_string() + ", expected " + cl.group().to_string()});

  bool norms_ok = r.norms.size() == primes.size();
  std::string norm_msg = "all " + std::to_string(primes.size()) + " norms match";
  IntVector truth;
  for (const auto& p : primes) {
    truth.push_back(p.norm);
    auto it = r.norms.find(p.label);
    if (it == r.norms.end() || it->second != p.norm) {
      if (norms_ok)
        norm_msg = "label " + std::to_string(p.label) + " (" + p.name + "): recovered " +
                   (it == r.norms.end() ? std::string("nothing") : to_string(it->second)) + ", expected " +
                   to_string(p.norm);
      norms_ok = false;
    }
  }
  r.verdicts.push_back({"norms", norms_ok, norm_msg});

  auto expected = zeta_coefficients(truth, zeta_bound);
  bool zeta_ok = expected == r.zeta.coefficients;
  std::string zeta_msg = "a_1..a_" + std::to_string(zeta_bound) + " match";
  if (!zeta_ok)
    for (std::size_t i = 0; i < expected.size(); ++i)
      if (expected[i] != r.zeta.coefficients[i]) {
        zeta_msg = "first mismatch at n = " + std::to_string(i + 1);
        break;
      }
  r.verdicts.push_back({"zeta", zeta_ok, zeta_msg});
  return r;
}

ReconstructionReport roundtrip(const FieldSpec& spec, const Integer& prime_bound, std::size_t zeta_bound) {
  FieldData fd = field_data(spec, prime_bound);
  try {
    return roundtrip(fd.cl, fd.primes, zeta_bound);
  } catch (const InsufficientGenerators& e) {
    throw InsufficientGenerators(std::string(e.what()) + "; raise the prime bound above " + to_string(prime_bound) +
                                 " for " + describe(spec));
  }
}

FieldComparison compare_fields(const FieldSpec& a, const FieldSpec& b, std::size_t bound) {
  auto blind = [bound](const FieldSpec& spec) {
    FieldData fd = field_data(spec, Integer(static_cast<unsigned long>(bound)));
    return reconstruct(make_lazy_bundle(fd.cl, std::move(fd.primes)), bound);
  };
  ReconstructionReport ra = blind(a);
  ReconstructionReport rb = blind(b);

  FieldComparison c;
  c.zeta_a = ra.zeta;
  c.zeta_b = rb.zeta;
  c.group_a = ra.class_group;
  c.group_b = rb.class_group;
  for (std::size_t i = 0; i < bound; ++i)
    if (ra.zeta.coefficients[i] != rb.zeta.coefficients[i]) {
      c.first_discrepancy = i + 1;
      break;
    }
  c.zeta_equal = !c.first_discrepancy;
  c.class_groups_equal = iso_equal(ra.class_group, rb.class_group);
  c.equivalent = c.zeta_equal && c.class_groups_equal;
  return c;
}

}  // namespace kclass
