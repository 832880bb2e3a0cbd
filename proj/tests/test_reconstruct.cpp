#include "kclass/error.hpp"
#include "kclass/reconstruct.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <thread>

namespace kclass {
namespace {

using testing::G;
using testing::prime;
using testing::Rng;
using testing::V;

// Primes of the quadratic field named in `names`, relabeled 0, 1, ... in that order.
std::pair<ClassGroupModel, std::vector<PrimeIdealDatum>> quadratic(long d, std::initializer_list<const char*> names) {
  FieldData fd = field_data(QuadraticSpec{d}, 1000);
  std::vector<PrimeIdealDatum> out;
  for (const char* n : names)
    for (const auto& p : fd.primes)
      if (p.name == n) {
        out.push_back(p);
        out.back().label = static_cast<Label>(out.size() - 1);
      }
  return {fd.cl, out};
}

InvariantBundle hand_bundle(std::size_t rank, std::initializer_list<std::pair<LabelSet, FinGenAbGroup>> entries) {
  std::vector<Label> labels;
  for (const auto& [f, g] : entries) labels.insert(labels.end(), f.begin(), f.end());
  InvariantBundle b(rank, labels);
  b.insert({}, FinGenAbGroup::free(rank));
  for (const auto& [f, g] : entries) b.insert(f, g);
  return b;
}

// ---------------------------------------------------------------------------
// Bundles

TEST(Bundle, BuildExamples) {
  ClassGroupModel trivial{FinGenAbGroup()};
  const PrimeIdealDatum five[] = {prime(0, 5, {})};
  InvariantBundle b = build_bundle(trivial, five);
  EXPECT_EQ(b.rank(), 1u);
  EXPECT_EQ(b.entry({0}), G({4}));

  auto [cl, primes] = quadratic(-20, {"p_3", "p_7", "p_11"});
  const LabelSet pair[] = {{0, 1}};
  InvariantBundle q = build_bundle(cl, primes, pair);
  EXPECT_EQ(q.rank(), 2u);
  EXPECT_EQ(q.entry({0}), G({8}));
  EXPECT_EQ(q.entry({2}), G({120, 120}));
  EXPECT_EQ(q.entry({0, 1}), G({4}));

  InvariantBundle empty = build_bundle(cl, {});
  EXPECT_EQ(empty.entries().size(), 1u);
  EXPECT_NO_THROW(empty.validate());

  const LabelSet unknown[] = {{0, 7}};
  EXPECT_THROW(build_bundle(cl, primes, unknown), InvalidArgument);
}

TEST(Bundle, EntriesWithoutProviderAreMissing) {
  auto [cl, primes] = quadratic(-20, {"p_3", "p_7"});
  InvariantBundle b = build_bundle(cl, primes);
  EXPECT_THROW(b.entry({0, 1}), MissingEntry);
  InvariantBundle lazy = make_lazy_bundle(cl, primes);
  EXPECT_FALSE(lazy.contains({0, 1}));
  EXPECT_EQ(lazy.entry({0, 1}), G({4}));
  EXPECT_TRUE(lazy.contains({0, 1}));
  EXPECT_THROW(lazy.entry({0, 9}), MissingEntry);
}

TEST(Bundle, ValidateCatchesStructuralDamage) {
  InvariantBundle b(2, {0});
  EXPECT_THROW(b.validate(), CorruptBundle);  // no empty entry
  b.insert({}, G({0, 0}));
  EXPECT_THROW(b.validate(), CorruptBundle);  // no singleton
  b.insert({0}, G({8}));
  EXPECT_NO_THROW(b.validate());
  b.insert({0, 3}, G({4}));
  EXPECT_THROW(b.validate(), CorruptBundle);  // unknown label
}

TEST(Bundle, ConcurrentLookupsAgreeWithSequentialOnes) {
  FieldData fd = field_data(QuadraticSpec{-84}, 60);
  InvariantBundle lazy = make_lazy_bundle(fd.cl, fd.primes);
  InvariantBundle reference = make_lazy_bundle(fd.cl, fd.primes);
  std::vector<LabelSet> sets;
  Rng rng(3001);
  const auto n = static_cast<long>(fd.primes.size());
  for (int i = 0; i < 40; ++i) sets.push_back(make_label_set({static_cast<Label>(rng.uniform(0, n - 1)),
                                                               static_cast<Label>(rng.uniform(0, n - 1))}));
  std::vector<std::vector<FinGenAbGroup>> seen(8);
  std::vector<std::thread> threads;
  for (std::size_t t = 0; t < seen.size(); ++t)
    threads.emplace_back([&, t] {
      for (std::size_t i = 0; i < sets.size(); ++i) seen[t].push_back(lazy.entry(sets[(i + t) % sets.size()]));
    });
  for (auto& th : threads) th.join();
  for (std::size_t t = 0; t < seen.size(); ++t)
    for (std::size_t i = 0; i < sets.size(); ++i) EXPECT_EQ(seen[t][i], reference.entry(sets[(i + t) % sets.size()]));
}

// ---------------------------------------------------------------------------
// Reading a bundle

TEST(Recover, ClassNumber) {
  EXPECT_EQ(recover_class_number(hand_bundle(1, {})), 1u);
  auto [cl20, p20] = quadratic(-20, {"p_3"});
  EXPECT_EQ(recover_class_number(build_bundle(cl20, p20)), 2u);
  auto [cl23, p23] = quadratic(-23, {"p_2"});
  EXPECT_EQ(recover_class_number(build_bundle(cl23, p23)), 3u);

  InvariantBundle torsion(2, {});
  torsion.insert({}, G({2, 0, 0}));
  EXPECT_THROW(recover_class_number(torsion), CorruptBundle);
}

TEST(Recover, NormExamples) {
  EXPECT_EQ(recover_norm(hand_bundle(2, {{{0}, G({8})}}), 0), 3);
  EXPECT_EQ(recover_norm(hand_bundle(2, {{{0}, G({120, 120})}}), 0), 121);
  EXPECT_EQ(recover_norm(hand_bundle(1, {{{0}, G({4})}}), 0), 5);
  EXPECT_EQ(recover_norm(hand_bundle(3, {{{0}, G({342})}}), 0), 7);
}

TEST(Recover, NormRejectsNonArithmeticEntries) {
  EXPECT_THROW(recover_norm(hand_bundle(2, {{{0}, G({2, 4})}}), 0), CorruptBundle);   // not homogeneous
  EXPECT_THROW(recover_norm(hand_bundle(2, {{{0}, G({10})}}), 0), CorruptBundle);     // 11 not a square
  EXPECT_THROW(recover_norm(hand_bundle(2, {{{0}, G({0})}}), 0), CorruptBundle);      // free summand
  EXPECT_THROW(recover_norm(hand_bundle(1, {{{0}, G({5})}}), 0), CorruptBundle);      // 6 not a prime power
  EXPECT_THROW(recover_norm(hand_bundle(4, {{{0}, G({8, 8, 8})}}), 0), CorruptBundle); // 3 summands, h = 4
}

TEST(Recover, OddNorm) {
  auto [cl4, p4] = quadratic(-4, {"p_2"});
  InvariantBundle b4 = build_bundle(cl4, p4);
  EXPECT_TRUE(b4.entry({0}).is_trivial());
  EXPECT_EQ(recover_norm(b4, 0), 2);
  EXPECT_FALSE(label_has_odd_norm(b4, 0));
  EXPECT_TRUE(label_has_odd_norm(hand_bundle(2, {{{0}, G({8})}}), 0));
  EXPECT_TRUE(label_has_odd_norm(hand_bundle(2, {{{0}, G({120, 120})}}), 0));
}

TEST(Recover, NormInvertsSingletonForEveryPrime) {
  Rng rng(3002);
  const std::vector<FinGenAbGroup> groups = {G({}), G({2}), G({3}), G({4}), G({2, 2}), G({6}), G({2, 4}), G({2, 2, 4})};
  for (int trial = 0; trial < 60; ++trial) {
    ClassGroupModel cl(groups[rng.index(groups.size())]);
    auto primes = rng.primes(cl, 4, testing::kAllNorms);
    InvariantBundle b = build_bundle(cl, primes);
    for (const auto& p : primes) EXPECT_EQ(recover_norm(b, p.label), p.norm);
  }
}

TEST(Recover, SubgroupOrders) {
  auto [cl, primes] = quadratic(-20, {"p_3", "p_29", "p_7", "p_2"});
  InvariantBundle b = make_lazy_bundle(cl, primes);
  EXPECT_EQ(b.entry({1}), G({28, 28}));
  EXPECT_EQ(subgroup_order_from_bundle(b, {0}), 2);
  EXPECT_EQ(subgroup_order_from_bundle(b, {1}), 1);
  EXPECT_EQ(subgroup_order_from_bundle(b, {0, 2}), 2);
  EXPECT_THROW(subgroup_order_from_bundle(b, {3}), InvalidArgument);
  EXPECT_THROW(subgroup_order_from_bundle(b, {}), InvalidArgument);

  InvariantBundle bad = hand_bundle(2, {{{0}, G({8})}, {{1}, G({8})}, {{0, 1}, G({2, 4})}});
  EXPECT_THROW(subgroup_order_from_bundle(bad, {0, 1}), CorruptBundle);
}

// ---------------------------------------------------------------------------
// Greedy chain

TEST(Greedy, RecoversPrimaryDecompositionOfRandomGroups) {
  Rng rng(3003);
  for (int trial = 0; trial < 200; ++trial) {
    FinGenAbGroup g = rng.finite_group(512);
    auto fam = rng.generating_family(g, static_cast<std::size_t>(rng.uniform(1, 8)));
    auto order = [&](std::span<const std::size_t> idx) {
      std::vector<GroupElement> sub;
      for (auto i : idx) sub.push_back(fam[i]);
      return Integer(g.order() / subgroup_index(g, sub));
    };
    auto expected = primary_decomposition(g);
    EXPECT_EQ(greedy_primary_decomposition(g.order(), fam.size(), order), expected) << g.to_string();
    TieBreak random_tie = [&](std::span<const std::size_t> tied) { return rng.index(tied.size()); };
    EXPECT_EQ(greedy_primary_decomposition(g.order(), fam.size(), order, random_tie), expected) << g.to_string();
  }
}

TEST(Greedy, NonGeneratingFamilyIsReported) {
  FinGenAbGroup g = G({2, 4});
  const std::vector<GroupElement> fam = {{V({0, 1})}};
  auto order = [&](std::span<const std::size_t> idx) {
    std::vector<GroupElement> sub;
    for (auto i : idx) sub.push_back(fam[i]);
    return Integer(g.order() / subgroup_index(g, sub));
  };
  EXPECT_THROW(greedy_primary_decomposition(g.order(), fam.size(), order), InsufficientGenerators);
}

TEST(Reconstruct, Examples) {
  EXPECT_TRUE(reconstruct_class_group(hand_bundle(1, {})).is_trivial());

  auto [cl, primes] = quadratic(-20, {"p_3", "p_7", "p_11", "p_29"});
  EXPECT_EQ(reconstruct_class_group(make_lazy_bundle(cl, primes)), G({2}));

  ClassGroupModel klein(G({2, 2}));
  std::vector<PrimeIdealDatum> four = {prime(0, 3, V({1, 0})), prime(1, 5, V({0, 1})), prime(2, 7, V({1, 1})),
                                       prime(3, 11, V({0, 0}))};
  EXPECT_EQ(reconstruct_class_group(make_lazy_bundle(klein, four)), G({2, 2}));
}

TEST(Reconstruct, TieBreakDoesNotChangeTheAnswer) {
  ClassGroupModel cl(G({2, 2, 4}));
  Rng rng(3004);
  auto primes = rng.primes(cl, 12, testing::kOddNorms);
  InvariantBundle b = make_lazy_bundle(cl, primes);
  for (int i = 0; i < 5; ++i) {
    TieBreak random_tie = [&](std::span<const std::size_t> tied) { return rng.index(tied.size()); };
    EXPECT_EQ(reconstruct_class_group(b, random_tie), cl.group());
  }
}

TEST(Reconstruct, StarvedBundleRaisesInsufficientGenerators) {
  ClassGroupModel cl(G({2, 2}));
  std::vector<PrimeIdealDatum> primes = {prime(0, 3, V({1, 0})), prime(1, 5, V({1, 0})), prime(2, 2, V({0, 1}))};
  EXPECT_THROW(reconstruct_class_group(make_lazy_bundle(cl, primes)), InsufficientGenerators);
}

TEST(Reconstruct, RandomSyntheticRoundTrips) {
  Rng rng(3005);
  for (int trial = 0; trial < 40; ++trial) {
    ClassGroupModel cl(rng.finite_group(16));
    std::vector<PrimeIdealDatum> primes;
    do primes = rng.primes(cl, cl.size() + 3, testing::kOddNorms);
    while (subgroup_index(cl.group(), [&] {
             std::vector<GroupElement> c;
             for (const auto& p : primes) c.push_back(p.cls);
             return c;
           }()) != 1);
    // A few even-norm primes ride along; they must be skipped, not misread.
    for (int k = 0; k < 2; ++k) {
      primes.push_back(rng.primes(cl, 1, {2, 4, 8}).front());
      primes.back().label = static_cast<Label>(primes.size() - 1);
    }
    ReconstructionReport r = roundtrip(cl, primes, 60);
    EXPECT_TRUE(r.all_passed()) << cl.group().to_string();
    for (const auto& v : r.verdicts) EXPECT_TRUE(v.passed) << v.name << ": " << v.message;
  }
}

// ---------------------------------------------------------------------------
// Zeta

TEST(Zeta, Examples) {
  auto n4 = enumerate_prime_ideals(QuadraticSpec{-4}, 10);
  IntVector norms;
  for (const auto& p : n4) norms.push_back(p.norm);
  EXPECT_EQ(zeta_coefficients(norms, 10), (std::vector<std::uint64_t>{1, 1, 0, 1, 2, 0, 0, 1, 1, 2}));
  EXPECT_EQ(zeta_coefficients(IntVector{}, 3), (std::vector<std::uint64_t>{1, 0, 0}));
  EXPECT_THROW(zeta_coefficients(V({1}), 3), InvalidArgument);
  IntVector shuffled = norms;
  std::reverse(shuffled.begin(), shuffled.end());
  EXPECT_EQ(zeta_coefficients(shuffled, 10), zeta_coefficients(norms, 10));
}

TEST(Zeta, MatchesCharacterSumsAndFormCounts) {
  for (long d : {-3, -4, -20, -23, -84}) {
    const std::size_t x = 200;
    IntVector norms;
    for (const auto& p : enumerate_prime_ideals(QuadraticSpec{d}, x)) norms.push_back(p.norm);
    auto a = zeta_coefficients(norms, x);

    // Representation counts: sum over reduced forms of #{(u, v) : f(u, v) = n} / w.
    const long w = d == -3 ? 6 : d == -4 ? 4 : 2;
    std::vector<long> reps(x + 1, 0);
    for (const auto& f : reduced_forms(d))
      for (long u = -30; u <= 30; ++u)
        for (long v = -30; v <= 30; ++v) {
          Integer n = f.evaluate(u, v);
          if (n >= 1 && n <= static_cast<long>(x)) ++reps[n.get_si()];
        }
    for (std::size_t n = 1; n <= x; ++n) {
      long chi_sum = 0;
      for (std::size_t k = 1; k <= n; ++k)
        if (n % k == 0) chi_sum += mpz_kronecker_si(Integer(d).get_mpz_t(), static_cast<long>(k));
      EXPECT_EQ(a[n - 1], static_cast<std::uint64_t>(chi_sum)) << "D = " << d << ", n = " << n;
      EXPECT_EQ(reps[n] % w, 0);
      EXPECT_EQ(a[n - 1], static_cast<std::uint64_t>(reps[n] / w)) << "D = " << d << ", n = " << n;
    }
  }
}

// ---------------------------------------------------------------------------
// Drivers

TEST(Roundtrip, Examples) {
  ReconstructionReport r4 = roundtrip(QuadraticSpec{-4}, 50, 50);
  EXPECT_TRUE(r4.all_passed());
  EXPECT_TRUE(r4.class_group.is_trivial());

  ReconstructionReport r20 = roundtrip(QuadraticSpec{-20}, 50, 50);
  EXPECT_TRUE(r20.all_passed());
  EXPECT_EQ(r20.class_group, G({2}));

  SyntheticSpec z3{V({3}), {{7, V({1}), 7}}, false};
  ReconstructionReport r3 = roundtrip(z3, 10, 10);
  EXPECT_TRUE(r3.all_passed());
  EXPECT_EQ(r3.class_group, G({3}));
}

TEST(Roundtrip, TooFewPrimesAsksForMore) {
  try {
    roundtrip(QuadraticSpec{-84}, 4, 4);
    FAIL() << "expected InsufficientGenerators";
  } catch (const InsufficientGenerators& e) {
    EXPECT_NE(std::string(e.what()).find("raise the prime bound"), std::string::npos);
  }
}

TEST(Compare, Examples) {
  FieldComparison clone = compare_fields(QuadraticSpec{-20}, testing::synthetic_clone(-20, 100), 100);
  EXPECT_TRUE(clone.equivalent);

  FieldComparison diff = compare_fields(QuadraticSpec{-4}, QuadraticSpec{-20}, 10);
  EXPECT_FALSE(diff.equivalent);
  ASSERT_TRUE(diff.first_discrepancy.has_value());
  EXPECT_EQ(*diff.first_discrepancy, 3u);
  EXPECT_EQ(diff.zeta_a.coefficients[2], 0u);
  EXPECT_EQ(diff.zeta_b.coefficients[2], 2u);

  EXPECT_TRUE(compare_fields(QuadraticSpec{-23}, QuadraticSpec{-23}, 50).equivalent);
}

TEST(Compare, SameZetaDifferentGroupIsNotEquivalent) {
  // Same norm stream, different class groups.
  SyntheticSpec a{V({4}), {{3, V({1}), 3}, {5, V({1}), 5}}, false};
  SyntheticSpec b{V({2, 2}), {{3, V({1, 0}), 3}, {5, V({0, 1}), 5}}, false};
  FieldComparison c = compare_fields(a, b, 10);
  EXPECT_TRUE(c.zeta_equal);
  EXPECT_FALSE(c.class_groups_equal);
  EXPECT_FALSE(c.equivalent);
}

}  // namespace
}  // namespace kclass
