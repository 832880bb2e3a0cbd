#pragma once

// Blind reconstruction. The only input is an InvariantBundle: opaque labels
// and, for finite label sets F, the isomorphism type of Delta / Delta_F. From
// it we read off the class number, every norm, the truncated zeta function,
// and the class group as an abstract group.

#include "kclass/fields.hpp"

#include <functional>
#include <map>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <vector>

namespace kclass {

using LabelSet = std::vector<Label>;  // sorted, no duplicates

LabelSet make_label_set(std::vector<Label> labels);

class InvariantBundle {
 public:
  // Computes the entry for a label set on demand. Must be a pure function.
  using Provider = std::function<FinGenAbGroup(const LabelSet&)>;

  InvariantBundle(std::size_t rank, std::vector<Label> labels);
  InvariantBundle(const InvariantBundle& other);
  InvariantBundle& operator=(const InvariantBundle& other);

  std::size_t rank() const noexcept { return rank_; }
  const LabelSet& labels() const noexcept { return labels_; }

  void insert(const LabelSet& f, FinGenAbGroup g);
  void set_provider(Provider provider) { provider_ = std::move(provider); }

  // Memoized lookup; falls back to the provider. Throws MissingEntry.
  // Concurrent callers share the read lock; inserts take it exclusively.
  FinGenAbGroup entry(const LabelSet& f) const;
  bool contains(const LabelSet& f) const;
  std::map<LabelSet, FinGenAbGroup> entries() const;

  // Structural checks: rank >= 1, the empty entry is Z^rank, every singleton
  // present, every entry's labels known. Throws CorruptBundle.
  void validate() const;

  bool operator==(const InvariantBundle& other) const;

 private:
  std::size_t rank_;
  LabelSet labels_;
  mutable std::shared_mutex mutex_;
  mutable std::map<LabelSet, FinGenAbGroup> entries_;
  Provider provider_;
};

// Brute-force quotients for the empty set, every singleton, and each requested
// subset; the result carries no arithmetic annotation beyond labels.
// Throws InvalidArgument for a label not among `primes`.
InvariantBundle build_bundle(const ClassGroupModel& cl, std::span<const PrimeIdealDatum> primes,
                             std::span<const LabelSet> subsets = {});

// Same, plus a provider that computes further subsets when asked.
InvariantBundle make_lazy_bundle(const ClassGroupModel& cl, std::vector<PrimeIdealDatum> primes);

std::size_t recover_class_number(const InvariantBundle& b);
Integer recover_norm(const InvariantBundle& b, Label label);
bool label_has_odd_norm(const InvariantBundle& b, Label label);
// #Cl_F for a non-empty set of odd-norm labels.
Integer subgroup_order_from_bundle(const InvariantBundle& b, const LabelSet& f);

// Order of the subgroup generated by a set of candidates (given by index).
using SubgroupOrderFn = std::function<Integer(std::span<const std::size_t>)>;
// Picks one of several candidates that tie for the maximum; receives candidate
// indices in ascending order and returns a position in that list.
using TieBreak = std::function<std::size_t(std::span<const std::size_t>)>;

// Greedy chain over a generating family: for each prime p dividing
// group_order, repeatedly add the candidate maximizing the p-part of the index
// it contributes, until no candidate contributes. Returns prime -> chain values
// sorted ascending, the same shape as primary_decomposition. Throws
// InsufficientGenerators when the chain values do not multiply to group_order.
PrimaryDecomposition greedy_primary_decomposition(const Integer& group_order, std::size_t candidate_count,
                                                  const SubgroupOrderFn& subgroup_order, const TieBreak& tie_break = {});

FinGenAbGroup reconstruct_class_group(const InvariantBundle& b, const TieBreak& tie_break = {});

// a_1..a_bound of the Euler product over the given norms (index 0 is a_1).
std::vector<std::uint64_t> zeta_coefficients(std::span<const Integer> norms, std::size_t bound);

struct ZetaData {
  IntVector norms;  // ascending, only those <= bound
  std::vector<std::uint64_t> coefficients;
};

ZetaData make_zeta(std::span<const Integer> norms, std::size_t bound);

struct Verdict {
  std::string name;
  bool passed = false;
  std::string message;
};

struct ReconstructionReport {
  std::size_t class_number = 0;
  FinGenAbGroup class_group;
  std::map<Label, Integer> norms;
  ZetaData zeta;
  std::vector<Verdict> verdicts;

  bool all_passed() const;
};

// Reads everything recoverable from the bundle; verdicts are internal
// consistency checks only.
ReconstructionReport reconstruct(const InvariantBundle& b, std::size_t zeta_bound);

// Build a lazy bundle, reconstruct blind, compare with ground truth.
ReconstructionReport roundtrip(const ClassGroupModel& cl, std::span<const PrimeIdealDatum> primes, std::size_t zeta_bound);
ReconstructionReport roundtrip(const FieldSpec& spec, const Integer& prime_bound, std::size_t zeta_bound);

struct FieldComparison {
  bool equivalent = false;
  bool zeta_equal = false;
  bool class_groups_equal = false;
  std::optional<std::size_t> first_discrepancy;  // smallest n with a_n different
  ZetaData zeta_a, zeta_b;
  FinGenAbGroup group_a, group_b;
};

// Reconstructs both fields from prime ideals of norm <= bound and compares
// a_1..a_bound and the class groups.
FieldComparison compare_fields(const FieldSpec& a, const FieldSpec& b, std::size_t bound);

}  // namespace kclass
