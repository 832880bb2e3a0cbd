#pragma once

// The K_0-level picture: the lattice Z[Cl] (one basis vector per ideal class),
// the operators M_p : e_a -> N(p) e_{pa}, the subgroup generated by the images
// of (id - M_p) for p in F, and two independent ways of computing the quotient:
// a brute-force cokernel and the inductive cycle formula.

#include "kclass/abgroup.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace kclass {

// Finite abelian group with an explicit enumeration of its elements. Index 0
// is the identity; elements are listed in mixed-radix order of their
// coordinates (first coordinate fastest).
class ClassGroupModel {
 public:
  explicit ClassGroupModel(FinGenAbGroup group);

  const FinGenAbGroup& group() const noexcept { return group_; }
  std::size_t size() const noexcept { return elements_.size(); }
  const GroupElement& element(std::size_t index) const { return elements_.at(index); }
  const std::vector<GroupElement>& elements() const noexcept { return elements_; }

  // Throws InvalidArgument for elements outside the group.
  std::size_t index_of(const GroupElement& x) const;
  std::size_t multiply(std::size_t a, std::size_t b) const;
  std::size_t inverse(std::size_t a) const;

 private:
  FinGenAbGroup group_;
  std::vector<GroupElement> elements_;
};

using Label = std::uint32_t;

// One prime ideal: its norm q^f, its ideal class, and the rational prime q
// below it. `name` is for humans only; reconstruction never sees it.
struct PrimeIdealDatum {
  Label label = 0;
  std::string name;
  Integer norm;
  GroupElement cls;
  Integer residue_char;
};

// N(p) times the permutation matrix of multiplication by [p]: column a has
// N(p) in row index_of([p] a).
IntMatrix m_operator_matrix(const ClassGroupModel& cl, const PrimeIdealDatum& p);

// Columns of (I - M_p) for each p in F, concatenated in order. They generate
// Delta_F inside Z^{#Cl}.
std::vector<IntVector> delta_f_generators(const ClassGroupModel& cl, std::span<const PrimeIdealDatum> f);

// Brute force: cokernel of delta_f_generators. Works for any F, including
// primes of even norm.
Cokernel quotient_delta(const ClassGroupModel& cl, std::span<const PrimeIdealDatum> f);

// Relation matrix of the n-cycle: column i is e_i - N_i e_{i-1}, indices taken
// cyclically so that e_0 = e_n. In the cokernel pi(e_i) = N_i pi(e_{i-1}),
// hence pi(e_i) = (N_1 ... N_i) pi(e_n).
IntMatrix cycle_matrix(std::span<const Integer> ns);

struct CycleCokernel {
  // coker of the cycle matrix over (Z/dZ)^n is Z/d_alpha, d_alpha = gcd(N_1...N_n - 1, d).
  Integer d_alpha;
  // coefficients[i-1] = N_1 ... N_i mod d_alpha, so pi(e_i) = coefficients[i-1] * pi(e_n).
  IntVector coefficients;
};

// Closed form for the cycle cokernel. d = 0 means Z. Throws on empty input.
CycleCokernel coker_cycle_formula(std::span<const Integer> ns, const Integer& d);

struct ClassMultiplier {
  std::size_t rep = 0;  // class index of the coset representative
  Integer multiplier;   // odd; pi_F[e_a] = multiplier * pi_F[e_rep]
};

// Output of the inductive computation for odd-norm F:
// Delta / Delta_F = (Z/d_F)^{coset_count}, with basis pi_F[e_rep] for rep in reps.
struct PredictedQuotient {
  Integer d_f;
  std::size_t coset_count = 0;
  std::vector<std::size_t> reps;
  std::vector<ClassMultiplier> l_map;  // indexed by class index

  FinGenAbGroup as_group() const;
};

// Induction over F in the given order. Throws InvalidArgument for an
// even-norm prime and InternalContradiction if two orbits disagree on d.
PredictedQuotient predicted_quotient(const ClassGroupModel& cl, std::span<const PrimeIdealDatum> f);

// [Cl : <[p]>] copies of Z/(N(p)^{ord [p]} - 1). Valid for every prime.
FinGenAbGroup singleton_structure(const ClassGroupModel& cl, const PrimeIdealDatum& p);

// Whether e_a - l * e_rep lies in Delta_F.
bool verify_relation(const ClassGroupModel& cl, std::span<const PrimeIdealDatum> f, std::size_t a,
                     const Integer& l, std::size_t rep);

}  // namespace kclass
