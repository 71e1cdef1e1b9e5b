#pragma once

#include "coarse/seq.hpp"

#include <memory>
#include <vector>

namespace coarse {

// Consecutive blocks L_1, L_2, ... of N with |L_i| = i, so L_i starts at the
// triangular number m_i = i(i-1)/2.
struct TriangularPartition {
  static Nat block_start(const Nat& i); // m_i
  // n >= 0 -> (i, offset) with i >= 1, 0 <= offset < i
  static std::pair<Nat, Nat> block_of(const Nat& n);
  static std::pair<std::uint64_t, std::uint64_t> block_of_u64(std::uint64_t n);
};

// Sum_{j=0}^{n-1} floor((a*j + b) / m), exact, O(log) Euclidean descent.
Nat floor_sum(const Nat& n, const Nat& m, const Nat& a, const Nat& b);

// The density-r set: block L_i holds its first floor(r*i) positions. Exact
// density r in the limit, with r - 2/i <= rho at block starts m_i.
BitSequence c_r(const Rat& r);

// A thinned to density r*density(A) along A: a ∩ c_r, kept as its own
// constructor so the provenance reads ar(a, r).
BitSequence a_r(const BitSequence& a, const Rat& r);

// Lazy partition of the elements of `a` into runs L^a_n of n consecutive
// elements. Ranks and run boundaries are scanned on demand under the budget.
class RelativePartition {
 public:
  RelativePartition(BitSequence a, Budget budget = default_budget());

  // rank-th element of a (0-based); budget_error if the scan runs dry.
  Nat element(const Nat& rank) const;
  // |a ∩ [0, n)|
  Nat count_below(const Nat& n) const;
  // One past the largest element of run n (n >= 1): the prefix length that
  // exactly covers runs 1..n.
  Nat run_end(const Nat& n) const;

  const BitSequence& base() const;

 private:
  struct State;
  std::shared_ptr<State> state_;
  friend BitSequence geodesic_within(const BitSequence&, const Rat&, const Budget&);
};

// f(s) within a: the first floor(s*n) elements of every run L^a_n. Walking
// s from 0 to 1 moves the result from empty to a at unit speed.
BitSequence geodesic_within(const BitSequence& a, const Rat& s,
                            const Budget& budget = default_budget());

// a ∩ D where block L_i of D holds its first floor(q_i * i) positions; the
// q list is extended constantly beyond its end, so a singleton {r} gives
// exactly a_r(a, r).
BitSequence rational_geodesic(const BitSequence& a, std::vector<Rat> qs);

// Lazy increasing list of the positions where a and b differ.
class DisagreementList {
 public:
  DisagreementList(BitSequence a, BitSequence b, Budget budget = default_budget());

  // p_i, the i-th disagreement; budget_error if the scan runs dry.
  Nat position(const Nat& i) const;
  // #{i : p_i < n}
  Nat count_below(const Nat& n) const;

 private:
  struct State;
  std::shared_ptr<State> state_;
  friend BitSequence midpoint_family(const BitSequence&, const BitSequence&,
                                     const BitSequence&, const Budget&);
};

// F(X): copy a where a and b agree; at the i-th disagreement copy a if
// i ∈ X, else b. X = empty gives b's class, X = full gives a, and the exact
// disagreement count below n is |¬X ∩ [0, κ(n))| with κ(n) = #{i : p_i < n}.
BitSequence midpoint_family(const BitSequence& a, const BitSequence& b,
                            const BitSequence& x,
                            const Budget& budget = default_budget());

// x_r = join(c_r, ¬c_r): density exactly 1/2 at even prefixes, and
// rho_2n(x_r △ x_s) = rho_n(c_r △ c_s).
BitSequence x_r(const Rat& r);

}  // namespace coarse
