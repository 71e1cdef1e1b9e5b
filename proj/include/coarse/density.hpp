#pragma once

#include "coarse/seq.hpp"

#include <vector>

namespace coarse {

// Finite, strictly increasing list of prefix lengths at which densities are
// recorded. `warmup` marks where tail statistics start; `limit` bounds the
// largest checkpoint.
struct CheckpointGrid {
  enum class Kind { Linear, Geometric, Factorial, Dyadic, Explicit };

  Kind kind = Kind::Geometric;
  Nat step = 1;          // Linear
  Rat ratio = Rat(5, 4); // Geometric; must be > 1
  Nat warmup = nat_pow2(10);
  Nat limit = nat_pow2(20);
  std::vector<Nat> listed; // Explicit

  static CheckpointGrid linear(const Nat& step, const Nat& warmup, const Nat& limit);
  static CheckpointGrid geometric(const Rat& ratio, const Nat& warmup, const Nat& limit);
  static CheckpointGrid geometric_default(const Nat& warmup, const Nat& limit);
  static CheckpointGrid factorial(const Nat& warmup, const Nat& limit);
  static CheckpointGrid dyadic(const Nat& warmup, const Nat& limit);
  static CheckpointGrid explicit_list(std::vector<Nat> points, const Nat& warmup);

  // Validated checkpoint list: nonempty, strictly increasing, every point in
  // [1, limit], at least one point >= warmup.
  std::vector<Nat> points() const;
  std::string describe() const;
};

struct DensityProfile {
  struct Row {
    Nat n;
    Nat count;
    Rat rho;
  };
  std::vector<Row> rows;
  Nat warmup = 0;
  // max/min of rho over rows with n >= warmup: the computable surrogates for
  // limsup/liminf at this evidence horizon.
  Rat tail_max = Rat(0);
  Rat tail_min = Rat(0);

  const Nat& horizon() const { return rows.back().n; }
};

// |S ∩ [0,n)| / n, exact. n >= 1 and within budget unless the sequence has a
// closed-form count.
Rat rho_at(const BitSequence& s, const Nat& n, const Budget& budget = default_budget());

// rho_n(S) + rho_n(complement S) == 1, computed from both sequences.
bool complement_identity_check(const BitSequence& s, const Nat& n,
                               const Budget& budget = default_budget());

// d_k(S) = |S ∩ J_k| / 2^k over the dyadic block J_k = [2^k - 1, 2^(k+1) - 1).
Rat block_density(const BitSequence& s, unsigned k, const Budget& budget = default_budget());

DensityProfile density_profile(const BitSequence& s, const CheckpointGrid& grid,
                               const Budget& budget = default_budget());

// tail_max of the density profile of symdiff(a, b): the computable estimate
// of the distance between the classes of a and b at this horizon.
std::pair<Rat, DensityProfile> delta_estimate(const BitSequence& a, const BitSequence& b,
                                              const CheckpointGrid& grid,
                                              const Budget& budget = default_budget());

// Finite forms of the density/block-density comparison, all exact:
//   d_k(S) <= 2 * rho_{2^(k+1)}(S)                      for k <= K
//   rho_m(S) <  2 * max_{i<=n} d_i(S)   for m-1 in J_n, when the max is > 0;
//   when every d_i is zero the multiplicative form is skipped and the prefix
//   count monotonicity |S∩[0,m)| <= |S∩[0,2^(n+1))| is asserted instead.
struct Factor2Report {
  struct Entry {
    unsigned k = 0;
    Rat d_k;
    Rat rho_block_end; // rho at 2^(k+1)
    bool block_le_two_rho = false;
    bool prefix_bound_ok = false; // all m with m-1 in J_k
  };
  std::vector<Entry> entries;
  bool all_pass = false;
};

Factor2Report factor2_check(const BitSequence& s, unsigned K,
                            const Budget& budget = default_budget());

// Empirical lower bound for the description quality of `target` by the given
// describers: max over describers D of tail_min of rho_n(target ▽ D) over the
// grid. Errors on an empty describer list.
Rat gamma_lower_estimate(const BitSequence& target,
                         const std::vector<BitSequence>& describers,
                         const CheckpointGrid& grid,
                         const Budget& budget = default_budget());

}  // namespace coarse
