#pragma once

#include "coarse/density.hpp"
#include "coarse/seq.hpp"

#include <optional>
#include <string>
#include <vector>

namespace coarse {

// The three block families used to push sets around while controlling
// density:
//   I_n = [n!, (n+1)!)                       factorial blocks; index 0 empty
//   J_k = [2^k - 1, 2^(k+1) - 1)             dyadic blocks; J_0 = {0}
//   R_k = {m > 0 : 2^k | m, 2^(k+1) ∤ m}     interleaved arithmetic fibers
enum class Family { I, J, R };

// Block index containing m, or nullopt when m lies in no block of the family
// (m = 0 for I and R).
std::optional<Nat> family_block_of(Family f, const Nat& m);

// [lo, hi) for the contiguous families I and J. R blocks are not intervals.
std::pair<Nat, Nat> family_block_range(Family f, const Nat& k);

// n-th element of R_k in increasing order: 2^k * (2n + 1).
Nat r_element(const Nat& k, const Nat& n);

// |R_k ∩ [0, n)|
Nat r_count_below(const Nat& k, const Nat& n);

// Cantor pairing <i,m> = (i+m)(i+m+1)/2 + i and its inverse.
Nat cantor_pair(const Nat& i, const Nat& m);
std::pair<Nat, Nat> cantor_unpair(const Nat& n);

// Block coding: bit m copies A at the index of m's block; 0 outside blocks.
BitSequence code(Family f, const BitSequence& a);

// R-join: the n-th element of R_k carries X_k(n). Indices beyond the supplied
// list read as empty.
BitSequence r_join(std::vector<BitSequence> family);

// Relative R-coding: fiber k carries A when c(k) = 1 and ¬A otherwise.
BitSequence r_relative(const BitSequence& a, const BitSequence& c);

// R-coding of the truncation A ∩ [0, k]: a computable approximant whose
// δ-distance to code(R, A) is at most the tail density 2^-(k+1).
BitSequence approximate_R(const BitSequence& a, const Nat& k);

// Majority vote over block J_k. samples = 0 reads the whole block (within
// budget); otherwise a deterministic stride subsample of that size, phased by
// k. Ties decode to 0.
bool decode_J(const BitSequence& c, unsigned k, std::uint64_t samples = 0,
              const Budget& budget = default_budget());

// Density vote within the fiber R_k at the grid horizon: returns 1 iff the
// observed density of c inside R_k exceeds 1/2. Ties decode to 0.
bool decode_R(const BitSequence& c, const Nat& k, const CheckpointGrid& grid,
              const Budget& budget = default_budget());

// A single set at distance one from every listed set: on block I_n with
// n = <i,m> and i below the list length, copy ¬A_i; blocks beyond the list
// read 0; position 0 (in no block) copies ¬A_0.
BitSequence diagonal_distance_one(std::vector<BitSequence> as);

// Numeric code of a binary string: value of "1" + sigma in base 2.
Nat nodecode(const std::string& sigma);

// I-coding of the set {nodecode(p|n) : n >= 0} of node codes along the branch
// p that starts with `path` and continues with zeros.
BitSequence antichain_member(const std::string& path);

// Flip an exact floor(fraction * 2^k) positions inside every block J_k, the
// choice of positions seeded per block. Used to exercise decode_J.
BitSequence corrupt_j_blocks(const BitSequence& c, const Rat& fraction,
                             std::uint64_t seed);

}  // namespace coarse
