#pragma once

#include "coarse/seq.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace coarse {

// Building blocks for the balanced antichain of perfectly separated
// sequences. The word mu_i = 0^{2^i} 1^{2^i} has length 2^{i+1}; an infinite
// power of it is the periodic sequence with that word. Members of the tree
// are finite products of such powers over doubly-exponentially long levels.

// bit at `offset` of the infinite power of mu_i
bool mu_power_bit(std::uint64_t i, const Nat& offset);

// ones of the infinite power of mu_i below `len`
Nat mu_power_popcount(std::uint64_t i, const Nat& len);

// agreements of the powers of mu_i and mu_j on [0, len); for i != j this is
// exactly len/2 whenever 2^{max(i,j)} divides len
Nat mu_power_agree(std::uint64_t i, std::uint64_t j, const Nat& len);

// Level boundaries: l_0 = 0, l_{n+1} = l_n + 2^(2^(n+4)). Level n occupies
// [l_n, l_{n+1}). Indices are capped: beyond depth_cap the construction is
// not materialized.
struct LengthSchedule {
  static constexpr unsigned depth_cap = 8;
  static const Nat& level_start(unsigned n);               // l_n, n <= depth_cap
  static const Nat& level_length(unsigned n);              // l_{n+1} - l_n
  // (level, offset within level); m must be below l_depth_cap
  static std::pair<unsigned, Nat> locate(const Nat& m);
};

// Compiled form of a tree member: per level n the word index used there.
// A path sigma in {0,1}^d uses, on level n, the word mu_{2k+sigma(n)-1}
// where k-1 is the value of sigma restricted to the first n bits read as a
// binary number (most significant bit first).
struct TreeCode {
  std::string sigma;                   // the path, chars '0'/'1'
  std::vector<std::uint64_t> mu_index; // one entry per level
};

TreeCode tree_code(const std::string& sigma);

// bit m of the member T(sigma); m must be below l_{|sigma|}
bool tree_bit(const TreeCode& code, const Nat& m);

// ones of T(sigma) below m, m <= l_{|sigma|}
Nat tree_prefix_popcount(const TreeCode& code, const Nat& m);

// agreements of T(a) and T(b) below m; m <= l_min(|a|,|b|)
Nat pairwise_agreement_count(const TreeCode& a, const TreeCode& b,
                             const Nat& m);

// The member as a lazy sequence. `directions` supplies the path bit by bit;
// only the first depth_cap direction bits are ever consulted, and indices at
// or beyond l_depth_cap are out of range.
BitSequence tree_path(const BitSequence& directions);
// convenience: explicit bits, extended with zeros
BitSequence tree_path(const std::string& bits);

}  // namespace coarse
