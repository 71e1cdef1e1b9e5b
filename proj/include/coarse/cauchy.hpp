#pragma once

#include "coarse/density.hpp"
#include "coarse/seq.hpp"

#include <cstddef>
#include <map>
#include <memory>
#include <vector>

namespace coarse {

// Pairwise evidence that a finite list of sequences is strongly Cauchy for
// the density distance: for m < n the observed tail_max of rho(C_m △ C_n)
// over the grid is compared against 2^-m.
struct CauchyReport {
  struct PairEntry {
    std::size_t m = 0, n = 0;
    Rat tail_max;
    Rat bound;
    bool pass = false;
  };
  std::vector<PairEntry> pairs;
  bool all_pass = false;
  Nat certified_upto; // grid horizon
};

CauchyReport strong_cauchy_check(const std::vector<BitSequence>& seqs,
                                 const CheckpointGrid& grid,
                                 const Budget& budget = default_budget());

// Greedy selection of indices i_0 < i_1 < ... such that for positions m < n
// in the subsequence the observed tail of rho(C_{i_m} △ C_{i_n}) stays
// strictly below 2^-(m+1), the margin needed to splice against slack.
// Errors when fewer than two indices qualify.
std::vector<std::size_t> extract_strong_subsequence(
    const std::vector<BitSequence>& seqs, const CheckpointGrid& grid,
    const Budget& budget = default_budget());

// chosen source per dyadic block: block J_k copies seqs[source(k)]
struct SpliceMap {
  std::vector<std::size_t> source; // index k
};

class SpliceSeq;
using SplicePtr = std::shared_ptr<const SpliceSeq>;

// Blockwise limit of a (presumed strongly Cauchy) list: block J_k copies the
// largest n <= min(k, last index) trusted by everything before it, where m
// trusts n on J_k when d_k(C_m △ C_n) <= 2^-m * trust_slack. The result is a
// total lazy sequence; the map of chosen sources is pure in the input
// descriptors and the slack.
SplicePtr splice_limit(const std::vector<BitSequence>& seqs,
                       const Rat& trust_slack = Rat(2),
                       const Budget& budget = default_budget());

class SpliceSeq final : public Seq {
 public:
  bool bit(const Nat& m) const override;
  bool bit_at(std::uint64_t m) const override;
  // n(k), memoized; forcing it may scan every member on block J_k
  std::size_t chosen_source(unsigned k) const;
  SpliceMap splice_map_upto(unsigned K) const;

 private:
  friend SplicePtr splice_limit(const std::vector<BitSequence>&, const Rat&,
                                const Budget&);
  struct State;
  SpliceSeq(std::vector<BitSequence> seqs, Rat slack, Budget budget);
  static std::string make_descriptor(const std::vector<BitSequence>& seqs,
                                     const Rat& slack);
  std::shared_ptr<State> state_;
};

// Per-member comparison against a proposed limit: tail_max of
// rho(C_m △ limit) over the grid against 2^(-m+1) * slack.
struct ConvergenceReport {
  struct Entry {
    std::size_t m = 0;
    Rat tail_max;
    Rat bound;
    bool pass = false;
  };
  std::vector<Entry> entries;
  bool all_pass = false;
  Nat horizon;
};

ConvergenceReport convergence_report(const std::vector<BitSequence>& seqs,
                                     const BitSequence& limit,
                                     const CheckpointGrid& grid,
                                     const Rat& slack = Rat(2),
                                     const Budget& budget = default_budget());

}  // namespace coarse
