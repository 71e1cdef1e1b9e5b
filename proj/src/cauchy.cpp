#include "coarse/cauchy.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>
#include <utility>

namespace coarse {

namespace {

Rat pair_tail_max(const BitSequence& a, const BitSequence& b,
                  const CheckpointGrid& grid, const Budget& budget) {
  return density_profile(symdiff_seq(a, b), grid, budget).tail_max;
}

// tail <= slack * 2^-m, exact
bool within_dyadic_bound(const Rat& tail, unsigned m, const Rat& slack) {
  return tail * nat_pow2(m) <= slack;
}

}  // namespace

CauchyReport strong_cauchy_check(const std::vector<BitSequence>& seqs,
                                 const CheckpointGrid& grid,
                                 const Budget& budget) {
  if (seqs.size() < 2)
    throw domain_error("strong_cauchy_check: need at least two sequences");
  CauchyReport rep;
  rep.all_pass = true;
  rep.certified_upto = grid.points().back();
  for (std::size_t m = 0; m + 1 < seqs.size(); ++m) {
    for (std::size_t n = m + 1; n < seqs.size(); ++n) {
      CauchyReport::PairEntry e;
      e.m = m;
      e.n = n;
      e.tail_max = pair_tail_max(seqs[m], seqs[n], grid, budget);
      e.bound = Rat(1, nat_pow2(static_cast<unsigned>(m)));
      // strict: observed tail equal to the bound cannot certify the margin
      e.pass = e.tail_max < e.bound;
      rep.all_pass = rep.all_pass && e.pass;
      rep.pairs.push_back(std::move(e));
    }
  }
  return rep;
}

std::vector<std::size_t> extract_strong_subsequence(
    const std::vector<BitSequence>& seqs, const CheckpointGrid& grid,
    const Budget& budget) {
  std::map<std::pair<std::size_t, std::size_t>, Rat> tails;
  auto tail = [&](std::size_t i, std::size_t j) {
    auto key = std::make_pair(std::min(i, j), std::max(i, j));
    auto it = tails.find(key);
    if (it != tails.end()) return it->second;
    Rat t = pair_tail_max(seqs[key.first], seqs[key.second], grid, budget);
    tails.emplace(key, t);
    return t;
  };
  std::vector<std::size_t> picked;
  for (std::size_t j = 0; j < seqs.size(); ++j) {
    bool ok = true;
    for (std::size_t t = 0; t < picked.size() && ok; ++t) {
      // strict margin: position t of the subsequence must beat 2^-(t+1)
      ok = tail(picked[t], j) * nat_pow2(static_cast<unsigned>(t) + 1) < Rat(1);
    }
    if (ok) picked.push_back(j);
  }
  if (picked.size() < 2)
    throw domain_error(
        "extract_strong_subsequence: fewer than two members satisfy the "
        "pairwise margins at this horizon");
  return picked;
}

struct SpliceSeq::State {
  std::vector<BitSequence> seqs;
  Rat slack;
  Budget budget;
  mutable std::mutex lock;
  mutable std::map<unsigned, std::size_t> chosen;

  // |(C_a xor C_b) restricted to block J_k| for all pairs a<b <= nmax, by one
  // materialization of the block per member
  std::vector<std::vector<Nat>> block_diffs(unsigned k,
                                            std::size_t nmax) const {
    const std::uint64_t size = std::uint64_t{1} << k;
    if (k >= 63 || size > budget.cap)
      throw budget_error("splice: block 2^" + std::to_string(k) +
                         " exceeds the scan budget");
    const std::uint64_t base = size - 1; // start of J_k
    std::vector<std::vector<char>> bits(nmax + 1);
    for (std::size_t i = 0; i <= nmax; ++i) {
      bits[i].resize(size);
      for (std::uint64_t j = 0; j < size; ++j)
        bits[i][j] = seqs[i]->bit_at(base + j) ? 1 : 0;
    }
    std::vector<std::vector<Nat>> diff(nmax + 1,
                                       std::vector<Nat>(nmax + 1, Nat(0)));
    for (std::size_t a = 0; a + 1 <= nmax; ++a)
      for (std::size_t b = a + 1; b <= nmax; ++b) {
        std::uint64_t c = 0;
        for (std::uint64_t j = 0; j < size; ++j)
          c += bits[a][j] != bits[b][j];
        diff[a][b] = Nat(c);
      }
    return diff;
  }

  std::size_t chosen_source(unsigned k) const {
    std::lock_guard<std::mutex> g(lock);
    auto it = chosen.find(k);
    if (it != chosen.end()) return it->second;
    std::size_t nmax = std::min<std::size_t>(k, seqs.size() - 1);
    std::size_t pick = 0;
    if (nmax > 0) {
      auto diff = block_diffs(k, nmax);
      const Nat block = nat_pow2(k);
      for (std::size_t n = nmax; n > 0; --n) {
        bool trusted = true;
        for (std::size_t m = 0; m < n && trusted; ++m) {
          // d_k = diff / 2^k <= slack * 2^-m
          Rat d(diff[m][n], block);
          trusted = within_dyadic_bound(d, static_cast<unsigned>(m), slack);
        }
        if (trusted) {
          pick = n;
          break;
        }
      }
    }
    chosen.emplace(k, pick);
    return pick;
  }
};

std::string SpliceSeq::make_descriptor(const std::vector<BitSequence>& seqs,
                                       const Rat& slack) {
  std::ostringstream os;
  os << "splice:slack=" << rat_string(slack) << "[";
  for (std::size_t i = 0; i < seqs.size(); ++i) {
    if (i) os << ";";
    os << seqs[i]->descriptor();
  }
  os << "]";
  return os.str();
}

SpliceSeq::SpliceSeq(std::vector<BitSequence> seqs, Rat slack, Budget budget)
    : Seq(make_descriptor(seqs, slack)) {
  auto st = std::make_shared<State>();
  st->seqs = std::move(seqs);
  st->slack = std::move(slack);
  st->budget = budget;
  state_ = std::move(st);
}

bool SpliceSeq::bit(const Nat& m) const {
  unsigned k = (m == 0) ? 0u : static_cast<unsigned>(nat_log2(m + 1));
  return state_->seqs[state_->chosen_source(k)]->bit(m);
}

bool SpliceSeq::bit_at(std::uint64_t m) const {
  if (m + 1 == 0) return bit(Nat(m));
  unsigned k = 0;
  for (std::uint64_t v = (m + 1) >> 1; v != 0; v >>= 1) ++k;
  return state_->seqs[state_->chosen_source(k)]->bit_at(m);
}

std::size_t SpliceSeq::chosen_source(unsigned k) const {
  return state_->chosen_source(k);
}

SpliceMap SpliceSeq::splice_map_upto(unsigned K) const {
  SpliceMap map;
  map.source.reserve(K + 1);
  for (unsigned k = 0; k <= K; ++k) map.source.push_back(chosen_source(k));
  return map;
}

SplicePtr splice_limit(const std::vector<BitSequence>& seqs,
                       const Rat& trust_slack, const Budget& budget) {
  if (seqs.empty()) throw domain_error("splice_limit: empty sequence list");
  if (trust_slack <= 0) throw domain_error("splice_limit: slack must be > 0");
  return SplicePtr(new SpliceSeq(seqs, trust_slack, budget));
}

ConvergenceReport convergence_report(const std::vector<BitSequence>& seqs,
                                     const BitSequence& limit,
                                     const CheckpointGrid& grid,
                                     const Rat& slack, const Budget& budget) {
  if (seqs.empty()) throw domain_error("convergence_report: empty list");
  ConvergenceReport rep;
  rep.all_pass = true;
  rep.horizon = grid.points().back();
  for (std::size_t m = 0; m < seqs.size(); ++m) {
    ConvergenceReport::Entry e;
    e.m = m;
    e.tail_max = pair_tail_max(seqs[m], limit, grid, budget);
    // 2^(1-m) * slack
    e.bound = Rat(2) * slack / nat_pow2(static_cast<unsigned>(m));
    e.pass = e.tail_max <= e.bound;
    rep.all_pass = rep.all_pass && e.pass;
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

}  // namespace coarse
