#include "coarse/tree.hpp"

#include <algorithm>
#include <functional>
#include <utility>

namespace coarse {

namespace {

// The power of mu_i has period 2^{i+1}, first half zeros: bit(off) is
// exactly bit i of off.
constexpr const char* kRangeMsg = "tree: index beyond the materialized depth";

Nat half_of(const Nat& len) { return len >> 1; }

// portion of [start, start+len) that lies below m
Nat seg_below(const Nat& m, const Nat& start, const Nat& len) {
  Nat seg = m - start;
  if (seg > len) seg = len;
  return seg;
}

}  // namespace

bool mu_power_bit(std::uint64_t i, const Nat& offset) {
  return boost::multiprecision::bit_test(offset, static_cast<unsigned>(i));
}

Nat mu_power_popcount(std::uint64_t i, const Nat& len) {
  const unsigned ui = static_cast<unsigned>(i);
  Nat full = len >> (ui + 1);         // complete periods
  Nat ones = full << ui;              // each contributes 2^i ones
  Nat rem = len - (full << (ui + 1)); // trailing partial period
  Nat head = nat_pow2(ui);
  if (rem > head) ones += rem - head;
  return ones;
}

Nat mu_power_agree(std::uint64_t i, std::uint64_t j, const Nat& len) {
  if (i == j) return len;
  if (i > j) std::swap(i, j);
  const unsigned uj = static_cast<unsigned>(j);
  // Split [0, len) into chunks of 2^j, half a period of the longer word: the
  // mu_j power is constant on each chunk (bit = chunk parity) while the
  // mu_i power is balanced on it, so each full chunk contributes 2^{j-1}.
  Nat chunks = len >> uj;
  Nat agree = chunks << (uj - 1);
  Nat rem = len - (chunks << uj);
  if (rem != 0) {
    Nat inner = mu_power_popcount(i, rem);
    bool v = boost::multiprecision::bit_test(chunks, 0);
    agree += v ? inner : rem - inner;
  }
  return agree;
}

const Nat& LengthSchedule::level_start(unsigned n) {
  static const std::vector<Nat> starts = [] {
    std::vector<Nat> v;
    Nat l = 0;
    for (unsigned i = 0; i <= depth_cap; ++i) {
      v.push_back(l);
      l += nat_pow2(std::uint64_t{1} << (i + 4));
    }
    return v;
  }();
  if (n > depth_cap) throw domain_error(kRangeMsg);
  return starts[n];
}

const Nat& LengthSchedule::level_length(unsigned n) {
  static const std::vector<Nat> lengths = [] {
    std::vector<Nat> v;
    for (unsigned i = 0; i < depth_cap; ++i)
      v.push_back(nat_pow2(std::uint64_t{1} << (i + 4)));
    return v;
  }();
  if (n >= depth_cap) throw domain_error(kRangeMsg);
  return lengths[n];
}

std::pair<unsigned, Nat> LengthSchedule::locate(const Nat& m) {
  if (m < 0) throw domain_error("tree: negative index");
  for (unsigned n = 0; n < depth_cap; ++n)
    if (m < level_start(n + 1)) return {n, m - level_start(n)};
  throw domain_error(kRangeMsg);
}

namespace {

// word index for level n given the path bits: 2k + bit - 1 where k - 1 is
// the value of the first n bits, most significant first
std::uint64_t word_index(const std::function<bool(unsigned)>& dir, unsigned n) {
  std::uint64_t value = 0;
  for (unsigned t = 0; t < n; ++t) value = (value << 1) | (dir(t) ? 1 : 0);
  std::uint64_t k = value + 1;
  return 2 * k + (dir(n) ? 1 : 0) - 1;
}

}  // namespace

TreeCode tree_code(const std::string& sigma) {
  if (sigma.empty()) throw domain_error("tree_code: empty path");
  if (sigma.size() > LengthSchedule::depth_cap)
    throw domain_error("tree_code: path longer than the depth cap");
  for (char c : sigma)
    if (c != '0' && c != '1')
      throw domain_error("tree_code: path must be over {0,1}");
  TreeCode code;
  code.sigma = sigma;
  auto dir = [&](unsigned t) { return sigma[t] == '1'; };
  for (unsigned n = 0; n < sigma.size(); ++n)
    code.mu_index.push_back(word_index(dir, n));
  return code;
}

bool tree_bit(const TreeCode& code, const Nat& m) {
  auto [level, off] = LengthSchedule::locate(m);
  if (level >= code.mu_index.size()) throw domain_error(kRangeMsg);
  return mu_power_bit(code.mu_index[level], off);
}

Nat tree_prefix_popcount(const TreeCode& code, const Nat& m) {
  if (m > LengthSchedule::level_start(
              static_cast<unsigned>(code.mu_index.size())))
    throw domain_error(kRangeMsg);
  Nat ones = 0;
  for (unsigned n = 0; n < code.mu_index.size(); ++n) {
    const Nat& start = LengthSchedule::level_start(n);
    if (m <= start) break;
    Nat seg = seg_below(m, start, LengthSchedule::level_length(n));
    if (seg == LengthSchedule::level_length(n))
      ones += half_of(seg); // whole levels are whole periods, hence balanced
    else
      ones += mu_power_popcount(code.mu_index[n], seg);
  }
  return ones;
}

Nat pairwise_agreement_count(const TreeCode& a, const TreeCode& b,
                             const Nat& m) {
  const unsigned depth = static_cast<unsigned>(
      std::min(a.mu_index.size(), b.mu_index.size()));
  if (m > LengthSchedule::level_start(depth)) throw domain_error(kRangeMsg);
  Nat agree = 0;
  for (unsigned n = 0; n < depth; ++n) {
    const Nat& start = LengthSchedule::level_start(n);
    if (m <= start) break;
    Nat seg = seg_below(m, start, LengthSchedule::level_length(n));
    if (a.mu_index[n] == b.mu_index[n])
      agree += seg;
    else
      agree += mu_power_agree(a.mu_index[n], b.mu_index[n], seg);
  }
  return agree;
}

namespace {

class TreePathSeq final : public Seq {
 public:
  TreePathSeq(std::string descriptor, std::function<bool(unsigned)> dir)
      : Seq(std::move(descriptor)), dir_(std::move(dir)) {}

  bool bit(const Nat& m) const override {
    auto [level, off] = LengthSchedule::locate(m);
    return mu_power_bit(word_index(dir_, level), off);
  }

  bool bit_at(std::uint64_t m) const override {
    // l_3 exceeds the machine word, so every such index is in level 0..2
    const std::uint64_t l1 = std::uint64_t{1} << 16;
    const std::uint64_t l2 = l1 + (std::uint64_t{1} << 32);
    unsigned level = m < l1 ? 0 : (m < l2 ? 1 : 2);
    std::uint64_t off = m - (level == 0 ? 0 : (level == 1 ? l1 : l2));
    return (off >> word_index(dir_, level)) & 1;
  }

  std::optional<Nat> closed_count(const Nat& n) const override {
    if (n > LengthSchedule::level_start(LengthSchedule::depth_cap))
      return std::nullopt;
    Nat ones = 0;
    for (unsigned lev = 0; lev < LengthSchedule::depth_cap; ++lev) {
      const Nat& start = LengthSchedule::level_start(lev);
      if (n <= start) break;
      Nat seg = seg_below(n, start, LengthSchedule::level_length(lev));
      if (seg == LengthSchedule::level_length(lev))
        ones += half_of(seg);
      else
        ones += mu_power_popcount(word_index(dir_, lev), seg);
    }
    return ones;
  }

 private:
  std::function<bool(unsigned)> dir_;
};

}  // namespace

BitSequence tree_path(const BitSequence& directions) {
  auto dir = [directions](unsigned t) {
    return directions->bit_at(t);
  };
  return std::make_shared<TreePathSeq>(
      "treepath(" + directions->descriptor() + ")", dir);
}

BitSequence tree_path(const std::string& bits) {
  for (char c : bits)
    if (c != '0' && c != '1')
      throw domain_error("tree_path: directions must be over {0,1}");
  auto dir = [bits](unsigned t) { return t < bits.size() && bits[t] == '1'; };
  return std::make_shared<TreePathSeq>("treepath:" + bits, dir);
}

}  // namespace coarse
