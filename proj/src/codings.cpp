#include "coarse/codings.hpp"

#include <algorithm>
#include <cmath>

namespace coarse {

namespace {

inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// n! for n <= 20 (21! overflows 64 bits, so every u64 index sits below 21!).
constexpr std::uint64_t kFactU64[21] = {
    1ULL, 1ULL, 2ULL, 6ULL, 24ULL, 120ULL, 720ULL, 5040ULL, 40320ULL,
    362880ULL, 3628800ULL, 39916800ULL, 479001600ULL, 6227020800ULL,
    87178291200ULL, 1307674368000ULL, 20922789888000ULL, 355687428096000ULL,
    6402373705728000ULL, 121645100408832000ULL, 2432902008176640000ULL};

// Factorial block index of m >= 1 in the u64 range.
inline unsigned i_block_of_u64(std::uint64_t m) {
  unsigned n = 1;
  while (n < 20 && m >= kFactU64[n + 1]) ++n;
  return n;
}

inline std::pair<std::uint64_t, std::uint64_t> cantor_unpair_u64(std::uint64_t n) {
  auto w = static_cast<std::uint64_t>((std::sqrt(8.0 * static_cast<double>(n) + 1.0) - 1.0) / 2.0);
  while (w * (w + 1) / 2 > n) --w;
  while ((w + 1) * (w + 2) / 2 <= n) ++w;
  std::uint64_t t = w * (w + 1) / 2;
  return {n - t, w - (n - t)};
}

}  // namespace

std::optional<Nat> family_block_of(Family f, const Nat& m) {
  if (m < 0) throw domain_error("family_block_of: negative index");
  switch (f) {
    case Family::I: {
      if (m < 1) return std::nullopt;
      Nat fact = 1; // n!
      Nat n = 1;
      while (true) {
        Nat next = fact * (n + 1); // (n+1)!
        if (m < next) return n;
        fact = next;
        ++n;
      }
    }
    case Family::J:
      return Nat(nat_log2(m + 1));
    case Family::R: {
      if (m < 1) return std::nullopt;
      return Nat(nat_v2(m));
    }
  }
  throw domain_error("family_block_of: bad family");
}

std::pair<Nat, Nat> family_block_range(Family f, const Nat& k) {
  if (k < 0) throw domain_error("family_block_range: negative block index");
  switch (f) {
    case Family::I: {
      auto ku = nat_to_u64(k);
      if (ku > 1000000) throw domain_error("family_block_range: I block too large");
      Nat lo = nat_factorial(static_cast<unsigned>(ku));
      return {lo, lo * (k + 1)};
    }
    case Family::J: {
      auto ku = nat_to_u64(k);
      return {nat_pow2(ku) - 1, nat_pow2(ku + 1) - 1};
    }
    case Family::R:
      throw domain_error("family_block_range: R blocks are not intervals");
  }
  throw domain_error("family_block_range: bad family");
}

Nat r_element(const Nat& k, const Nat& n) {
  return (Nat(2) * n + 1) << nat_to_u64(k);
}

Nat r_count_below(const Nat& k, const Nat& n) {
  // #{t >= 0 : 2^k (2t+1) < n} = ceil((n - 2^k) / 2^(k+1)), clamped at 0
  Nat p = nat_pow2(nat_to_u64(k));
  if (n <= p) return 0;
  Nat num = n - p;
  Nat den = p * 2;
  return (num + den - 1) / den;
}

Nat cantor_pair(const Nat& i, const Nat& m) {
  Nat s = i + m;
  return s * (s + 1) / 2 + i;
}

std::pair<Nat, Nat> cantor_unpair(const Nat& n) {
  Nat w = (nat_isqrt(8 * n + 1) - 1) / 2;
  Nat t = w * (w + 1) / 2;
  Nat i = n - t;
  return {i, w - i};
}

namespace {

class CodeSeq final : public Seq {
 public:
  CodeSeq(Family f, BitSequence a, std::string name)
      : Seq(name + "(" + a->descriptor() + ")"), f_(f), a_(std::move(a)) {}
  bool bit(const Nat& m) const override {
    auto blk = family_block_of(f_, m);
    return blk && a_->bit(*blk);
  }
  bool bit_at(std::uint64_t m) const override {
    switch (f_) {
      case Family::J:
        if (m + 1 == 0) return bit(Nat(m));
        return a_->bit_at(63 - static_cast<unsigned>(__builtin_clzll(m + 1)));
      case Family::R:
        return m > 0 && a_->bit_at(static_cast<unsigned>(__builtin_ctzll(m)));
      case Family::I:
        return m > 0 && a_->bit_at(i_block_of_u64(m));
    }
    return false;
  }

 private:
  Family f_;
  BitSequence a_;
};

class RJoinSeq final : public Seq {
 public:
  explicit RJoinSeq(std::vector<BitSequence> xs)
      : Seq(make_desc(xs)), xs_(std::move(xs)) {}
  bool bit(const Nat& m) const override {
    if (m < 1) return false;
    auto k = nat_v2(m);
    if (k >= xs_.size()) return false;
    Nat pos = ((m >> k) - 1) / 2;
    return xs_[k]->bit(pos);
  }
  bool bit_at(std::uint64_t m) const override {
    if (m == 0) return false;
    auto k = static_cast<unsigned>(__builtin_ctzll(m));
    if (k >= xs_.size()) return false;
    return xs_[k]->bit_at(((m >> k) - 1) / 2);
  }

 private:
  static std::string make_desc(const std::vector<BitSequence>& xs) {
    std::string d = "rjoin(";
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (i) d += ",";
      d += xs[i]->descriptor();
    }
    return d + ")";
  }
  std::vector<BitSequence> xs_;
};

class RRelativeSeq final : public Seq {
 public:
  RRelativeSeq(BitSequence a, BitSequence c)
      : Seq("rrel(" + a->descriptor() + "," + c->descriptor() + ")"),
        a_(std::move(a)), c_(std::move(c)) {}
  bool bit(const Nat& m) const override {
    if (m < 1) return false;
    auto k = nat_v2(m);
    Nat pos = ((m >> k) - 1) / 2;
    bool av = a_->bit(pos);
    return c_->bit(Nat(k)) ? av : !av;
  }
  bool bit_at(std::uint64_t m) const override {
    if (m == 0) return false;
    auto k = static_cast<unsigned>(__builtin_ctzll(m));
    bool av = a_->bit_at(((m >> k) - 1) >> 1);
    return c_->bit_at(k) ? av : !av;
  }

 private:
  BitSequence a_, c_;
};

class ApproxRSeq final : public Seq {
 public:
  ApproxRSeq(BitSequence a, Nat k)
      : Seq("rapprox:" + nat_string(k) + "(" + a->descriptor() + ")"),
        a_(std::move(a)), k_(std::move(k)) {}
  bool bit(const Nat& m) const override {
    if (m < 1) return false;
    Nat j(nat_v2(m));
    return j <= k_ && a_->bit(j);
  }
  bool bit_at(std::uint64_t m) const override {
    if (m == 0) return false;
    auto j = static_cast<unsigned>(__builtin_ctzll(m));
    return Nat(j) <= k_ && a_->bit_at(j);
  }

 private:
  BitSequence a_;
  Nat k_;
};

class DiagonalSeq final : public Seq {
 public:
  explicit DiagonalSeq(std::vector<BitSequence> as)
      : Seq(make_desc(as)), as_(std::move(as)) {}
  bool bit(const Nat& m) const override {
    auto blk = family_block_of(Family::I, m);
    if (!blk) return !as_[0]->bit(m); // m = 0, below every block
    auto [i, rest] = cantor_unpair(*blk);
    (void)rest;
    if (i >= as_.size()) return false;
    return !as_[static_cast<std::size_t>(i)]->bit(m);
  }
  bool bit_at(std::uint64_t m) const override {
    if (m == 0) return !as_[0]->bit_at(0);
    auto [i, rest] = cantor_unpair_u64(i_block_of_u64(m));
    (void)rest;
    if (i >= as_.size()) return false;
    return !as_[static_cast<std::size_t>(i)]->bit_at(m);
  }

 private:
  static std::string make_desc(const std::vector<BitSequence>& as) {
    std::string d = "diag(";
    for (std::size_t i = 0; i < as.size(); ++i) {
      if (i) d += ",";
      d += as[i]->descriptor();
    }
    return d + ")";
  }
  std::vector<BitSequence> as_;
};

class AntichainSeq final : public Seq {
 public:
  explicit AntichainSeq(std::string path)
      : Seq("antichain:" + path), path_(std::move(path)) {}
  // Membership in the branch's code set: j is a node code iff the code of the
  // branch prefix of matching length equals j.
  bool member(const Nat& j) const {
    if (j < 1) return false;
    auto depth = nat_log2(j); // code of a length-d prefix lies in [2^d, 2^(d+1))
    Nat c = 1;
    for (std::uint64_t t = 0; t < depth; ++t) {
      bool b = t < path_.size() && path_[static_cast<std::size_t>(t)] == '1';
      c = 2 * c + (b ? 1 : 0);
    }
    return c == j;
  }
  bool bit(const Nat& m) const override {
    auto blk = family_block_of(Family::I, m);
    return blk && member(*blk);
  }
  bool bit_at(std::uint64_t m) const override {
    return m > 0 && member(Nat(i_block_of_u64(m)));
  }

 private:
  std::string path_;
};

class CorruptJSeq final : public Seq {
 public:
  CorruptJSeq(BitSequence c, Rat fraction, std::uint64_t seed)
      : Seq("corrupt:" + std::to_string(seed) + ":" + rat_string(fraction) +
            "(" + c->descriptor() + ")"),
        c_(std::move(c)), fraction_(std::move(fraction)), seed_(seed) {}

  bool bit(const Nat& m) const override {
    if (!nat_fits_u64(m)) return c_->bit(m); // flips only materialize in u64 range
    return bit_at(nat_to_u64(m));
  }
  bool bit_at(std::uint64_t m) const override {
    if (m + 1 == 0) return c_->bit_at(m);
    unsigned k = 63 - static_cast<unsigned>(__builtin_clzll(m + 1));
    std::uint64_t size = std::uint64_t(1) << k;
    std::uint64_t offset = m - (size - 1);
    std::uint64_t flips = static_cast<std::uint64_t>(
        (Nat(size) * numerator(fraction_)) / denominator(fraction_));
    bool flip = false;
    if (flips > 0) {
      // Flip offsets a*t + b (mod 2^k), t < flips, a odd: distinct, exact count.
      std::uint64_t a = (mix64(seed_ ^ (std::uint64_t(k) << 32)) | 1) & (size - 1);
      if (a == 0) a = 1;
      std::uint64_t b = mix64(seed_ + k) & (size - 1);
      // offset in the progression iff (offset - b) * a^-1 (mod 2^k) < flips
      std::uint64_t inv = inverse_pow2(a, k);
      std::uint64_t t = ((offset - b) & (size - 1)) * inv & (size - 1);
      flip = t < flips;
    }
    return c_->bit_at(m) != flip;
  }

 private:
  // Inverse of odd a modulo 2^k (k <= 63) by Newton iteration.
  static std::uint64_t inverse_pow2(std::uint64_t a, unsigned k) {
    if (k == 0) return 0;
    std::uint64_t x = 1;
    for (int it = 0; it < 6; ++it) x *= 2 - a * x;
    return k >= 64 ? x : (x & ((std::uint64_t(1) << k) - 1));
  }
  BitSequence c_;
  Rat fraction_;
  std::uint64_t seed_;
};

}  // namespace

BitSequence code(Family f, const BitSequence& a) {
  const char* name = f == Family::I ? "icode" : f == Family::J ? "jcode" : "rcode";
  return std::make_shared<CodeSeq>(f, a, name);
}

BitSequence r_join(std::vector<BitSequence> family) {
  if (family.empty()) throw domain_error("r_join: empty family");
  return std::make_shared<RJoinSeq>(std::move(family));
}

BitSequence r_relative(const BitSequence& a, const BitSequence& c) {
  return std::make_shared<RRelativeSeq>(a, c);
}

BitSequence approximate_R(const BitSequence& a, const Nat& k) {
  if (k < 0) throw domain_error("approximate_R: negative cutoff");
  return std::make_shared<ApproxRSeq>(a, k);
}

bool decode_J(const BitSequence& c, unsigned k, std::uint64_t samples,
              const Budget& budget) {
  std::uint64_t size = std::uint64_t(1) << k;
  std::uint64_t lo = size - 1;
  std::uint64_t ones = 0, examined = 0;
  if (samples == 0 || samples >= size) {
    if (2 * size > budget.cap)
      throw budget_error("decode_J: block " + std::to_string(k) +
                         " exceeds scan budget; pass a sample size");
    for (std::uint64_t o = 0; o < size; ++o)
      ones += c->bit_at(lo + o) ? 1 : 0;
    examined = size;
  } else {
    std::uint64_t stride = size / samples;
    if (stride == 0) stride = 1;
    std::uint64_t phase = mix64(0x6a09e667f3bcc908ULL ^ k) % stride;
    for (std::uint64_t t = 0; t < samples; ++t) {
      std::uint64_t o = phase + t * stride;
      if (o >= size) break;
      ones += c->bit_at(lo + o) ? 1 : 0;
      ++examined;
    }
  }
  return 2 * ones > examined; // ties decode to 0
}

bool decode_R(const BitSequence& c, const Nat& k, const CheckpointGrid& grid,
              const Budget& budget) {
  Nat horizon = grid.points().back();
  Nat total = r_count_below(k, horizon);
  if (total == 0)
    throw domain_error("decode_R: no elements of R_k below the grid horizon");
  std::uint64_t count = nat_to_u64(total);
  if (count > budget.cap) throw budget_error("decode_R: fiber scan exceeds budget");
  auto ku = nat_to_u64(k);
  std::uint64_t ones = 0;
  if (ku < 63 && nat_fits_u64(horizon)) {
    for (std::uint64_t t = 0; t < count; ++t)
      ones += c->bit_at((2 * t + 1) << ku) ? 1 : 0;
  } else {
    for (std::uint64_t t = 0; t < count; ++t)
      ones += c->bit(r_element(k, Nat(t))) ? 1 : 0;
  }
  return 2 * ones > count; // ties decode to 0
}

BitSequence diagonal_distance_one(std::vector<BitSequence> as) {
  if (as.empty()) throw domain_error("diagonal_distance_one: empty list");
  return std::make_shared<DiagonalSeq>(std::move(as));
}

Nat nodecode(const std::string& sigma) {
  Nat c = 1;
  for (char b : sigma) {
    if (b != '0' && b != '1') throw domain_error("nodecode: bits must be 0/1");
    c = 2 * c + (b == '1' ? 1 : 0);
  }
  return c;
}

BitSequence antichain_member(const std::string& path) {
  for (char b : path)
    if (b != '0' && b != '1')
      throw domain_error("antichain_member: path bits must be 0/1");
  return std::make_shared<AntichainSeq>(path);
}

BitSequence corrupt_j_blocks(const BitSequence& c, const Rat& fraction,
                             std::uint64_t seed) {
  if (fraction < 0 || fraction > 1)
    throw domain_error("corrupt_j_blocks: fraction must lie in [0,1]");
  return std::make_shared<CorruptJSeq>(c, fraction, seed);
}

}  // namespace coarse
