#include "coarse/seq.hpp"

#include <algorithm>
#include <utility>

namespace coarse {

namespace {

class EmptySeq final : public Seq {
 public:
  EmptySeq() : Seq("empty") {}
  bool bit(const Nat&) const override { return false; }
  bool bit_at(std::uint64_t) const override { return false; }
  std::optional<Nat> closed_count(const Nat&) const override { return Nat(0); }
};

class FullSeq final : public Seq {
 public:
  FullSeq() : Seq("full") {}
  bool bit(const Nat&) const override { return true; }
  bool bit_at(std::uint64_t) const override { return true; }
  std::optional<Nat> closed_count(const Nat& n) const override { return n; }
};

class EvensSeq final : public Seq {
 public:
  EvensSeq() : Seq("evens") {}
  bool bit(const Nat& n) const override { return (n & 1) == 0; }
  bool bit_at(std::uint64_t n) const override { return (n & 1) == 0; }
  std::optional<Nat> closed_count(const Nat& n) const override {
    return (n + 1) / 2;
  }
};

class PeriodicSeq final : public Seq {
 public:
  explicit PeriodicSeq(std::string bits)
      : Seq("periodic:" + bits), bits_(std::move(bits)) {
    ones_prefix_.reserve(bits_.size() + 1);
    ones_prefix_.push_back(0);
    for (char c : bits_)
      ones_prefix_.push_back(ones_prefix_.back() + (c == '1' ? 1 : 0));
  }
  bool bit(const Nat& n) const override {
    return bits_[static_cast<std::size_t>(n % bits_.size())] == '1';
  }
  bool bit_at(std::uint64_t n) const override {
    return bits_[n % bits_.size()] == '1';
  }
  std::optional<Nat> closed_count(const Nat& n) const override {
    Nat period(bits_.size());
    Nat full = n / period;
    auto rem = static_cast<std::size_t>(n % period);
    return full * ones_prefix_.back() + ones_prefix_[rem];
  }

 private:
  std::string bits_;
  std::vector<std::uint64_t> ones_prefix_;
};

class FiniteSeq final : public Seq {
 public:
  explicit FiniteSeq(std::vector<Nat> elements, std::string descriptor)
      : Seq(std::move(descriptor)), elements_(std::move(elements)) {}
  bool bit(const Nat& n) const override {
    return std::binary_search(elements_.begin(), elements_.end(), n);
  }
  bool bit_at(std::uint64_t n) const override { return bit(Nat(n)); }
  std::optional<Nat> closed_count(const Nat& n) const override {
    auto it = std::lower_bound(elements_.begin(), elements_.end(), n);
    return Nat(it - elements_.begin());
  }

 private:
  std::vector<Nat> elements_;
};

inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class BernoulliSeq final : public Seq {
 public:
  explicit BernoulliSeq(std::uint64_t seed)
      : Seq("rand:" + std::to_string(seed)), seed_(seed) {}
  bool bit(const Nat& n) const override {
    std::uint64_t h = mix64(seed_);
    Nat v = n;
    do {
      auto limb = static_cast<std::uint64_t>(
          v & Nat(std::numeric_limits<std::uint64_t>::max()));
      h = mix64(h ^ limb);
      v >>= 64;
    } while (v != 0);
    return (h >> 63) != 0;
  }
  bool bit_at(std::uint64_t n) const override {
    return (mix64(mix64(seed_) ^ n) >> 63) != 0;
  }

 private:
  std::uint64_t seed_;
};

class FnSeq final : public Seq {
 public:
  FnSeq(std::string descriptor, std::function<bool(const Nat&)> fn,
        std::function<bool(std::uint64_t)> fn_u64)
      : Seq(std::move(descriptor)), fn_(std::move(fn)), fn_u64_(std::move(fn_u64)) {}
  bool bit(const Nat& n) const override { return fn_(n); }
  bool bit_at(std::uint64_t n) const override {
    return fn_u64_ ? fn_u64_(n) : fn_(Nat(n));
  }

 private:
  std::function<bool(const Nat&)> fn_;
  std::function<bool(std::uint64_t)> fn_u64_;
};

class ComplementSeq final : public Seq {
 public:
  explicit ComplementSeq(BitSequence a)
      : Seq("not(" + a->descriptor() + ")"), a_(std::move(a)) {}
  bool bit(const Nat& n) const override { return !a_->bit(n); }
  bool bit_at(std::uint64_t n) const override { return !a_->bit_at(n); }
  std::optional<Nat> closed_count(const Nat& n) const override {
    if (auto c = a_->closed_count(n)) return n - *c;
    return std::nullopt;
  }

 private:
  BitSequence a_;
};

class PairSeq final : public Seq {
 public:
  enum class Op { SymDiff, SymAgree, Intersect, Union };
  PairSeq(Op op, const char* name, BitSequence a, BitSequence b)
      : Seq(std::string(name) + "(" + a->descriptor() + "," + b->descriptor() + ")"),
        op_(op), a_(std::move(a)), b_(std::move(b)) {}
  bool bit(const Nat& n) const override { return apply(a_->bit(n), b_->bit(n)); }
  bool bit_at(std::uint64_t n) const override {
    return apply(a_->bit_at(n), b_->bit_at(n));
  }

 private:
  bool apply(bool x, bool y) const {
    switch (op_) {
      case Op::SymDiff: return x != y;
      case Op::SymAgree: return x == y;
      case Op::Intersect: return x && y;
      case Op::Union: return x || y;
    }
    return false;
  }
  Op op_;
  BitSequence a_, b_;
};

class JoinSeq final : public Seq {
 public:
  JoinSeq(BitSequence a, BitSequence b)
      : Seq("join(" + a->descriptor() + "," + b->descriptor() + ")"),
        a_(std::move(a)), b_(std::move(b)) {}
  bool bit(const Nat& n) const override {
    Nat half = n >> 1;
    return (n & 1) == 0 ? a_->bit(half) : b_->bit(half);
  }
  bool bit_at(std::uint64_t n) const override {
    return (n & 1) == 0 ? a_->bit_at(n >> 1) : b_->bit_at(n >> 1);
  }
  std::optional<Nat> closed_count(const Nat& n) const override {
    auto ca = a_->closed_count((n + 1) >> 1);
    if (!ca) return std::nullopt;
    auto cb = b_->closed_count(n >> 1);
    if (!cb) return std::nullopt;
    return *ca + *cb;
  }

 private:
  BitSequence a_, b_;
};

}  // namespace

BitSequence empty_seq() {
  static const BitSequence s = std::make_shared<EmptySeq>();
  return s;
}

BitSequence full_seq() {
  static const BitSequence s = std::make_shared<FullSeq>();
  return s;
}

BitSequence evens_seq() {
  static const BitSequence s = std::make_shared<EvensSeq>();
  return s;
}

BitSequence periodic_seq(const std::string& bits) {
  if (bits.empty()) throw domain_error("periodic_seq: empty period");
  for (char c : bits)
    if (c != '0' && c != '1')
      throw domain_error("periodic_seq: period must be over {0,1}");
  return std::make_shared<PeriodicSeq>(bits);
}

BitSequence finite_seq(std::vector<Nat> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  if (!elements.empty() && elements.front() < 0)
    throw domain_error("finite_seq: negative element");
  std::string d = "finite:{";
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (i) d += ",";
    d += nat_string(elements[i]);
  }
  d += "}";
  return std::make_shared<FiniteSeq>(std::move(elements), std::move(d));
}

BitSequence bernoulli_stream(std::uint64_t seed) {
  return std::make_shared<BernoulliSeq>(seed);
}

BitSequence make_seq(std::string descriptor, std::function<bool(const Nat&)> fn,
                     std::function<bool(std::uint64_t)> fn_u64) {
  return std::make_shared<FnSeq>(std::move(descriptor), std::move(fn),
                                 std::move(fn_u64));
}

BitSequence complement_seq(const BitSequence& a) {
  return std::make_shared<ComplementSeq>(a);
}

BitSequence symdiff_seq(const BitSequence& a, const BitSequence& b) {
  return std::make_shared<PairSeq>(PairSeq::Op::SymDiff, "symdiff", a, b);
}

BitSequence symagree_seq(const BitSequence& a, const BitSequence& b) {
  return std::make_shared<PairSeq>(PairSeq::Op::SymAgree, "agree", a, b);
}

BitSequence join_seq(const BitSequence& a, const BitSequence& b) {
  return std::make_shared<JoinSeq>(a, b);
}

BitSequence intersect_seq(const BitSequence& a, const BitSequence& b) {
  return std::make_shared<PairSeq>(PairSeq::Op::Intersect, "cap", a, b);
}

BitSequence union_seq(const BitSequence& a, const BitSequence& b) {
  return std::make_shared<PairSeq>(PairSeq::Op::Union, "cup", a, b);
}

std::uint64_t require_scan_extent(const Nat& n, const Budget& budget,
                                  const char* what) {
  if (n < 0) throw domain_error(std::string(what) + ": negative extent");
  if (!nat_fits_u64(n) || nat_to_u64(n) > budget.cap)
    throw budget_error(std::string(what) + ": extent " + nat_string(n) +
                       " exceeds scan budget " + std::to_string(budget.cap));
  return nat_to_u64(n);
}

void scan_range(const Seq& s, std::uint64_t lo, std::uint64_t hi,
                const Budget& budget,
                const std::function<void(std::uint64_t, bool)>& f) {
  if (hi > budget.cap)
    throw budget_error("scan_range: extent " + std::to_string(hi) +
                       " exceeds scan budget " + std::to_string(budget.cap));
  for (std::uint64_t i = lo; i < hi; ++i) f(i, s.bit_at(i));
}

std::string prefix(const BitSequence& s, const Nat& n, const Budget& budget) {
  std::uint64_t len = require_scan_extent(n, budget, "prefix");
  std::string out(len, '0');
  for (std::uint64_t i = 0; i < len; ++i)
    if (s->bit_at(i)) out[i] = '1';
  return out;
}

Nat prefix_count(const BitSequence& s, const Nat& n, const Budget& budget) {
  if (n < 0) throw domain_error("prefix_count: negative extent");
  if (auto c = s->closed_count(n)) return *c;
  std::uint64_t len = require_scan_extent(n, budget, "prefix_count");
  std::uint64_t count = 0;
  for (std::uint64_t i = 0; i < len; ++i) count += s->bit_at(i) ? 1 : 0;
  return Nat(count);
}

}  // namespace coarse
