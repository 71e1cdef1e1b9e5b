#include "coarse/geodesics.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

namespace coarse {

Nat TriangularPartition::block_start(const Nat& i) { return i * (i - 1) / 2; }

std::pair<Nat, Nat> TriangularPartition::block_of(const Nat& n) {
  if (n < 0) throw domain_error("TriangularPartition: negative index");
  Nat i = (nat_isqrt(8 * n + 1) + 1) / 2;
  while (block_start(i) > n) --i;
  while (block_start(i + 1) <= n) ++i;
  return {i, n - block_start(i)};
}

std::pair<std::uint64_t, std::uint64_t> TriangularPartition::block_of_u64(std::uint64_t n) {
  auto start = [](std::uint64_t i) -> std::uint64_t {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(i) * (i - 1)) / 2);
  };
  auto i = static_cast<std::uint64_t>(std::sqrt(2.0 * static_cast<double>(n))) + 1;
  while (i > 1 && start(i) > n) --i;
  while (start(i + 1) <= n) ++i;
  return {i, n - start(i)};
}

Nat floor_sum(const Nat& n, const Nat& m, const Nat& a_in, const Nat& b_in) {
  if (n < 0 || m <= 0 || a_in < 0 || b_in < 0)
    throw domain_error("floor_sum: bad arguments");
  Nat ans = 0;
  Nat nn = n, mm = m, a = a_in, b = b_in;
  while (true) {
    if (a >= mm) {
      ans += (nn - 1) * nn / 2 * (a / mm);
      a %= mm;
    }
    if (b >= mm) {
      ans += nn * (b / mm);
      b %= mm;
    }
    Nat y_max = a * nn + b;
    if (y_max < mm) return ans;
    nn = y_max / mm;
    b = y_max % mm;
    std::swap(mm, a);
  }
}

namespace {

Rat checked_unit_rational(const Rat& r, const char* what) {
  if (r < 0 || r > 1)
    throw domain_error(std::string(what) + ": rational must lie in [0,1]");
  return r;
}

class CrSeq final : public Seq {
 public:
  explicit CrSeq(Rat r)
      : Seq("cr:" + rat_string(r)), p_(numerator(r)), q_(denominator(r)) {
    p_u64_ok_ = nat_fits_u64(p_) && nat_fits_u64(q_);
    if (p_u64_ok_) {
      pu_ = nat_to_u64(p_);
      qu_ = nat_to_u64(q_);
    }
  }
  bool bit(const Nat& n) const override {
    auto [i, off] = TriangularPartition::block_of(n);
    return off < (p_ * i) / q_;
  }
  bool bit_at(std::uint64_t n) const override {
    auto [i, off] = TriangularPartition::block_of_u64(n);
    if (p_u64_ok_ && i <= 0xffffffffULL && pu_ <= 0xffffffffULL)
      return off < (pu_ * i) / qu_;
    return off < nat_to_u64((p_ * i) / q_);
  }
  std::optional<Nat> closed_count(const Nat& n) const override {
    if (n <= 0) return Nat(0);
    auto [i, off] = TriangularPartition::block_of(n);
    // full blocks 1..i-1, then the first `off` positions of block i
    Nat full = floor_sum(i, q_, p_, 0);
    Nat inblock = (p_ * i) / q_;
    if (off < inblock) inblock = off;
    return full + inblock;
  }

 private:
  Nat p_, q_;
  bool p_u64_ok_ = false;
  std::uint64_t pu_ = 0, qu_ = 0;
};

class XrSeq final : public Seq {
 public:
  explicit XrSeq(const Rat& r)
      : Seq("xr:" + rat_string(r)), c_(std::make_shared<CrSeq>(r)) {}
  bool bit(const Nat& n) const override {
    Nat half = n >> 1;
    bool cv = c_->bit(half);
    return (n & 1) == 0 ? cv : !cv;
  }
  bool bit_at(std::uint64_t n) const override {
    bool cv = c_->bit_at(n >> 1);
    return (n & 1) == 0 ? cv : !cv;
  }
  std::optional<Nat> closed_count(const Nat& n) const override {
    // exactly one of each pair {2k, 2k+1} is present
    Nat pairs = n >> 1;
    if ((n & 1) == 0) return pairs;
    return pairs + (c_->bit(n >> 1) ? 1 : 0);
  }

 private:
  std::shared_ptr<CrSeq> c_;
};

}  // namespace

BitSequence c_r(const Rat& r) {
  return std::make_shared<CrSeq>(checked_unit_rational(r, "c_r"));
}

BitSequence x_r(const Rat& r) {
  return std::make_shared<XrSeq>(checked_unit_rational(r, "x_r"));
}

BitSequence a_r(const BitSequence& a, const Rat& r) {
  BitSequence cr = c_r(checked_unit_rational(r, "a_r"));
  return make_seq(
      "ar(" + a->descriptor() + "," + rat_string(r) + ")",
      [a, cr](const Nat& n) { return a->bit(n) && cr->bit(n); },
      [a, cr](std::uint64_t n) { return a->bit_at(n) && cr->bit_at(n); });
}

// ---- lazy element ranks ------------------------------------------------

struct RelativePartition::State {
  BitSequence a;
  Budget budget;
  mutable std::mutex mu;
  mutable std::vector<std::uint64_t> elements; // sorted
  mutable std::uint64_t scanned = 0;           // [0, scanned) examined

  // Both helpers assume mu is held.
  void extend_positions_locked(std::uint64_t n) const {
    if (n > budget.cap)
      throw budget_error("RelativePartition: scan of " + std::to_string(n) +
                         " positions exceeds budget");
    for (; scanned < n; ++scanned)
      if (a->bit_at(scanned)) elements.push_back(scanned);
  }
  void extend_elements_locked(std::uint64_t count) const {
    while (elements.size() < count) {
      if (scanned >= budget.cap)
        throw budget_error("RelativePartition: base sequence too sparse within budget");
      if (a->bit_at(scanned)) elements.push_back(scanned);
      ++scanned;
    }
  }
};

RelativePartition::RelativePartition(BitSequence a, Budget budget)
    : state_(std::make_shared<State>()) {
  state_->a = std::move(a);
  state_->budget = budget;
}

Nat RelativePartition::element(const Nat& rank) const {
  if (rank < 0) throw domain_error("RelativePartition::element: negative rank");
  std::uint64_t r = nat_to_u64(rank);
  if (r + 1 > state_->budget.cap)
    throw budget_error("RelativePartition::element: rank exceeds budget");
  std::lock_guard<std::mutex> lock(state_->mu);
  state_->extend_elements_locked(r + 1);
  return Nat(state_->elements[r]);
}

Nat RelativePartition::count_below(const Nat& n) const {
  std::uint64_t nn = require_scan_extent(n, state_->budget, "RelativePartition::count_below");
  if (nn == 0) return Nat(0);
  std::lock_guard<std::mutex> lock(state_->mu);
  state_->extend_positions_locked(nn);
  auto it = std::upper_bound(state_->elements.begin(), state_->elements.end(), nn - 1);
  return Nat(it - state_->elements.begin());
}

Nat RelativePartition::run_end(const Nat& n) const {
  if (n < 1) throw domain_error("RelativePartition::run_end: run index must be >= 1");
  Nat last_rank = TriangularPartition::block_start(n + 1) - 1;
  return element(last_rank) + 1;
}

const BitSequence& RelativePartition::base() const { return state_->a; }

BitSequence geodesic_within(const BitSequence& a, const Rat& s, const Budget& budget) {
  checked_unit_rational(s, "geodesic_within");
  auto part = std::make_shared<RelativePartition>(a, budget);
  Nat p = numerator(s), q = denominator(s);
  auto eval = [a, part, p, q](const Nat& n) -> bool {
    if (!a->bit(n)) return false;
    Nat rank = part->count_below(n); // n itself is in a, so this is its index
    auto [run, off] = TriangularPartition::block_of(rank);
    return off < (p * run) / q;
  };
  return make_seq("geo(" + a->descriptor() + "," + rat_string(s) + ")", eval,
                  [eval](std::uint64_t n) { return eval(Nat(n)); });
}

BitSequence rational_geodesic(const BitSequence& a, std::vector<Rat> qs) {
  if (qs.empty()) throw domain_error("rational_geodesic: empty q list");
  for (const Rat& q : qs) checked_unit_rational(q, "rational_geodesic");
  std::string d = "ratgeo:[";
  for (std::size_t i = 0; i < qs.size(); ++i) {
    if (i) d += ",";
    d += rat_string(qs[i]);
  }
  d += "](" + a->descriptor() + ")";
  auto shared = std::make_shared<std::vector<Rat>>(std::move(qs));
  auto eval = [a, shared](const Nat& n) -> bool {
    auto [i, off] = TriangularPartition::block_of(n);
    std::size_t idx = i > Nat(shared->size()) ? shared->size() - 1
                                              : static_cast<std::size_t>(nat_to_u64(i)) - 1;
    const Rat& q = (*shared)[idx];
    return off < (numerator(q) * i) / denominator(q) && a->bit(n);
  };
  return make_seq(std::move(d), eval,
                  [eval](std::uint64_t n) { return eval(Nat(n)); });
}

// ---- disagreements -----------------------------------------------------

struct DisagreementList::State {
  BitSequence a, b;
  Budget budget;
  mutable std::mutex mu;
  mutable std::vector<std::uint64_t> positions;
  mutable std::uint64_t scanned = 0;

  // Both helpers assume mu is held.
  void extend_positions_locked(std::uint64_t n) const {
    if (n > budget.cap)
      throw budget_error("DisagreementList: scan exceeds budget");
    for (; scanned < n; ++scanned)
      if (a->bit_at(scanned) != b->bit_at(scanned)) positions.push_back(scanned);
  }
  void extend_count_locked(std::uint64_t count) const {
    while (positions.size() < count) {
      if (scanned >= budget.cap)
        throw budget_error("DisagreementList: fewer disagreements than requested within budget");
      if (a->bit_at(scanned) != b->bit_at(scanned)) positions.push_back(scanned);
      ++scanned;
    }
  }
};

DisagreementList::DisagreementList(BitSequence a, BitSequence b, Budget budget)
    : state_(std::make_shared<State>()) {
  state_->a = std::move(a);
  state_->b = std::move(b);
  state_->budget = budget;
}

Nat DisagreementList::position(const Nat& i) const {
  if (i < 0) throw domain_error("DisagreementList::position: negative index");
  std::uint64_t r = nat_to_u64(i);
  if (r + 1 > state_->budget.cap)
    throw budget_error("DisagreementList::position: index exceeds budget");
  std::lock_guard<std::mutex> lock(state_->mu);
  state_->extend_count_locked(r + 1);
  return Nat(state_->positions[r]);
}

Nat DisagreementList::count_below(const Nat& n) const {
  std::uint64_t nn = require_scan_extent(n, state_->budget, "DisagreementList::count_below");
  if (nn == 0) return Nat(0);
  std::lock_guard<std::mutex> lock(state_->mu);
  state_->extend_positions_locked(nn);
  auto it = std::upper_bound(state_->positions.begin(), state_->positions.end(), nn - 1);
  return Nat(it - state_->positions.begin());
}

BitSequence midpoint_family(const BitSequence& a, const BitSequence& b,
                            const BitSequence& x, const Budget& budget) {
  auto list = std::make_shared<DisagreementList>(a, b, budget);
  auto eval = [a, b, x, list](const Nat& n) -> bool {
    bool av = a->bit(n), bv = b->bit(n);
    if (av == bv) return av;
    Nat i = list->count_below(n); // n disagrees, so this is its index
    return x->bit(i) ? av : bv;
  };
  return make_seq(
      "mid(" + a->descriptor() + "," + b->descriptor() + "," + x->descriptor() + ")",
      eval, [eval](std::uint64_t n) { return eval(Nat(n)); });
}

}  // namespace coarse
