#pragma once

#include "coarse/nat.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace coarse {

// Scan ceiling for any operation that must walk a prefix bit by bit.
// Evaluation of a single bit is never budgeted; prefixes, ranks and density
// scans are.
struct Budget {
  std::uint64_t cap = std::uint64_t(1) << 26;
};

inline const Budget& default_budget() {
  static const Budget b{};
  return b;
}

// A point in {0,1}^N. Nodes are immutable; a sequence is defined entirely by
// its total evaluator index -> bit, and carries a descriptor string recording
// how it was built. Equality of sequences is never decided, only descriptor
// equality.
class Seq {
 public:
  explicit Seq(std::string descriptor) : descriptor_(std::move(descriptor)) {}
  virtual ~Seq() = default;

  Seq(const Seq&) = delete;
  Seq& operator=(const Seq&) = delete;

  const std::string& descriptor() const { return descriptor_; }

  virtual bool bit(const Nat& n) const = 0;

  // Fast path for scans; indices that fit in a machine word stay there.
  virtual bool bit_at(std::uint64_t n) const { return bit(Nat(n)); }

  // Exact |S ∩ [0,n)| when the construction admits a closed form.
  virtual std::optional<Nat> closed_count(const Nat& n) const {
    (void)n;
    return std::nullopt;
  }

 private:
  std::string descriptor_;
};

using BitSequence = std::shared_ptr<const Seq>;

// ---- atoms ------------------------------------------------------------

BitSequence empty_seq();
BitSequence full_seq();
BitSequence evens_seq();
BitSequence periodic_seq(const std::string& bits);         // bits in {0,1}+, repeated
BitSequence finite_seq(std::vector<Nat> elements);         // characteristic function
// Counter-mode pseudorandom stream: bit(n) is the top bit of a SplitMix64
// finalizer chain folded over the seed and the 64-bit limbs of n. Pure in
// (seed, n); the only randomness source in the library.
BitSequence bernoulli_stream(std::uint64_t seed);

// Generic node for library-internal constructions. The evaluator must be
// pure; fn_u64 (optional) must agree with fn on the shared domain.
BitSequence make_seq(std::string descriptor,
                     std::function<bool(const Nat&)> fn,
                     std::function<bool(std::uint64_t)> fn_u64 = nullptr);

// ---- combinators ------------------------------------------------------

BitSequence complement_seq(const BitSequence& a);
BitSequence symdiff_seq(const BitSequence& a, const BitSequence& b);
BitSequence symagree_seq(const BitSequence& a, const BitSequence& b);
// join(a,b): even positions copy a, odd positions copy b
BitSequence join_seq(const BitSequence& a, const BitSequence& b);
BitSequence intersect_seq(const BitSequence& a, const BitSequence& b);
BitSequence union_seq(const BitSequence& a, const BitSequence& b);

// ---- prefixes ----------------------------------------------------------

// First n bits as a '0'/'1' string; n must fit the budget.
std::string prefix(const BitSequence& s, const Nat& n,
                   const Budget& budget = default_budget());

// |S ∩ [0,n)| by closed form when available, otherwise a budgeted scan.
Nat prefix_count(const BitSequence& s, const Nat& n,
                 const Budget& budget = default_budget());

// Internal scan helper: walks [lo, hi) via bit_at, calling f(index, bit).
// Throws budget_error if hi exceeds the budget cap.
void scan_range(const Seq& s, std::uint64_t lo, std::uint64_t hi,
                const Budget& budget,
                const std::function<void(std::uint64_t, bool)>& f);

std::uint64_t require_scan_extent(const Nat& n, const Budget& budget,
                                  const char* what);

}  // namespace coarse
