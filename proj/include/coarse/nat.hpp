#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace coarse {

// Unbounded nonnegative index. Every index, count and block bound in the
// library is a Nat; negative intermediate values are a bug on the caller's
// side and are trapped where subtraction occurs.
using Nat = boost::multiprecision::cpp_int;

// Exact rational. All densities are Nat/Nat quotients; floating point appears
// only in display columns.
using Rat = boost::multiprecision::cpp_rational;

class domain_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class budget_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Nat nat_pow2(std::uint64_t k) { return Nat(1) << k; }

inline Nat nat_factorial(unsigned n) {
  Nat r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

// floor(sqrt(n))
inline Nat nat_isqrt(const Nat& n) { return boost::multiprecision::sqrt(n); }

// 2-adic valuation; requires n >= 1
inline std::uint64_t nat_v2(const Nat& n) {
  if (n <= 0) throw domain_error("nat_v2: argument must be positive");
  return boost::multiprecision::lsb(n);
}

// floor(log2(n)); requires n >= 1
inline std::uint64_t nat_log2(const Nat& n) {
  if (n <= 0) throw domain_error("nat_log2: argument must be positive");
  return boost::multiprecision::msb(n);
}

inline bool nat_fits_u64(const Nat& n) {
  return n >= 0 && n <= Nat(std::numeric_limits<std::uint64_t>::max());
}

inline std::uint64_t nat_to_u64(const Nat& n) {
  if (!nat_fits_u64(n)) throw domain_error("nat_to_u64: out of range");
  return static_cast<std::uint64_t>(n);
}

std::string nat_string(const Nat& n);

// Canonical lowest-terms rendering "p/q", q >= 1 (so "0/1", "1/1", "2/5").
std::string rat_string(const Rat& r);

double rat_double(const Rat& r);

// Accepts "p/q" or a bare integer; validates q != 0.
Rat parse_rational(const std::string& text);

// Accepts a decimal count, "2^k" or "k!"; used for CLI extents.
Nat parse_extent(const std::string& text);

}  // namespace coarse
