// Acceptance gate for the coarse-similarity toolkit. Each numbered check
// prints exactly one PASS/FAIL line; horizons, tolerances and frozen
// regression values are pinned inline next to the check they guard.
// argv[1] must name the CLI binary (exercised by checks 10 and 11).
// The process exit code is the number of failed checks.

#include "coarse/cauchy.hpp"
#include "coarse/codings.hpp"
#include "coarse/density.hpp"
#include "coarse/geodesics.hpp"
#include "coarse/nat.hpp"
#include "coarse/seq.hpp"
#include "coarse/setspec.hpp"
#include "coarse/tree.hpp"

#include <sys/wait.h>

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace {

using namespace coarse;

struct Outcome {
  bool pass = false;
  std::string detail;
};

Outcome ok() { return {true, {}}; }
Outcome bad(std::string d) { return {false, std::move(d)}; }

// ---- deterministic generator (SplitMix64) -------------------------------

struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  std::uint64_t below(std::uint64_t n) { return next() % n; }
};

std::string gen_ratio(Rng& rng) {
  std::uint64_t q = 1 + rng.below(9);
  std::uint64_t p = rng.below(q + 1); // stays in [0, 1]
  return std::to_string(p) + "/" + std::to_string(q);
}

std::string gen_bits(Rng& rng, std::uint64_t lo, std::uint64_t hi) {
  std::uint64_t len = lo + rng.below(hi - lo + 1);
  std::string s;
  for (std::uint64_t i = 0; i < len; ++i) s += rng.below(2) ? '1' : '0';
  return s;
}

std::string gen_atom(Rng& rng) {
  switch (rng.below(9)) {
    case 0: return "empty";
    case 1: return "full";
    case 2: return "evens";
    case 3: return "periodic:" + gen_bits(rng, 2, 5);
    case 4: {
      std::string s = "finite:{";
      std::uint64_t n = 1 + rng.below(4);
      for (std::uint64_t i = 0; i < n; ++i) {
        if (i) s += ",";
        s += std::to_string(rng.below(64));
      }
      return s + "}";
    }
    case 5: return "rand:" + std::to_string(1 + rng.below(999));
    case 6: return "cr:" + gen_ratio(rng);
    case 7: return "xr:" + gen_ratio(rng);
    default: return "treepath:" + gen_bits(rng, 1, 6);
  }
}

// combinators that evaluate in O(1) extra work per bit; used where the
// generated sets are scanned densely
std::string gen_eval_spec(Rng& rng, unsigned depth) {
  if (depth == 0 || rng.below(4) == 0) return gen_atom(rng);
  switch (rng.below(9)) {
    case 0: return "not(" + gen_eval_spec(rng, depth - 1) + ")";
    case 1:
      return "symdiff(" + gen_eval_spec(rng, depth - 1) + "," +
             gen_eval_spec(rng, depth - 1) + ")";
    case 2:
      return "agree(" + gen_eval_spec(rng, depth - 1) + "," +
             gen_eval_spec(rng, depth - 1) + ")";
    case 3:
      return "cap(" + gen_eval_spec(rng, depth - 1) + "," +
             gen_eval_spec(rng, depth - 1) + ")";
    case 4:
      return "cup(" + gen_eval_spec(rng, depth - 1) + "," +
             gen_eval_spec(rng, depth - 1) + ")";
    case 5:
      return "join(" + gen_eval_spec(rng, depth - 1) + "," +
             gen_eval_spec(rng, depth - 1) + ")";
    case 6: return "jcode(" + gen_eval_spec(rng, depth - 1) + ")";
    case 7: return "rcode(" + gen_eval_spec(rng, depth - 1) + ")";
    default:
      return "ar(" + gen_eval_spec(rng, depth - 1) + "," + gen_ratio(rng) + ")";
  }
}

// the whole grammar; used where only parsing/printing is exercised
std::string gen_full_spec(Rng& rng, unsigned depth) {
  if (depth == 0 || rng.below(4) == 0) return gen_atom(rng);
  auto sub = [&] { return gen_full_spec(rng, depth - 1); };
  switch (rng.below(15)) {
    case 0: return "not(" + sub() + ")";
    case 1: return "icode(" + sub() + ")";
    case 2: return "jcode(" + sub() + ")";
    case 3: return "rcode(" + sub() + ")";
    case 4: return "symdiff(" + sub() + "," + sub() + ")";
    case 5: return "agree(" + sub() + "," + sub() + ")";
    case 6: return "join(" + sub() + "," + sub() + ")";
    case 7: return "cap(" + sub() + "," + sub() + ")";
    case 8: return "cup(" + sub() + "," + sub() + ")";
    case 9: return "rrel(" + sub() + "," + sub() + ")";
    case 10: return "mid(" + sub() + "," + sub() + "," + sub() + ")";
    case 11: {
      std::string s = "rjoin(" + sub();
      for (std::uint64_t i = rng.below(3); i > 0; --i) s += "," + sub();
      return s + ")";
    }
    case 12: {
      std::string s = "diag(" + sub();
      for (std::uint64_t i = rng.below(3); i > 0; --i) s += "," + sub();
      return s + ")";
    }
    case 13: return "ar(" + sub() + "," + gen_ratio(rng) + ")";
    default: return "geo(" + sub() + "," + gen_ratio(rng) + ")";
  }
}

// ---- CLI process helpers -------------------------------------------------

struct RunOut {
  int code = -1;
  std::string text;
};

std::string shell_quote(const std::string& s) {
  std::string q = "'";
  for (char ch : s)
    q += (ch == '\'') ? std::string("'\\''") : std::string(1, ch);
  return q + "'";
}

RunOut run_cli(const std::string& bin, const std::vector<std::string>& args) {
  std::string cmd = shell_quote(bin);
  for (const auto& a : args) cmd += " " + shell_quote(a);
  cmd += " 2>&1";
  RunOut r;
  FILE* p = ::popen(cmd.c_str(), "r");
  if (!p) {
    r.text = "popen failed";
    return r;
  }
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) r.text.append(buf, n);
  int st = ::pclose(p);
  if (WIFEXITED(st)) r.code = WEXITSTATUS(st);
  return r;
}

// value of the "# key,value" trailer, or empty
std::string trailer_value(const std::string& out, const std::string& key) {
  std::istringstream in(out);
  std::string line, want = "# " + key + ",";
  while (std::getline(in, line))
    if (line.rfind(want, 0) == 0) return line.substr(want.size());
  return {};
}

// ---- check 1: metric inequalities at every prefix length -----------------

Outcome check_metric_axioms() {
  const std::uint64_t kHorizon = std::uint64_t(1) << 16; // every n in [1, 2^16]
  const int kTriples = 50;
  Rng rng(0xC0A45E0151ULL);
  const CheckpointGrid grid = CheckpointGrid::dyadic(Nat(1), nat_pow2(16));
  for (int t = 0; t < kTriples; ++t) {
    const std::string sa = gen_eval_spec(rng, 3);
    const std::string sb = gen_eval_spec(rng, 3);
    const std::string sc = gen_eval_spec(rng, 3);
    BitSequence a = build_spec(sa), b = build_spec(sb), c = build_spec(sc);
    BitSequence na = complement_seq(a);
    std::uint64_t cab = 0, cbc = 0, cac = 0, ca = 0, cna = 0;
    for (std::uint64_t m = 0; m < kHorizon; ++m) {
      const bool ea = a->bit_at(m), eb = b->bit_at(m), ec = c->bit_at(m);
      cab += ea != eb;
      cbc += eb != ec;
      cac += ea != ec;
      ca += ea;
      cna += na->bit_at(m);
      // shared denominator n = m+1: the density inequalities reduce to counts
      if (cac > cab + cbc)
        return bad("triangle count violation at n=" + std::to_string(m + 1) +
                   " for (" + sa + ", " + sb + ", " + sc + ")");
      if (ca + cna != m + 1)
        return bad("complement identity violation at n=" +
                   std::to_string(m + 1) + " for " + sa);
    }
    const Rat dab = delta_estimate(a, b, grid).first;
    const Rat dba = delta_estimate(b, a, grid).first;
    if (!(dab == dba))
      return bad("asymmetric distance estimate for (" + sa + ", " + sb + ")");
  }
  return ok();
}

// ---- check 2: factor-two block/prefix comparisons -------------------------

Outcome check_factor_two() {
  const unsigned kK = 14; // blocks 0..14, prefixes to 2^15
  std::vector<std::pair<std::string, BitSequence>> seqs;
  seqs.emplace_back("jcode(evens)", code(Family::J, evens_seq()));
  seqs.emplace_back("jcode(odds)", code(Family::J, complement_seq(evens_seq())));
  seqs.emplace_back("jcode(rand:3)", code(Family::J, bernoulli_stream(3)));
  seqs.emplace_back("jcode(periodic:011)", code(Family::J, periodic_seq("011")));
  seqs.emplace_back("jcode(finite:{1,3,4})",
                    code(Family::J, finite_seq({Nat(1), Nat(3), Nat(4)})));
  seqs.emplace_back("icode(evens)", code(Family::I, evens_seq()));
  seqs.emplace_back("icode(rand:7)", code(Family::I, bernoulli_stream(7)));
  seqs.emplace_back("icode(periodic:01)", code(Family::I, periodic_seq("01")));
  seqs.emplace_back("icode(full)", code(Family::I, full_seq()));
  seqs.emplace_back("icode(empty)", code(Family::I, empty_seq()));
  seqs.emplace_back("cr:1/3", c_r(Rat(1, 3)));
  seqs.emplace_back("cr:1/2", c_r(Rat(1, 2)));
  seqs.emplace_back("cr:3/7", c_r(Rat(3, 7)));
  seqs.emplace_back("cr:9/10", c_r(Rat(9, 10)));
  seqs.emplace_back("cr:1/10", c_r(Rat(1, 10)));
  seqs.emplace_back("rand:11", bernoulli_stream(11));
  seqs.emplace_back("rand:12", bernoulli_stream(12));
  seqs.emplace_back("rand:13", bernoulli_stream(13));
  seqs.emplace_back("rand:14", bernoulli_stream(14));
  seqs.emplace_back("rand:15", bernoulli_stream(15));
  if (seqs.size() != 20) return bad("expected 20 sequences");
  for (const auto& [name, s] : seqs) {
    const Factor2Report rep = factor2_check(s, kK);
    if (!rep.all_pass) return bad("factor-two comparison failed for " + name);
  }
  return ok();
}

// ---- check 3: cr density at triangular block starts -----------------------

Outcome check_cr_density() {
  const std::uint64_t kMaxBlock = 2000;
  const std::vector<Rat> rs = {Rat(1, 3), Rat(1, 2), Rat(3, 7), Rat(9, 10)};
  for (const Rat& r : rs) {
    BitSequence c = c_r(r);
    for (std::uint64_t i = 2; i <= kMaxBlock; ++i) {
      const Nat mi = TriangularPartition::block_start(Nat(i));
      const Rat rho = rho_at(c, mi);
      const Rat lo = r - Rat(2, Nat(i)); // |rho - r| <= 2/i, exact
      const Rat hi = r + Rat(2, Nat(i));
      if (!(rho >= lo && rho <= hi))
        return bad("block " + std::to_string(i) + " for r=" + rat_string(r) +
                   ": rho=" + rat_string(rho));
    }
  }
  return ok();
}

// ---- check 4: geodesic prefix counts inside evens --------------------------

Outcome check_geodesic_counts() {
  const std::uint64_t kMaxRun = 500;
  const std::vector<Rat> ts = {Rat(1, 3), Rat(2, 3)};
  for (const Rat& t : ts) {
    BitSequence f = geodesic_within(evens_seq(), t);
    RelativePartition part(evens_seq());
    std::uint64_t pos = 0, count = 0;
    for (std::uint64_t n = 1; n <= kMaxRun; ++n) {
      const std::uint64_t end = nat_to_u64(part.run_end(Nat(n)));
      for (; pos < end; ++pos) count += f->bit_at(pos) ? 1 : 0;
      // t*T - n - 1 <= count <= t*T with T = n(n+1)/2, exact rationals
      const Nat triangular = Nat(n) * Nat(n + 1) / 2;
      const Rat target = t * Rat(triangular);
      const Rat got{Nat(count)};
      if (!(got <= target && got + Rat(Nat(n + 1)) >= target))
        return bad("run " + std::to_string(n) + " for t=" + rat_string(t) +
                   ": count=" + std::to_string(count));
    }
  }
  return ok();
}

// ---- check 5: midpoint counting identity + half-density interleave --------

Outcome check_midpoint_identity() {
  const std::uint64_t kPrefix = 100000; // all n <= 1e5, exact equality
  struct Triple {
    const char* name;
    BitSequence a, b, x;
  };
  const BitSequence rfin = code(Family::R, finite_seq({Nat(0), Nat(2)}));
  const std::vector<Triple> triples = {
      {"evens/odds/rand", evens_seq(), complement_seq(evens_seq()),
       bernoulli_stream(101)},
      {"evens/rand/periodic", evens_seq(), bernoulli_stream(5),
       periodic_seq("01")},
      {"cr13/cr23/evens", c_r(Rat(1, 3)), c_r(Rat(2, 3)), evens_seq()},
      {"rand/rand/rand", bernoulli_stream(7), bernoulli_stream(8),
       bernoulli_stream(9)},
      {"periodic/periodic/rand", periodic_seq("0011"), periodic_seq("0101"),
       bernoulli_stream(10)},
      {"empty/full/rand", empty_seq(), full_seq(), bernoulli_stream(11)},
      {"jcode/jcode/periodic", code(Family::J, evens_seq()),
       code(Family::J, complement_seq(evens_seq())), periodic_seq("110")},
      {"evens/full/finite", evens_seq(), full_seq(),
       finite_seq({Nat(1), Nat(3)})},
      {"rcode/its-complement/cr", rfin, complement_seq(rfin), c_r(Rat(1, 2))},
      {"rand/its-complement/xr", bernoulli_stream(13),
       complement_seq(bernoulli_stream(13)), x_r(Rat(3, 7))},
  };
  for (const auto& tr : triples) {
    BitSequence f = midpoint_family(tr.a, tr.b, tr.x);
    BitSequence d = symdiff_seq(tr.a, f);
    std::uint64_t diff_count = 0, kappa = 0, notx_count = 0;
    for (std::uint64_t m = 0; m < kPrefix; ++m) {
      diff_count += d->bit_at(m) ? 1 : 0;
      if (tr.a->bit_at(m) != tr.b->bit_at(m)) {
        notx_count += tr.x->bit_at(kappa) ? 0 : 1;
        ++kappa;
      }
      if (diff_count != notx_count)
        return bad(std::string(tr.name) + ": count mismatch at n=" +
                   std::to_string(m + 1));
    }
  }
  // the interleave of c_r with its complement has density exactly 1/2 at
  // every even prefix length
  const std::uint64_t kHalfChecks = 10000;
  for (const Rat& r : {Rat(1, 3), Rat(3, 7)}) {
    BitSequence x = x_r(r);
    for (std::uint64_t n = 1; n <= kHalfChecks; ++n) {
      auto cnt = x->closed_count(Nat(2 * n));
      if (!cnt || *cnt != Nat(n))
        return bad("xr:" + rat_string(r) + " off half at length " +
                   std::to_string(2 * n));
    }
  }
  return ok();
}

// ---- check 6: diagonal agreement bound at factorial checkpoints -----------

Outcome check_diagonal_bound() {
  const unsigned kMaxN = 9; // (n+1)! <= 10!
  const std::vector<std::pair<std::string, std::vector<BitSequence>>> lists = {
      {"one", {evens_seq()}},
      {"two", {evens_seq(), full_seq()}},
      {"three", {evens_seq(), bernoulli_stream(5), c_r(Rat(1, 2))}},
  };
  for (const auto& [name, as] : lists) {
    BitSequence b = diagonal_distance_one(as);
    for (unsigned n = 0; n <= kMaxN; ++n) {
      const auto im = cantor_unpair(Nat(n));
      if (im.first >= as.size()) continue; // no target listed at this index
      const Nat len = nat_factorial(n + 1) - Nat(1);
      if (len == 0) continue; // no density at length 0
      const Nat agree = prefix_count(
          symagree_seq(b, as[static_cast<std::size_t>(nat_to_u64(im.first))]),
          len);
      // rho_len(agreement) <= 1/(n+1), cleared of denominators
      if (!(agree * Nat(n + 1) <= len))
        return bad(name + ": bound failed at n=" + std::to_string(n));
    }
  }
  return ok();
}

// ---- check 7: majority decoding under per-block corruption ----------------

Outcome check_decoder_robustness() {
  const Rat kCorruption(1, 5); // flips floor(2^k / 5) positions in block k
  const unsigned kBits = 15;   // recover the first 15 coded bits
  const int kSets = 100;
  for (int s = 0; s < kSets; ++s) {
    BitSequence a = bernoulli_stream(20260000 + static_cast<std::uint64_t>(s));
    BitSequence noisy =
        corrupt_j_blocks(code(Family::J, a), kCorruption,
                         0x5EED0000ULL + static_cast<std::uint64_t>(s));
    for (unsigned k = 0; k < kBits; ++k)
      if (decode_J(noisy, k) != a->bit_at(k))
        return bad("set " + std::to_string(s) + " bit " + std::to_string(k));
  }
  return ok();
}

// ---- check 8: spliced limit convergence and blockwise identity -------------

Outcome check_splice_convergence() {
  const BitSequence a = finite_seq({Nat(0), Nat(2), Nat(4), Nat(6)});
  std::vector<BitSequence> members;
  for (unsigned k = 0; k <= 8; ++k) members.push_back(approximate_R(a, Nat(k)));
  SplicePtr lim = splice_limit(members); // default trust slack 2
  const CheckpointGrid grid = CheckpointGrid::dyadic(Nat(1024), nat_pow2(18));
  const ConvergenceReport rep = convergence_report(members, lim, grid);
  if (!rep.all_pass) return bad("convergence report flagged a member");
  if (rep.entries.size() != 9) return bad("expected 9 member entries");
  if (rep.horizon != nat_pow2(18)) return bad("horizon moved");
  for (const auto& e : rep.entries) {
    // tail_max of rho(member_m xor limit) <= 2^(1-m) * 2, exact
    const Rat lhs = e.tail_max * Rat(nat_pow2(static_cast<unsigned>(e.m)));
    if (!(lhs <= Rat(4)))
      return bad("member " + std::to_string(e.m) + " tail " +
                 rat_string(e.tail_max));
  }
  // the limit is bit-identical to the stabilized coding on blocks 0..16
  const BitSequence target = code(Family::R, a);
  const std::uint64_t kEnd = (std::uint64_t(1) << 17) - 1; // end of block 16
  for (std::uint64_t m = 0; m < kEnd; ++m)
    if (lim->bit_at(m) != target->bit_at(m))
      return bad("limit differs from coding at position " + std::to_string(m));
  return ok();
}

// ---- check 9: balanced tree prefixes, popcounts, half agreement ------------

Outcome check_balanced_tree() {
  const std::uint64_t kLen = 65536; // the whole first level
  const Nat kHalf = Nat(32768);
  // independent model: the first level of T("0") repeats 0011, of T("1")
  // repeats 00001111
  auto naive0 = [](std::uint64_t m) { return (m & 3) >= 2; };
  auto naive1 = [](std::uint64_t m) { return (m & 7) >= 4; };
  const TreeCode t0 = tree_code("0"), t1 = tree_code("1");
  const BitSequence lazy0 = tree_path("0"), lazy1 = tree_path("1");
  std::uint64_t pc0 = 0, pc1 = 0, agree_cnt = 0;
  for (std::uint64_t m = 0; m < kLen; ++m) {
    const bool b0 = naive0(m), b1 = naive1(m);
    if (tree_bit(t0, Nat(m)) != b0) return bad("T(0) bit " + std::to_string(m));
    if (tree_bit(t1, Nat(m)) != b1) return bad("T(1) bit " + std::to_string(m));
    if (lazy0->bit_at(m) != b0) return bad("lazy T(0) bit " + std::to_string(m));
    if (lazy1->bit_at(m) != b1) return bad("lazy T(1) bit " + std::to_string(m));
    pc0 += b0;
    pc1 += b1;
    agree_cnt += b0 == b1;
  }
  if (pc0 != 32768 || pc1 != 32768) return bad("level popcount not half");
  if (agree_cnt != 32768) return bad("level agreement not half");
  if (tree_prefix_popcount(t0, Nat(kLen)) != kHalf)
    return bad("symbolic popcount T(0)");
  if (tree_prefix_popcount(t1, Nat(kLen)) != kHalf)
    return bad("symbolic popcount T(1)");
  if (pairwise_agreement_count(t0, t1, Nat(kLen)) != kHalf)
    return bad("symbolic agreement count");
  // distinct repeating words 0^(2^i) 1^(2^i) agree on exactly half of any
  // aligned window; brute-force all pairs i < j <= 7 over 2^16 positions
  for (std::uint64_t i = 0; i < 7; ++i)
    for (std::uint64_t j = i + 1; j <= 7; ++j) {
      std::uint64_t cnt = 0;
      for (std::uint64_t m = 0; m < kLen; ++m) {
        const bool bi = (m & ((std::uint64_t(1) << (i + 1)) - 1)) >=
                        (std::uint64_t(1) << i);
        const bool bj = (m & ((std::uint64_t(1) << (j + 1)) - 1)) >=
                        (std::uint64_t(1) << j);
        cnt += bi == bj;
      }
      if (cnt != 32768)
        return bad("brute half-agreement failed for words " +
                   std::to_string(i) + "," + std::to_string(j));
      if (mu_power_agree(i, j, Nat(kLen)) != kHalf)
        return bad("symbolic half-agreement failed for words " +
                   std::to_string(i) + "," + std::to_string(j));
    }
  return ok();
}

// ---- check 10: CLI distance probe on independent streams -------------------

Outcome check_cli_probe(const std::string& bin) {
  if (bin.empty()) return bad("no CLI binary path was passed as argv[1]");
  // frozen exact regression value for this exact invocation
  const Rat kFrozen(37719, 75313);
  const Rat kLo(12, 25), kHi(13, 25); // acceptance interval [0.48, 0.52]
  const RunOut r = run_cli(bin, {"delta", "--a", "rand:1", "--b", "rand:2",
                                 "--grid", "geometric", "--warmup", "2^14",
                                 "--limit", "2^20"});
  if (r.code != 0) return bad("exit code " + std::to_string(r.code));
  const std::string text = trailer_value(r.text, "delta_tail_max");
  if (text.empty()) return bad("missing delta_tail_max trailer");
  const Rat v = parse_rational(text);
  if (!(v >= kLo && v <= kHi))
    return bad("tail " + text + " outside [0.48, 0.52]");
  if (!(v == kFrozen))
    return bad("tail " + text + " drifted from frozen " + rat_string(kFrozen));
  return ok();
}

// ---- check 11: CLI byte determinism + parse round-trip corpus ---------------

Outcome check_cli_determinism(const std::string& bin) {
  if (bin.empty()) return bad("no CLI binary path was passed as argv[1]");
  const std::vector<std::vector<std::string>> cases = {
      {"density", "--set", "symdiff(rand:1,rand:2)", "--warmup", "2^8",
       "--limit", "2^12"},
      {"delta", "--a", "evens", "--b", "cr:1/2", "--grid", "linear", "--step",
       "64", "--warmup", "2^8", "--limit", "2^12"},
      {"blocks", "--set", "jcode(rand:3)", "--limit", "2^12"},
      {"decode", "--set", "jcode(evens)", "--upto", "10"},
      {"limit", "--rapprox", "finite:{0,2}", "--count", "4", "--warmup",
       "2^10", "--limit", "2^14"},
      {"gamma", "--set", "evens", "--describers", "evens;not(evens)",
       "--warmup", "2^10", "--limit", "2^12"},
      {"tree", "--popcount", "--path", "0110", "--index", "2^16"},
      {"check", "--set", "cr:3/7", "--limit", "2^10"},
  };
  for (const auto& args : cases) {
    const RunOut first = run_cli(bin, args);
    const RunOut second = run_cli(bin, args);
    if (first.code != 0 || second.code != 0)
      return bad(args[0] + " exited nonzero");
    if (first.text != second.text)
      return bad(args[0] + " produced different bytes on the second run");
  }
  const int kCorpus = 200;
  Rng rng(0x0C0A45E11ULL);
  for (int i = 0; i < kCorpus; ++i) {
    const std::string text = gen_full_spec(rng, 3);
    const SpecPtr s1 = parse_spec(text);
    const std::string p1 = print_spec(s1);
    const SpecPtr s2 = parse_spec(p1);
    if (print_spec(s2) != p1)
      return bad("printing not canonical for: " + text);
    if (!spec_equal(s1, s2)) return bad("round-trip changed: " + text);
    if (build_spec(s2)->descriptor() != p1)
      return bad("descriptor drifted for: " + text);
  }
  return ok();
}

}  // namespace

int main(int argc, char** argv) {
  const std::string bin = argc > 1 ? argv[1] : "";
  int failures = 0;
  auto run = [&failures](int id, const char* title, double cap_seconds,
                         const std::function<Outcome()>& f) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = f();
    } catch (const std::exception& e) {
      o = bad(std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    if (o.pass && secs > cap_seconds)
      o = bad("exceeded the pinned runtime of " +
              std::to_string(static_cast<int>(cap_seconds)) + "s");
    std::ostringstream line;
    line << (o.pass ? "PASS" : "FAIL") << "  " << std::setw(2) << id << "  "
         << title << "  [" << std::fixed << std::setprecision(1) << secs
         << "s]";
    if (!o.pass && !o.detail.empty()) line << "  -- " << o.detail;
    std::cout << line.str() << std::endl;
    if (!o.pass) ++failures;
  };

  run(1, "metric inequalities at every prefix length to 2^16 (50 spec triples)",
      60, check_metric_axioms);
  run(2, "factor-two block/prefix density comparisons, K=14, 20 sequences", 60,
      check_factor_two);
  run(3, "cr density within 2/i at triangular block starts, i <= 2000", 30,
      check_cr_density);
  run(4, "geodesic prefix counts inside [t*T(n)-n-1, t*T(n)], n <= 500", 30,
      check_geodesic_counts);
  run(5, "midpoint disagreement-count identity to 1e5 + half-density interleave",
      60, check_midpoint_identity);
  run(6, "diagonal set: agreement density <= 1/(n+1) at factorial checkpoints",
      60, check_diagonal_bound);
  run(7, "majority decode of 15 bits under 20% per-block corruption, 100 sets",
      60, check_decoder_robustness);
  run(8, "spliced limit: convergence bounds and blockwise identity to block 16",
      120, check_splice_convergence);
  run(9, "balanced tree: materialized prefixes, popcounts, half agreement", 60,
      check_balanced_tree);
  run(10, "CLI distance probe on independent streams matches frozen value", 30,
      [&bin] { return check_cli_probe(bin); });
  run(11, "CLI byte determinism (8 subcommands) + 200-spec parse round-trip",
      30, [&bin] { return check_cli_determinism(bin); });

  return failures;
}
