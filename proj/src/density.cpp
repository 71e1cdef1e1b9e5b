#include "coarse/density.hpp"

#include <algorithm>

namespace coarse {

CheckpointGrid CheckpointGrid::linear(const Nat& step, const Nat& warmup, const Nat& limit) {
  CheckpointGrid g;
  g.kind = Kind::Linear;
  g.step = step;
  g.warmup = warmup;
  g.limit = limit;
  return g;
}

CheckpointGrid CheckpointGrid::geometric(const Rat& ratio, const Nat& warmup, const Nat& limit) {
  CheckpointGrid g;
  g.kind = Kind::Geometric;
  g.ratio = ratio;
  g.warmup = warmup;
  g.limit = limit;
  return g;
}

CheckpointGrid CheckpointGrid::geometric_default(const Nat& warmup, const Nat& limit) {
  return geometric(Rat(5, 4), warmup, limit);
}

CheckpointGrid CheckpointGrid::factorial(const Nat& warmup, const Nat& limit) {
  CheckpointGrid g;
  g.kind = Kind::Factorial;
  g.warmup = warmup;
  g.limit = limit;
  return g;
}

CheckpointGrid CheckpointGrid::dyadic(const Nat& warmup, const Nat& limit) {
  CheckpointGrid g;
  g.kind = Kind::Dyadic;
  g.warmup = warmup;
  g.limit = limit;
  return g;
}

CheckpointGrid CheckpointGrid::explicit_list(std::vector<Nat> points, const Nat& warmup) {
  CheckpointGrid g;
  g.kind = Kind::Explicit;
  g.listed = std::move(points);
  g.warmup = warmup;
  g.limit = g.listed.empty() ? Nat(0) : g.listed.back();
  return g;
}

std::vector<Nat> CheckpointGrid::points() const {
  std::vector<Nat> pts;
  switch (kind) {
    case Kind::Linear: {
      if (step < 1) throw domain_error("grid: linear step must be >= 1");
      for (Nat n = step; n <= limit; n += step) pts.push_back(n);
      break;
    }
    case Kind::Geometric: {
      if (ratio <= 1) throw domain_error("grid: geometric ratio must be > 1");
      Nat n = 1;
      while (n <= limit) {
        pts.push_back(n);
        Nat next = (n * numerator(ratio)) / denominator(ratio);
        if (next <= n) next = n + 1;
        n = next;
      }
      break;
    }
    case Kind::Factorial: {
      Nat f = 1;
      unsigned i = 1;
      while (f <= limit) {
        if (pts.empty() || pts.back() != f) pts.push_back(f);
        ++i;
        f *= i;
      }
      break;
    }
    case Kind::Dyadic: {
      for (Nat n = 1; n <= limit; n <<= 1) pts.push_back(n);
      break;
    }
    case Kind::Explicit: {
      pts = listed;
      break;
    }
  }
  if (pts.empty()) throw domain_error("grid: no checkpoints at or below limit");
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (pts[i] < 1 || pts[i] > limit)
      throw domain_error("grid: checkpoint out of [1, limit]");
    if (i > 0 && pts[i] <= pts[i - 1])
      throw domain_error("grid: checkpoints must be strictly increasing");
  }
  if (pts.back() < warmup)
    throw domain_error("grid: no checkpoint at or beyond warmup");
  return pts;
}

std::string CheckpointGrid::describe() const {
  switch (kind) {
    case Kind::Linear: return "linear:" + nat_string(step);
    case Kind::Geometric: return "geometric:" + rat_string(ratio);
    case Kind::Factorial: return "factorial";
    case Kind::Dyadic: return "dyadic";
    case Kind::Explicit: return "explicit";
  }
  return "?";
}

Rat rho_at(const BitSequence& s, const Nat& n, const Budget& budget) {
  if (n < 1) throw domain_error("rho_at: prefix length must be >= 1");
  return Rat(prefix_count(s, n, budget), n);
}

bool complement_identity_check(const BitSequence& s, const Nat& n, const Budget& budget) {
  if (n < 1) throw domain_error("complement_identity_check: n must be >= 1");
  Nat a = prefix_count(s, n, budget);
  Nat b = prefix_count(complement_seq(s), n, budget);
  return a + b == n;
}

Rat block_density(const BitSequence& s, unsigned k, const Budget& budget) {
  Nat lo = nat_pow2(k) - 1;
  Nat hi = nat_pow2(k + 1) - 1;
  Nat count = prefix_count(s, hi, budget) - prefix_count(s, lo, budget);
  return Rat(count, nat_pow2(k));
}

namespace {

// Exact counts at each checkpoint: closed form when the whole grid admits
// one, otherwise a single incremental scan up to the horizon.
std::vector<Nat> counts_at(const BitSequence& s, const std::vector<Nat>& pts,
                           const Budget& budget) {
  std::vector<Nat> counts;
  counts.reserve(pts.size());
  bool closed = true;
  for (const Nat& n : pts) {
    auto c = s->closed_count(n);
    if (!c) {
      closed = false;
      break;
    }
    counts.push_back(*c);
  }
  if (closed) return counts;

  counts.clear();
  std::uint64_t horizon = require_scan_extent(pts.back(), budget, "density_profile");
  std::vector<std::uint64_t> stops;
  stops.reserve(pts.size());
  for (const Nat& n : pts) stops.push_back(nat_to_u64(n));

  std::uint64_t count = 0;
  std::size_t next = 0;
  for (std::uint64_t i = 0; i < horizon; ++i) {
    while (next < stops.size() && stops[next] == i) {
      counts.push_back(Nat(count));
      ++next;
    }
    count += s->bit_at(i) ? 1 : 0;
  }
  while (next < stops.size()) {
    counts.push_back(Nat(count));
    ++next;
  }
  return counts;
}

}  // namespace

DensityProfile density_profile(const BitSequence& s, const CheckpointGrid& grid,
                               const Budget& budget) {
  std::vector<Nat> pts = grid.points();
  std::vector<Nat> counts = counts_at(s, pts, budget);

  DensityProfile p;
  p.warmup = grid.warmup;
  p.rows.reserve(pts.size());
  bool have_tail = false;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    Rat rho(counts[i], pts[i]);
    p.rows.push_back({pts[i], counts[i], rho});
    if (pts[i] >= grid.warmup) {
      if (!have_tail) {
        p.tail_max = p.tail_min = rho;
        have_tail = true;
      } else {
        p.tail_max = std::max(p.tail_max, rho);
        p.tail_min = std::min(p.tail_min, rho);
      }
    }
  }
  return p;
}

std::pair<Rat, DensityProfile> delta_estimate(const BitSequence& a, const BitSequence& b,
                                              const CheckpointGrid& grid,
                                              const Budget& budget) {
  DensityProfile p = density_profile(symdiff_seq(a, b), grid, budget);
  return {p.tail_max, std::move(p)};
}

Factor2Report factor2_check(const BitSequence& s, unsigned K, const Budget& budget) {
  // Covers every m with m-1 in J_0 .. J_K, i.e. m in [1, 2^(K+1)).
  std::uint64_t horizon = require_scan_extent(nat_pow2(K + 1), budget, "factor2_check");

  Factor2Report report;
  report.all_pass = true;
  report.entries.resize(K + 1);

  // Pass 1: block counts and prefix counts at block boundaries.
  std::vector<std::uint64_t> count_at_pow(K + 2, 0); // |S ∩ [0, 2^j)|
  {
    std::uint64_t count = 0;
    for (std::uint64_t i = 0; i < horizon; ++i) {
      count += s->bit_at(i) ? 1 : 0;
      if (((i + 1) & i) == 0) // i+1 is a power of two
        count_at_pow[63 - static_cast<unsigned>(__builtin_clzll(i + 1))] = count;
    }
  }
  std::vector<Rat> max_d(K + 1);
  for (unsigned k = 0; k <= K; ++k) {
    // |S ∩ J_k| = |S ∩ [0, 2^(k+1)-1)| - |S ∩ [0, 2^k-1)|, and
    // |S ∩ [0, 2^j - 1)| = |S ∩ [0, 2^j)| - [2^j - 1 in S]
    auto prefix_to = [&](unsigned j) -> std::uint64_t {
      std::uint64_t end = (std::uint64_t(1) << j) - 1;
      return count_at_pow[j] - (s->bit_at(end) ? 1 : 0);
    };
    Nat block_count = Nat(prefix_to(k + 1)) - Nat(prefix_to(k));
    auto& e = report.entries[k];
    e.k = k;
    e.d_k = Rat(block_count, nat_pow2(k));
    e.rho_block_end = Rat(Nat(count_at_pow[k + 1]), nat_pow2(k + 1));
    e.block_le_two_rho = e.d_k <= 2 * e.rho_block_end;
    max_d[k] = k == 0 ? e.d_k : std::max(max_d[k - 1], e.d_k);
  }

  // Pass 2: the prefix bound at every m with m-1 in J_n. When every block so
  // far is empty the multiplicative form degenerates; monotone prefix counts
  // stand in (the completed blocks force the prefix count to stay flat).
  {
    std::uint64_t count = 0;
    unsigned n = 0;
    std::vector<bool> ok(K + 1, true);
    Nat two_num, two_den;
    bool degenerate = max_d[0] == 0;
    auto load_block = [&](unsigned blk) {
      degenerate = max_d[blk] == 0;
      if (!degenerate) {
        two_num = 2 * numerator(max_d[blk]);
        two_den = denominator(max_d[blk]);
      }
    };
    load_block(0);
    for (std::uint64_t m = 1; m < horizon; ++m) {
      count += s->bit_at(m - 1) ? 1 : 0;
      unsigned blk = 63 - static_cast<unsigned>(__builtin_clzll(m));
      if (blk != n) {
        n = blk;
        load_block(n);
      }
      if (degenerate) {
        std::uint64_t block_end_count =
            count_at_pow[n + 1] - (s->bit_at((std::uint64_t(1) << (n + 1)) - 1) ? 1 : 0);
        if (count > block_end_count) ok[n] = false;
      } else {
        // rho_m < 2 * max d  <=>  count * den < m * 2num
        if (Nat(count) * two_den >= Nat(m) * two_num) ok[n] = false;
      }
    }
    for (unsigned k = 0; k <= K; ++k) report.entries[k].prefix_bound_ok = ok[k];
  }

  for (const auto& e : report.entries)
    report.all_pass = report.all_pass && e.block_le_two_rho && e.prefix_bound_ok;
  return report;
}

Rat gamma_lower_estimate(const BitSequence& target,
                         const std::vector<BitSequence>& describers,
                         const CheckpointGrid& grid, const Budget& budget) {
  if (describers.empty())
    throw domain_error("gamma_lower_estimate: empty describer list");
  Rat best(0);
  bool first = true;
  for (const auto& d : describers) {
    DensityProfile p = density_profile(symagree_seq(target, d), grid, budget);
    if (first || p.tail_min > best) best = p.tail_min;
    first = false;
  }
  return best;
}

}  // namespace coarse
