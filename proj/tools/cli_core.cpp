#include "cli_core.hpp"

#include "CLI11.hpp"

#include "coarse/cauchy.hpp"
#include "coarse/codings.hpp"
#include "coarse/density.hpp"
#include "coarse/geodesics.hpp"
#include "coarse/setspec.hpp"
#include "coarse/tree.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace coarse_cli {

namespace {

using namespace coarse;

std::string fl(const Rat& r) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", rat_double(r));
  return buf;
}

const char* bl(bool b) { return b ? "true" : "false"; }

// options shared by the scanning subcommands
struct Common {
  std::string grid;   // empty = pick from the set structure
  std::string ratio = "5/4";
  std::string step = "1024";
  std::string warmup = "2^10";
  std::string limit = "2^20";
  std::string out = "-";
};

void add_common(CLI::App* cmd, Common& c, const char* default_limit = "2^20") {
  c.limit = default_limit;
  cmd->add_option("--grid", c.grid,
                  "checkpoint family: linear|geometric|factorial|dyadic "
                  "(default: chosen from the set structure)");
  cmd->add_option("--ratio", c.ratio, "geometric grid ratio p/q (default 5/4)");
  cmd->add_option("--step", c.step, "linear grid step");
  cmd->add_option("--warmup", c.warmup,
                  "prefix length where tail statistics start; accepts plain "
                  "counts, 2^k and k! (default 2^10)");
  cmd->add_option("--limit", c.limit,
                  std::string("largest checkpoint; same formats (default ") +
                      default_limit + ")");
  cmd->add_option("--out", c.out, "output file, - for stdout (default -)");
}

CheckpointGrid make_grid(const Common& c, GridHint hint) {
  Nat warmup = parse_extent(c.warmup);
  Nat limit = parse_extent(c.limit);
  if (c.grid.empty()) return default_grid_for(hint, warmup, limit);
  if (c.grid == "linear")
    return CheckpointGrid::linear(parse_extent(c.step), warmup, limit);
  if (c.grid == "geometric")
    return CheckpointGrid::geometric(parse_rational(c.ratio), warmup, limit);
  if (c.grid == "factorial") return CheckpointGrid::factorial(warmup, limit);
  if (c.grid == "dyadic") return CheckpointGrid::dyadic(warmup, limit);
  throw domain_error("unknown grid kind '" + c.grid + "'");
}

class Sink {
 public:
  Sink(const std::string& out, std::ostream& fallback) {
    if (out == "-") {
      os_ = &fallback;
      return;
    }
    file_.open(out, std::ios::out | std::ios::trunc);
    if (!file_) throw domain_error("cannot open output file '" + out + "'");
    os_ = &file_;
  }
  std::ostream& out() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_ = nullptr;
};

std::vector<std::string> split_specs(const std::string& joined) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start <= joined.size()) {
    std::size_t semi = joined.find(';', start);
    if (semi == std::string::npos) {
      parts.push_back(joined.substr(start));
      break;
    }
    parts.push_back(joined.substr(start, semi - start));
    start = semi + 1;
  }
  return parts;
}

// largest k with 2^(k+1) - 1 <= limit (dyadic block K fully below the limit)
unsigned blocks_within(const Nat& limit) {
  unsigned k = 0;
  while (nat_pow2(k + 2) - 1 <= limit) ++k;
  return k;
}

void cmd_density(const Common& c, const std::string& set, std::ostream& os) {
  SpecPtr spec = parse_spec(set);
  CheckpointGrid grid = make_grid(c, grid_hint(spec));
  DensityProfile prof = density_profile(build_spec(spec), grid);
  os << "n,count,rho_exact,rho_float\n";
  for (const auto& row : prof.rows)
    os << nat_string(row.n) << "," << nat_string(row.count) << ","
       << rat_string(row.rho) << "," << fl(row.rho) << "\n";
  os << "# set," << print_spec(spec) << "\n";
  os << "# grid," << grid.describe() << "\n";
  os << "# warmup," << nat_string(prof.warmup) << "\n";
  os << "# horizon," << nat_string(prof.horizon()) << "\n";
  os << "# tail_max," << rat_string(prof.tail_max) << "\n";
  os << "# tail_min," << rat_string(prof.tail_min) << "\n";
}

void cmd_delta(const Common& c, const std::string& a_text,
               const std::string& b_text, std::ostream& os) {
  SpecPtr a = parse_spec(a_text), b = parse_spec(b_text);
  CheckpointGrid grid = make_grid(c, combine_hints(grid_hint(a), grid_hint(b)));
  auto [dist, prof] = delta_estimate(build_spec(a), build_spec(b), grid);
  os << "n,count,rho_exact,rho_float,tail_max_exact\n";
  bool in_tail = false;
  Rat running;
  for (const auto& row : prof.rows) {
    os << nat_string(row.n) << "," << nat_string(row.count) << ","
       << rat_string(row.rho) << "," << fl(row.rho) << ",";
    if (row.n >= prof.warmup) {
      if (!in_tail || row.rho > running) running = row.rho;
      in_tail = true;
      os << rat_string(running);
    }
    os << "\n";
  }
  os << "# a," << print_spec(a) << "\n";
  os << "# b," << print_spec(b) << "\n";
  os << "# grid," << grid.describe() << "\n";
  os << "# warmup," << nat_string(prof.warmup) << "\n";
  os << "# horizon," << nat_string(prof.horizon()) << "\n";
  os << "# delta_tail_max," << rat_string(dist) << "\n";
}

void cmd_blocks(const Common& c, const std::string& set, std::ostream& os) {
  SpecPtr spec = parse_spec(set);
  BitSequence s = build_spec(spec);
  unsigned K = blocks_within(parse_extent(c.limit));
  os << "k,count,d_exact,d_float\n";
  for (unsigned k = 0; k <= K; ++k) {
    Rat d = block_density(s, k);
    Rat scaled = d * Rat(nat_pow2(k));
    os << k << "," << nat_string(numerator(scaled)) << "," << rat_string(d)
       << "," << fl(d) << "\n";
  }
  os << "# set," << print_spec(spec) << "\n";
  os << "# horizon," << nat_string(nat_pow2(K + 1) - 1) << "\n";
}

void cmd_decode(const Common& c, const std::string& set,
                const std::string& family, unsigned upto,
                std::uint64_t samples, std::ostream& os) {
  SpecPtr spec = parse_spec(set);
  BitSequence s = build_spec(spec);
  os << "k,bit\n";
  Nat horizon;
  if (family == "J") {
    for (unsigned k = 0; k <= upto; ++k)
      os << k << "," << (decode_J(s, k, samples) ? 1 : 0) << "\n";
    horizon = nat_pow2(upto + 1) - 1;
  } else if (family == "R") {
    CheckpointGrid grid = make_grid(c, GridHint::Dyadic);
    for (unsigned k = 0; k <= upto; ++k)
      os << k << "," << (decode_R(s, k, grid) ? 1 : 0) << "\n";
    horizon = grid.points().back();
  } else {
    throw domain_error("decode: family must be J or R");
  }
  os << "# set," << print_spec(spec) << "\n";
  os << "# family," << family << "\n";
  os << "# horizon," << nat_string(horizon) << "\n";
}

void cmd_limit(const Common& c, const std::string& seqs_text,
               const std::string& rapprox, unsigned count,
               const std::string& slack_text, std::ostream& os) {
  std::vector<BitSequence> members;
  if (!seqs_text.empty()) {
    for (const std::string& one : split_specs(seqs_text))
      members.push_back(build_spec(one));
  } else {
    BitSequence a = build_spec(rapprox);
    for (unsigned k = 0; k < count; ++k)
      members.push_back(approximate_R(a, Nat(k)));
  }
  Rat slack = parse_rational(slack_text);
  CheckpointGrid grid = make_grid(c, GridHint::Dyadic);
  CauchyReport cauchy = strong_cauchy_check(members, grid);
  SplicePtr limit = splice_limit(members, slack);
  ConvergenceReport conv = convergence_report(members, limit, grid, slack);
  os << "m,tail_max_exact,bound_exact,pass\n";
  for (const auto& e : conv.entries)
    os << e.m << "," << rat_string(e.tail_max) << "," << rat_string(e.bound)
       << "," << bl(e.pass) << "\n";
  for (std::size_t m = 0; m < members.size(); ++m)
    os << "# member_" << m << "," << members[m]->descriptor() << "\n";
  os << "# slack," << rat_string(slack) << "\n";
  os << "# grid," << grid.describe() << "\n";
  os << "# cauchy_all_pass," << bl(cauchy.all_pass) << "\n";
  unsigned K = blocks_within(grid.points().back());
  os << "# splice,";
  for (unsigned k = 0; k <= K; ++k)
    os << (k ? ";" : "") << k << ":" << limit->chosen_source(k);
  os << "\n";
  os << "# all_pass," << bl(conv.all_pass) << "\n";
  os << "# horizon," << nat_string(conv.horizon) << "\n";
}

void cmd_gamma(const Common& c, const std::string& set,
               const std::string& describers_text, std::ostream& os) {
  SpecPtr target_spec = parse_spec(set);
  BitSequence target = build_spec(target_spec);
  std::vector<SpecPtr> dspecs;
  GridHint hint = grid_hint(target_spec);
  for (const std::string& one : split_specs(describers_text)) {
    dspecs.push_back(parse_spec(one));
    hint = combine_hints(hint, grid_hint(dspecs.back()));
  }
  CheckpointGrid grid = make_grid(c, hint);
  std::vector<BitSequence> describers;
  for (const auto& d : dspecs) describers.push_back(build_spec(d));
  os << "i,tail_min_exact,tail_min_float\n";
  Rat best(0);
  for (std::size_t i = 0; i < describers.size(); ++i) {
    DensityProfile prof =
        density_profile(symagree_seq(target, describers[i]), grid);
    if (i == 0 || prof.tail_min > best) best = prof.tail_min;
    os << i << "," << rat_string(prof.tail_min) << "," << fl(prof.tail_min)
       << "\n";
  }
  os << "# target," << print_spec(target_spec) << "\n";
  for (std::size_t i = 0; i < dspecs.size(); ++i)
    os << "# describer_" << i << "," << print_spec(dspecs[i]) << "\n";
  os << "# grid," << grid.describe() << "\n";
  os << "# gamma_lower," << rat_string(best) << "\n";
  os << "# horizon," << nat_string(grid.points().back()) << "\n";
}

void cmd_tree(const std::string& path, bool want_bit, bool want_pop,
              bool want_code, const std::string& agree_path,
              const std::string& index_text, std::ostream& os) {
  int modes = int(want_bit) + int(want_pop) + int(want_code) +
              int(!agree_path.empty());
  if (modes != 1)
    throw domain_error(
        "tree: pick exactly one of --bit, --popcount, --code, --agree");
  TreeCode code = tree_code(path);
  if (want_code) {
    os << "level,mu_index\n";
    for (std::size_t n = 0; n < code.mu_index.size(); ++n)
      os << n << "," << code.mu_index[n] << "\n";
    os << "# path," << path << "\n";
    os << "# horizon,"
       << nat_string(LengthSchedule::level_start(
              static_cast<unsigned>(code.sigma.size())))
       << "\n";
    return;
  }
  if (index_text.empty())
    throw domain_error("tree: this mode needs --index");
  Nat m = parse_extent(index_text);
  if (want_bit) {
    os << "bit\n" << (tree_bit(code, m) ? 1 : 0) << "\n";
  } else if (want_pop) {
    os << "popcount\n" << nat_string(tree_prefix_popcount(code, m)) << "\n";
  } else {
    TreeCode other = tree_code(agree_path);
    os << "agree_count\n"
       << nat_string(pairwise_agreement_count(code, other, m)) << "\n";
    os << "# other," << agree_path << "\n";
  }
  os << "# path," << path << "\n";
  os << "# horizon," << nat_string(m) << "\n";
}

void cmd_check(const Common& c, const std::string& set, std::ostream& os) {
  SpecPtr spec = parse_spec(set);
  BitSequence s = build_spec(spec);
  Nat limit = parse_extent(c.limit);
  unsigned K = 0;
  while (nat_pow2(K + 2) <= limit) ++K;
  Factor2Report rep = factor2_check(s, K);
  os << "k,d_exact,rho_end_exact,block_le_2rho,prefix_bound_ok\n";
  for (const auto& e : rep.entries)
    os << e.k << "," << rat_string(e.d_k) << "," << rat_string(e.rho_block_end)
       << "," << bl(e.block_le_two_rho) << "," << bl(e.prefix_bound_ok)
       << "\n";
  os << "# set," << print_spec(spec) << "\n";
  os << "# K," << K << "\n";
  os << "# all_pass," << bl(rep.all_pass) << "\n";
  os << "# horizon," << nat_string(nat_pow2(K + 1)) << "\n";
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{
      "coarse: exact density, distance and coding calculations on lazy "
      "binary sequences"};
  app.require_subcommand(1);

  Common c_density, c_delta, c_blocks, c_decode, c_limit, c_gamma, c_check;
  std::string set_density, set_blocks, set_decode, set_check;
  std::string delta_a, delta_b;
  std::string decode_family = "J";
  unsigned decode_upto = 10;
  std::uint64_t decode_samples = 0;
  std::string limit_seqs, limit_rapprox, limit_slack = "2/1";
  unsigned limit_count = 6;
  std::string gamma_set, gamma_describers;
  std::string tree_path_text, tree_agree, tree_index, tree_out = "-";
  bool tree_bit_flag = false, tree_pop_flag = false, tree_code_flag = false;

  CLI::App* density = app.add_subcommand(
      "density", "density profile of a set over a checkpoint grid");
  density->add_option("--set", set_density, "set spec")->required();
  add_common(density, c_density);

  CLI::App* delta = app.add_subcommand(
      "delta", "distance estimate between two sets: densities of the "
               "symmetric difference with a running tail maximum");
  delta->add_option("--a", delta_a, "first set spec")->required();
  delta->add_option("--b", delta_b, "second set spec")->required();
  add_common(delta, c_delta);

  CLI::App* blocks = app.add_subcommand(
      "blocks", "dyadic block densities d_k of a set");
  blocks->add_option("--set", set_blocks, "set spec")->required();
  add_common(blocks, c_blocks, "2^15");

  CLI::App* decode = app.add_subcommand(
      "decode", "recover coded bits: majority vote per dyadic block (J) or "
                "fiber density vote (R)");
  decode->add_option("--set", set_decode, "coded set spec")->required();
  decode->add_option("--family", decode_family, "J or R (default J)");
  decode->add_option("--upto", decode_upto, "decode blocks 0..K (default 10)");
  decode->add_option("--samples", decode_samples,
                     "J only: stride subsample size per block; 0 = whole "
                     "block (default 0)");
  add_common(decode, c_decode, "2^18");

  CLI::App* limit = app.add_subcommand(
      "limit", "splice a blockwise limit of a strongly Cauchy list and "
               "report per-member convergence");
  limit->add_option("--seqs", limit_seqs, "semicolon-separated set specs");
  limit->add_option("--rapprox", limit_rapprox,
                    "build members as truncated R-codings of this set");
  limit->add_option("--count", limit_count,
                    "number of members for --rapprox (default 6)");
  limit->add_option("--slack", limit_slack,
                    "trust slack for the splice rule (default 2/1)");
  add_common(limit, c_limit, "2^18");

  CLI::App* gamma = app.add_subcommand(
      "gamma", "lower estimate of description quality: best tail minimum of "
               "agreement density over the describers");
  gamma->add_option("--set", gamma_set, "target set spec")->required();
  gamma->add_option("--describers", gamma_describers,
                    "semicolon-separated set specs")->required();
  add_common(gamma, c_gamma);

  CLI::App* tree = app.add_subcommand(
      "tree", "balanced antichain members: bits, popcounts, level words and "
              "pairwise agreement");
  tree->add_option("--path", tree_path_text, "direction bits, up to depth 8")
      ->required();
  tree->add_flag("--bit", tree_bit_flag, "evaluate one bit (needs --index)");
  tree->add_flag("--popcount", tree_pop_flag,
                 "ones below --index of the member");
  tree->add_flag("--code", tree_code_flag, "per-level word indices");
  tree->add_option("--agree", tree_agree,
                   "second path: agreement count below --index");
  tree->add_option("--index", tree_index, "position (count, 2^k or k!)");
  tree->add_option("--out", tree_out, "output file, - for stdout");

  CLI::App* check = app.add_subcommand(
      "check", "exact block-vs-prefix density comparison (factor-two bounds)");
  check->add_option("--set", set_check, "set spec")->required();
  add_common(check, c_check, "2^15");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (app.got_subcommand(density)) {
      Sink sink(c_density.out, out);
      cmd_density(c_density, set_density, sink.out());
    } else if (app.got_subcommand(delta)) {
      Sink sink(c_delta.out, out);
      cmd_delta(c_delta, delta_a, delta_b, sink.out());
    } else if (app.got_subcommand(blocks)) {
      Sink sink(c_blocks.out, out);
      cmd_blocks(c_blocks, set_blocks, sink.out());
    } else if (app.got_subcommand(decode)) {
      Sink sink(c_decode.out, out);
      cmd_decode(c_decode, set_decode, decode_family, decode_upto,
                 decode_samples, sink.out());
    } else if (app.got_subcommand(limit)) {
      if (limit_seqs.empty() == limit_rapprox.empty())
        throw domain_error("limit: pass exactly one of --seqs, --rapprox");
      Sink sink(c_limit.out, out);
      cmd_limit(c_limit, limit_seqs, limit_rapprox, limit_count, limit_slack,
                sink.out());
    } else if (app.got_subcommand(gamma)) {
      Sink sink(c_gamma.out, out);
      cmd_gamma(c_gamma, gamma_set, gamma_describers, sink.out());
    } else if (app.got_subcommand(tree)) {
      Sink sink(tree_out, out);
      cmd_tree(tree_path_text, tree_bit_flag, tree_pop_flag, tree_code_flag,
               tree_agree, tree_index, sink.out());
    } else if (app.got_subcommand(check)) {
      Sink sink(c_check.out, out);
      cmd_check(c_check, set_check, sink.out());
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace coarse_cli
