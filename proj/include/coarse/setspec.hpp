#pragma once

#include "coarse/density.hpp"
#include "coarse/seq.hpp"

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace coarse {

// Mini-language for naming sequences on the command line and in tests.
//
//   spec  := atom | combinator "(" spec {"," spec} ")"
//   atom  := "empty" | "full" | "evens"
//          | "periodic:" bits | "finite:{" ints "}" | "rand:" seed
//          | "cr:" rational | "xr:" rational | "treepath:" bits
//   combinators: not/1 symdiff/2 agree/2 join/2 cap/2 cup/2
//                icode/1 jcode/1 rcode/1 rrel/2 rjoin/1.. diag/1..
//                ar(spec, rational) geo(spec, rational) mid/3
//
// Rationals are p or p/q in [0,1]; bits are over {0,1}; ints are decimal,
// comma separated, canonically sorted.

struct SetSpec;
using SpecPtr = std::shared_ptr<const SetSpec>;

struct SetSpec {
  enum class Kind {
    Empty, Full, Evens, Periodic, Finite, Rand, Cr, Xr, TreePath,
    Not, SymDiff, Agree, Join, Cap, Cup,
    ICode, JCode, RCode, RRel, RJoin, Ar, Geo, Mid, Diag,
  };
  Kind kind;
  std::string bits;             // Periodic, TreePath
  std::uint64_t seed = 0;       // Rand
  Rat ratio;                    // Cr, Xr, Ar, Geo
  std::vector<Nat> elements;    // Finite, sorted and deduplicated
  std::vector<SpecPtr> args;
};

class spec_parse_error : public std::runtime_error {
 public:
  spec_parse_error(std::size_t offset, const std::string& expected,
                   const std::string& found);
  std::size_t offset;
};

SpecPtr parse_spec(const std::string& text);
std::string print_spec(const SpecPtr& spec); // canonical, reparses to equal
bool spec_equal(const SpecPtr& a, const SpecPtr& b);

BitSequence build_spec(const SpecPtr& spec,
                       const Budget& budget = default_budget());
BitSequence build_spec(const std::string& text,
                       const Budget& budget = default_budget());

// Grid families whose checkpoints line up with the block structure of the
// spec: factorial blocks demand factorial checkpoints, dyadic blocks dyadic
// ones, everything else reads well on a geometric grid.
enum class GridHint { Geometric, Dyadic, Factorial };
GridHint grid_hint(const SpecPtr& spec);
GridHint combine_hints(GridHint a, GridHint b);
CheckpointGrid default_grid_for(GridHint hint, const Nat& warmup,
                                const Nat& limit);

}  // namespace coarse
