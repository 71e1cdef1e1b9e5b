#include "coarse/setspec.hpp"

#include "coarse/codings.hpp"
#include "coarse/geodesics.hpp"
#include "coarse/tree.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <utility>

namespace coarse {

namespace {

using Kind = SetSpec::Kind;

const std::map<std::string, Kind>& name_table() {
  static const std::map<std::string, Kind> table = {
      {"empty", Kind::Empty},     {"full", Kind::Full},
      {"evens", Kind::Evens},     {"periodic", Kind::Periodic},
      {"finite", Kind::Finite},   {"rand", Kind::Rand},
      {"cr", Kind::Cr},           {"xr", Kind::Xr},
      {"treepath", Kind::TreePath},
      {"not", Kind::Not},         {"symdiff", Kind::SymDiff},
      {"agree", Kind::Agree},     {"join", Kind::Join},
      {"cap", Kind::Cap},         {"cup", Kind::Cup},
      {"icode", Kind::ICode},     {"jcode", Kind::JCode},
      {"rcode", Kind::RCode},     {"rrel", Kind::RRel},
      {"rjoin", Kind::RJoin},     {"ar", Kind::Ar},
      {"geo", Kind::Geo},         {"mid", Kind::Mid},
      {"diag", Kind::Diag},
  };
  return table;
}

const char* name_of(Kind k) {
  for (const auto& [name, kind] : name_table())
    if (kind == k) return name.c_str();
  return "?";
}

std::string describe_char(const std::string& text, std::size_t pos) {
  if (pos >= text.size()) return "end of input";
  return std::string("'") + text[pos] + "'";
}

struct Parser {
  const std::string& text;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& expected) const {
    throw spec_parse_error(pos, expected, describe_char(text, pos));
  }

  void skip_ws() {
    while (pos < text.size() &&
           std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }

  bool eof() {
    skip_ws();
    return pos >= text.size();
  }

  void expect(char c) {
    skip_ws();
    if (pos >= text.size() || text[pos] != c)
      fail(std::string("'") + c + "'");
    ++pos;
  }

  std::string ident() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && std::islower(static_cast<unsigned char>(text[pos])))
      ++pos;
    if (pos == start) fail("a spec name");
    return text.substr(start, pos - start);
  }

  std::string bit_string() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && (text[pos] == '0' || text[pos] == '1')) ++pos;
    if (pos == start) fail("bits over {0,1}");
    return text.substr(start, pos - start);
  }

  std::string digits() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
      ++pos;
    if (pos == start) fail("a number");
    return text.substr(start, pos - start);
  }

  std::uint64_t seed_value() {
    std::size_t at = pos;
    std::string d = digits();
    try {
      return std::stoull(d);
    } catch (const std::exception&) {
      throw spec_parse_error(at, "a 64-bit seed", "'" + d + "'");
    }
  }

  Rat unit_rational() {
    std::size_t at = pos;
    Nat p(digits());
    Nat q = 1;
    skip_ws();
    if (pos < text.size() && text[pos] == '/') {
      ++pos;
      q = Nat(digits());
      if (q == 0) throw spec_parse_error(at, "a nonzero denominator", "0");
    }
    Rat r(p, q);
    if (r > 1)
      throw spec_parse_error(at, "a rational in [0,1]", rat_string(r));
    return r;
  }

  std::vector<Nat> nat_list_braced() {
    expect('{');
    std::vector<Nat> out;
    skip_ws();
    if (pos < text.size() && text[pos] == '}') {
      ++pos;
      return out;
    }
    out.emplace_back(digits());
    skip_ws();
    while (pos < text.size() && text[pos] == ',') {
      ++pos;
      out.emplace_back(digits());
      skip_ws();
    }
    expect('}');
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  SpecPtr spec() {
    std::size_t at = pos;
    std::string name = ident();
    auto it = name_table().find(name);
    if (it == name_table().end())
      throw spec_parse_error(at, "a spec name", "'" + name + "'");
    auto node = std::make_shared<SetSpec>();
    node->kind = it->second;
    switch (node->kind) {
      case Kind::Empty:
      case Kind::Full:
      case Kind::Evens:
        break;
      case Kind::Periodic:
        expect(':');
        node->bits = bit_string();
        break;
      case Kind::Finite:
        expect(':');
        node->elements = nat_list_braced();
        break;
      case Kind::Rand:
        expect(':');
        node->seed = seed_value();
        break;
      case Kind::Cr:
      case Kind::Xr:
        expect(':');
        node->ratio = unit_rational();
        break;
      case Kind::TreePath: {
        expect(':');
        std::size_t bat = pos;
        node->bits = bit_string();
        if (node->bits.size() > LengthSchedule::depth_cap)
          throw spec_parse_error(bat, "at most 8 direction bits", node->bits);
        break;
      }
      case Kind::Not:
      case Kind::ICode:
      case Kind::JCode:
      case Kind::RCode:
        expect('(');
        node->args.push_back(spec());
        expect(')');
        break;
      case Kind::SymDiff:
      case Kind::Agree:
      case Kind::Join:
      case Kind::Cap:
      case Kind::Cup:
      case Kind::RRel:
        expect('(');
        node->args.push_back(spec());
        expect(',');
        node->args.push_back(spec());
        expect(')');
        break;
      case Kind::Mid:
        expect('(');
        node->args.push_back(spec());
        expect(',');
        node->args.push_back(spec());
        expect(',');
        node->args.push_back(spec());
        expect(')');
        break;
      case Kind::RJoin:
      case Kind::Diag: {
        expect('(');
        node->args.push_back(spec());
        skip_ws();
        while (pos < text.size() && text[pos] == ',') {
          ++pos;
          node->args.push_back(spec());
          skip_ws();
        }
        expect(')');
        break;
      }
      case Kind::Ar:
      case Kind::Geo:
        expect('(');
        node->args.push_back(spec());
        expect(',');
        node->ratio = unit_rational();
        expect(')');
        break;
    }
    return node;
  }
};

}  // namespace

spec_parse_error::spec_parse_error(std::size_t offset_,
                                   const std::string& expected,
                                   const std::string& found)
    : std::runtime_error("spec parse error at byte " + std::to_string(offset_) +
                         ": expected " + expected + ", found " + found),
      offset(offset_) {}

SpecPtr parse_spec(const std::string& text) {
  Parser p{text};
  SpecPtr s = p.spec();
  if (!p.eof()) p.fail("end of input");
  return s;
}

std::string print_spec(const SpecPtr& spec) {
  if (!spec) throw domain_error("print_spec: null spec");
  std::ostringstream os;
  const char* name = name_of(spec->kind);
  switch (spec->kind) {
    case Kind::Empty:
    case Kind::Full:
    case Kind::Evens:
      os << name;
      break;
    case Kind::Periodic:
    case Kind::TreePath:
      os << name << ":" << spec->bits;
      break;
    case Kind::Finite: {
      os << "finite:{";
      for (std::size_t i = 0; i < spec->elements.size(); ++i) {
        if (i) os << ",";
        os << nat_string(spec->elements[i]);
      }
      os << "}";
      break;
    }
    case Kind::Rand:
      os << "rand:" << spec->seed;
      break;
    case Kind::Cr:
    case Kind::Xr:
      os << name << ":" << rat_string(spec->ratio);
      break;
    case Kind::Ar:
    case Kind::Geo:
      os << name << "(" << print_spec(spec->args.at(0)) << ","
         << rat_string(spec->ratio) << ")";
      break;
    default: {
      os << name << "(";
      for (std::size_t i = 0; i < spec->args.size(); ++i) {
        if (i) os << ",";
        os << print_spec(spec->args[i]);
      }
      os << ")";
      break;
    }
  }
  return os.str();
}

bool spec_equal(const SpecPtr& a, const SpecPtr& b) {
  if (!a || !b) return a == b;
  if (a->kind != b->kind || a->bits != b->bits || a->seed != b->seed ||
      a->ratio != b->ratio || a->elements != b->elements ||
      a->args.size() != b->args.size())
    return false;
  for (std::size_t i = 0; i < a->args.size(); ++i)
    if (!spec_equal(a->args[i], b->args[i])) return false;
  return true;
}

BitSequence build_spec(const SpecPtr& spec, const Budget& budget) {
  if (!spec) throw domain_error("build_spec: null spec");
  auto arg = [&](std::size_t i) { return build_spec(spec->args.at(i), budget); };
  auto all_args = [&] {
    std::vector<BitSequence> v;
    v.reserve(spec->args.size());
    for (const auto& a : spec->args) v.push_back(build_spec(a, budget));
    return v;
  };
  switch (spec->kind) {
    case Kind::Empty: return empty_seq();
    case Kind::Full: return full_seq();
    case Kind::Evens: return evens_seq();
    case Kind::Periodic: return periodic_seq(spec->bits);
    case Kind::Finite: return finite_seq(spec->elements);
    case Kind::Rand: return bernoulli_stream(spec->seed);
    case Kind::Cr: return c_r(spec->ratio);
    case Kind::Xr: return x_r(spec->ratio);
    case Kind::TreePath: return tree_path(spec->bits);
    case Kind::Not: return complement_seq(arg(0));
    case Kind::SymDiff: return symdiff_seq(arg(0), arg(1));
    case Kind::Agree: return symagree_seq(arg(0), arg(1));
    case Kind::Join: return join_seq(arg(0), arg(1));
    case Kind::Cap: return intersect_seq(arg(0), arg(1));
    case Kind::Cup: return union_seq(arg(0), arg(1));
    case Kind::ICode: return code(Family::I, arg(0));
    case Kind::JCode: return code(Family::J, arg(0));
    case Kind::RCode: return code(Family::R, arg(0));
    case Kind::RRel: return r_relative(arg(0), arg(1));
    case Kind::RJoin: return r_join(all_args());
    case Kind::Ar: return a_r(arg(0), spec->ratio);
    case Kind::Geo: return geodesic_within(arg(0), spec->ratio, budget);
    case Kind::Mid: return midpoint_family(arg(0), arg(1), arg(2), budget);
    case Kind::Diag: return diagonal_distance_one(all_args());
  }
  throw domain_error("build_spec: unknown kind");
}

BitSequence build_spec(const std::string& text, const Budget& budget) {
  return build_spec(parse_spec(text), budget);
}

GridHint combine_hints(GridHint a, GridHint b) {
  if (a == GridHint::Factorial || b == GridHint::Factorial)
    return GridHint::Factorial;
  if (a == GridHint::Dyadic || b == GridHint::Dyadic) return GridHint::Dyadic;
  return GridHint::Geometric;
}

GridHint grid_hint(const SpecPtr& spec) {
  if (!spec) return GridHint::Geometric;
  GridHint h = GridHint::Geometric;
  if (spec->kind == Kind::ICode || spec->kind == Kind::Diag)
    h = GridHint::Factorial;
  else if (spec->kind == Kind::JCode)
    h = GridHint::Dyadic;
  for (const auto& a : spec->args) h = combine_hints(h, grid_hint(a));
  return h;
}

CheckpointGrid default_grid_for(GridHint hint, const Nat& warmup,
                                const Nat& limit) {
  switch (hint) {
    case GridHint::Factorial: return CheckpointGrid::factorial(warmup, limit);
    case GridHint::Dyadic: return CheckpointGrid::dyadic(warmup, limit);
    case GridHint::Geometric: break;
  }
  return CheckpointGrid::geometric_default(warmup, limit);
}

}  // namespace coarse
