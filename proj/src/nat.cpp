#include "coarse/nat.hpp"

#include <cctype>
#include <cstdio>

namespace coarse {

std::string nat_string(const Nat& n) { return n.str(); }

std::string rat_string(const Rat& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

double rat_double(const Rat& r) { return static_cast<double>(r); }

Rat parse_rational(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rat(Nat(text));
    Nat p(text.substr(0, slash));
    Nat q(text.substr(slash + 1));
    if (q == 0) throw domain_error("parse_rational: zero denominator in '" + text + "'");
    return Rat(p, q);
  } catch (const std::runtime_error& e) {
    throw domain_error(std::string("parse_rational: bad rational '") + text + "'");
  }
}

Nat parse_extent(const std::string& text) {
  if (text.empty()) throw domain_error("parse_extent: empty");
  if (text.size() >= 2 && text.substr(0, 2) == "2^") {
    std::string rest = text.substr(2);
    for (char c : rest)
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw domain_error("parse_extent: bad exponent in '" + text + "'");
    return nat_pow2(std::stoull(rest));
  }
  if (text.back() == '!') {
    std::string rest = text.substr(0, text.size() - 1);
    for (char c : rest)
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw domain_error("parse_extent: bad factorial in '" + text + "'");
    return nat_factorial(static_cast<unsigned>(std::stoul(rest)));
  }
  for (char c : text)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw domain_error("parse_extent: bad count '" + text + "'");
  return Nat(text);
}

}  // namespace coarse
