#include "subshift/bigint.hpp"

#include <limits>
#include <stdexcept>

namespace subshift {

Int floor_div(const Int& a, const Int& b) {
  if (b <= 0) throw std::invalid_argument("floor_div: divisor must be positive");
  Int q = a / b;
  if (a % b != 0 && a < 0) --q;
  return q;
}

Int floor_mod(const Int& a, const Int& b) { return a - floor_div(a, b) * b; }

Int ceil_div(const Int& a, const Int& b) {
  if (b <= 0) throw std::invalid_argument("ceil_div: divisor must be positive");
  Int q = a / b;
  if (a % b != 0 && a > 0) ++q;
  return q;
}

unsigned long to_ulong_checked(const Int& v, const char* what) {
  if (v < 0 || v > std::numeric_limits<unsigned long>::max())
    throw std::invalid_argument(std::string(what) + ": value out of range");
  return v.convert_to<unsigned long>();
}

Int pow2(const Int& e) {
  unsigned long ee = to_ulong_checked(e, "pow2 exponent");
  return Int(1) << ee;
}

Int ipow(const Int& base, const Int& e) {
  unsigned long ee = to_ulong_checked(e, "ipow exponent");
  Int acc = 1;
  Int b = base;
  while (ee > 0) {
    if (ee & 1) acc *= b;
    ee >>= 1;
    if (ee > 0) b *= b;
  }
  return acc;
}

Int side_for_volume(const Int& v, int dim) {
  if (v < 1) throw std::invalid_argument("side_for_volume: volume must be >= 1");
  if (dim == 1) return v;
  if (dim != 2) throw std::invalid_argument("side_for_volume: dim must be 1 or 2");
  Int s = boost::multiprecision::sqrt(v);
  if (s * s < v) ++s;
  if (s < 1) s = 1;
  return s;
}

unsigned long bit_length(const Int& v) {
  if (v < 0) throw std::invalid_argument("bit_length: negative value");
  if (v == 0) return 0;
  return boost::multiprecision::msb(v) + 1;
}

Int num(const Rat& q) { return boost::multiprecision::numerator(q); }
Int den(const Rat& q) { return boost::multiprecision::denominator(q); }

Rat make_rat(const Int& p, const Int& q) {
  if (q == 0) throw std::invalid_argument("make_rat: zero denominator");
  return Rat(p, q);
}

std::string int_str(const Int& v) { return v.str(); }

std::string rat_str(const Rat& v) {
  Int d = den(v);
  if (d == 1) return num(v).str();
  return num(v).str() + "/" + d.str();
}

std::string dyadic_str(const Rat& v) {
  Int d = den(v);
  if (d == 1) return num(v).str();
  unsigned long bits = bit_length(d);
  if ((Int(1) << (bits - 1)) != d)
    throw std::invalid_argument("dyadic_str: denominator is not a power of two");
  return num(v).str() + "/2^" + std::to_string(bits - 1);
}

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

}  // namespace

Int parse_int(const std::string& s) {
  std::string body = s;
  bool neg = false;
  if (!body.empty() && (body[0] == '-' || body[0] == '+')) {
    neg = body[0] == '-';
    body = body.substr(1);
  }
  if (!all_digits(body)) throw std::invalid_argument("parse_int: malformed integer '" + s + "'");
  Int v(body);
  return neg ? Int(-v) : v;
}

Rat parse_rat(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rat(parse_int(s));
  Int p = parse_int(s.substr(0, slash));
  std::string rest = s.substr(slash + 1);
  Int q;
  if (rest.rfind("2^", 0) == 0) {
    q = pow2(parse_int(rest.substr(2)));
  } else {
    q = parse_int(rest);
  }
  if (q <= 0) throw std::invalid_argument("parse_rat: denominator must be positive in '" + s + "'");
  return Rat(p, q);
}

}  // namespace subshift
