#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace subshift {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/** Floor division; b > 0. The result satisfies a = q*b + m with 0 <= m < b. */
Int floor_div(const Int& a, const Int& b);
Int floor_mod(const Int& a, const Int& b);

/** Ceiling division; b > 0. */
Int ceil_div(const Int& a, const Int& b);

/** 2^e; e >= 0 and must fit in an unsigned long. */
Int pow2(const Int& e);

/** base^e; e >= 0 and must fit in an unsigned long. */
Int ipow(const Int& base, const Int& e);

/** Smallest s >= 1 with s^dim >= v; dim in {1,2}, v >= 1. */
Int side_for_volume(const Int& v, int dim);

/** Number of bits in v (index of the highest set bit plus one); 0 for v == 0. Requires v >= 0. */
unsigned long bit_length(const Int& v);

unsigned long to_ulong_checked(const Int& v, const char* what);

Int num(const Rat& q);
Int den(const Rat& q);
Rat make_rat(const Int& p, const Int& q);

std::string int_str(const Int& v);
/** "p" when the denominator is 1, otherwise "p/q". */
std::string rat_str(const Rat& v);
/** "a" or "a/2^e"; the denominator must be a power of two. */
std::string dyadic_str(const Rat& v);

/** Strict parsers: throw std::invalid_argument on any malformed input. */
Int parse_int(const std::string& s);
Rat parse_rat(const std::string& s);

}  // namespace subshift
