#pragma once

// Exact arithmetic carriers. Everything enumerative in this library is
// computed over arbitrary-precision integers and rationals; no floating
// point is allowed anywhere on a counting or probability path.

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace ucshape {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

inline std::string to_string(const BigInt& v) { return v.str(); }

inline std::string to_string(const BigRational& v) {
  return boost::multiprecision::numerator(v).str() + "/" +
         boost::multiprecision::denominator(v).str();
}

inline BigInt rat_num(const BigRational& v) { return boost::multiprecision::numerator(v); }
inline BigInt rat_den(const BigRational& v) { return boost::multiprecision::denominator(v); }

// Exact rational -> integer, throwing if the value is not integral. Used to
// turn a_t * Cat(2g+t) into kappa, where integrality is a theorem.
inline BigInt to_integer(const BigRational& v) {
  if (rat_den(v) != 1) throw std::domain_error("rational is not an integer: " + to_string(v));
  return rat_num(v);
}

inline BigInt parse_bigint(const std::string& s) { return BigInt(s); }

}  // namespace ucshape
