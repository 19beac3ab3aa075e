#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

#include "nefcone/errors.hpp"

// Exact arbitrary-precision integers and rationals. cpp_rational keeps every
// value in lowest terms with a positive denominator, which is exactly the
// canonical form the rest of the library relies on for structural equality.

namespace nefcone::scalar {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(Int num, Int den) {
  if (den == 0) fail(errc::division_by_zero, "rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return Rational(num, den);
}

inline int sign_of(const Rational& q) { return q.sign(); }

// floor(a / b) for b > 0.
inline Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if (a % b != 0 && ((a < 0) != (b < 0))) --q;
  return q;
}

inline Int rat_floor(const Rational& q) {
  return floor_div(numerator(q), denominator(q));
}

inline Int rat_ceil(const Rational& q) { return -rat_floor(-q); }

// Largest m >= 0 with m*m <= q. Requires q >= 0.
inline Int floor_sqrt(const Rational& q) {
  if (q < 0) fail(errc::invalid_argument, "floor_sqrt of a negative value");
  Int m = boost::multiprecision::sqrt(rat_floor(q));
  while (Rational((m + 1) * (m + 1)) <= q) ++m;
  while (Rational(m * m) > q) --m;
  return m;
}

// Least k >= 1 with k*k > x.
inline Int least_k_sq_gt(const Rational& x) {
  if (x < 0) return 1;
  return floor_sqrt(x) + 1;
}

inline Rational pow2(int e) {
  Int n = 1;
  if (e >= 0) return Rational(n << e);
  return Rational(n, n << (-e));
}

inline Int parse_int(std::string_view text) {
  if (text.empty()) fail(errc::parse_error, "empty integer");
  std::size_t i = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (i == text.size()) fail(errc::parse_error, "sign without digits");
  for (std::size_t j = i; j < text.size(); ++j)
    if (text[j] < '0' || text[j] > '9')
      fail(errc::parse_error, "invalid integer '" + std::string(text) + "'");
  Int v(std::string(text.substr(i)));
  return text[0] == '-' ? Int(-v) : v;
}

// "p" or "p/q"; lowest terms are restored on construction.
inline Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  Int num = parse_int(text.substr(0, slash));
  Int den = parse_int(text.substr(slash + 1));
  if (den == 0) fail(errc::parse_error, "zero denominator in '" + std::string(text) + "'");
  return make_rational(num, den);
}

inline std::string to_string(const Int& n) { return n.str(); }

inline std::string to_string(const Rational& q) {
  std::string s = numerator(q).str();
  if (denominator(q) != 1) s += "/" + denominator(q).str();
  return s;
}

}  // namespace nefcone::scalar
