#pragma once

#include <string>
#include <string_view>
#include <utility>

#include "nefcone/rational.hpp"

// Exact arithmetic in a real quadratic extension Q(sqrt(d)). A QuadValue
// stores a + b*sqrt(d) with rational a, b and a squarefree integer radicand
// d >= 1; d == 1 holds exactly when the value is plain rational. Canonical
// form makes structural equality coincide with value equality, and signs of
// nonzero values are decided exactly by comparing squares.

namespace nefcone::scalar {

struct SqrtDecomposition {
  Rational root_coeff;  // q with x = q^2 * d
  Int radicand;         // d, squarefree
};

namespace detail {

// Trial division bound: factorizations are attempted over primes up to 2^20;
// a remaining cofactor below 2^40 is necessarily prime, a perfect-square
// remainder is absorbed, anything else is rejected.
inline constexpr long kTrialDivisionBound = 1L << 20;

}  // namespace detail

// Writes x = q^2 * d with d a squarefree positive integer. Exact; inputs whose
// squarefree part cannot be certified within the trial-division bound are
// rejected with FACTOR_LIMIT_EXCEEDED rather than approximated.
inline SqrtDecomposition sqrt_decompose(const Rational& x) {
  if (x <= 0) fail(errc::invalid_argument, "sqrt_decompose requires a positive rational");
  const Int den = denominator(x);
  // x = n/m in lowest terms equals (1/m)^2 * (n*m); factor N = n*m.
  Int n_remaining = numerator(x) * den;
  Int square_part = 1;
  Int radicand = 1;

  auto strip = [&](const Int& p) {
    int e = 0;
    while (n_remaining % p == 0) {
      n_remaining /= p;
      ++e;
    }
    if (e & 1) radicand *= p;
    for (int i = 0; i < e / 2; ++i) square_part *= p;
  };

  strip(2);
  strip(3);
  Int p = 5;
  while (p <= detail::kTrialDivisionBound && p * p <= n_remaining) {
    strip(p);
    p += (p % 6 == 5) ? 2 : 4;
  }

  if (n_remaining > 1) {
    if (p * p > n_remaining) {
      radicand *= n_remaining;  // no factor below sqrt survived, so prime
    } else {
      Int root = boost::multiprecision::sqrt(n_remaining);
      if (root * root == n_remaining) {
        square_part *= root;
      } else {
        fail(errc::factor_limit_exceeded,
             "cofactor " + n_remaining.str() + " exceeds the trial-division bound");
      }
    }
  }

  return SqrtDecomposition{make_rational(square_part, den), radicand};
}

class QuadValue {
 public:
  QuadValue() : d_(1) {}
  QuadValue(Rational r) : a_(std::move(r)), d_(1) {}  // NOLINT: implicit by design
  QuadValue(const Int& n) : a_(n), d_(1) {}           // NOLINT
  QuadValue(long long n) : a_(n), d_(1) {}            // NOLINT
  QuadValue(int n) : a_(n), d_(1) {}                  // NOLINT

  // Canonicalizing factory for a + b*sqrt(d). d may carry square factors
  // (they are folded into b); d == 0 or b == 0 collapse to a plain rational.
  static QuadValue make(Rational a, Rational b, Int d) {
    if (d < 0) fail(errc::invalid_argument, "negative radicand");
    if (d == 0 || b == 0) return QuadValue(std::move(a));
    if (d == 1) return QuadValue(a + b);
    SqrtDecomposition sd = sqrt_decompose(Rational(d));
    b *= sd.root_coeff;
    if (sd.radicand == 1) return QuadValue(a + b);
    QuadValue v;
    v.a_ = std::move(a);
    v.b_ = std::move(b);
    v.d_ = sd.radicand;
    return v;
  }

  // Exact square root of a nonnegative rational.
  static QuadValue sqrt(const Rational& x) {
    if (x == 0) return QuadValue();
    SqrtDecomposition sd = sqrt_decompose(x);
    return make(Rational(0), sd.root_coeff, sd.radicand);
  }

  const Rational& rational_part() const { return a_; }
  const Rational& radical_part() const { return b_; }
  const Int& radicand() const { return d_; }
  bool is_rational() const { return d_ == 1; }
  bool is_zero() const { return a_ == 0 && b_ == 0; }

  // Exact rational value; INCOMPATIBLE_FIELD if irrational.
  const Rational& as_rational() const {
    if (!is_rational()) fail(errc::incompatible_field, "value is irrational");
    return a_;
  }

  // Exact sign, decided by comparing squares when the two parts disagree.
  int sign() const {
    if (b_ == 0) return a_.sign();
    if (a_ == 0) return b_.sign();
    if (a_.sign() == b_.sign()) return a_.sign();
    Rational a_sq = a_ * a_;
    Rational b_sq_d = b_ * b_ * d_;
    if (a_sq == b_sq_d) {
      // a = -b*sqrt(d) would force d = (a/b)^2, impossible for squarefree d > 1
      fail(errc::invalid_argument, "non-canonical quadratic value");
    }
    return a_sq > b_sq_d ? a_.sign() : b_.sign();
  }

  QuadValue operator-() const {
    QuadValue v = *this;
    v.a_ = -v.a_;
    v.b_ = -v.b_;
    return v;
  }

  friend QuadValue operator+(const QuadValue& x, const QuadValue& y) {
    Int d = merged_radicand(x, y);
    return make(x.a_ + y.a_, x.b_ + y.b_, d);
  }
  friend QuadValue operator-(const QuadValue& x, const QuadValue& y) { return x + (-y); }

  friend QuadValue operator*(const QuadValue& x, const QuadValue& y) {
    Int d = merged_radicand(x, y);
    return make(x.a_ * y.a_ + x.b_ * y.b_ * d, x.a_ * y.b_ + x.b_ * y.a_, d);
  }

  friend QuadValue operator/(const QuadValue& x, const QuadValue& y) {
    if (y.is_zero()) fail(errc::division_by_zero, "division by zero");
    Int d = merged_radicand(x, y);
    // multiply by the conjugate; the norm a^2 - b^2 d vanishes only at zero
    Rational norm = y.a_ * y.a_ - y.b_ * y.b_ * d;
    return make((x.a_ * y.a_ - x.b_ * y.b_ * d) / norm, (x.b_ * y.a_ - x.a_ * y.b_) / norm, d);
  }

  QuadValue& operator+=(const QuadValue& y) { return *this = *this + y; }
  QuadValue& operator-=(const QuadValue& y) { return *this = *this - y; }
  QuadValue& operator*=(const QuadValue& y) { return *this = *this * y; }
  QuadValue& operator/=(const QuadValue& y) { return *this = *this / y; }

  // Canonical form makes this value equality.
  friend bool operator==(const QuadValue& x, const QuadValue& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && x.d_ == y.d_;
  }
  friend bool operator!=(const QuadValue& x, const QuadValue& y) { return !(x == y); }

  friend bool operator<(const QuadValue& x, const QuadValue& y) { return (x - y).sign() < 0; }
  friend bool operator>(const QuadValue& x, const QuadValue& y) { return (x - y).sign() > 0; }
  friend bool operator<=(const QuadValue& x, const QuadValue& y) { return (x - y).sign() <= 0; }
  friend bool operator>=(const QuadValue& x, const QuadValue& y) { return (x - y).sign() >= 0; }

 private:
  static Int merged_radicand(const QuadValue& x, const QuadValue& y) {
    if (x.d_ == y.d_) return x.d_;
    if (x.d_ == 1) return y.d_;
    if (y.d_ == 1) return x.d_;
    fail(errc::incompatible_field,
         "mixed radicands sqrt(" + x.d_.str() + ") and sqrt(" + y.d_.str() + ")");
  }

  Rational a_;  // rational part
  Rational b_;  // coefficient of sqrt(d)
  Int d_;       // squarefree radicand, 1 when the value is rational
};

inline int quad_sign(const QuadValue& v) { return v.sign(); }

inline QuadValue quad_abs(const QuadValue& v) { return v.sign() < 0 ? -v : v; }

// "a", "b*sqrt(d)", "a+b*sqrt(d)" or "a-b*sqrt(d)", components in the
// rational encoding. Printing and parsing round-trip bit-exactly.
inline std::string to_string(const QuadValue& v) {
  if (v.is_rational()) return to_string(v.rational_part());
  std::string radical = to_string(v.radical_part()) + "*sqrt(" + v.radicand().str() + ")";
  if (v.rational_part() == 0) return radical;
  if (v.radical_part() > 0) return to_string(v.rational_part()) + "+" + radical;
  return to_string(v.rational_part()) + "-" +
         to_string(Rational(-v.radical_part())) + "*sqrt(" + v.radicand().str() + ")";
}

inline QuadValue parse_quad(std::string_view text) {
  auto star = text.find("*sqrt(");
  if (star == std::string_view::npos) return QuadValue(parse_rational(text));
  if (text.empty() || text.back() != ')')
    fail(errc::parse_error, "malformed quadratic value '" + std::string(text) + "'");
  Int d = parse_int(text.substr(star + 6, text.size() - star - 7));
  if (d < 0) fail(errc::parse_error, "negative radicand in '" + std::string(text) + "'");
  std::string_view head = text.substr(0, star);  // "a+b", "a-b" or "b"
  // the a/b separator is the last sign preceded by a digit
  std::size_t split = std::string_view::npos;
  for (std::size_t i = head.size(); i-- > 1;) {
    if ((head[i] == '+' || head[i] == '-') && head[i - 1] >= '0' && head[i - 1] <= '9') {
      split = i;
      break;
    }
  }
  Rational a = 0, b;
  if (split == std::string_view::npos) {
    b = parse_rational(head);
  } else {
    a = parse_rational(head.substr(0, split));
    b = parse_rational(head.substr(split));
  }
  return QuadValue::make(a, b, d);
}

}  // namespace nefcone::scalar
