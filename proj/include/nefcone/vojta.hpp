#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nefcone/lattice.hpp"
#include "nefcone/quad.hpp"
#include "nefcone/rational.hpp"

// The one-parameter family Y(r,s) = a1 e1 + a2 e2 + a3 delta with
// a1 = sqrt((g+s)/r), a2 = sqrt((g+s)r) and a3 = +-1, certified nef exactly
// when r exceeds (g+s)(g-1)/s. Pairing a certified-nef member negatively
// against a target class is a proof that the target is not pseudoeffective;
// find_separator searches the family for such a witness.

namespace nefcone::vojta {

using lattice::Divisor;
using lattice::Lattice;
using scalar::Int;
using scalar::QuadValue;
using scalar::Rational;

struct VojtaParams {
  int g = 2;         // genus, >= 2
  Rational r = 1;    // > 0
  Rational s = 1;    // > 0
  int sign = 1;      // a3, +1 or -1
};

inline VojtaParams vojta_params(int g, Rational r, Rational s, int sign) {
  if (g < 2) fail(errc::invalid_argument, "Vojta classes need genus >= 2");
  if (r <= 0) fail(errc::invalid_argument, "Vojta parameter r must be positive");
  if (s <= 0) fail(errc::invalid_argument, "Vojta parameter s must be positive");
  if (sign != 1 && sign != -1) fail(errc::invalid_argument, "sign must be +1 or -1");
  return VojtaParams{g, std::move(r), std::move(s), sign};
}

inline Rational nef_threshold(int g, const Rational& s) {
  if (g < 2) fail(errc::invalid_argument, "nef_threshold needs genus >= 2");
  if (s <= 0) fail(errc::invalid_argument, "nef_threshold needs s > 0");
  return Rational(g + s) * Rational(g - 1) / s;
}

inline bool is_nef_certified(const VojtaParams& p) {
  return p.r > nef_threshold(p.g, p.s);
}

inline Rational nef_margin(const VojtaParams& p) { return p.r - nef_threshold(p.g, p.s); }

inline Divisor vojta_class(const VojtaParams& p, const Lattice& lat) {
  if (!lat.genus() || *lat.genus() != p.g || lat.product_rank() != 3)
    fail(errc::lattice_mismatch, "Vojta classes live on the rank-3 product model of genus g");
  QuadValue a1 = QuadValue::sqrt(Rational(p.g + p.s) / p.r);
  QuadValue a2 = a1 * QuadValue(p.r);  // equals sqrt((g+s)r) exactly
  std::vector<QuadValue> coords(lat.rank());
  coords[0] = std::move(a1);
  coords[1] = std::move(a2);
  coords[2] = QuadValue(p.sign);
  return Divisor(lat, std::move(coords));
}

// Quarter discriminant of the binary quadratic form
//   b2^2 (g+s)/r + 2 b1 b2 (s-g) + b1^2 ((g+s)r - 4g(g-1)),
// namely (s-g)^2 - ((g+s)/r)((g+s)r - 4g(g-1)). Negative exactly when the
// form is definite, which happens exactly above the nef threshold.
inline Rational discriminant_quarter(int g, const Rational& s, const Rational& r) {
  if (g < 2) fail(errc::invalid_argument, "discriminant_quarter needs genus >= 2");
  if (s <= 0 || r <= 0) fail(errc::invalid_argument, "discriminant_quarter needs s, r > 0");
  Rational gs = Rational(g) + s;
  return (s - g) * (s - g) - (gs / r) * (gs * r - Rational(4 * g * (g - 1)));
}

// Arithmetic consequence of adjunction for an irreducible non-fiber curve
// with shadow (b0, b1, b2): 2 b1 b2 + (2g-2) b1^2 >= 2g b0^2. A false return
// certifies that no such curve exists.
inline bool curve_constraint(int g, const Int& b0, const Int& b1, const Int& b2) {
  if (g < 2) fail(errc::invalid_argument, "curve_constraint needs genus >= 2");
  if (b1 < 0 || b2 < 0) fail(errc::invalid_argument, "curve_constraint needs b1, b2 >= 0");
  return 2 * b1 * b2 + Int(2 * g - 2) * b1 * b1 >= Int(2 * g) * b0 * b0;
}

struct Separator {
  VojtaParams params;
  Rational nef_margin;  // r - threshold, > 0
  Divisor target;
  QuadValue pairing;    // pair(Y(r,s), target), < 0
};

struct SeparatorBudget {
  int s_grid_radius = 16;          // s ranges over 2^i, |i| <= radius
  Int max_k = Int(1) << 20;        // cap on the family index k (r = (g+s) k^2)
};

namespace detail {

// Least k >= k_min with Q(k) = A k^2 + B k + C < 0, or nullopt if none exists
// below the cap. Exact integer reasoning only: for upward parabolas the
// candidate nearest the vertex decides feasibility and a binary search on the
// decreasing flank finds the first negative value; downward parabolas are
// eventually negative, located by exponential probing.
inline std::optional<Int> least_negative_index(const Rational& A, const Rational& B,
                                               const Rational& C, Int k_min, const Int& k_cap) {
  if (k_min < 1) k_min = 1;
  auto Q = [&](const Int& k) { return A * k * k + B * k + C; };
  auto capped = [&](Int k) -> std::optional<Int> {
    if (k > k_cap) return std::nullopt;
    return k;
  };
  if (k_min > k_cap) return std::nullopt;
  if (Q(k_min) < 0) return k_min;

  if (A == 0) {
    if (B >= 0) return std::nullopt;              // nondecreasing from a nonnegative start
    Int k = scalar::rat_floor(-C / B) + 1;        // least k with B k + C < 0
    if (k < k_min) k = k_min;
    return capped(k);
  }

  Int lo = k_min;  // Q(lo) >= 0 from here on
  Int hi;
  if (A > 0) {
    // negative only strictly between the roots; the vertex is at -B/(2A)
    Rational vertex = -B / (2 * A);
    if (vertex <= Rational(k_min)) return std::nullopt;  // increasing for k >= k_min
    hi = scalar::rat_floor(vertex);
    if (Q(hi) >= 0) {
      ++hi;  // the integer just right of the vertex is the last candidate
      if (Q(hi) >= 0) return std::nullopt;
    }
  } else {
    // A < 0: Q(k_min) >= 0 puts k_min between the roots; beyond the vertex Q
    // decreases without bound, so the negative set is a final segment.
    Int step = 1;
    hi = k_min + step;
    while (Q(hi) >= 0) {
      lo = hi;
      step *= 2;
      hi = k_min + step;
    }
  }
  // Q(lo) >= 0, Q(hi) < 0, and the predicate Q < 0 is monotone on [lo, hi].
  while (lo + 1 < hi) {
    Int mid = (lo + hi) / 2;
    if (Q(mid) < 0)
      hi = mid;
    else
      lo = mid;
  }
  return capped(hi);
}

// Centered deterministic sweep 0, +1, -1, +2, -2, ... of s-exponents.
inline std::vector<int> centered_exponents(int radius) {
  std::vector<int> out{0};
  for (int i = 1; i <= radius; ++i) {
    out.push_back(i);
    out.push_back(-i);
  }
  return out;
}

}  // namespace detail

// Searches the rational subfamily r = (g+s) k^2 (where a1 = 1/k and
// a2 = (g+s)k are rational) for a certified-nef class pairing strictly
// negatively with the target. For targets (0, y, z) the least k is computed
// in closed form; general targets reduce to a quadratic sign condition in k.
// The sweep order (s = 1, 2, 1/2, 4, 1/4, ... and sign +1 before -1) and the
// least-k choice make the result deterministic. NONE_FOUND (nullopt) carries
// no claim that the target is pseudoeffective.
inline std::optional<Separator> find_separator(const Lattice& lat, const Divisor& target,
                                               const SeparatorBudget& budget = {}) {
  if (lat.product_rank() != 3 || lat.rank() != 3 || !lat.genus())
    fail(errc::not_product_lattice, "separator search needs the pure rank-3 product model");
  const int g = *lat.genus();
  if (g < 2)
    fail(errc::invalid_argument,
         "separator search needs genus >= 2; the genus-" + std::to_string(g) + " cone is round");
  if (target.lattice() != lat) fail(errc::lattice_mismatch, "target belongs to another lattice");
  if (!target.is_rational())
    fail(errc::invalid_argument, "separator search expects a rational target");

  const Rational x = target[0].as_rational();
  const Rational y = target[1].as_rational();
  const Rational z = target[2].as_rational();

  for (int exp : detail::centered_exponents(budget.s_grid_radius)) {
    const Rational s = scalar::pow2(exp);
    const Rational gs = Rational(g) + s;
    // nef certification for r = (g+s)k^2: r > (g+s)(g-1)/s iff k^2 > (g-1)/s
    const Int k_nef = scalar::least_k_sq_gt(Rational(g - 1) / s);
    for (int sign : {1, -1}) {
      // k * pair(Y, target) = (g+s) x k^2 - 2 g sign z k + y
      std::optional<Int> k = detail::least_negative_index(
          gs * x, Rational(-2 * g * sign) * z, y, k_nef, budget.max_k);
      if (!k) continue;
      VojtaParams params = vojta_params(g, gs * *k * *k, s, sign);
      Divisor cls = vojta_class(params, lat);
      QuadValue pairing = lattice::pair(cls, target);
      if (pairing.sign() >= 0)
        fail(errc::precondition_violated, "separator search produced a nonnegative pairing");
      Rational margin = nef_margin(params);
      return Separator{std::move(params), std::move(margin), target, std::move(pairing)};
    }
  }
  return std::nullopt;
}

}  // namespace nefcone::vojta
