#include <catch2/catch_amalgamated.hpp>

#include <functional>
#include <vector>

#include "nefcone/lattice.hpp"
#include "oracles.hpp"

using namespace nefcone;
using namespace nefcone::lattice;
using scalar::Int;
using scalar::QuadValue;
using scalar::Rational;

namespace {

errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return errc::invalid_argument;
}

Divisor rat3(const Lattice& lat, const Rational& x, const Rational& y, const Rational& z) {
  return rational_divisor(lat, {x, y, z});
}

}  // namespace

TEST_CASE("the rank-3 product model has the expected Gram matrix") {
  Lattice lat = product_lattice(2);
  CHECK(lat.rank() == 3);
  CHECK(lat.genus() == 2);
  CHECK(lat.is_product());
  RationalMatrix expected = {{0, 1, 0}, {1, 0, 0}, {0, 0, -4}};
  CHECK(lat.gram() == expected);
  CHECK(lat.basis_labels() == std::vector<std::string>{"e1", "e2", "delta"});

  Lattice g5 = product_lattice(5);
  CHECK(g5.gram()[2][2] == -10);
  CHECK(code_of([] { product_lattice(0); }) == errc::invalid_argument);

  Lattice quadric = p1_x_p1_lattice();
  CHECK(quadric.rank() == 2);
  CHECK(quadric.genus() == 0);
  CHECK(quadric.gram() == RationalMatrix{{0, 1}, {1, 0}});
}

TEST_CASE("hand-checked pairings at genus 2") {
  Lattice lat = product_lattice(2);
  Divisor e1 = basis_divisor(lat, 0);
  Divisor e2 = basis_divisor(lat, 1);
  Divisor delta = basis_divisor(lat, 2);
  Divisor diag = rat3(lat, 1, 1, 1);           // the diagonal class
  Divisor h0 = rat3(lat, Rational(1, 2), Rational(1, 2), 0);

  CHECK(pair(e1, e1) == QuadValue(0));
  CHECK(pair(e1, e2) == QuadValue(1));
  CHECK(pair(delta, delta) == QuadValue(-4));
  CHECK(pair(diag, diag) == QuadValue(-2));
  CHECK(pair(h0, h0) == QuadValue(Rational(1, 2)));
  CHECK(pair(h0, e2) == QuadValue(Rational(1, 2)));
  CHECK(pair(h0, delta) == QuadValue(0));
  CHECK(pair(e1, delta) == QuadValue(0));

  Divisor alpha = rat3(lat, 1, 1, -1);
  CHECK(pair(alpha, alpha) == QuadValue(-2));
  CHECK(pair(alpha, diag) == QuadValue(6));
}

TEST_CASE("the pairing is symmetric and bilinear") {
  oracles::Rng rng(1618);
  for (int g : {1, 2, 3, 7}) {
    Lattice lat = product_lattice(g);
    for (int i = 0; i < 250; ++i) {
      auto uc = rng.rational_vector(3);
      auto vc = rng.rational_vector(3);
      auto wc = rng.rational_vector(3);
      Divisor u = rational_divisor(lat, uc);
      Divisor v = rational_divisor(lat, vc);
      Divisor w = rational_divisor(lat, wc);

      CHECK(pair(u, v) == QuadValue(oracles::product_pair(g, uc, vc)));
      CHECK(pair(u, v) == pair(v, u));
      CHECK(pair(u + w, v) == pair(u, v) + pair(w, v));
      Rational c = rng.rational(50);
      CHECK(pair(QuadValue(c) * u, v) == QuadValue(c) * pair(u, v));
    }
  }
}

TEST_CASE("pairing handles quadratic coordinates exactly") {
  Lattice lat = product_lattice(2);
  QuadValue root3 = QuadValue::sqrt(Rational(3));
  // (sqrt(3) e1 + sqrt(3) e2 + delta)^2 = 2*3 - 4 = 2
  Divisor d(lat, {root3, root3, QuadValue(1)});
  CHECK(pair(d, d) == QuadValue(2));
  // against e1: picks up the e2 coefficient
  CHECK(pair(d, basis_divisor(lat, 0)) == root3);
}

TEST_CASE("divisor arithmetic and validation") {
  Lattice lat = product_lattice(2);
  Divisor a = rat3(lat, 1, 2, 3);
  Divisor b = rat3(lat, -1, 0, Rational(1, 2));
  CHECK(a + b == rat3(lat, 0, 2, Rational(7, 2)));
  CHECK(a - b == rat3(lat, 2, 2, Rational(5, 2)));
  CHECK(-a == rat3(lat, -1, -2, -3));
  CHECK(QuadValue(Rational(1, 3)) * a == rat3(lat, Rational(1, 3), Rational(2, 3), 1));
  CHECK(a * QuadValue(2) == rat3(lat, 2, 4, 6));
  CHECK(zero_divisor(lat).is_zero());
  CHECK(!a.is_zero());
  CHECK(a.is_rational());

  CHECK(code_of([&] { Divisor(lat, {QuadValue(1), QuadValue(2)}); }) == errc::lattice_mismatch);
  CHECK(code_of([&] { basis_divisor(lat, 3); }) == errc::invalid_argument);
  QuadValue root2 = QuadValue::sqrt(Rational(2));
  QuadValue root3 = QuadValue::sqrt(Rational(3));
  CHECK(code_of([&] { Divisor(lat, {root2, root3, QuadValue(0)}); }) == errc::incompatible_field);

  Lattice other = product_lattice(3);
  Divisor c = rat3(other, 1, 2, 3);
  CHECK(code_of([&] { (void)(a + c); }) == errc::lattice_mismatch);
  CHECK(code_of([&] { (void)pair(a, c); }) == errc::lattice_mismatch);
}

TEST_CASE("registries carry the fiber and diagonal classes") {
  Lattice lat = product_lattice(2);
  CHECK(lat.known_effective_labels() == std::vector<std::string>{"e1", "e2", "Delta"});
  CHECK(lat.known_nef_labels() == std::vector<std::string>{"e1", "e2"});
  auto eff = lat.known_effective();
  REQUIRE(eff.size() == 3);
  CHECK(eff[2] == rat3(lat, 1, 1, 1));
  auto nef = lat.known_nef();
  REQUIRE(nef.size() == 2);
  CHECK(nef[0] == basis_divisor(lat, 0));
}

TEST_CASE("signature of frozen matrices") {
  CHECK(signature(RationalMatrix{{1, 0}, {0, -1}}) == Signature{1, 1, 0});
  CHECK(signature(RationalMatrix{{0}}) == Signature{0, 0, 1});
  CHECK(signature(RationalMatrix{{0, 1}, {1, 0}}) == Signature{1, 1, 0});
  CHECK(signature(RationalMatrix{{0, 0}, {0, 0}}) == Signature{0, 0, 2});
  CHECK(signature(RationalMatrix{{2, 1}, {1, 2}}) == Signature{2, 0, 0});
  CHECK(signature(RationalMatrix{{1, 2}, {2, 1}}) == Signature{1, 1, 0});
  CHECK(signature(RationalMatrix{{0, 1, 0}, {1, 0, 0}, {0, 0, -4}}) == Signature{1, 2, 0});
  CHECK(to_string(Signature{1, 2, 0}) == "(1,2,0)");

  CHECK(code_of([] { signature(RationalMatrix{{1, 2}}); }) == errc::invalid_argument);
  CHECK(code_of([] { signature(RationalMatrix{{1, 2}, {3, 1}}); }) == errc::invalid_argument);
}

TEST_CASE("product lattices have hyperbolic signature at every genus") {
  CHECK(signature(p1_x_p1_lattice()) == Signature{1, 1, 0});
  for (int g = 1; g <= 10; ++g)
    CHECK(signature(product_lattice(g)) == Signature{1, 2, 0});
}

TEST_CASE("signature is a congruence invariant (Sylvester)") {
  oracles::Rng rng(31415);
  for (int trial = 0; trial < 120; ++trial) {
    const int n = static_cast<int>(rng.integer(1, 5));
    // diagonal with known inertia
    Signature expected;
    std::vector<std::vector<Rational>> d(n, std::vector<Rational>(n, Rational(0)));
    for (int i = 0; i < n; ++i) {
      int c = static_cast<int>(rng.integer(-2, 2));
      d[i][i] = c;
      if (c > 0)
        ++expected.n_plus;
      else if (c < 0)
        ++expected.n_minus;
      else
        ++expected.n_zero;
    }
    // invertible S = L U with unitriangular factors, entries in [-3, 3]
    std::vector<std::vector<Rational>> s(n, std::vector<Rational>(n, Rational(0)));
    {
      std::vector<std::vector<Rational>> l(n, std::vector<Rational>(n, Rational(0)));
      std::vector<std::vector<Rational>> u(n, std::vector<Rational>(n, Rational(0)));
      for (int i = 0; i < n; ++i) {
        l[i][i] = 1;
        u[i][i] = 1;
        for (int j = 0; j < i; ++j) l[i][j] = static_cast<int>(rng.integer(-3, 3));
        for (int j = i + 1; j < n; ++j) u[i][j] = static_cast<int>(rng.integer(-3, 3));
      }
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k) s[i][j] += l[i][k] * u[k][j];
    }
    // m = s^T d s is congruent to d
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n, Rational(0)));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) m[i][j] += s[k][i] * d[k][k] * s[k][j];
    CHECK(signature(m) == expected);
  }
}

TEST_CASE("negative-block extensions") {
  Lattice base = product_lattice(2);
  Lattice ext = extend_with_negative_block(base, {-1, Rational(-7, 2)});
  CHECK(ext.rank() == 5);
  CHECK(ext.genus() == 2);
  CHECK(ext.product_rank() == 3);
  CHECK(!ext.is_product());
  CHECK(ext.gram()[3][3] == -1);
  CHECK(ext.gram()[4][4] == Rational(-7, 2));
  CHECK(ext.gram()[0][1] == 1);
  CHECK(ext.gram()[3][4] == 0);
  CHECK(ext.basis_labels() ==
        std::vector<std::string>{"e1", "e2", "delta", "x1", "x2"});
  CHECK(signature(ext) == Signature{1, 4, 0});

  // registry classes are padded with zeros on the new directions
  auto eff = ext.known_effective();
  REQUIRE(eff.size() == 3);
  CHECK(eff[2] == rational_divisor(ext, {1, 1, 1, 0, 0}));
  CHECK(pair(eff[2], eff[2]) == QuadValue(-2));

  CHECK(extend_with_negative_block(base, {}) == base);
  CHECK(code_of([&] { extend_with_negative_block(base, {-1, 0}); }) == errc::invalid_argument);
  CHECK(code_of([&] { extend_with_negative_block(base, {2}); }) == errc::invalid_argument);
}

TEST_CASE("orthogonal splits at frozen inputs") {
  Lattice lat = product_lattice(2);
  Divisor h0 = rat3(lat, Rational(1, 2), Rational(1, 2), 0);
  OrthogonalSplit split = orthogonal_split(lat, h0);
  CHECK(split.h_norm_sq == QuadValue(Rational(1, 2)));
  REQUIRE(split.complement_basis.size() == 2);
  CHECK(split.complement_basis[0] == rat3(lat, 1, -1, 0));
  CHECK(split.complement_basis[1] == rat3(lat, 0, 0, 1));
  CHECK(pair(split.complement_basis[0], split.complement_basis[0]) == QuadValue(-2));
  CHECK(pair(split.complement_basis[1], split.complement_basis[1]) == QuadValue(-4));

  Lattice quadric = p1_x_p1_lattice();
  Divisor h = rational_divisor(quadric, {1, 1});
  OrthogonalSplit qsplit = orthogonal_split(quadric, h);
  CHECK(qsplit.h_norm_sq == QuadValue(2));
  REQUIRE(qsplit.complement_basis.size() == 1);
  CHECK(qsplit.complement_basis[0] == rational_divisor(quadric, {1, -1}));

  CHECK(code_of([&] { orthogonal_split(quadric, basis_divisor(quadric, 0)); }) ==
        errc::nonpositive_norm);
}

TEST_CASE("orthogonal splits satisfy the Hodge sign pattern") {
  oracles::Rng rng(2718);
  for (int g : {1, 2, 5}) {
    Lattice lat = product_lattice(g);
    Lattice ext = extend_with_negative_block(lat, {-2});
    for (const Lattice& l : {lat, ext}) {
      for (int trial = 0; trial < 40; ++trial) {
        // positive classes a e1 + b e2 + small perturbation
        Rational a = rng.positive_rational(40, 12);
        Rational b = rng.positive_rational(40, 12);
        std::vector<Rational> hc(l.rank(), Rational(0));
        hc[0] = a;
        hc[1] = b;
        Divisor h = rational_divisor(l, hc);
        OrthogonalSplit split = orthogonal_split(l, h);
        CHECK(split.h_norm_sq == QuadValue(2 * a * b));
        REQUIRE(static_cast<int>(split.complement_basis.size()) == l.rank() - 1);
        for (std::size_t i = 0; i < split.complement_basis.size(); ++i) {
          const Divisor& w = split.complement_basis[i];
          CHECK(pair(w, h) == QuadValue(0));
          CHECK(pair(w, w).sign() < 0);  // complement of a positive class is negative definite
          for (std::size_t j = 0; j < i; ++j)
            CHECK(pair(w, split.complement_basis[j]) == QuadValue(0));
        }
      }
    }
  }
}

TEST_CASE("divisor text encoding round-trips") {
  Lattice lat = product_lattice(2);
  Divisor a = rat3(lat, 1, Rational(-7, 3), 0);
  CHECK(to_string(a) == "1,-7/3,0");
  CHECK(parse_divisor(lat, "1,-7/3,0") == a);

  Divisor b(lat, {QuadValue::make(0, Rational(1, 2), 2), QuadValue::make(0, 3, 2), QuadValue(1)});
  CHECK(to_string(b) == "1/2*sqrt(2),3*sqrt(2),1");
  CHECK(parse_divisor(lat, to_string(b)) == b);

  CHECK(code_of([&] { parse_divisor(lat, "1,2"); }) == errc::parse_error);
  CHECK(code_of([&] { parse_divisor(lat, "1,2,3,4"); }) == errc::parse_error);
  CHECK(code_of([&] { parse_divisor(lat, "1,,3"); }) == errc::parse_error);

  oracles::Rng rng(112358);
  for (int i = 0; i < 200; ++i) {
    Divisor d = rational_divisor(lat, rng.rational_vector(3));
    CHECK(parse_divisor(lat, to_string(d)) == d);
  }
}
