#include <catch2/catch_amalgamated.hpp>

#include <optional>
#include <variant>
#include <vector>

#include "nefcone/cone.hpp"
#include "oracles.hpp"

using namespace nefcone;
using namespace nefcone::cone;
using lattice::Divisor;
using lattice::Lattice;
using lattice::basis_divisor;
using lattice::extend_with_negative_block;
using lattice::p1_x_p1_lattice;
using lattice::product_lattice;
using lattice::rational_divisor;
using scalar::Int;
using scalar::QuadValue;
using scalar::Rational;

namespace {

Divisor rat3(const Lattice& lat, const Rational& x, const Rational& y, const Rational& z) {
  return rational_divisor(lat, {x, y, z});
}

}  // namespace

TEST_CASE("reference ample class") {
  Lattice g2 = product_lattice(2);
  CHECK(reference_ample(g2) == rat3(g2, Rational(1, 2), Rational(1, 2), 0));
  CHECK(lattice::pair(reference_ample(g2), reference_ample(g2)) == QuadValue(Rational(1, 2)));

  Lattice quadric = p1_x_p1_lattice();
  CHECK(reference_ample(quadric) ==
        rational_divisor(quadric, {Rational(1, 2), Rational(1, 2)}));

  Lattice ext = extend_with_negative_block(g2, {-1});
  CHECK(reference_ample(ext) == rational_divisor(ext, {Rational(1, 2), Rational(1, 2), 0, 0}));
}

TEST_CASE("nef verdicts at genus 2, frozen cases") {
  Lattice lat = product_lattice(2);

  // fibers and their nonnegative combinations are nef
  Verdict v = nef_membership(lat, rat3(lat, Rational(1, 2), Rational(1, 2), 0));
  CHECK(v.status == MembershipStatus::CERTIFIED_IN);
  const auto* comb = std::get_if<CombinationCertificate>(&v.certificate);
  REQUIRE(comb);
  REQUIRE(comb->terms.size() == 2);
  CHECK(comb->terms[0].label == "e1");
  CHECK(comb->terms[0].weight == Rational(1, 2));
  CHECK(comb->terms[1].label == "e2");
  CHECK(verify_verdict(lat, rat3(lat, Rational(1, 2), Rational(1, 2), 0), v));

  CHECK(nef_membership(lat, basis_divisor(lat, 0)).status == MembershipStatus::CERTIFIED_IN);

  // the diagonal has negative self-intersection, caught by its own registry entry
  Verdict diag = nef_membership(lat, rat3(lat, 1, 1, 1));
  CHECK(diag.status == MembershipStatus::CERTIFIED_OUT);
  const auto* vp = std::get_if<ViolatedPairingCertificate>(&diag.certificate);
  REQUIRE(vp);
  CHECK(vp->label == "Delta");
  CHECK(vp->value == QuadValue(-2));
  CHECK_FALSE(vp->self);
  CHECK(verify_verdict(lat, rat3(lat, 1, 1, 1), diag));

  // negative self-intersection with all registry pairings clean
  Verdict anti = nef_membership(lat, rat3(lat, 1, 1, -1));
  CHECK(anti.status == MembershipStatus::CERTIFIED_OUT);
  const auto* self_vp = std::get_if<ViolatedPairingCertificate>(&anti.certificate);
  REQUIRE(self_vp);
  CHECK(self_vp->self);
  CHECK(self_vp->value == QuadValue(-2));
  CHECK(verify_verdict(lat, rat3(lat, 1, 1, -1), anti));
}

TEST_CASE("nef certification through the Vojta decomposition") {
  Lattice lat = product_lattice(2);

  // Y(12, 1, +1) itself
  Verdict v = nef_membership(lat, rat3(lat, Rational(1, 2), 6, 1));
  CHECK(v.status == MembershipStatus::CERTIFIED_IN);
  const auto* comb = std::get_if<CombinationCertificate>(&v.certificate);
  REQUIRE(comb);
  REQUIRE(comb->terms.size() == 1);
  REQUIRE(comb->terms[0].vojta_params.has_value());
  CHECK(comb->terms[0].vojta_params->r == 12);
  CHECK(comb->terms[0].vojta_params->s == 1);
  CHECK(comb->terms[0].vojta_params->sign == 1);
  CHECK(comb->terms[0].weight == 1);
  CHECK(verify_verdict(lat, rat3(lat, Rational(1, 2), 6, 1), v));

  // same class plus half a fiber
  Verdict w = nef_membership(lat, rat3(lat, 1, 6, 1));
  CHECK(w.status == MembershipStatus::CERTIFIED_IN);
  const auto* comb2 = std::get_if<CombinationCertificate>(&w.certificate);
  REQUIRE(comb2);
  REQUIRE(comb2->terms.size() == 2);
  CHECK(comb2->terms[0].label == "Y(r,s)");
  CHECK(comb2->terms[1].label == "e1");
  CHECK(comb2->terms[1].weight == Rational(1, 2));
  CHECK(verify_verdict(lat, rat3(lat, 1, 6, 1), w));

  // negative delta coefficient picks the sign -1 member
  Verdict neg = nef_membership(lat, rat3(lat, 1, 6, -1));
  CHECK(neg.status == MembershipStatus::CERTIFIED_IN);
  const auto* comb3 = std::get_if<CombinationCertificate>(&neg.certificate);
  REQUIRE(comb3);
  CHECK(comb3->terms[0].vojta_params->sign == -1);
  CHECK(verify_verdict(lat, rat3(lat, 1, 6, -1), neg));
}

TEST_CASE("nef oracle is honestly three-valued at genus 2") {
  Lattice lat = product_lattice(2);
  // all necessary conditions hold but no implemented sufficient one applies:
  // z = 1 forces s y^2 > z^2 (g+s)^2, which no s > 0 satisfies for y = 1
  Verdict v = nef_membership(lat, rat3(lat, 3, 1, 1));
  CHECK(v.status == MembershipStatus::UNKNOWN);
  CHECK(std::holds_alternative<std::monostate>(v.certificate));
  CHECK(verify_verdict(lat, rat3(lat, 3, 1, 1), v));
}

TEST_CASE("perturbed fibers are certifiably not nef") {
  Lattice lat = product_lattice(2);
  // e2 + delta pairs negatively with the diagonal
  Verdict big_q = nef_membership(lat, rat3(lat, 0, 1, 1));
  CHECK(big_q.status == MembershipStatus::CERTIFIED_OUT);
  // e2 + delta/100 survives every registry pairing but has negative square
  Verdict small_q = nef_membership(lat, rat3(lat, 0, 1, Rational(1, 100)));
  CHECK(small_q.status == MembershipStatus::CERTIFIED_OUT);
  const auto* vp = std::get_if<ViolatedPairingCertificate>(&small_q.certificate);
  REQUIRE(vp);
  CHECK(vp->self);
  CHECK(vp->value == QuadValue(Rational(-1, 2500)));  // -2g q^2
}

TEST_CASE("psef verdicts at genus 2, frozen cases") {
  Lattice lat = product_lattice(2);

  // the diagonal is registered effective
  Verdict diag = psef_membership(lat, rat3(lat, 1, 1, 1));
  CHECK(diag.status == MembershipStatus::CERTIFIED_IN);
  const auto* comb = std::get_if<CombinationCertificate>(&diag.certificate);
  REQUIRE(comb);
  REQUIRE(comb->terms.size() == 1);
  CHECK(comb->terms[0].label == "Delta");
  CHECK(comb->terms[0].weight == 1);
  CHECK(verify_verdict(lat, rat3(lat, 1, 1, 1), diag));

  // interior point: certified by bigness, not by combination
  Verdict big = psef_membership(lat, rat3(lat, 1, 1, 0));
  CHECK(big.status == MembershipStatus::CERTIFIED_IN);
  const auto* bc = std::get_if<BignessCertificate>(&big.certificate);
  REQUIRE(bc);
  CHECK(bc->self_intersection == QuadValue(2));
  CHECK(bc->ample_pairing == QuadValue(1));
  CHECK(verify_verdict(lat, rat3(lat, 1, 1, 0), big));

  // e2 + delta is separated by Y(12,1,+1)
  Verdict sep = psef_membership(lat, rat3(lat, 0, 1, 1));
  CHECK(sep.status == MembershipStatus::CERTIFIED_OUT);
  const auto* sc = std::get_if<SeparatorCertificate>(&sep.certificate);
  REQUIRE(sc);
  CHECK(sc->separator.params.r == 12);
  CHECK(sc->separator.params.s == 1);
  CHECK(sc->separator.params.sign == 1);
  CHECK(sc->separator.pairing == QuadValue(Rational(-7, 2)));
  CHECK(verify_verdict(lat, rat3(lat, 0, 1, 1), sep));

  // negative fiber coefficient violates a registered nef class
  Verdict neg = psef_membership(lat, rat3(lat, -1, 0, 0));
  CHECK(neg.status == MembershipStatus::CERTIFIED_OUT);
  const auto* vp = std::get_if<ViolatedPairingCertificate>(&neg.certificate);
  REQUIRE(vp);
  CHECK(vp->label == "e2");
  CHECK(vp->value == QuadValue(-1));
  CHECK(verify_verdict(lat, rat3(lat, -1, 0, 0), neg));

  // honest UNKNOWN: (1,1,-1) passes every check but admits no certificate
  Verdict unknown = psef_membership(lat, rat3(lat, 1, 1, -1));
  CHECK(unknown.status == MembershipStatus::UNKNOWN);
  CHECK(verify_verdict(lat, rat3(lat, 1, 1, -1), unknown));

  // a big class stays big regardless of the sign of z
  CHECK(psef_membership(lat, rat3(lat, 3, 1, 1)).status == MembershipStatus::CERTIFIED_IN);
}

TEST_CASE("genus-0 membership matches the quadrant exactly") {
  Lattice lat = p1_x_p1_lattice();
  CHECK(nef_membership(lat, rational_divisor(lat, {3, 5})).status ==
        MembershipStatus::CERTIFIED_IN);
  Verdict out = nef_membership(lat, rational_divisor(lat, {-1, 2}));
  CHECK(out.status == MembershipStatus::CERTIFIED_OUT);
  const auto* vp = std::get_if<ViolatedPairingCertificate>(&out.certificate);
  REQUIRE(vp);
  CHECK(vp->label == "e2");

  oracles::Rng rng(10203040);
  for (int i = 0; i < 1000; ++i) {
    Rational x = rng.rational(60, 20);
    Rational y = rng.rational(60, 20);
    Divisor alpha = rational_divisor(lat, {x, y});
    Verdict nef = nef_membership(lat, alpha);
    Verdict psef = psef_membership(lat, alpha);
    const bool in_quadrant = x >= 0 && y >= 0;
    CHECK(nef.status != MembershipStatus::UNKNOWN);
    CHECK(psef.status != MembershipStatus::UNKNOWN);
    CHECK((nef.status == MembershipStatus::CERTIFIED_IN) == in_quadrant);
    CHECK((psef.status == MembershipStatus::CERTIFIED_IN) == in_quadrant);
    CHECK(verify_verdict(lat, alpha, nef));
    CHECK(verify_verdict(lat, alpha, psef));
  }
}

TEST_CASE("genus-1 nef membership matches the round cone exactly") {
  Lattice lat = product_lattice(1);
  oracles::Rng rng(50607080);
  for (int i = 0; i < 1000; ++i) {
    Rational x = rng.rational(40, 20);
    Rational y = rng.rational(40, 20);
    Rational z = rng.rational(40, 20);
    Divisor alpha = rat3(lat, x, y, z);
    Verdict v = nef_membership(lat, alpha);
    // direct inequality oracle: (a.a) >= 0 and (a.h0) >= 0
    const bool in_round = 2 * x * y - 2 * z * z >= 0 && x + y >= 0;
    CHECK(v.status != MembershipStatus::UNKNOWN);
    CHECK((v.status == MembershipStatus::CERTIFIED_IN) == in_round);
    CHECK(verify_verdict(lat, alpha, v));
  }
}

TEST_CASE("genus-1 psef membership is decided within the null-ray height bound") {
  Lattice lat = product_lattice(1);

  // frozen: e2 + delta pairs -1 with the null ray (1,1,1)
  Verdict out = psef_membership(lat, rat3(lat, 0, 1, 1));
  CHECK(out.status == MembershipStatus::CERTIFIED_OUT);
  const auto* vp = std::get_if<ViolatedPairingCertificate>(&out.certificate);
  REQUIRE(vp);
  CHECK(vp->label == "null-ray");
  CHECK(vp->witness == rat3(lat, 1, 1, 1));
  CHECK(vp->value == QuadValue(-1));
  CHECK(verify_verdict(lat, rat3(lat, 0, 1, 1), out));

  // frozen: a boundary ray that is not a registry combination
  Verdict round = psef_membership(lat, rat3(lat, 4, 1, 2));
  CHECK(round.status == MembershipStatus::CERTIFIED_IN);
  CHECK(std::holds_alternative<RoundConeCertificate>(round.certificate));
  CHECK(verify_verdict(lat, rat3(lat, 4, 1, 2), round));

  oracles::Rng rng(90807060);
  for (int i = 0; i < 1000; ++i) {
    // small integer coordinates keep refutation witnesses within height 128
    Rational x = rng.integer(-30, 30);
    Rational y = rng.integer(-30, 30);
    Rational z = rng.integer(-30, 30);
    Divisor alpha = rat3(lat, x, y, z);
    Verdict v = psef_membership(lat, alpha);
    const bool in_round = 2 * x * y - 2 * z * z >= 0 && x + y >= 0;
    CHECK(v.status != MembershipStatus::UNKNOWN);
    CHECK((v.status == MembershipStatus::CERTIFIED_IN) == in_round);
    CHECK(verify_verdict(lat, alpha, v));
  }
}

TEST_CASE("membership on extended lattices stays sound") {
  Lattice ext = extend_with_negative_block(product_lattice(2), {-1});

  // padded fibers remain certified nef
  CHECK(nef_membership(ext, rational_divisor(ext, {0, 1, 0, 0})).status ==
        MembershipStatus::CERTIFIED_IN);
  // the new direction has negative square
  Verdict v = nef_membership(ext, rational_divisor(ext, {0, 0, 0, 1}));
  CHECK(v.status == MembershipStatus::CERTIFIED_OUT);
  const auto* vp = std::get_if<ViolatedPairingCertificate>(&v.certificate);
  REQUIRE(vp);
  CHECK(vp->self);
  // no separator machinery off the pure product model: honest UNKNOWN
  CHECK(psef_membership(ext, rational_divisor(ext, {0, 1, 1, 0})).status ==
        MembershipStatus::UNKNOWN);
  CHECK(psef_membership(ext, rational_divisor(ext, {0, 1, 0, Rational(1, 2)})).status ==
        MembershipStatus::UNKNOWN);
}

TEST_CASE("membership dispatcher") {
  Lattice lat = product_lattice(2);
  CHECK(membership(lat, rat3(lat, 1, 1, 0), ConeKind::NEF).status ==
        nef_membership(lat, rat3(lat, 1, 1, 0)).status);
  CHECK(membership(lat, rat3(lat, 0, 1, 1), ConeKind::PSEF).status ==
        MembershipStatus::CERTIFIED_OUT);
}

TEST_CASE("membership validates its inputs") {
  Lattice g2 = product_lattice(2);
  Lattice g3 = product_lattice(3);
  Divisor foreign = rat3(g3, 1, 1, 0);
  CHECK_THROWS_AS(nef_membership(g2, foreign), error);
  CHECK_THROWS_AS(psef_membership(g2, foreign), error);
  QuadValue root2 = QuadValue::sqrt(Rational(2));
  Divisor irrational(g2, {root2, root2, QuadValue(0)});
  CHECK_THROWS_AS(nef_membership(g2, irrational), error);
}

TEST_CASE("tampered certificates are rejected by the re-verifier") {
  Lattice lat = product_lattice(2);

  // separator tampering
  Divisor target = rat3(lat, 0, 1, 1);
  Verdict sep = psef_membership(lat, target);
  REQUIRE(sep.status == MembershipStatus::CERTIFIED_OUT);
  REQUIRE(verify_verdict(lat, target, sep));
  {
    Verdict bad = sep;
    std::get<SeparatorCertificate>(bad.certificate).separator.pairing =
        QuadValue(Rational(-7, 2)) + QuadValue(1);
    CHECK_FALSE(verify_verdict(lat, target, bad));
  }
  {
    Verdict bad = sep;
    std::get<SeparatorCertificate>(bad.certificate).separator.nef_margin = -1;
    CHECK_FALSE(verify_verdict(lat, target, bad));
  }
  {
    Verdict bad = sep;
    std::get<SeparatorCertificate>(bad.certificate).separator.params.r = 2;  // below threshold
    CHECK_FALSE(verify_verdict(lat, target, bad));
  }
  {
    Verdict bad = sep;
    std::get<SeparatorCertificate>(bad.certificate).separator.target = rat3(lat, 0, 1, 2);
    CHECK_FALSE(verify_verdict(lat, target, bad));
  }

  // combination tampering
  Divisor h0 = reference_ample(lat);
  Verdict comb = nef_membership(lat, h0);
  REQUIRE(comb.status == MembershipStatus::CERTIFIED_IN);
  {
    Verdict bad = comb;
    std::get<CombinationCertificate>(bad.certificate).terms[0].weight = Rational(-1, 2);
    CHECK_FALSE(verify_verdict(lat, h0, bad));
  }
  {
    Verdict bad = comb;
    std::get<CombinationCertificate>(bad.certificate).terms[0].weight = 1;  // sum mismatch
    CHECK_FALSE(verify_verdict(lat, h0, bad));
  }
  {
    Verdict bad = comb;
    // claim a class that is not actually registered under this label
    std::get<CombinationCertificate>(bad.certificate).terms[0].cls = rat3(lat, 2, 0, 0);
    CHECK_FALSE(verify_verdict(lat, h0, bad));
  }

  // violated-pairing tampering
  Divisor diag = rat3(lat, 1, 1, 1);
  Verdict out = nef_membership(lat, diag);
  REQUIRE(out.status == MembershipStatus::CERTIFIED_OUT);
  {
    Verdict bad = out;
    std::get<ViolatedPairingCertificate>(bad.certificate).value = QuadValue(-3);
    CHECK_FALSE(verify_verdict(lat, diag, bad));
  }
  {
    Verdict bad = out;
    // witness outside the registry (and not the class itself)
    auto& cert = std::get<ViolatedPairingCertificate>(bad.certificate);
    cert.witness = rat3(lat, 2, 2, 2);
    cert.value = QuadValue(-4);  // the true pairing, but an unregistered witness
    CHECK_FALSE(verify_verdict(lat, diag, bad));
  }

  // bigness tampering
  Divisor interior = rat3(lat, 1, 1, 0);
  Verdict big = psef_membership(lat, interior);
  REQUIRE(big.status == MembershipStatus::CERTIFIED_IN);
  {
    Verdict bad = big;
    std::get<BignessCertificate>(bad.certificate).self_intersection = QuadValue(3);
    CHECK_FALSE(verify_verdict(lat, interior, bad));
  }

  // status / certificate shape mismatches
  {
    Verdict bad = sep;
    bad.status = MembershipStatus::CERTIFIED_IN;
    CHECK_FALSE(verify_verdict(lat, target, bad));
  }
  {
    Verdict bad = sep;
    bad.cone = ConeKind::NEF;
    CHECK_FALSE(verify_verdict(lat, target, bad));
  }
  {
    Verdict bad;
    bad.status = MembershipStatus::UNKNOWN;
    bad.cone = ConeKind::PSEF;
    bad.certificate = BignessCertificate{QuadValue(1), QuadValue(1)};
    CHECK_FALSE(verify_verdict(lat, target, bad));
  }
  {
    // round-cone certificates are meaningless outside genus <= 1
    Verdict bad;
    bad.status = MembershipStatus::CERTIFIED_IN;
    bad.cone = ConeKind::PSEF;
    bad.certificate = RoundConeCertificate{QuadValue(2), QuadValue(1)};
    CHECK_FALSE(verify_verdict(lat, interior, bad));
  }
}

TEST_CASE("no class receives contradictory verdicts") {
  oracles::Rng rng(13243546);
  for (int g : {1, 2, 3}) {
    Lattice lat = product_lattice(g);
    for (int i = 0; i < 300; ++i) {
      Divisor alpha = rational_divisor(lat, rng.rational_vector(3, 40));
      Verdict nef = nef_membership(lat, alpha);
      Verdict psef = psef_membership(lat, alpha);
      // nef classes are pseudoeffective: IN for nef forbids OUT for psef
      if (nef.status == MembershipStatus::CERTIFIED_IN)
        CHECK(psef.status != MembershipStatus::CERTIFIED_OUT);
      // every non-UNKNOWN verdict must re-verify
      CHECK(verify_verdict(lat, alpha, nef));
      CHECK(verify_verdict(lat, alpha, psef));
    }
  }
}

TEST_CASE("certified nef and certified psef classes pair nonnegatively") {
  Lattice lat = product_lattice(2);
  oracles::Rng rng(778899);
  int pairs = 0;
  while (pairs < 500) {
    // certified-nef side: fiber combinations or Vojta-decomposable classes
    Divisor alpha = [&] {
      if (rng.integer(0, 1) == 0) {
        return rat3(lat, rng.positive_rational(30, 10), rng.positive_rational(30, 10), 0);
      }
      Rational y = rng.integer(4, 40);
      Rational x = Rational(3) / y + rng.positive_rational(20, 10);
      Rational z = rng.integer(0, 1) ? 1 : -1;
      return rat3(lat, x, y, z);
    }();
    // certified-psef side: effective combinations or big classes
    Divisor beta = [&] {
      if (rng.integer(0, 1) == 0) {
        Rational c1 = rng.positive_rational(10, 6);
        Rational c2 = rng.positive_rational(10, 6);
        Rational c3 = rng.positive_rational(10, 6);
        return rat3(lat, c1 + c3, c2 + c3, c3);
      }
      return rat3(lat, 2 + rng.positive_rational(10, 6), 2 + rng.positive_rational(10, 6),
                  rng.rational(1, 3));
    }();
    Verdict nef = nef_membership(lat, alpha);
    Verdict psef = psef_membership(lat, beta);
    REQUIRE(nef.status == MembershipStatus::CERTIFIED_IN);
    REQUIRE(psef.status == MembershipStatus::CERTIFIED_IN);
    CHECK(lattice::pair(alpha, beta).sign() >= 0);
    ++pairs;
  }
}
