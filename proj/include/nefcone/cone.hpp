#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "nefcone/lattice.hpp"
#include "nefcone/vojta.hpp"

// Three-valued membership oracles for the nef and pseudoeffective cones.
// CERTIFIED_IN and CERTIFIED_OUT always carry a certificate that an
// independent pairing computation can re-verify; UNKNOWN is an honest
// first-class answer wherever the implemented sufficient conditions do not
// apply (the exact cone boundaries for genus >= 2 are not fully known).

namespace nefcone::cone {

using lattice::Divisor;
using lattice::Lattice;
using scalar::Int;
using scalar::QuadValue;
using scalar::Rational;

enum class MembershipStatus { CERTIFIED_IN, CERTIFIED_OUT, UNKNOWN };
enum class ConeKind { NEF, PSEF };

inline const char* to_string(MembershipStatus s) {
  switch (s) {
    case MembershipStatus::CERTIFIED_IN: return "CERTIFIED_IN";
    case MembershipStatus::CERTIFIED_OUT: return "CERTIFIED_OUT";
    case MembershipStatus::UNKNOWN: return "UNKNOWN";
  }
  return "UNKNOWN";
}

inline const char* to_string(ConeKind c) { return c == ConeKind::NEF ? "NEF" : "PSEF"; }

// One summand of a conic-combination certificate. Registry terms carry the
// registry label; Vojta terms carry the parameters that regenerate the class.
struct WeightedTerm {
  Divisor cls;
  Rational weight;
  std::optional<vojta::VojtaParams> vojta_params;
  std::string label;
};

struct CombinationCertificate {
  std::vector<WeightedTerm> terms;
};

struct SeparatorCertificate {
  vojta::Separator separator;
};

// pair(target, witness) = value < 0 against a class the verdict's cone must
// pair nonnegatively with; self=true means the witness is the class itself.
struct ViolatedPairingCertificate {
  Divisor witness;
  QuadValue value;
  bool self = false;
  std::string label;
};

struct BignessCertificate {
  QuadValue self_intersection;  // > 0
  QuadValue ample_pairing;      // > 0 against the reference ample
};

// Genus <= 1 only: the cone is exactly {a^2 >= 0, a.h0 >= 0}.
struct RoundConeCertificate {
  QuadValue self_intersection;
  QuadValue ample_pairing;
};

using Certificate = std::variant<std::monostate, CombinationCertificate, SeparatorCertificate,
                                 ViolatedPairingCertificate, BignessCertificate,
                                 RoundConeCertificate>;

struct Verdict {
  MembershipStatus status = MembershipStatus::UNKNOWN;
  ConeKind cone = ConeKind::NEF;
  Certificate certificate;
  std::string detail;  // one-line human reason
};

inline Divisor reference_ample(const Lattice& lat) {
  if (lat.product_rank() < 2) fail(errc::not_product_lattice, "no reference ample class");
  std::vector<Rational> coords(lat.rank(), Rational(0));
  coords[0] = Rational(1, 2);
  coords[1] = Rational(1, 2);
  return lattice::rational_divisor(lat, coords);
}

namespace detail {

// Exact nonnegative-combination solver over a small registry: tries linearly
// independent subsets in deterministic order (size, then index) and solves
// each square-or-tall system by Gaussian elimination. By Caratheodory, if the
// target lies in the conic hull at all, some independent subset certifies it.
inline std::optional<std::vector<Rational>> nonneg_combination(
    const std::vector<std::vector<Rational>>& classes, const std::vector<Rational>& target) {
  const std::size_t m = classes.size();
  const std::size_t n = target.size();

  bool target_zero = true;
  for (const Rational& t : target)
    if (t != 0) {
      target_zero = false;
      break;
    }
  if (target_zero) return std::vector<Rational>(m, Rational(0));

  std::vector<std::vector<std::size_t>> subsets;
  for (unsigned mask = 1; mask < (1u << m); ++mask) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < m; ++i)
      if (mask & (1u << i)) s.push_back(i);
    subsets.push_back(std::move(s));
  }
  std::stable_sort(subsets.begin(), subsets.end(),
                   [](const auto& a, const auto& b) { return a.size() < b.size(); });

  for (const auto& subset : subsets) {
    const std::size_t cols = subset.size();
    if (cols > n) continue;
    // augmented matrix [A | target], columns = chosen classes
    std::vector<std::vector<Rational>> aug(n, std::vector<Rational>(cols + 1, Rational(0)));
    for (std::size_t j = 0; j < cols; ++j)
      for (std::size_t i = 0; i < n; ++i) aug[i][j] = classes[subset[j]][i];
    for (std::size_t i = 0; i < n; ++i) aug[i][cols] = target[i];

    bool dependent = false;
    std::size_t row = 0;
    std::vector<std::size_t> pivot_rows;
    for (std::size_t col = 0; col < cols; ++col) {
      std::size_t p = row;
      while (p < n && aug[p][col] == 0) ++p;
      if (p == n) {
        dependent = true;  // a smaller subset already covers this case
        break;
      }
      std::swap(aug[row], aug[p]);
      for (std::size_t i = 0; i < n; ++i) {
        if (i == row || aug[i][col] == 0) continue;
        Rational f = aug[i][col] / aug[row][col];
        for (std::size_t j = col; j <= cols; ++j) aug[i][j] -= f * aug[row][j];
      }
      pivot_rows.push_back(row);
      ++row;
    }
    if (dependent) continue;
    bool inconsistent = false;
    for (std::size_t i = row; i < n; ++i)
      if (aug[i][cols] != 0) {
        inconsistent = true;
        break;
      }
    if (inconsistent) continue;
    std::vector<Rational> weights(m, Rational(0));
    bool nonneg = true;
    for (std::size_t col = 0; col < cols; ++col) {
      Rational w = aug[pivot_rows[col]][cols] / aug[pivot_rows[col]][col];
      if (w < 0) {
        nonneg = false;
        break;
      }
      weights[subset[col]] = std::move(w);
    }
    if (!nonneg) continue;
    return weights;
  }
  return std::nullopt;
}

inline std::vector<std::vector<Rational>> registry_coords(const std::vector<Divisor>& divs) {
  std::vector<std::vector<Rational>> out;
  out.reserve(divs.size());
  for (const Divisor& d : divs) out.push_back(d.rational_coords());
  return out;
}

inline std::optional<CombinationCertificate> combination_over(
    const std::vector<Divisor>& registry, const std::vector<std::string>& labels,
    const Divisor& alpha) {
  auto weights = nonneg_combination(registry_coords(registry), alpha.rational_coords());
  if (!weights) return std::nullopt;
  CombinationCertificate cert;
  for (std::size_t i = 0; i < registry.size(); ++i) {
    if ((*weights)[i] == 0) continue;
    cert.terms.push_back(WeightedTerm{registry[i], (*weights)[i], std::nullopt, labels[i]});
  }
  return cert;
}

// Genus-1 only: a rational ray of the round cone pairing negatively with
// alpha, searched over the null classes (p^2, q^2, pq) by increasing height.
inline std::optional<Divisor> null_ray_witness(const Lattice& lat, const Divisor& alpha) {
  const Rational x = alpha[0].as_rational();
  const Rational y = alpha[1].as_rational();
  const Rational z = alpha[2].as_rational();
  for (int h = 1; h <= 128; ++h) {
    for (int p = 0; p <= h; ++p) {
      const int q = h - p;
      for (int sq : {1, -1}) {
        if (q == 0 && sq < 0) continue;
        Int pp = p, qq = Int(sq) * q;
        // pair((p^2, q^2, pq), (x,y,z)) at genus 1 is p^2 y + q^2 x - 2 p q z
        Rational value = Rational(pp * pp) * y + Rational(qq * qq) * x - 2 * Rational(pp * qq) * z;
        if (value < 0)
          return lattice::rational_divisor(
              lat, {Rational(pp * pp), Rational(qq * qq), Rational(pp * qq)});
      }
    }
  }
  return std::nullopt;
}

}  // namespace detail

// Nef membership. Sound in all cases; complete for genus 0 and genus 1.
// For genus >= 2 sufficiency goes through nonnegative combinations of the
// registered nef fibers and certified-nef Vojta classes.
inline Verdict nef_membership(const Lattice& lat, const Divisor& alpha) {
  if (alpha.lattice() != lat) fail(errc::lattice_mismatch, "class belongs to another lattice");
  if (!alpha.is_rational())
    fail(errc::invalid_argument, "membership oracles expect rational coordinates");

  Verdict v;
  v.cone = ConeKind::NEF;

  // a nef class pairs nonnegatively with every effective class
  const auto effective = lat.known_effective();
  const auto effective_labels = lat.known_effective_labels();
  for (std::size_t i = 0; i < effective.size(); ++i) {
    QuadValue value = lattice::pair(alpha, effective[i]);
    if (value.sign() < 0) {
      v.status = MembershipStatus::CERTIFIED_OUT;
      v.certificate = ViolatedPairingCertificate{effective[i], std::move(value), false,
                                                 effective_labels[i]};
      v.detail = "pairs negatively with the effective class " + effective_labels[i];
      return v;
    }
  }
  // a nef class on a surface has nonnegative self-intersection
  QuadValue self = lattice::pair(alpha, alpha);
  if (self.sign() < 0) {
    v.status = MembershipStatus::CERTIFIED_OUT;
    v.certificate = ViolatedPairingCertificate{alpha, std::move(self), true, "self"};
    v.detail = "negative self-intersection";
    return v;
  }

  const bool pure = lat.is_product();
  const std::optional<int> genus = lat.genus();

  if (pure && genus && *genus == 1) {
    // round cone: (a.a) >= 0 (already certified) and (a.h0) >= 0, which here
    // follows from x, y >= 0; record both values as the certificate
    QuadValue ample_pairing = lattice::pair(alpha, reference_ample(lat));
    if (ample_pairing.sign() >= 0) {
      v.status = MembershipStatus::CERTIFIED_IN;
      v.certificate = RoundConeCertificate{std::move(self), std::move(ample_pairing)};
      v.detail = "genus-1 round cone: (a.a) >= 0 and (a.h0) >= 0";
      return v;
    }
    v.status = MembershipStatus::UNKNOWN;  // unreachable: fiber pairings catch this
    v.detail = "no implemented certificate applies";
    return v;
  }

  if (auto cert = detail::combination_over(lat.known_nef(), lat.known_nef_labels(), alpha)) {
    v.status = MembershipStatus::CERTIFIED_IN;
    v.detail = "nonnegative combination of registered nef classes";
    v.certificate = std::move(*cert);
    return v;
  }

  if (pure && genus && *genus >= 2) {
    // decompose as |z| Y(r,s) + m1 e1 + m2 e2 with the exact choice
    // r = y^2 / (z^2 (g+s)), which makes a1 = (g+s)|z|/y and a2 = y/|z|
    // rational, m2 = 0 and m1 = x - (g+s) z^2 / y
    const int g = *genus;
    const Rational x = alpha[0].as_rational();
    const Rational y = alpha[1].as_rational();
    const Rational z = alpha[2].as_rational();
    if (z != 0 && x > 0 && y > 0) {
      const Rational lambda = z < 0 ? Rational(-z) : z;
      const int sign = z < 0 ? -1 : 1;
      vojta::SeparatorBudget budget;
      for (int exp : vojta::detail::centered_exponents(budget.s_grid_radius)) {
        const Rational s = scalar::pow2(exp);
        const Rational gs = Rational(g) + s;
        if (gs * z * z > x * y) continue;                  // m1 would be negative
        const Rational r = y * y / (lambda * lambda * gs);
        if (r <= vojta::nef_threshold(g, s)) continue;     // not certified nef
        vojta::VojtaParams params = vojta::vojta_params(g, r, s, sign);
        Divisor cls = vojta::vojta_class(params, lat);
        CombinationCertificate cert;
        cert.terms.push_back(WeightedTerm{std::move(cls), lambda, params, "Y(r,s)"});
        const Rational m1 = x - gs * z * z / y;
        if (m1 != 0)
          cert.terms.push_back(
              WeightedTerm{lattice::basis_divisor(lat, 0), m1, std::nullopt, "e1"});
        v.status = MembershipStatus::CERTIFIED_IN;
        v.certificate = std::move(cert);
        v.detail = "decomposes over a certified-nef Vojta class and the nef fibers";
        return v;
      }
    }
  }

  v.status = MembershipStatus::UNKNOWN;
  v.detail = "no implemented certificate applies";
  return v;
}

// Pseudoeffective membership. Sound in all cases; complete for genus 0 and
// (up to the null-ray search bound) genus 1; three-valued for genus >= 2.
inline Verdict psef_membership(const Lattice& lat, const Divisor& alpha,
                               const vojta::SeparatorBudget& budget = {}) {
  if (alpha.lattice() != lat) fail(errc::lattice_mismatch, "class belongs to another lattice");
  if (!alpha.is_rational())
    fail(errc::invalid_argument, "membership oracles expect rational coordinates");

  Verdict v;
  v.cone = ConeKind::PSEF;

  QuadValue self = lattice::pair(alpha, alpha);
  QuadValue ample_pairing = lattice::pair(alpha, reference_ample(lat));

  // big classes (positive square, positive degree) are interior psef points
  if (self.sign() > 0 && ample_pairing.sign() > 0) {
    v.status = MembershipStatus::CERTIFIED_IN;
    v.certificate = BignessCertificate{self, ample_pairing};
    v.detail = "big: (a.a) > 0 and (a.h0) > 0";
    return v;
  }

  if (auto cert =
          detail::combination_over(lat.known_effective(), lat.known_effective_labels(), alpha)) {
    v.status = MembershipStatus::CERTIFIED_IN;
    v.certificate = std::move(*cert);
    v.detail = "nonnegative combination of registered effective classes";
    return v;
  }

  // a psef class pairs nonnegatively with every nef class
  const auto nef = lat.known_nef();
  const auto nef_labels = lat.known_nef_labels();
  for (std::size_t i = 0; i < nef.size(); ++i) {
    QuadValue value = lattice::pair(alpha, nef[i]);
    if (value.sign() < 0) {
      v.status = MembershipStatus::CERTIFIED_OUT;
      v.certificate = ViolatedPairingCertificate{nef[i], std::move(value), false, nef_labels[i]};
      v.detail = "pairs negatively with the nef class " + nef_labels[i];
      return v;
    }
  }

  const bool pure = lat.is_product();
  const std::optional<int> genus = lat.genus();

  if (pure && genus && *genus == 1) {
    // the genus-1 psef cone coincides with the round nef cone
    if (self.sign() >= 0 && ample_pairing.sign() >= 0) {
      v.status = MembershipStatus::CERTIFIED_IN;
      v.certificate = RoundConeCertificate{std::move(self), std::move(ample_pairing)};
      v.detail = "genus-1 round cone: (a.a) >= 0 and (a.h0) >= 0";
      return v;
    }
    if (auto witness = detail::null_ray_witness(lat, alpha)) {
      QuadValue value = lattice::pair(alpha, *witness);
      v.status = MembershipStatus::CERTIFIED_OUT;
      v.certificate = ViolatedPairingCertificate{*witness, std::move(value), false, "null-ray"};
      v.detail = "pairs negatively with a rational ray of the round nef cone";
      return v;
    }
    v.status = MembershipStatus::UNKNOWN;
    v.detail = "no null ray found within the search height";
    return v;
  }

  if (pure && genus && *genus >= 2) {
    if (auto sep = vojta::find_separator(lat, alpha, budget)) {
      v.status = MembershipStatus::CERTIFIED_OUT;
      v.detail = "a certified-nef Vojta class pairs negatively with it";
      v.certificate = SeparatorCertificate{std::move(*sep)};
      return v;
    }
  }

  v.status = MembershipStatus::UNKNOWN;
  v.detail = "no implemented certificate applies";
  return v;
}

inline Verdict membership(const Lattice& lat, const Divisor& alpha, ConeKind cone) {
  return cone == ConeKind::NEF ? nef_membership(lat, alpha) : psef_membership(lat, alpha);
}

// Independent re-verification of a verdict's certificate: recomputes every
// pairing and decomposition from scratch and checks the claimed inequalities.
// Returns false rather than throwing when the certificate does not hold up.
inline bool verify_verdict(const Lattice& lat, const Divisor& alpha, const Verdict& verdict) {
  if (verdict.status == MembershipStatus::UNKNOWN)
    return std::holds_alternative<std::monostate>(verdict.certificate);

  const bool genus_le1 = lat.genus() && *lat.genus() <= 1 && lat.is_product();

  if (const auto* comb = std::get_if<CombinationCertificate>(&verdict.certificate)) {
    if (verdict.status != MembershipStatus::CERTIFIED_IN) return false;
    Divisor sum = lattice::zero_divisor(lat);
    const auto registry =
        verdict.cone == ConeKind::NEF ? lat.known_nef() : lat.known_effective();
    const auto labels = verdict.cone == ConeKind::NEF ? lat.known_nef_labels()
                                                      : lat.known_effective_labels();
    for (const WeightedTerm& term : comb->terms) {
      if (term.weight < 0) return false;
      if (term.vojta_params) {
        if (verdict.cone != ConeKind::NEF) return false;
        if (!vojta::is_nef_certified(*term.vojta_params)) return false;
        if (!(vojta::vojta_class(*term.vojta_params, lat) == term.cls)) return false;
      } else {
        bool registered = false;
        for (std::size_t i = 0; i < registry.size(); ++i)
          if (labels[i] == term.label && registry[i] == term.cls) {
            registered = true;
            break;
          }
        if (!registered) return false;
      }
      sum = sum + QuadValue(term.weight) * term.cls;
    }
    return sum == alpha;
  }

  if (const auto* sep = std::get_if<SeparatorCertificate>(&verdict.certificate)) {
    if (verdict.status != MembershipStatus::CERTIFIED_OUT || verdict.cone != ConeKind::PSEF)
      return false;
    const vojta::Separator& s = sep->separator;
    if (!(s.target == alpha)) return false;
    if (!vojta::is_nef_certified(s.params)) return false;
    if (vojta::nef_margin(s.params) != s.nef_margin || s.nef_margin <= 0) return false;
    QuadValue recomputed = lattice::pair(vojta::vojta_class(s.params, lat), alpha);
    return recomputed == s.pairing && recomputed.sign() < 0;
  }

  if (const auto* vp = std::get_if<ViolatedPairingCertificate>(&verdict.certificate)) {
    if (verdict.status != MembershipStatus::CERTIFIED_OUT) return false;
    QuadValue recomputed = lattice::pair(alpha, vp->witness);
    if (!(recomputed == vp->value) || recomputed.sign() >= 0) return false;
    if (vp->self) {
      // negative self-intersection refutes nefness only
      return verdict.cone == ConeKind::NEF && vp->witness == alpha;
    }
    const auto registry =
        verdict.cone == ConeKind::NEF ? lat.known_effective() : lat.known_nef();
    for (const Divisor& c : registry)
      if (c == vp->witness) return true;
    if (verdict.cone == ConeKind::PSEF && genus_le1) {
      // a rational null ray of the round nef cone is a legitimate witness
      QuadValue wsq = lattice::pair(vp->witness, vp->witness);
      QuadValue wh = lattice::pair(vp->witness, reference_ample(lat));
      return wsq.sign() == 0 && wh.sign() > 0;
    }
    return false;
  }

  if (const auto* big = std::get_if<BignessCertificate>(&verdict.certificate)) {
    if (verdict.status != MembershipStatus::CERTIFIED_IN || verdict.cone != ConeKind::PSEF)
      return false;
    QuadValue self = lattice::pair(alpha, alpha);
    QuadValue ah = lattice::pair(alpha, reference_ample(lat));
    return self == big->self_intersection && ah == big->ample_pairing && self.sign() > 0 &&
           ah.sign() > 0;
  }

  if (const auto* round = std::get_if<RoundConeCertificate>(&verdict.certificate)) {
    if (verdict.status != MembershipStatus::CERTIFIED_IN || !genus_le1) return false;
    QuadValue self = lattice::pair(alpha, alpha);
    QuadValue ah = lattice::pair(alpha, reference_ample(lat));
    return self == round->self_intersection && ah == round->ample_pairing && self.sign() >= 0 &&
           ah.sign() >= 0;
  }

  return false;
}

}  // namespace nefcone::cone
