#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nefcone/cone.hpp"

// Mechanical verification of the non-polyhedrality criterion: given an ample
// direction h, a nonzero nef class e with (e.e) = 0 and a nonzero f with
// (e.f) = (f.h) = 0, no class e + q f with q != 0 may be pseudoeffective.
// When every hypothesis is certified the cone has infinitely many extremal
// rays, hence is not polyhedral. The engine re-derives the proof's segment
// P_t = t e + (1-t)(h' + m f), its factored self-intersection and the exact
// parameter t0 where the bracket turns positive.

namespace nefcone::cone {

// P_t = t e + (1-t)(h' + m f) with h' = (e.h) h.
inline Divisor pt_class(const Divisor& e, const Divisor& h, const Divisor& f, const Rational& m,
                        const Rational& t) {
  lattice::require_same_lattice(e, h);
  lattice::require_same_lattice(e, f);
  QuadValue eh = lattice::pair(e, h);
  Divisor h_prime = eh * h;
  return QuadValue(t) * e + QuadValue(Rational(1) - t) * (h_prime + QuadValue(m) * f);
}

namespace detail {

inline void require_orthogonality(const Divisor& e, const Divisor& h, const Divisor& f) {
  if (lattice::pair(e, e).sign() != 0)
    fail(errc::precondition_violated, "(e.e) must vanish");
  if (lattice::pair(e, f).sign() != 0)
    fail(errc::precondition_violated, "(e.f) must vanish");
  if (lattice::pair(h, f).sign() != 0)
    fail(errc::precondition_violated, "(h.f) must vanish");
}

}  // namespace detail

// Factored form (1-t) [ (1-t)(h'.h') + (1-t) m^2 (f.f) + 2 t (e.h') ] of
// pair(P_t, P_t); the orthogonality hypotheses it relies on are checked
// exactly before use.
inline QuadValue pt_self_intersection_factored(const Divisor& e, const Divisor& h,
                                               const Divisor& f, const Rational& m,
                                               const Rational& t) {
  lattice::require_same_lattice(e, h);
  lattice::require_same_lattice(e, f);
  detail::require_orthogonality(e, h, f);
  QuadValue eh = lattice::pair(e, h);
  Divisor h_prime = eh * h;
  QuadValue hp_sq = lattice::pair(h_prime, h_prime);
  QuadValue f_sq = lattice::pair(f, f);
  QuadValue ehp = lattice::pair(e, h_prime);
  QuadValue one_minus_t(Rational(1) - t);
  QuadValue bracket =
      one_minus_t * hp_sq + one_minus_t * QuadValue(m * m) * f_sq + QuadValue(2 * t) * ehp;
  return one_minus_t * bracket;
}

// Least t0 in [0,1) such that the bracket
//   B(t) = (1-t) [ (h'.h') + m^2 (f.f) ] + 2 t (e.h')^2-part
// is strictly positive on (t0, 1]. B is affine with B(1) = 2 (e.h)^2 > 0, so
// t0 = A / (A - 2 (e.h)^2) when A = (h'.h') + m^2 (f.f) < 0, and 0 otherwise.
inline Rational positivity_onset(const Divisor& e, const Divisor& h, const Divisor& f,
                                 const Rational& m) {
  lattice::require_same_lattice(e, h);
  lattice::require_same_lattice(e, f);
  detail::require_orthogonality(e, h, f);
  QuadValue eh = lattice::pair(e, h);
  if (eh.sign() <= 0) fail(errc::precondition_violated, "(e.h) must be positive");
  Divisor h_prime = eh * h;
  QuadValue a = lattice::pair(h_prime, h_prime) + QuadValue(m * m) * lattice::pair(f, f);
  QuadValue b_hat = lattice::pair(e, h_prime);  // equals (e.h)^2 > 0
  if (a.sign() >= 0) return Rational(0);
  return (a / (a - QuadValue(2) * b_hat)).as_rational();
}

// The bracket itself, exposed so its sign change across the onset can be
// checked independently.
inline QuadValue pt_bracket(const Divisor& e, const Divisor& h, const Divisor& f,
                            const Rational& m, const Rational& t) {
  detail::require_orthogonality(e, h, f);
  QuadValue eh = lattice::pair(e, h);
  Divisor h_prime = eh * h;
  QuadValue a = lattice::pair(h_prime, h_prime) + QuadValue(m * m) * lattice::pair(f, f);
  QuadValue b_hat = lattice::pair(e, h_prime);
  return QuadValue(Rational(1) - t) * a + QuadValue(2 * t) * b_hat;
}

enum class LineConditionKind { ANALYTIC, SAMPLED, FAILED };

inline const char* to_string(LineConditionKind k) {
  switch (k) {
    case LineConditionKind::ANALYTIC: return "ANALYTIC";
    case LineConditionKind::SAMPLED: return "SAMPLED";
    case LineConditionKind::FAILED: return "FAILED";
  }
  return "SAMPLED";
}

// Outcome of testing the punctured line {e + q f : q != 0} against the
// pseudoeffective cone. ANALYTIC: the closed-form separator family covers
// every offset at once. SAMPLED: finitely many offsets were tested, each
// either certified out or left undecided. FAILED: some sampled offset is
// certifiably pseudoeffective, refuting the hypothesis.
struct LineCondition {
  LineConditionKind kind = LineConditionKind::SAMPLED;
  std::vector<Rational> tested;         // offsets q actually evaluated
  std::vector<Rational> certified_out;  // offsets with a non-psef certificate
  std::optional<Rational> failed_offset;
  std::optional<Verdict> failed_verdict;
};

enum class CriterionOverall { NON_POLYHEDRAL_CERTIFIED, NON_POLYHEDRAL_EVIDENCE, HYPOTHESIS_FAILED };

inline const char* to_string(CriterionOverall o) {
  switch (o) {
    case CriterionOverall::NON_POLYHEDRAL_CERTIFIED: return "NON_POLYHEDRAL_CERTIFIED";
    case CriterionOverall::NON_POLYHEDRAL_EVIDENCE: return "NON_POLYHEDRAL_EVIDENCE";
    case CriterionOverall::HYPOTHESIS_FAILED: return "HYPOTHESIS_FAILED";
  }
  return "HYPOTHESIS_FAILED";
}

inline std::vector<Rational> default_line_offsets() {
  std::vector<Rational> out;
  for (int i = -3; i <= 3; ++i) {
    out.push_back(scalar::pow2(i));
    out.push_back(-scalar::pow2(i));
  }
  return out;
}

struct CriterionOptions {
  Rational m = 1;                       // mixing weight for the onset data
  std::vector<Rational> line_offsets = default_line_offsets();
  vojta::SeparatorBudget budget;
};

struct CriterionReport {
  bool hypothesis_e_nonzero = false;
  bool hypothesis_e_null = false;
  bool hypothesis_e_boundary = false;
  bool hypothesis_f_nonzero = false;
  bool hypothesis_ef_orthogonal = false;
  bool hypothesis_f_in_h_perp = false;
  Verdict e_nef_verdict;                // backs hypothesis_e_boundary
  LineCondition line_condition;
  std::optional<Rational> onset;        // positivity onset at the chosen m
  Rational m = 1;
  CriterionOverall overall = CriterionOverall::HYPOTHESIS_FAILED;

  bool all_hypotheses() const {
    return hypothesis_e_nonzero && hypothesis_e_null && hypothesis_e_boundary &&
           hypothesis_f_nonzero && hypothesis_ef_orthogonal && hypothesis_f_in_h_perp;
  }
};

namespace detail {

// The analytic line argument applies verbatim when e is the second fiber
// class and f is a nonzero rational multiple of delta on the pure rank-3
// product model: the separator family handles every offset q != 0 at once.
inline bool analytic_configuration(const Lattice& lat, const Divisor& e, const Divisor& f) {
  if (!lat.is_product() || lat.rank() != 3 || !lat.genus() || *lat.genus() < 2) return false;
  if (!e.is_rational() || !f.is_rational()) return false;
  const auto ec = e.rational_coords();
  if (!(ec[0] == 0 && ec[1] == 1 && ec[2] == 0)) return false;
  const auto fc = f.rational_coords();
  return fc[0] == 0 && fc[1] == 0 && fc[2] != 0;
}

}  // namespace detail

// Runs every hypothesis check of the non-polyhedrality criterion exactly and
// assembles a machine-checkable report. NON_POLYHEDRAL_CERTIFIED requires all
// hypotheses plus the analytic line condition; sampled line evidence alone
// yields NON_POLYHEDRAL_EVIDENCE.
inline CriterionReport check_criterion(const Lattice& lat, const Divisor& h, const Divisor& e,
                                       const Divisor& f, const CriterionOptions& opts = {}) {
  if (h.lattice() != lat || e.lattice() != lat || f.lattice() != lat)
    fail(errc::lattice_mismatch, "criterion inputs belong to another lattice");
  QuadValue h_sq = lattice::pair(h, h);
  if (h_sq.sign() <= 0)
    fail(errc::nonpositive_norm, "the criterion needs (h.h) > 0, got " + scalar::to_string(h_sq));

  CriterionReport report;
  report.m = opts.m;

  report.hypothesis_e_nonzero = !e.is_zero();
  report.hypothesis_e_null = lattice::pair(e, e).sign() == 0;
  report.hypothesis_f_nonzero = !f.is_zero();
  report.hypothesis_ef_orthogonal = lattice::pair(e, f).sign() == 0;
  report.hypothesis_f_in_h_perp = lattice::pair(f, h).sign() == 0;

  // boundary test: a certified-nef class with vanishing self-intersection
  // cannot be interior (interior classes are big, with positive square)
  report.e_nef_verdict = nef_membership(lat, e);
  report.hypothesis_e_boundary = report.e_nef_verdict.status == MembershipStatus::CERTIFIED_IN &&
                                 report.hypothesis_e_null && report.hypothesis_e_nonzero;

  if (report.all_hypotheses()) {
    if (detail::analytic_configuration(lat, e, f)) {
      report.line_condition.kind = LineConditionKind::ANALYTIC;
      // sanity probes at q = +-1: the closed form must really produce
      // separators, re-verified through independent pairings
      for (int q : {1, -1}) {
        Divisor probe = e + QuadValue(Rational(q)) * f;
        Verdict verdict = psef_membership(lat, probe, opts.budget);
        report.line_condition.tested.emplace_back(q);
        if (verdict.status == MembershipStatus::CERTIFIED_OUT &&
            verify_verdict(lat, probe, verdict)) {
          report.line_condition.certified_out.emplace_back(q);
        } else if (verdict.status == MembershipStatus::CERTIFIED_IN) {
          report.line_condition.kind = LineConditionKind::FAILED;
          report.line_condition.failed_offset = Rational(q);
          report.line_condition.failed_verdict = verdict;
          break;
        } else {
          report.line_condition.kind = LineConditionKind::SAMPLED;
        }
      }
    } else {
      report.line_condition.kind = LineConditionKind::SAMPLED;
      for (const Rational& q : opts.line_offsets) {
        if (q == 0) continue;
        Divisor probe = e + QuadValue(q) * f;
        Verdict verdict = psef_membership(lat, probe, opts.budget);
        report.line_condition.tested.push_back(q);
        if (verdict.status == MembershipStatus::CERTIFIED_OUT) {
          report.line_condition.certified_out.push_back(q);
        } else if (verdict.status == MembershipStatus::CERTIFIED_IN) {
          report.line_condition.kind = LineConditionKind::FAILED;
          report.line_condition.failed_offset = q;
          report.line_condition.failed_verdict = verdict;
          break;
        }
      }
    }
  }

  // contradiction data from the proof: where the factored self-intersection
  // of P_t turns positive (requires the orthogonality package and (e.h) > 0)
  if (report.hypothesis_e_null && report.hypothesis_ef_orthogonal &&
      report.hypothesis_f_in_h_perp && lattice::pair(e, h).sign() > 0) {
    report.onset = positivity_onset(e, h, f, opts.m);
  }

  if (!report.all_hypotheses() || report.line_condition.kind == LineConditionKind::FAILED) {
    report.overall = CriterionOverall::HYPOTHESIS_FAILED;
  } else if (report.line_condition.kind == LineConditionKind::ANALYTIC) {
    report.overall = CriterionOverall::NON_POLYHEDRAL_CERTIFIED;
  } else {
    report.overall = CriterionOverall::NON_POLYHEDRAL_EVIDENCE;
  }
  return report;
}

}  // namespace nefcone::cone
