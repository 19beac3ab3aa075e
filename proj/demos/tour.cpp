// A short guided tour at genus 2: the lattice, a nef Vojta class, a
// separator, and the non-polyhedrality criterion, all in exact arithmetic.

#include <nefcone/cone.hpp>
#include <nefcone/criterion.hpp>
#include <nefcone/lattice.hpp>
#include <nefcone/vojta.hpp>

#include <iostream>

using namespace nefcone;
using namespace nefcone::lattice;
using scalar::Rational;

int main() {
  Lattice lat = product_lattice(2);

  std::cout << "Gram matrix (basis";
  for (const auto& label : lat.basis_labels()) std::cout << " " << label;
  std::cout << "):\n";
  for (const auto& row : lat.gram()) {
    for (std::size_t j = 0; j < row.size(); ++j)
      std::cout << (j ? "\t" : "\t") << scalar::to_string(row[j]);
    std::cout << "\n";
  }
  std::cout << "signature: " << to_string(signature(lat.gram())) << "\n\n";

  // The nef threshold for s = 1 at genus 2 is (g+s)(g-1)/s = 3.
  Rational s = 1;
  std::cout << "nef threshold at s=1: " << scalar::to_string(vojta::nef_threshold(2, s))
            << "\n";

  // r = 12 sits in the rational subfamily r = (g+s) k^2 with k = 2.
  vojta::VojtaParams params = vojta::vojta_params(2, 12, s, 1);
  Divisor y = vojta::vojta_class(params, lat);
  std::cout << "Y(12,1) = " << to_string(y) << "  (self-intersection "
            << scalar::to_string(pair(y, y)) << ")\n";
  cone::Verdict nef = cone::nef_membership(lat, y);
  std::cout << "nef oracle: " << cone::to_string(nef.status) << " -- " << nef.detail << "\n\n";

  // The perturbed fiber e2 + delta is not pseudoeffective; exhibit a witness.
  Divisor target = basis_divisor(lat, 1) + basis_divisor(lat, 2);
  auto sep = vojta::find_separator(lat, target);
  if (sep) {
    std::cout << "separator for " << to_string(target) << ": Y(r,s) with r="
              << scalar::to_string(sep->params.r) << ", s=" << scalar::to_string(sep->params.s)
              << ", sign=" << sep->params.sign << "\n";
    std::cout << "  nef margin " << scalar::to_string(sep->nef_margin) << ", pairing "
              << scalar::to_string(sep->pairing) << " < 0\n\n";
  }

  // End to end: the nef cone of C x C has infinitely many extremal-ray
  // candidates accumulating at e2, so it cannot be polyhedral.
  cone::CriterionReport report =
      cone::check_criterion(lat, cone::reference_ample(lat), basis_divisor(lat, 1),
                            basis_divisor(lat, 2));
  std::cout << "criterion: " << cone::to_string(report.overall) << " (line condition "
            << cone::to_string(report.line_condition.kind) << ")\n";
  if (report.onset)
    std::cout << "P_t self-intersection turns positive at t = "
              << scalar::to_string(*report.onset) << "\n";
  return 0;
}
