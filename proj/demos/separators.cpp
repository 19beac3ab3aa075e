// Separator table: for each genus and each perturbation q, find a certified
// nef class pairing negatively with e2 + q*delta. The family index k grows
// roughly like 1/|q|, which is the quantitative footprint of the fact that
// e2 lies on the boundary of the psef cone.

#include <nefcone/lattice.hpp>
#include <nefcone/vojta.hpp>

#include <iomanip>
#include <iostream>

using namespace nefcone;
using namespace nefcone::lattice;
using scalar::Rational;

int main() {
  std::cout << std::left << std::setw(4) << "g" << std::setw(12) << "q" << std::setw(8) << "s"
            << std::setw(16) << "r" << std::setw(6) << "sign" << std::setw(14) << "nef margin"
            << "pairing\n";
  for (int g = 2; g <= 5; ++g) {
    Lattice lat = product_lattice(g);
    Divisor e2 = basis_divisor(lat, 1);
    Divisor delta = basis_divisor(lat, 2);
    for (Rational q : {Rational(1), Rational(-1), Rational(1, 10), Rational(-1, 10),
                       Rational(1, 100), Rational(-1, 100)}) {
      Divisor target = e2 + delta * q;
      auto sep = vojta::find_separator(lat, target);
      if (!sep) {
        std::cout << std::setw(4) << g << std::setw(12) << scalar::to_string(q)
                  << "none found\n";
        continue;
      }
      std::cout << std::setw(4) << g << std::setw(12) << scalar::to_string(q) << std::setw(8)
                << scalar::to_string(sep->params.s) << std::setw(16)
                << scalar::to_string(sep->params.r) << std::setw(6) << sep->params.sign
                << std::setw(14) << scalar::to_string(sep->nef_margin)
                << scalar::to_string(sep->pairing) << "\n";
    }
  }
  return 0;
}
