#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nefcone/quad.hpp"
#include "nefcone/rational.hpp"

// Rank-rho lattices carrying a symmetric rational Gram matrix of signature
// (1, rho-1, 0) together with registries of known-effective and known-nef
// classes. The two concrete families are the hyperbolic plane (genus 0) and
// the rank-3 product model with basis (e1, e2, delta) and delta^2 = -2g,
// optionally extended by an abstract negative-definite block.

namespace nefcone::lattice {

using scalar::Int;
using scalar::QuadValue;
using scalar::Rational;

using RationalMatrix = std::vector<std::vector<Rational>>;

namespace detail {

struct LatticeData {
  int rank = 0;
  RationalMatrix gram;
  std::vector<std::string> basis_labels;
  std::optional<int> genus;
  // rank of the underlying product block: 2 for the genus-0 model, 3 for the
  // genus >= 1 model; coordinates beyond it belong to an abstract extension
  int product_rank = 0;
  std::vector<std::pair<std::string, std::vector<Rational>>> effective_registry;
  std::vector<std::pair<std::string, std::vector<Rational>>> nef_registry;
};

}  // namespace detail

class Divisor;

class Lattice {
 public:
  int rank() const { return data_->rank; }
  const RationalMatrix& gram() const { return data_->gram; }
  const std::vector<std::string>& basis_labels() const { return data_->basis_labels; }
  std::optional<int> genus() const { return data_->genus; }
  int product_rank() const { return data_->product_rank; }
  bool is_product() const { return data_->product_rank == data_->rank; }

  std::vector<Divisor> known_effective() const;
  std::vector<Divisor> known_nef() const;
  std::vector<std::string> known_effective_labels() const;
  std::vector<std::string> known_nef_labels() const;

  friend bool operator==(const Lattice& a, const Lattice& b) {
    if (a.data_ == b.data_) return true;
    return a.data_->rank == b.data_->rank && a.data_->gram == b.data_->gram &&
           a.data_->genus == b.data_->genus && a.data_->product_rank == b.data_->product_rank;
  }
  friend bool operator!=(const Lattice& a, const Lattice& b) { return !(a == b); }

 private:
  explicit Lattice(std::shared_ptr<const detail::LatticeData> data) : data_(std::move(data)) {}

  std::shared_ptr<const detail::LatticeData> data_;

  friend Lattice product_lattice(int g);
  friend Lattice p1_x_p1_lattice();
  friend Lattice extend_with_negative_block(const Lattice& base, const std::vector<Rational>& diag);
};

class Divisor {
 public:
  Divisor(Lattice lattice, std::vector<QuadValue> coords)
      : lattice_(std::move(lattice)), coords_(std::move(coords)) {
    if (static_cast<int>(coords_.size()) != lattice_.rank())
      fail(errc::lattice_mismatch, "coordinate count does not match lattice rank");
    Int radicand = 1;
    for (const QuadValue& c : coords_) {
      if (c.radicand() == 1) continue;
      if (radicand == 1)
        radicand = c.radicand();
      else if (radicand != c.radicand())
        fail(errc::incompatible_field, "divisor mixes radicands sqrt(" + radicand.str() +
                                           ") and sqrt(" + c.radicand().str() + ")");
    }
  }

  const Lattice& lattice() const { return lattice_; }
  const std::vector<QuadValue>& coords() const { return coords_; }
  const QuadValue& operator[](std::size_t i) const { return coords_[i]; }
  std::size_t size() const { return coords_.size(); }

  bool is_zero() const {
    for (const QuadValue& c : coords_)
      if (!c.is_zero()) return false;
    return true;
  }

  bool is_rational() const {
    for (const QuadValue& c : coords_)
      if (!c.is_rational()) return false;
    return true;
  }

  std::vector<Rational> rational_coords() const {
    std::vector<Rational> out;
    out.reserve(coords_.size());
    for (const QuadValue& c : coords_) out.push_back(c.as_rational());
    return out;
  }

  friend bool operator==(const Divisor& a, const Divisor& b) {
    return a.lattice_ == b.lattice_ && a.coords_ == b.coords_;
  }
  friend bool operator!=(const Divisor& a, const Divisor& b) { return !(a == b); }

 private:
  Lattice lattice_;
  std::vector<QuadValue> coords_;
};

inline Divisor divisor(const Lattice& lat, std::vector<QuadValue> coords) {
  return Divisor(lat, std::move(coords));
}

inline Divisor rational_divisor(const Lattice& lat, const std::vector<Rational>& coords) {
  std::vector<QuadValue> qs(coords.begin(), coords.end());
  return Divisor(lat, std::move(qs));
}

inline Divisor basis_divisor(const Lattice& lat, int index) {
  if (index < 0 || index >= lat.rank()) fail(errc::invalid_argument, "basis index out of range");
  std::vector<QuadValue> coords(lat.rank());
  coords[index] = QuadValue(1);
  return Divisor(lat, std::move(coords));
}

inline Divisor zero_divisor(const Lattice& lat) {
  return Divisor(lat, std::vector<QuadValue>(lat.rank()));
}

inline std::vector<Divisor> Lattice::known_effective() const {
  std::vector<Divisor> out;
  for (const auto& [label, coords] : data_->effective_registry)
    out.push_back(rational_divisor(*this, coords));
  return out;
}

inline std::vector<Divisor> Lattice::known_nef() const {
  std::vector<Divisor> out;
  for (const auto& [label, coords] : data_->nef_registry)
    out.push_back(rational_divisor(*this, coords));
  return out;
}

inline std::vector<std::string> Lattice::known_effective_labels() const {
  std::vector<std::string> out;
  for (const auto& [label, coords] : data_->effective_registry) out.push_back(label);
  return out;
}

inline std::vector<std::string> Lattice::known_nef_labels() const {
  std::vector<std::string> out;
  for (const auto& [label, coords] : data_->nef_registry) out.push_back(label);
  return out;
}

inline void require_same_lattice(const Divisor& a, const Divisor& b) {
  if (a.lattice() != b.lattice()) fail(errc::lattice_mismatch, "divisors live in different lattices");
}

inline Divisor operator+(const Divisor& a, const Divisor& b) {
  require_same_lattice(a, b);
  std::vector<QuadValue> coords;
  coords.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) coords.push_back(a[i] + b[i]);
  return Divisor(a.lattice(), std::move(coords));
}

inline Divisor operator-(const Divisor& a, const Divisor& b) {
  require_same_lattice(a, b);
  std::vector<QuadValue> coords;
  coords.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) coords.push_back(a[i] - b[i]);
  return Divisor(a.lattice(), std::move(coords));
}

inline Divisor operator-(const Divisor& a) {
  std::vector<QuadValue> coords;
  coords.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) coords.push_back(-a[i]);
  return Divisor(a.lattice(), std::move(coords));
}

inline Divisor operator*(const QuadValue& c, const Divisor& a) {
  std::vector<QuadValue> coords;
  coords.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) coords.push_back(c * a[i]);
  return Divisor(a.lattice(), std::move(coords));
}

inline Divisor operator*(const Divisor& a, const QuadValue& c) { return c * a; }

// The intersection pairing a^T . gram . b, exact.
inline QuadValue pair(const Divisor& a, const Divisor& b) {
  require_same_lattice(a, b);
  const RationalMatrix& g = a.lattice().gram();
  QuadValue total;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    QuadValue row;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (g[i][j] == 0 || b[j].is_zero()) continue;
      row += QuadValue(g[i][j]) * b[j];
    }
    total += a[i] * row;
  }
  return total;
}

inline Lattice product_lattice(int g) {
  if (g < 1)
    fail(errc::invalid_argument,
         "product_lattice requires genus >= 1 (the genus-0 surface needs the rank-2 model)");
  auto data = std::make_shared<detail::LatticeData>();
  data->rank = 3;
  data->gram = {{0, 1, 0}, {1, 0, 0}, {0, 0, Rational(-2 * g)}};
  data->basis_labels = {"e1", "e2", "delta"};
  data->genus = g;
  data->product_rank = 3;
  data->effective_registry = {{"e1", {1, 0, 0}}, {"e2", {0, 1, 0}}, {"Delta", {1, 1, 1}}};
  data->nef_registry = {{"e1", {1, 0, 0}}, {"e2", {0, 1, 0}}};
  return Lattice(std::move(data));
}

inline Lattice p1_x_p1_lattice() {
  auto data = std::make_shared<detail::LatticeData>();
  data->rank = 2;
  data->gram = {{0, 1}, {1, 0}};
  data->basis_labels = {"e1", "e2"};
  data->genus = 0;
  data->product_rank = 2;
  data->effective_registry = {{"e1", {1, 0}}, {"e2", {0, 1}}};
  data->nef_registry = {{"e1", {1, 0}}, {"e2", {0, 1}}};
  return Lattice(std::move(data));
}

// Block-diagonal extension by an abstract negative-definite block; registry
// classes are carried over with zero coordinates on the new directions.
inline Lattice extend_with_negative_block(const Lattice& base, const std::vector<Rational>& diag) {
  if (diag.empty()) return base;
  for (const Rational& d : diag)
    if (d >= 0)
      fail(errc::invalid_argument,
           "extension block must be negative definite; got diagonal entry " + scalar::to_string(d));

  auto data = std::make_shared<detail::LatticeData>();
  const int n = base.rank();
  const int m = static_cast<int>(diag.size());
  data->rank = n + m;
  data->gram.assign(n + m, std::vector<Rational>(n + m, Rational(0)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) data->gram[i][j] = base.gram()[i][j];
  for (int k = 0; k < m; ++k) data->gram[n + k][n + k] = diag[k];
  data->basis_labels = base.basis_labels();
  for (int k = 0; k < m; ++k) data->basis_labels.push_back("x" + std::to_string(k + 1));
  data->genus = base.genus();
  data->product_rank = base.product_rank();

  auto pad = [&](std::vector<Rational> coords) {
    coords.resize(n + m, Rational(0));
    return coords;
  };
  for (const auto& [label, coords] : base.data_->effective_registry)
    data->effective_registry.emplace_back(label, pad(coords));
  for (const auto& [label, coords] : base.data_->nef_registry)
    data->nef_registry.emplace_back(label, pad(coords));
  return Lattice(std::move(data));
}

struct Signature {
  int n_plus = 0;
  int n_minus = 0;
  int n_zero = 0;

  friend bool operator==(const Signature&, const Signature&) = default;
};

inline std::string to_string(const Signature& s) {
  return "(" + std::to_string(s.n_plus) + "," + std::to_string(s.n_minus) + "," +
         std::to_string(s.n_zero) + ")";
}

// Inertia of a symmetric rational matrix by exact congruence diagonalization.
// Zero pivots are repaired by swapping in a nonzero diagonal entry or, when
// the whole trailing diagonal vanishes, by the hyperbolic substitution
// x = u + v, y = u - v (add row/column j into row/column k).
inline Signature signature(RationalMatrix m) {
  const std::size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n) fail(errc::invalid_argument, "signature requires a square matrix");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (m[i][j] != m[j][i]) fail(errc::invalid_argument, "signature requires a symmetric matrix");

  Signature sig;
  auto swap_rc = [&](std::size_t a, std::size_t b) {
    std::swap(m[a], m[b]);
    for (std::size_t i = 0; i < n; ++i) std::swap(m[i][a], m[i][b]);
  };
  auto add_rc = [&](std::size_t dst, std::size_t src) {
    for (std::size_t j = 0; j < n; ++j) m[dst][j] += m[src][j];
    for (std::size_t i = 0; i < n; ++i) m[i][dst] += m[i][src];
  };

  for (std::size_t k = 0; k < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t pivot_row = n;
      for (std::size_t j = k + 1; j < n; ++j)
        if (m[j][j] != 0) {
          pivot_row = j;
          break;
        }
      if (pivot_row < n) {
        swap_rc(k, pivot_row);
      } else {
        std::size_t partner = n;
        for (std::size_t j = k + 1; j < n; ++j)
          if (m[k][j] != 0) {
            partner = j;
            break;
          }
        if (partner == n) {
          ++sig.n_zero;  // row k is identically zero on the trailing block
          continue;
        }
        add_rc(k, partner);  // makes m[k][k] = 2 m[k][partner] != 0
      }
    }
    const Rational pivot = m[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      if (m[i][k] == 0) continue;
      const Rational factor = m[i][k] / pivot;
      for (std::size_t j = 0; j < n; ++j) m[i][j] -= factor * m[k][j];
      for (std::size_t j = 0; j < n; ++j) m[j][i] -= factor * m[j][k];
    }
    if (pivot > 0)
      ++sig.n_plus;
    else
      ++sig.n_minus;
  }
  return sig;
}

inline Signature signature(const Lattice& lat) { return signature(lat.gram()); }

namespace detail {

// Clears denominators, divides out the integer content and normalizes the
// leading sign, so split bases are reported in a canonical primitive form.
inline std::vector<Rational> primitive_scale(const std::vector<Rational>& v) {
  Int lcm_den = 1;
  for (const Rational& c : v) lcm_den = boost::multiprecision::lcm(lcm_den, denominator(c));
  Int gcd_num = 0;
  std::vector<Int> ints;
  ints.reserve(v.size());
  for (const Rational& c : v) {
    Int w = numerator(c) * (lcm_den / denominator(c));
    ints.push_back(w);
    gcd_num = boost::multiprecision::gcd(gcd_num, w);
  }
  if (gcd_num == 0) return std::vector<Rational>(v.size(), Rational(0));
  int lead = 0;
  for (const Int& w : ints)
    if (w != 0) {
      lead = (w > 0) ? 1 : -1;
      break;
    }
  std::vector<Rational> out;
  out.reserve(v.size());
  for (const Int& w : ints) out.emplace_back(lead < 0 ? Int(-w / gcd_num) : Int(w / gcd_num));
  return out;
}

}  // namespace detail

struct OrthogonalSplit {
  QuadValue h_norm_sq;
  std::vector<Divisor> complement_basis;
};

// Orthogonal complement of a positive class h: projects the standard basis
// onto h^perp and Gram-Schmidt-reduces it over exact rationals. No attempt is
// made to normalize norms to -1 (that would leave the fixed quadratic field);
// every returned vector is primitive-integer scaled and has strictly negative
// self-intersection, which is all the downstream sign arguments need.
inline OrthogonalSplit orthogonal_split(const Lattice& lat, const Divisor& h) {
  if (h.lattice() != lat) fail(errc::lattice_mismatch, "divisor belongs to another lattice");
  if (!h.is_rational())
    fail(errc::invalid_argument, "orthogonal_split requires rational coordinates");
  QuadValue h_norm = pair(h, h);
  if (h_norm.sign() <= 0)
    fail(errc::nonpositive_norm, "orthogonal_split requires pair(h,h) > 0, got " +
                                     scalar::to_string(h_norm));
  const Rational hh = h_norm.as_rational();
  const std::vector<Rational> hc = h.rational_coords();
  const int n = lat.rank();

  std::vector<std::vector<Rational>> basis;  // accepted orthogonal vectors in h^perp
  std::vector<Rational> norms;
  for (int i = 0; i < n && static_cast<int>(basis.size()) < n - 1; ++i) {
    // candidate (h.h) e_i - (e_i.h) h lies in h^perp by construction
    Divisor ei = basis_divisor(lat, i);
    Rational eih = pair(ei, h).as_rational();
    std::vector<Rational> w(n, Rational(0));
    w[i] = hh;
    for (int j = 0; j < n; ++j) w[j] -= eih * hc[j];

    auto pair_raw = [&](const std::vector<Rational>& a, const std::vector<Rational>& b) {
      Rational total = 0;
      const RationalMatrix& g = lat.gram();
      for (int p = 0; p < n; ++p) {
        if (a[p] == 0) continue;
        for (int q = 0; q < n; ++q) total += a[p] * g[p][q] * b[q];
      }
      return total;
    };

    for (std::size_t b = 0; b < basis.size(); ++b) {
      Rational coeff = pair_raw(w, basis[b]) / norms[b];
      if (coeff == 0) continue;
      for (int j = 0; j < n; ++j) w[j] -= coeff * basis[b][j];
    }
    bool zero = true;
    for (const Rational& c : w)
      if (c != 0) {
        zero = false;
        break;
      }
    if (zero) continue;
    w = detail::primitive_scale(w);
    Rational wn = pair_raw(w, w);
    if (wn >= 0)
      fail(errc::precondition_violated,
           "complement vector with nonnegative norm; lattice signature is not (1, rank-1, 0)");
    basis.push_back(std::move(w));
    norms.push_back(std::move(wn));
  }
  if (static_cast<int>(basis.size()) != n - 1)
    fail(errc::precondition_violated, "failed to span the orthogonal complement");

  OrthogonalSplit out{h_norm, {}};
  for (const auto& v : basis) out.complement_basis.push_back(rational_divisor(lat, v));
  return out;
}

// "x,y,z" with components in the quadratic-value encoding.
inline std::string to_string(const Divisor& d) {
  std::string s;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (i) s += ",";
    s += scalar::to_string(d[i]);
  }
  return s;
}

inline Divisor parse_divisor(const Lattice& lat, std::string_view text) {
  std::vector<QuadValue> coords;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = text.find(',', start);
    std::string_view piece =
        comma == std::string_view::npos ? text.substr(start) : text.substr(start, comma - start);
    coords.push_back(scalar::parse_quad(piece));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (static_cast<int>(coords.size()) != lat.rank())
    fail(errc::parse_error, "expected " + std::to_string(lat.rank()) + " coordinates, got " +
                                std::to_string(coords.size()));
  return Divisor(lat, std::move(coords));
}

}  // namespace nefcone::lattice
