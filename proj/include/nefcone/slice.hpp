#pragma once

#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "nefcone/cone.hpp"
#include "nefcone/lattice.hpp"

// Affine slice of the cone pair through the plane {pair(a, h0) = 1}: classes
// a = 2 h0 + (u/2)(e1 - e2) + v delta = (1 + u/2, 1 - u/2, v) sampled on a
// regular grid, each labeled with its nef and psef verdicts, emitted as CSV
// and as an SVG raster. All geometry is computed in exact rationals and only
// converted to fixed two-decimal pixel strings at the very end, so identical
// flags produce byte-identical files.

namespace nefcone::cli {

using lattice::Divisor;
using lattice::Lattice;
using scalar::Rational;

struct SliceSample {
  Rational u;
  Rational v;
  Divisor alpha;
  cone::MembershipStatus nef;
  cone::MembershipStatus psef;
};

struct SliceOptions {
  int grid_n = 64;      // samples per axis, >= 2
  Rational extent = 2;  // grid covers [-extent, extent]^2
};

inline Divisor slice_class(const Lattice& lat, const Rational& u, const Rational& v) {
  return lattice::rational_divisor(lat, {1 + u / 2, 1 - u / 2, v});
}

// Row-major grid: v ascends in the outer loop, u in the inner one.
inline std::vector<SliceSample> compute_slice(const Lattice& lat, const SliceOptions& opts) {
  if (!lat.is_product() || lat.rank() != 3 || !lat.genus() || *lat.genus() < 1)
    fail(errc::not_product_lattice, "slices need the rank-3 product model (genus >= 1)");
  if (opts.grid_n < 2) fail(errc::invalid_argument, "slice grid needs at least 2 samples per axis");
  if (opts.extent <= 0) fail(errc::invalid_argument, "slice extent must be positive");

  const Divisor h0 = cone::reference_ample(lat);
  std::vector<SliceSample> samples;
  samples.reserve(static_cast<std::size_t>(opts.grid_n) * opts.grid_n);
  for (int j = 0; j < opts.grid_n; ++j) {
    const Rational v = -opts.extent + 2 * opts.extent * j / (opts.grid_n - 1);
    for (int i = 0; i < opts.grid_n; ++i) {
      const Rational u = -opts.extent + 2 * opts.extent * i / (opts.grid_n - 1);
      Divisor alpha = slice_class(lat, u, v);
      if (!(lattice::pair(alpha, h0) == scalar::QuadValue(1)))
        fail(errc::precondition_violated, "slice class left the level plane");
      auto nef = cone::nef_membership(lat, alpha).status;
      auto psef = cone::psef_membership(lat, alpha).status;
      samples.push_back(SliceSample{u, v, std::move(alpha), nef, psef});
    }
  }
  return samples;
}

// Exact points of the null conic 2xy = 2g z^2 restricted to the slice, where
// it becomes the ellipse (u/2)^2 + g v^2 = 1 with rational parametrization
// u = 2 - 4/(1 + 4g t^2), v = 4t/(1 + 4g t^2). The list opens and closes at
// the rational point (2, 0) so the polyline is a closed loop.
inline std::vector<std::pair<Rational, Rational>> conic_overlay_points(int g) {
  if (g < 1) fail(errc::invalid_argument, "the null conic needs genus >= 1");
  std::vector<std::pair<Rational, Rational>> pts;
  pts.emplace_back(2, 0);
  for (int k = -64; k <= 64; ++k) {
    const Rational t(k, 16);
    const Rational den = 1 + 4 * g * t * t;
    pts.emplace_back(2 - Rational(4) / den, 4 * t / den);
  }
  pts.emplace_back(2, 0);
  return pts;
}

inline std::string slice_csv(const std::vector<SliceSample>& samples) {
  std::string out = "u,v,x,y,z,nef,psef\n";
  for (const SliceSample& s : samples) {
    out += scalar::to_string(s.u);
    out += ',';
    out += scalar::to_string(s.v);
    for (const auto& c : s.alpha.coords()) {
      out += ',';
      out += scalar::to_string(c);
    }
    out += ',';
    out += cone::to_string(s.nef);
    out += ',';
    out += cone::to_string(s.psef);
    out += '\n';
  }
  return out;
}

namespace detail {

// Fixed two-decimal rendering (round half up), the only lossy step in the
// pipeline; applied identically on every run.
inline std::string fixed2(const Rational& q) {
  scalar::Int n = scalar::rat_floor(q * 100 + Rational(1, 2));
  const bool neg = n < 0;
  scalar::Int a = neg ? scalar::Int(-n) : n;
  scalar::Int whole = a / 100;
  scalar::Int frac = a % 100;
  std::string f = frac.str();
  if (f.size() < 2) f.insert(f.begin(), '0');
  return (neg ? "-" : "") + whole.str() + "." + f;
}

}  // namespace detail

inline std::string slice_svg(const Lattice& lat, const std::vector<SliceSample>& samples,
                             const SliceOptions& opts) {
  const int n = opts.grid_n;
  const Rational extent = opts.extent;
  const Rational margin = 40;
  const Rational plot = 560;  // square plot area
  const Rational width = margin * 2 + plot;
  const Rational height = margin * 2 + plot + 52;  // room for the legend row

  auto px = [&](const Rational& u) { return margin + (u + extent) / (2 * extent) * plot; };
  auto py = [&](const Rational& v) { return margin + (extent - v) / (2 * extent) * plot; };

  auto nef_color = [](cone::MembershipStatus s) {
    switch (s) {
      case cone::MembershipStatus::CERTIFIED_IN: return "#2e7d32";
      case cone::MembershipStatus::CERTIFIED_OUT: return "#c62828";
      case cone::MembershipStatus::UNKNOWN: return "#bdbdbd";
    }
    return "#bdbdbd";
  };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + detail::fixed2(width) +
         "\" height=\"" + detail::fixed2(height) + "\" viewBox=\"0 0 " + detail::fixed2(width) +
         " " + detail::fixed2(height) + "\">\n";
  svg += "<defs>\n";
  svg += "<pattern id=\"psefhatch\" patternUnits=\"userSpaceOnUse\" width=\"6\" height=\"6\">"
         "<path d=\"M0,6 L6,0\" stroke=\"#0d47a1\" stroke-width=\"1\"/></pattern>\n";
  svg += "<pattern id=\"psefdots\" patternUnits=\"userSpaceOnUse\" width=\"8\" height=\"8\">"
         "<circle cx=\"2\" cy=\"2\" r=\"1\" fill=\"#424242\"/></pattern>\n";
  svg += "</defs>\n";
  svg += "<rect width=\"" + detail::fixed2(width) + "\" height=\"" + detail::fixed2(height) +
         "\" fill=\"#ffffff\"/>\n";

  const Rational cell = plot / n;
  std::string cell_s = detail::fixed2(cell);
  // raster: cell (i, j) covers the sample at u index i, v index j
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const SliceSample& s = samples[static_cast<std::size_t>(j) * n + i];
      const std::string x = detail::fixed2(margin + cell * i);
      const std::string y = detail::fixed2(margin + cell * (n - 1 - j));
      svg += "<rect x=\"" + x + "\" y=\"" + y + "\" width=\"" + cell_s + "\" height=\"" + cell_s +
             "\" fill=\"" + nef_color(s.nef) + "\"/>\n";
      if (s.psef == cone::MembershipStatus::CERTIFIED_IN)
        svg += "<rect x=\"" + x + "\" y=\"" + y + "\" width=\"" + cell_s + "\" height=\"" +
               cell_s + "\" fill=\"url(#psefhatch)\"/>\n";
      else if (s.psef == cone::MembershipStatus::UNKNOWN)
        svg += "<rect x=\"" + x + "\" y=\"" + y + "\" width=\"" + cell_s + "\" height=\"" +
               cell_s + "\" fill=\"url(#psefdots)\"/>\n";
    }
  }

  // axes through the origin of the (u, v) chart
  svg += "<line x1=\"" + detail::fixed2(px(-extent)) + "\" y1=\"" + detail::fixed2(py(0)) +
         "\" x2=\"" + detail::fixed2(px(extent)) + "\" y2=\"" + detail::fixed2(py(0)) +
         "\" stroke=\"#000000\" stroke-width=\"0.5\" stroke-dasharray=\"4,3\"/>\n";
  svg += "<line x1=\"" + detail::fixed2(px(0)) + "\" y1=\"" + detail::fixed2(py(-extent)) +
         "\" x2=\"" + detail::fixed2(px(0)) + "\" y2=\"" + detail::fixed2(py(extent)) +
         "\" stroke=\"#000000\" stroke-width=\"0.5\" stroke-dasharray=\"4,3\"/>\n";

  // null conic 2xy = 2g z^2 restricted to the slice
  svg += "<polyline fill=\"none\" stroke=\"#000000\" stroke-width=\"1.5\" points=\"";
  bool first = true;
  for (const auto& [u, v] : conic_overlay_points(*lat.genus())) {
    if (!first) svg += " ";
    svg += detail::fixed2(px(u)) + "," + detail::fixed2(py(v));
    first = false;
  }
  svg += "\"/>\n";

  svg += "<rect x=\"" + detail::fixed2(margin) + "\" y=\"" + detail::fixed2(margin) +
         "\" width=\"" + detail::fixed2(plot) + "\" height=\"" + detail::fixed2(plot) +
         "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1\"/>\n";

  // legend
  const Rational ly = margin * 2 + plot;
  auto legend_swatch = [&](const Rational& x, const std::string& fill, const std::string& label) {
    std::string piece;
    piece += "<rect x=\"" + detail::fixed2(x) + "\" y=\"" + detail::fixed2(ly) +
             "\" width=\"14\" height=\"14\" fill=\"" + fill + "\" stroke=\"#000000\" "
             "stroke-width=\"0.5\"/>\n";
    piece += "<text x=\"" + detail::fixed2(x + 19) + "\" y=\"" + detail::fixed2(ly + 12) +
             "\" font-family=\"monospace\" font-size=\"12\">" + label + "</text>\n";
    return piece;
  };
  svg += legend_swatch(margin, "#2e7d32", "nef");
  svg += legend_swatch(margin + 90, "#c62828", "not nef");
  svg += legend_swatch(margin + 210, "#bdbdbd", "nef unknown");
  svg += legend_swatch(margin + 360, "url(#psefhatch)", "psef");
  svg += legend_swatch(margin + 470, "url(#psefdots)", "psef unknown");
  svg += "<text x=\"" + detail::fixed2(margin) + "\" y=\"" + detail::fixed2(ly + 40) +
         "\" font-family=\"monospace\" font-size=\"12\">slice pair(a,h0)=1, genus " +
         std::to_string(*lat.genus()) + ", axes u=(e1-e2)/2, v=delta, curve 2xy=2gz^2</text>\n";
  svg += "</svg>\n";
  return svg;
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(errc::io_error, "cannot open '" + path + "' for writing");
  out << content;
  out.flush();
  if (!out) fail(errc::io_error, "failed while writing '" + path + "'");
}

}  // namespace nefcone::cli
