// nefcone: exact queries against the product-surface lattice model.
//
// Every number is printed in the exact text encoding ("p/q", "a+b*sqrt(d)");
// nothing is ever rounded except the SVG pixel coordinates, which are fixed
// two-decimal renderings applied identically on every run.

#include <CLI11.hpp>
#include <json.hpp>

#include <nefcone/cone.hpp>
#include <nefcone/criterion.hpp>
#include <nefcone/json_io.hpp>
#include <nefcone/lattice.hpp>
#include <nefcone/quad.hpp>
#include <nefcone/rational.hpp>
#include <nefcone/slice.hpp>
#include <nefcone/vojta.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

using namespace nefcone;
using namespace nefcone::lattice;
using cli::json;
using scalar::Rational;

namespace {

std::vector<Rational> parse_rational_list(const std::string& text) {
  std::vector<Rational> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    std::string piece =
        comma == std::string::npos ? text.substr(start) : text.substr(start, comma - start);
    out.push_back(scalar::parse_rational(piece));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

int parse_sign(const std::string& text) {
  if (text == "+" || text == "+1" || text == "1") return 1;
  if (text == "-" || text == "-1") return -1;
  fail(errc::parse_error, "--sign must be one of +1, -1 (got '" + text + "')");
}

int member_exit_code(cone::MembershipStatus s) {
  switch (s) {
    case cone::MembershipStatus::CERTIFIED_IN: return 0;
    case cone::MembershipStatus::CERTIFIED_OUT: return 2;
    case cone::MembershipStatus::UNKNOWN: return 3;
  }
  return 3;
}

int criterion_exit_code(cone::CriterionOverall o) {
  switch (o) {
    case cone::CriterionOverall::NON_POLYHEDRAL_CERTIFIED: return 0;
    case cone::CriterionOverall::HYPOTHESIS_FAILED: return 2;
    case cone::CriterionOverall::NON_POLYHEDRAL_EVIDENCE: return 3;
  }
  return 3;
}

const char* yesno(bool b) { return b ? "yes" : "no"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact nef/psef cone toolkit for a product surface C x C"};
  app.require_subcommand(1);
  app.fallthrough();

  int genus = 2;
  std::string extra_block;
  bool as_json = false;
  app.add_option("--genus", genus, "curve genus (0 selects the quadric P1 x P1 model)")
      ->check(CLI::Range(0, 1 << 20));
  app.add_option("--extra-block", extra_block,
                 "comma-separated negative self-intersections appended as a diagonal block");
  app.add_flag("--json", as_json, "emit structured JSON instead of plain text");

  auto build_lattice = [&]() -> Lattice {
    Lattice lat = genus == 0 ? p1_x_p1_lattice() : product_lattice(genus);
    if (!extra_block.empty()) lat = extend_with_negative_block(lat, parse_rational_list(extra_block));
    return lat;
  };

  int exit_code = 0;

  // ---- gram ----------------------------------------------------------------
  CLI::App* cmd_gram = app.add_subcommand("gram", "print the Gram matrix of the lattice");
  cmd_gram->callback([&] {
    Lattice lat = build_lattice();
    if (as_json) {
      std::cout << cli::gram_to_json(lat).dump(2) << "\n";
      return;
    }
    std::cout << "# basis:";
    for (const std::string& label : lat.basis_labels()) std::cout << ' ' << label;
    std::cout << "\n";
    for (const auto& row : lat.gram()) {
      for (std::size_t j = 0; j < row.size(); ++j)
        std::cout << (j ? " " : "") << scalar::to_string(row[j]);
      std::cout << "\n";
    }
  });

  // ---- signature -----------------------------------------------------------
  CLI::App* cmd_signature =
      app.add_subcommand("signature", "signature (n+, n-, n0) of the intersection form");
  cmd_signature->callback([&] {
    Lattice lat = build_lattice();
    Signature sig = signature(lat.gram());
    if (as_json) {
      json j{{"n_plus", sig.n_plus}, {"n_minus", sig.n_minus}, {"n_zero", sig.n_zero},
             {"text", to_string(sig)}};
      std::cout << j.dump(2) << "\n";
      return;
    }
    std::cout << to_string(sig) << "\n";
  });

  // ---- pair ----------------------------------------------------------------
  std::vector<std::string> pair_classes;
  CLI::App* cmd_pair = app.add_subcommand("pair", "intersection pairing of two classes");
  cmd_pair->add_option("--class", pair_classes, "class coordinates, e.g. 0,0,1 (give twice)");
  cmd_pair->callback([&] {
    if (pair_classes.size() != 2)
      fail(errc::invalid_argument, "pair needs exactly two --class arguments");
    Lattice lat = build_lattice();
    Divisor a = parse_divisor(lat, pair_classes[0]);
    Divisor b = parse_divisor(lat, pair_classes[1]);
    scalar::QuadValue value = pair(a, b);
    if (as_json) {
      json j{{"a", to_string(a)}, {"b", to_string(b)}, {"value", scalar::to_string(value)}};
      std::cout << j.dump(2) << "\n";
      return;
    }
    std::cout << scalar::to_string(value) << "\n";
  });

  // ---- vojta ---------------------------------------------------------------
  std::string vj_r, vj_s, vj_sign = "+1";
  CLI::App* cmd_vojta = app.add_subcommand("vojta", "the class Y(r,s) and its nef certification");
  cmd_vojta->add_option("-r", vj_r, "family parameter r (positive rational)")->required();
  cmd_vojta->add_option("-s", vj_s, "family parameter s (positive rational)")->required();
  cmd_vojta->add_option("--sign", vj_sign, "sign of the delta coefficient (+1 or -1)");
  cmd_vojta->callback([&] {
    vojta::VojtaParams params = vojta::vojta_params(genus, scalar::parse_rational(vj_r),
                                                    scalar::parse_rational(vj_s),
                                                    parse_sign(vj_sign));
    Lattice lat = build_lattice();
    Divisor y = vojta::vojta_class(params, lat);
    if (as_json) {
      json j = cli::to_json(params);
      j["threshold"] = scalar::to_string(vojta::nef_threshold(params.g, params.s));
      j["certified_nef"] = vojta::is_nef_certified(params);
      j["class"] = to_string(y);
      j["self_intersection"] = scalar::to_string(pair(y, y));
      std::cout << j.dump(2) << "\n";
      return;
    }
    std::cout << to_string(y) << "\n";
  });

  // ---- separate ------------------------------------------------------------
  std::string sep_target;
  int sep_radius = vojta::SeparatorBudget{}.s_grid_radius;
  long long sep_max_k = 1LL << 20;
  CLI::App* cmd_separate =
      app.add_subcommand("separate", "search for a nef separator certifying --target not psef");
  cmd_separate->add_option("--target", sep_target, "target class coordinates")->required();
  cmd_separate->add_option("--s-radius", sep_radius, "s sweeps powers of two with |exponent| <= radius");
  cmd_separate->add_option("--max-k", sep_max_k, "cap on the family index k");
  cmd_separate->callback([&] {
    Lattice lat = build_lattice();
    Divisor target = parse_divisor(lat, sep_target);
    vojta::SeparatorBudget budget;
    budget.s_grid_radius = sep_radius;
    budget.max_k = scalar::Int(sep_max_k);
    std::optional<vojta::Separator> sep = vojta::find_separator(lat, target, budget);
    if (!sep) {
      std::cout << json{{"result", "NONE_FOUND"}}.dump(2) << "\n";
      exit_code = 3;
      return;
    }
    std::cout << cli::to_json(*sep).dump(2) << "\n";
  });

  // ---- member --------------------------------------------------------------
  std::string mem_class, mem_cone = "nef";
  CLI::App* cmd_member = app.add_subcommand("member", "certified cone membership for a class");
  cmd_member->add_option("--class", mem_class, "class coordinates")->required();
  cmd_member->add_option("--cone", mem_cone, "which cone to test: nef or psef")
      ->check(CLI::IsMember({"nef", "psef"}));
  cmd_member->callback([&] {
    Lattice lat = build_lattice();
    Divisor alpha = parse_divisor(lat, mem_class);
    cone::ConeKind which = mem_cone == "psef" ? cone::ConeKind::PSEF : cone::ConeKind::NEF;
    cone::Verdict verdict = cone::membership(lat, alpha, which);
    if (as_json) {
      std::cout << cli::to_json(verdict).dump(2) << "\n";
    } else {
      std::cout << cone::to_string(verdict.status) << "\n";
      if (!verdict.detail.empty()) std::cout << verdict.detail << "\n";
    }
    exit_code = member_exit_code(verdict.status);
  });

  // ---- criterion -----------------------------------------------------------
  std::string cr_h, cr_e, cr_f, cr_m = "1";
  CLI::App* cmd_criterion =
      app.add_subcommand("criterion", "run the non-polyhedrality criterion end to end");
  cmd_criterion->set_help_flag("--help", "print help");  // frees -h for the ample class
  cmd_criterion->add_option("--h", cr_h, "ample reference class (default: (e1+e2)/2)");
  cmd_criterion->add_option("--e", cr_e, "boundary class to probe along (default: e2)");
  cmd_criterion->add_option("--f", cr_f, "direction spanning the probe line (default: delta)");
  cmd_criterion->add_option("-m", cr_m, "weight of the f-component in P_t");
  cmd_criterion->callback([&] {
    Lattice lat = build_lattice();
    Divisor h = cr_h.empty() ? cone::reference_ample(lat) : parse_divisor(lat, cr_h);
    Divisor e = cr_e.empty() ? basis_divisor(lat, 1) : parse_divisor(lat, cr_e);
    Divisor f = [&] {
      if (!cr_f.empty()) return parse_divisor(lat, cr_f);
      if (lat.product_rank() == 3) return basis_divisor(lat, 2);
      fail(errc::invalid_argument, "no default direction on rank-2 lattices; pass --f");
    }();
    cone::CriterionOptions opts;
    opts.m = scalar::parse_rational(cr_m);
    cone::CriterionReport report = cone::check_criterion(lat, h, e, f, opts);
    if (as_json) {
      std::cout << cli::to_json(report).dump(2) << "\n";
    } else {
      std::cout << "hypotheses: e_nonzero=" << yesno(report.hypothesis_e_nonzero)
                << " e_null=" << yesno(report.hypothesis_e_null)
                << " e_boundary=" << yesno(report.hypothesis_e_boundary)
                << " f_nonzero=" << yesno(report.hypothesis_f_nonzero)
                << " ef_orthogonal=" << yesno(report.hypothesis_ef_orthogonal)
                << " f_in_h_perp=" << yesno(report.hypothesis_f_in_h_perp) << "\n";
      std::cout << "e_nef: " << cone::to_string(report.e_nef_verdict.status) << "\n";
      std::cout << "line_condition: " << cone::to_string(report.line_condition.kind) << " ("
                << report.line_condition.certified_out.size() << "/"
                << report.line_condition.tested.size() << " probes certified out)\n";
      if (report.onset)
        std::cout << "positivity_onset: " << scalar::to_string(*report.onset) << "\n";
      std::cout << "overall: " << cone::to_string(report.overall) << "\n";
    }
    exit_code = criterion_exit_code(report.overall);
  });

  // ---- slice ---------------------------------------------------------------
  int sl_grid = 64;
  std::string sl_extent = "2", sl_csv = "slice.csv", sl_svg = "slice.svg";
  CLI::App* cmd_slice =
      app.add_subcommand("slice", "rasterize the affine slice (alpha . h0) = 1 to CSV and SVG");
  cmd_slice->add_option("--grid", sl_grid, "samples per axis (>= 2)");
  cmd_slice->add_option("--extent", sl_extent, "grid covers [-extent, extent]^2");
  cmd_slice->add_option("--csv", sl_csv, "output CSV path");
  cmd_slice->add_option("--svg", sl_svg, "output SVG path");
  cmd_slice->callback([&] {
    Lattice lat = build_lattice();
    cli::SliceOptions opts;
    opts.grid_n = sl_grid;
    opts.extent = scalar::parse_rational(sl_extent);
    std::vector<cli::SliceSample> samples = cli::compute_slice(lat, opts);
    cli::write_text_file(sl_csv, cli::slice_csv(samples));
    cli::write_text_file(sl_svg, cli::slice_svg(lat, samples, opts));
    std::cout << "wrote " << sl_csv << " and " << sl_svg << " (" << samples.size()
              << " samples)\n";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  return exit_code;
}
