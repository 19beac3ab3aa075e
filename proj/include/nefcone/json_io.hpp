#pragma once

#include <json.hpp>

#include <string>

#include "nefcone/cone.hpp"
#include "nefcone/criterion.hpp"
#include "nefcone/lattice.hpp"
#include "nefcone/vojta.hpp"

// JSON views of certificates, verdicts and criterion reports. Every numeric
// value is rendered in the exact text encoding ("p/q", "a+b*sqrt(d)"), never
// as a float, so serialized certificates re-verify bit-exactly. Insertion
// order is preserved to keep output stable across runs.

namespace nefcone::cli {

using json = nlohmann::ordered_json;

inline json to_json(const vojta::VojtaParams& p) {
  return json{{"g", std::to_string(p.g)},
              {"r", scalar::to_string(p.r)},
              {"s", scalar::to_string(p.s)},
              {"sign", std::to_string(p.sign)}};
}

inline json to_json(const vojta::Separator& sep) {
  json j = to_json(sep.params);
  j["threshold"] = scalar::to_string(vojta::nef_threshold(sep.params.g, sep.params.s));
  j["nef_margin"] = scalar::to_string(sep.nef_margin);
  j["target"] = lattice::to_string(sep.target);
  j["pairing"] = scalar::to_string(sep.pairing);
  return j;
}

inline json to_json(const cone::Certificate& certificate) {
  using namespace cone;
  if (const auto* comb = std::get_if<CombinationCertificate>(&certificate)) {
    json terms = json::array();
    for (const WeightedTerm& t : comb->terms) {
      json term{{"label", t.label},
                {"class", lattice::to_string(t.cls)},
                {"weight", scalar::to_string(t.weight)}};
      if (t.vojta_params) term["vojta"] = to_json(*t.vojta_params);
      terms.push_back(std::move(term));
    }
    return json{{"type", "combination"}, {"terms", std::move(terms)}};
  }
  if (const auto* sep = std::get_if<SeparatorCertificate>(&certificate)) {
    return json{{"type", "separator"}, {"separator", to_json(sep->separator)}};
  }
  if (const auto* vp = std::get_if<ViolatedPairingCertificate>(&certificate)) {
    return json{{"type", "violated_pairing"},
                {"witness", lattice::to_string(vp->witness)},
                {"value", scalar::to_string(vp->value)},
                {"self", vp->self},
                {"label", vp->label}};
  }
  if (const auto* big = std::get_if<BignessCertificate>(&certificate)) {
    return json{{"type", "bigness"},
                {"self_intersection", scalar::to_string(big->self_intersection)},
                {"ample_pairing", scalar::to_string(big->ample_pairing)}};
  }
  if (const auto* round = std::get_if<RoundConeCertificate>(&certificate)) {
    return json{{"type", "round_cone"},
                {"self_intersection", scalar::to_string(round->self_intersection)},
                {"ample_pairing", scalar::to_string(round->ample_pairing)}};
  }
  return json{{"type", "none"}};
}

inline json to_json(const cone::Verdict& v) {
  return json{{"cone", cone::to_string(v.cone)},
              {"status", cone::to_string(v.status)},
              {"detail", v.detail},
              {"certificate", to_json(v.certificate)}};
}

inline json to_json(const cone::LineCondition& lc) {
  json tested = json::array();
  for (const auto& q : lc.tested) tested.push_back(scalar::to_string(q));
  json out_list = json::array();
  for (const auto& q : lc.certified_out) out_list.push_back(scalar::to_string(q));
  json j{{"kind", cone::to_string(lc.kind)},
         {"tested", std::move(tested)},
         {"certified_out", std::move(out_list)}};
  if (lc.failed_offset) j["failed_offset"] = scalar::to_string(*lc.failed_offset);
  if (lc.failed_verdict) j["failed_verdict"] = to_json(*lc.failed_verdict);
  return j;
}

inline json to_json(const cone::CriterionReport& r) {
  json j;
  j["hypotheses"] = json{{"e_nonzero", r.hypothesis_e_nonzero},
                         {"e_null", r.hypothesis_e_null},
                         {"e_boundary", r.hypothesis_e_boundary},
                         {"f_nonzero", r.hypothesis_f_nonzero},
                         {"ef_orthogonal", r.hypothesis_ef_orthogonal},
                         {"f_in_h_perp", r.hypothesis_f_in_h_perp}};
  j["e_nef_verdict"] = to_json(r.e_nef_verdict);
  j["line_condition"] = to_json(r.line_condition);
  j["m"] = scalar::to_string(r.m);
  if (r.onset) j["positivity_onset"] = scalar::to_string(*r.onset);
  j["overall"] = cone::to_string(r.overall);
  return j;
}

inline json gram_to_json(const lattice::Lattice& lat) {
  json rows = json::array();
  for (const auto& row : lat.gram()) {
    json r = json::array();
    for (const auto& entry : row) r.push_back(scalar::to_string(entry));
    rows.push_back(std::move(r));
  }
  json j{{"rank", lat.rank()}, {"labels", lat.basis_labels()}, {"gram", std::move(rows)}};
  if (lat.genus()) j["genus"] = *lat.genus();
  return j;
}

}  // namespace nefcone::cli
