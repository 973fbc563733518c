#pragma once

#include <json.hpp>

#include <ostream>
#include <sstream>
#include <string>

#include "polyfam/compat.hpp"
#include "polyfam/family.hpp"
#include "polyfam/oracle.hpp"

namespace polyfam {

using nlohmann::json;

// Family JSON schema:
//   {"ambient_degree": d, "polys": [[c0,...,cd], ...], "labels": [...]}
// with coefficients ascending by power. Ingestion validates lengths.
inline Familyd family_from_json(const json& j) {
  if (!j.is_object() || !j.contains("ambient_degree") || !j.contains("polys"))
    throw DimensionError("family JSON must carry ambient_degree and polys");
  if (!j["ambient_degree"].is_number_integer())
    throw DimensionError("ambient_degree must be an integer");
  const Index d = j["ambient_degree"].get<Index>();
  if (d < 0) throw DimensionError("ambient_degree must be nonnegative");
  if (!j["polys"].is_array() || j["polys"].empty())
    throw DimensionError("polys must be a nonempty array");
  std::vector<Polyd> members;
  for (const auto& coeffs : j["polys"]) {
    if (!coeffs.is_array() || Index(coeffs.size()) != d + 1)
      throw DimensionError("every poly must list exactly ambient_degree + 1 coefficients");
    Eigen::VectorXd c(d + 1);
    for (Index i = 0; i <= d; ++i) {
      if (!coeffs[size_t(i)].is_number())
        throw DimensionError("coefficients must be numbers");
      c[i] = coeffs[size_t(i)].get<double>();
    }
    members.emplace_back(std::move(c));
  }
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    if (!j["labels"].is_array() || j["labels"].size() != members.size())
      throw DimensionError("labels must match the member count");
    for (const auto& l : j["labels"]) labels.push_back(l.get<std::string>());
  }
  return Familyd(std::move(members), std::move(labels));
}

inline json family_to_json(const Familyd& family) {
  json j;
  j["ambient_degree"] = family.ambient_degree();
  json polys = json::array();
  for (const Polyd& p : family.members) {
    json c = json::array();
    for (Index i = 0; i < p.coeffs.size(); ++i) c.push_back(p.coeffs[i]);
    polys.push_back(std::move(c));
  }
  j["polys"] = std::move(polys);
  if (!family.labels.empty()) j["labels"] = family.labels;
  return j;
}

inline json poly_to_json(const Polyd& p) {
  json c = json::array();
  for (Index i = 0; i < p.coeffs.size(); ++i) c.push_back(p.coeffs[i]);
  return c;
}

inline std::string verdict_name(CompatReport::Verdict v) {
  switch (v) {
    case CompatReport::Verdict::Compatible: return "Compatible";
    case CompatReport::Verdict::Incompatible: return "Incompatible";
    case CompatReport::Verdict::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

inline json report_to_json(const CompatReport& rep) {
  json j;
  j["verdict"] = verdict_name(rep.verdict);
  json w;
  if (auto* iw = std::get_if<CompatReport::Interleaver>(&rep.witness)) {
    w["type"] = "interleaver";
    w["g"] = poly_to_json(iw->g);
  } else if (auto* zw = std::get_if<CompatReport::ZeroComboPlusInterlacing>(&rep.witness)) {
    w["type"] = "zero_combination_plus_interlacing";
    w["weights"] = std::vector<double>(zw->weights.data(), zw->weights.data() + zw->weights.size());
    w["pair"] = {zw->pair_i, zw->pair_j};
  } else if (auto* cw = std::get_if<CompatReport::Counterexample>(&rep.witness)) {
    w["type"] = "counterexample";
    w["weights"] = std::vector<double>(cw->weights.data(), cw->weights.data() + cw->weights.size());
    w["margin"] = cw->margin;
  } else if (auto* tw = std::get_if<CompatReport::TripleCounterexample>(&rep.witness)) {
    w["type"] = "triple_counterexample";
    w["indices"] = tw->indices;
    w["weights"] = {tw->weights[0], tw->weights[1], tw->weights[2]};
    w["margin"] = tw->margin;
  } else if (auto* mw = std::get_if<CompatReport::MarginBand>(&rep.witness)) {
    w["type"] = "margin_band";
    w["margin"] = mw->margin;
  } else {
    w["type"] = "none";
  }
  j["witness"] = std::move(w);
  j["margins"] = rep.margins;
  j["triples_checked"] = rep.triples_checked;
  if (!rep.note.empty()) j["note"] = rep.note;
  return j;
}

inline json oracle_report_to_json(const OracleReport& rep) {
  json j;
  j["samples"] = rep.samples;
  j["seed"] = rep.seed;
  json v = json::array();
  for (const auto& viol : rep.violations) {
    json e;
    e["weights"] = std::vector<double>(viol.weights.data(), viol.weights.data() + viol.weights.size());
    e["margin"] = viol.margin;
    v.push_back(std::move(e));
  }
  j["violations"] = std::move(v);
  j["min_real_margin"] = rep.min_real_margin;
  if (std::isfinite(rep.min_gap_observed)) j["min_gap_observed"] = rep.min_gap_observed;
  return j;
}

// Trajectory CSV: header "s,root_1,...,root_d,complex_margin". Complex rows
// leave the root columns empty and set complex_margin; zero-polynomial rows
// leave every data column empty.
inline void write_trajectory_csv(std::ostream& os, const std::vector<TrajectoryRow>& rows,
                                 Index ambient_degree) {
  os << "s";
  for (Index i = 1; i <= ambient_degree; ++i) os << ",root_" << i;
  os << ",complex_margin\n";
  for (const auto& row : rows) {
    os << row.s;
    for (Index i = 0; i < ambient_degree; ++i) {
      os << ",";
      if (row.kind == TrajectoryRow::Kind::RealRooted && i < Index(row.roots.size()))
        os << row.roots[size_t(i)];
    }
    os << ",";
    if (row.kind == TrajectoryRow::Kind::Complex) os << row.complex_margin;
    os << "\n";
  }
}

}  // namespace polyfam
