// JSON input/output for polytopes, measures and reports.
//
// Polytope files carry either {"dim", "vertices": [[..],..]} or
// {"dim", "halfspaces": [{"normal": [..], "offset": b}, ..]}; writers emit
// both descriptions in canonical order (vertices lexicographic, facets by
// normal). Every report echoes the tolerances that produced it. Wall-clock
// data lives under the "timing" key so reports stay byte-comparable.

#ifndef CONEVOL_IO_HPP
#define CONEVOL_IO_HPP

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "conevol/cone_measure.hpp"
#include "conevol/errors.hpp"
#include "conevol/polytope.hpp"
#include "conevol/scc.hpp"
#include "conevol/subspace.hpp"
#include "conevol/tolerances.hpp"
#include "conevol/ufunctional.hpp"
#include "conevol/verify.hpp"
#include "conevol/xray.hpp"

namespace conevol {

using json = nlohmann::json;

inline json to_json(const Vector& v) {
  json out = json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

inline Vector vector_from_json(const json& j, int expected_dim, const std::string& where) {
  if (!j.is_array() || (expected_dim >= 0 && static_cast<int>(j.size()) != expected_dim))
    throw ParseError(where + ": expected an array of " + std::to_string(expected_dim) +
                     " numbers");
  Vector v(static_cast<int>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw ParseError(where + ": non-numeric coordinate");
    v[static_cast<int>(i)] = j[i].get<double>();
  }
  return v;
}

// --- polytope -------------------------------------------------------------

inline json to_json(const Polytope& p) {
  json out;
  out["dim"] = p.dim();
  json verts = json::array();
  for (const auto& v : p.vertices()) verts.push_back(to_json(v));
  out["vertices"] = std::move(verts);
  json halfspaces = json::array();
  for (const auto& f : p.facets())
    halfspaces.push_back({{"normal", to_json(f.normal)}, {"offset", f.offset}});
  out["halfspaces"] = std::move(halfspaces);
  return out;
}

inline Polytope polytope_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("polytope: expected a JSON object");
  if (!j.contains("dim") || !j["dim"].is_number_integer())
    throw ParseError("polytope: missing integer field 'dim'");
  const int dim = j["dim"].get<int>();
  if (dim < 2 || dim > 6) throw ParseError("polytope: dim must be in 2..6");
  const double tol = j.value("tol", 1e-9);

  if (j.contains("vertices")) {
    const auto& arr = j["vertices"];
    if (!arr.is_array() || arr.empty()) throw ParseError("polytope.vertices: expected array");
    std::vector<Vector> pts;
    for (std::size_t i = 0; i < arr.size(); ++i)
      pts.push_back(vector_from_json(arr[i], dim, "polytope.vertices[" + std::to_string(i) + "]"));
    return build_from_vertices(dim, pts, tol);
  }
  if (j.contains("halfspaces")) {
    const auto& arr = j["halfspaces"];
    if (!arr.is_array() || arr.empty()) throw ParseError("polytope.halfspaces: expected array");
    std::vector<Vector> normals;
    std::vector<double> offsets;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string where = "polytope.halfspaces[" + std::to_string(i) + "]";
      if (!arr[i].is_object() || !arr[i].contains("normal") || !arr[i].contains("offset"))
        throw ParseError(where + ": expected {normal, offset}");
      normals.push_back(vector_from_json(arr[i]["normal"], dim, where + ".normal"));
      if (!arr[i]["offset"].is_number()) throw ParseError(where + ".offset: expected number");
      offsets.push_back(arr[i]["offset"].get<double>());
    }
    return build_from_halfspaces(normals, offsets, tol);
  }
  throw ParseError("polytope: need either 'vertices' or 'halfspaces'");
}

inline Polytope read_polytope_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  return polytope_from_json(j);
}

// --- measures and subspaces ------------------------------------------------

inline json to_json(const ConeVolumeMeasure& mu) {
  json atoms = json::array();
  for (const auto& a : mu.atoms())
    atoms.push_back({{"normal", to_json(a.normal)}, {"weight", a.weight}});
  return {{"dim", mu.dim()}, {"atoms", std::move(atoms)}, {"total", mu.total()}};
}

inline ConeVolumeMeasure measure_from_json(const json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("atoms"))
    throw ParseError("measure: expected {dim, atoms}");
  const int dim = j["dim"].get<int>();
  std::vector<ConeVolumeAtom> atoms;
  for (const auto& a : j["atoms"])
    atoms.push_back({vector_from_json(a.at("normal"), dim, "measure.atom.normal"),
                     a.at("weight").get<double>()});
  return ConeVolumeMeasure(dim, std::move(atoms));
}

inline json to_json(const Subspace& s) {
  json basis = json::array();
  for (int c = 0; c < s.dim(); ++c) basis.push_back(to_json(s.basis().col(c)));
  return {{"ambient_dim", s.ambient_dim()}, {"dim", s.dim()}, {"basis", std::move(basis)}};
}

// --- reports ----------------------------------------------------------------

inline json to_json(const Tolerances& t) {
  return {{"geometry", t.geometry},
          {"normal_dedup", t.normal_dedup},
          {"membership", t.membership},
          {"span_dedup", t.span_dedup},
          {"equality_band", t.equality_band},
          {"centering", t.centering},
          {"rank", t.rank},
          {"interpolation", t.interpolation},
          {"divergence", t.divergence},
          {"gradient_moment", t.gradient_moment},
          {"first_moment", t.first_moment},
          {"logconc_slack", t.logconc_slack},
          {"span_cap", t.span_cap}};
}

inline json to_json(const SccReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    json jr = {{"k", row.k},
               {"basis", to_json(row.space)["basis"]},
               {"atoms", row.atom_indices},
               {"mass", row.mass},
               {"bound", row.bound},
               {"ratio", row.ratio},
               {"status", to_string(row.status)},
               {"borderline_atoms", row.borderline_atoms}};
    if (row.status == SccStatus::Equality) {
      jr["witness_found"] = row.witness_found;
      if (row.witness) jr["witness_basis"] = to_json(*row.witness)["basis"];
    }
    rows.push_back(std::move(jr));
  }
  return {{"dim", r.dim},
          {"volume", r.volume},
          {"tol", r.tol},
          {"pass", r.pass},
          {"worst_ratio", r.worst_ratio},
          {"equality_count", r.equality_count},
          {"violation_count", r.violation_count},
          {"unwitnessed_equalities", r.unwitnessed_equalities},
          {"subspaces", std::move(rows)}};
}

inline json to_json(const UReport& r) {
  json margins = json::array();
  for (const auto& m : r.margins)
    margins.push_back({{"k", m.k}, {"lhs", m.lhs}, {"rhs", m.rhs}, {"margin", m.margin}});
  return {{"dim", r.dim},
          {"volume", r.volume},
          {"u", r.u},
          {"bound", r.bound},
          {"ratio", r.ratio},
          {"sigma", r.sigma},
          {"recursion_margins", std::move(margins)},
          {"equality", r.equality},
          {"parallelotope", r.parallelotope},
          {"equality_matches_parallelotope", r.equality_matches_parallelotope},
          {"conditioning_warnings", r.conditioning_warnings},
          {"tol", r.tol}};
}

inline json to_json(const PiecewisePolynomial& pp) {
  return {{"direction", to_json(pp.direction())},
          {"breakpoints", pp.breakpoints()},
          {"cells", pp.cells()}};
}

inline json to_json(const DivergenceIdentityRecord& r) {
  return {{"direction", to_json(r.direction)},
          {"lhs", r.lhs},
          {"k_volume", r.k_volume},
          {"gradient_moment", r.gradient_moment},
          {"rhs", r.rhs},
          {"residual", r.residual}};
}

inline json to_json(const VerificationReport& r) {
  json divergence = json::array();
  for (const auto& rec : r.divergence) divergence.push_back(to_json(rec));
  json phases = json::array();
  for (const auto& t : r.timings) phases.push_back({{"phase", t.phase}, {"seconds", t.seconds}});
  return {{"input", r.input},
          {"dim", r.dim},
          {"volume", r.volume},
          {"diameter", r.diameter},
          {"tolerances", to_json(r.options.tol)},
          {"seed", r.options.seed},
          {"centering_residual", r.centering_residual},
          {"cone_volume",
           {{"total_residual", r.cvm_total_residual}, {"ok", r.cvm_ok}}},
          {"scc", to_json(r.scc)},
          {"u_functional", to_json(r.ufun)},
          {"divergence",
           {{"count", static_cast<int>(r.divergence.size())},
            {"failures", r.divergence_failures},
            {"max_residual", r.max_divergence_residual},
            {"records", std::move(divergence)}}},
          {"moments",
           {{"max_first_moment_residual", r.max_first_moment_residual},
            {"max_gradient_moment", r.max_gradient_moment},
            {"ok", r.moments_ok}}},
          {"log_concavity",
           {{"samples", r.logconc_samples},
            {"violations", r.logconc_violations},
            {"worst_margin", r.logconc_worst_margin}}},
          {"pass", r.pass},
          {"timing", {{"timestamp", r.timestamp}, {"phases", std::move(phases)}}}};
}

inline json to_json(const SuiteResult& s) {
  json reports = json::array();
  for (const auto& r : s.reports) reports.push_back(to_json(r));
  return {{"count", s.count},
          {"passed", s.passed},
          {"pass", s.pass},
          {"seed", s.seed},
          {"dims", s.dims},
          {"instances", std::move(reports)}};
}

/// Copy with every "timing" subtree removed; what determinism tests compare.
inline json strip_timing(json j) {
  if (j.is_object()) {
    j.erase("timing");
    for (auto& [key, value] : j.items()) value = strip_timing(value);
  } else if (j.is_array()) {
    for (auto& value : j) value = strip_timing(value);
  }
  return j;
}

}  // namespace conevol

#endif  // CONEVOL_IO_HPP
