// Subspace concentration: for a polytope with centroid at the origin, the
// cone-volume mass inside any k-dimensional subspace is at most k/n of the
// total, with equality exactly when the normals split between the subspace
// and a complementary one.
//
// Only spans of subsets of the atom directions need checking. For an
// arbitrary subspace L the atoms inside L span some L' contained in L with
// dim L' <= dim L and the same mass, so mass(L) <= (dim L'/n) V <= (dim L/n) V
// follows once the inequality holds on every span of atoms. That makes the
// finitely many spans below a complete certificate.

#ifndef CONEVOL_SCC_HPP
#define CONEVOL_SCC_HPP

#include <optional>
#include <string>
#include <vector>

#include "conevol/cone_measure.hpp"
#include "conevol/errors.hpp"
#include "conevol/polytope.hpp"
#include "conevol/subspace.hpp"

namespace conevol {

struct SpanInfo {
  Subspace space;
  std::vector<int> atom_indices;  // atoms inside the span
};

/// Distinct subspaces of dimension 1..n-1 spanned by subsets of the atom
/// directions. Deduplicated by projection-matrix distance.
inline std::vector<SpanInfo> enumerate_normal_spans(const ConeVolumeMeasure& mu,
                                                    double tol = 1e-9,
                                                    std::size_t cap = 1'000'000) {
  const int n = mu.dim();
  const int m = mu.size();
  std::size_t work = 0;
  for (int k = 1; k <= std::min(m, n - 1); ++k) work += detail::subset_count(m, k);
  if (work > cap)
    throw CombinatorialLimit("normal-span enumeration needs " + std::to_string(work) +
                             " subsets, cap is " + std::to_string(cap));

  std::vector<SpanInfo> spans;
  for (int k = 1; k <= std::min(m, n - 1); ++k) {
    detail::for_each_subset(m, k, [&](const std::vector<int>& s) {
      std::vector<Vector> gen;
      gen.reserve(s.size());
      for (int i : s) gen.push_back(mu.atoms()[i].normal);
      Subspace span = Subspace::from_spanning(n, gen, tol);
      if (span.dim() != k || span.dim() >= n) return;  // dependent subset: a smaller
                                                       // subset already spans this
      for (const auto& known : spans)
        if (known.space.dim() == span.dim() && known.space.distance(span) <= 1e-8) return;
      SpanInfo info{std::move(span), {}};
      for (int i = 0; i < m; ++i)
        if (info.space.contains(mu.atoms()[i].normal, tol)) info.atom_indices.push_back(i);
      spans.push_back(std::move(info));
    });
  }
  return spans;
}

/// The span of the atoms outside L, if it is a genuine complement of L that
/// together with L absorbs every atom.
inline std::optional<Subspace> complementary_witness(const ConeVolumeMeasure& mu,
                                                     const Subspace& l, double tol = 1e-9) {
  const int n = mu.dim();
  std::vector<Vector> outside;
  for (const auto& a : mu.atoms())
    if (!l.contains(a.normal, tol)) outside.push_back(a.normal);
  if (outside.empty()) return std::nullopt;
  Subspace lbar = Subspace::from_spanning(n, outside, tol);
  if (l.dim() + lbar.dim() != n) return std::nullopt;
  Matrix joint(n, l.dim() + lbar.dim());
  joint.leftCols(l.dim()) = l.basis();
  joint.rightCols(lbar.dim()) = lbar.basis();
  if (rank_of(joint, tol) != n) return std::nullopt;  // not a direct sum
  for (const auto& a : mu.atoms())
    if (!l.contains(a.normal, tol) && !lbar.contains(a.normal, tol)) return std::nullopt;
  return lbar;
}

enum class SccStatus { Strict, Equality, Violation };

inline const char* to_string(SccStatus s) {
  switch (s) {
    case SccStatus::Strict: return "strict";
    case SccStatus::Equality: return "equality";
    default: return "violation";
  }
}

struct SccRow {
  Subspace space;
  int k;
  std::vector<int> atom_indices;
  double mass;
  double bound;    // (k/n) * V(P)
  double ratio;    // mass / bound
  SccStatus status;
  bool witness_found = false;
  std::optional<Subspace> witness;
  int borderline_atoms = 0;
};

struct SccReport {
  int dim = 0;
  double volume = 0.0;
  double tol = 0.0;
  std::vector<SccRow> rows;
  bool pass = false;       // no violations, every equality witnessed
  double worst_ratio = 0.0;
  int equality_count = 0;
  int violation_count = 0;
  int unwitnessed_equalities = 0;
};

/// Check the concentration inequality on every enumerated span. Equality rows
/// are required to come with a complementary witness; an equality without one
/// fails the report without counting as a violation of the inequality itself.
inline SccReport check_scc(const Polytope& p, double tol = 1e-9, bool auto_center = false,
                           std::size_t cap = 1'000'000) {
  Polytope q = p;
  if (!q.is_centered()) {
    if (!auto_center)
      throw NotCentered("centroid has norm " + std::to_string(q.centroid().norm()) +
                        "; pass auto_center to recenter");
    q = center_at_centroid(q);
  }
  const ConeVolumeMeasure mu = cone_volume_measure(q, tol);
  const double vol = q.volume();
  const double band = tol * vol;

  SccReport report;
  report.dim = q.dim();
  report.volume = vol;
  report.tol = tol;
  report.worst_ratio = 0.0;

  for (auto& span : enumerate_normal_spans(mu, tol, cap)) {
    SccRow row{std::move(span.space), 0, std::move(span.atom_indices), 0, 0, 0,
               SccStatus::Strict};
    row.k = row.space.dim();
    const SubspaceMass sm = subspace_mass(mu, row.space, tol);
    row.mass = sm.mass;
    row.borderline_atoms = sm.borderline;
    row.bound = static_cast<double>(row.k) / q.dim() * vol;
    row.ratio = row.mass / row.bound;
    if (row.mass > row.bound + band) {
      row.status = SccStatus::Violation;
    } else if (std::abs(row.mass - row.bound) <= band) {
      row.status = SccStatus::Equality;
      row.witness = complementary_witness(mu, row.space, tol);
      row.witness_found = row.witness.has_value();
    }
    report.worst_ratio = std::max(report.worst_ratio, row.ratio);
    report.rows.push_back(std::move(row));
  }
  for (const auto& row : report.rows) {
    if (row.status == SccStatus::Violation) ++report.violation_count;
    if (row.status == SccStatus::Equality) {
      ++report.equality_count;
      if (!row.witness_found) ++report.unwitnessed_equalities;
    }
  }
  report.pass = report.violation_count == 0 && report.unwitnessed_equalities == 0;
  return report;
}

/// Minkowski decomposition discovered through a normal split: when the atoms
/// fall into L and a complement Lbar, P is the sum of its slices through the
/// origin along the orthogonal complements of the two pieces.
struct DirectSumSplit {
  Subspace complement;                  // Lbar, span of the atoms outside L
  std::vector<Vector> factor_in_l;      // vertices of P cut by Lbar-perp (dim k piece)
  std::vector<Vector> factor_in_lperp;  // vertices of P cut by L-perp (dim n-k piece)
};

inline std::optional<DirectSumSplit> detect_direct_sum_split(const Polytope& p,
                                                             const Subspace& l,
                                                             double tol = 1e-9) {
  for (const auto& f : p.facets())
    if (f.offset <= tol) throw OriginNotInterior("origin must be interior to split");
  const ConeVolumeMeasure mu = cone_volume_measure(p, tol);
  auto lbar = complementary_witness(mu, l, tol);
  if (!lbar) return std::nullopt;

  const int n = p.dim();
  const Vector zero = Vector::Zero(n);
  auto q1 = restrict_to_flat(p, zero, lbar->orthogonal_complement().basis(), tol);
  auto q2 = restrict_to_flat(p, zero, l.orthogonal_complement().basis(), tol);
  if (!q1 || !q2) return std::nullopt;

  DirectSumSplit split{*lbar, {}, {}};
  const Matrix b1 = lbar->orthogonal_complement().basis();
  const Matrix b2 = l.orthogonal_complement().basis();
  for (const auto& y : q1->vertices()) split.factor_in_l.push_back(b1 * y);
  for (const auto& y : q2->vertices()) split.factor_in_lperp.push_back(b2 * y);

  // confirm the Minkowski sum reproduces P
  std::vector<Vector> sums;
  sums.reserve(split.factor_in_l.size() * split.factor_in_lperp.size());
  for (const auto& a : split.factor_in_l)
    for (const auto& b : split.factor_in_lperp) sums.push_back(a + b);
  Polytope rebuilt = build_from_vertices(n, sums, p.tol());
  if (rebuilt.vertices().size() != p.vertices().size()) return std::nullopt;
  const double tol_cmp = 1e-7 * (1.0 + p.diameter());
  for (std::size_t i = 0; i < p.vertices().size(); ++i)
    if ((rebuilt.vertices()[i] - p.vertices()[i]).norm() > tol_cmp) return std::nullopt;
  return split;
}

/// True iff the facet normals are n antipodal pairs with independent
/// representatives.
inline bool is_parallelotope(const Polytope& p, double tol = 1e-9) {
  const int n = p.dim();
  const int m = static_cast<int>(p.facets().size());
  if (m != 2 * n) return false;
  std::vector<bool> used(m, false);
  std::vector<Vector> reps;
  for (int i = 0; i < m; ++i) {
    if (used[i]) continue;
    int partner = -1;
    for (int j = i + 1; j < m; ++j) {
      if (used[j]) continue;
      if ((p.facets()[i].normal + p.facets()[j].normal).norm() <= 10.0 * tol) {
        partner = j;
        break;
      }
    }
    if (partner < 0) return false;
    used[i] = used[partner] = true;
    reps.push_back(p.facets()[i].normal);
  }
  Matrix r(n, static_cast<int>(reps.size()));
  for (int i = 0; i < static_cast<int>(reps.size()); ++i) r.col(i) = reps[i];
  return static_cast<int>(reps.size()) == n && rank_of(r, tol) == n;
}

}  // namespace conevol

#endif  // CONEVOL_SCC_HPP
