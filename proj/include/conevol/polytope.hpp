// Full-dimensional bounded convex polytopes in R^n (n up to 6) with dual
// vertex/halfspace descriptions kept consistent.
//
// Facet and vertex enumeration is brute force over n-subsets: every n points
// spanning a hyperplane that supports the whole set yields a candidate facet,
// every feasible n-subset of tight constraints yields a vertex. Correctness
// over asymptotics; the instances this library targets have at most a few
// dozen vertices or facets.
//
// All quantities are doubles. Tolerances scale with the magnitude of the
// input coordinates.

#ifndef CONEVOL_POLYTOPE_HPP
#define CONEVOL_POLYTOPE_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "conevol/errors.hpp"
#include "conevol/linalg.hpp"

namespace conevol {

/// One facet: unit outer normal, signed offset of its hyperplane from the
/// origin, the incident vertex indices, and its (n-1)-volume.
struct Facet {
  Vector normal;
  double offset = 0.0;
  std::vector<int> vertex_indices;
  double measure = 0.0;
};

struct FacetDatum {
  Vector normal;
  double offset;
  double measure;
};

namespace detail {

/// Visit all k-subsets of {0..m-1} in lexicographic order.
template <typename F>
void for_each_subset(int m, int k, F&& visit) {
  if (k > m || k <= 0) return;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    visit(idx);
    int pos = k - 1;
    while (pos >= 0 && idx[pos] == m - k + pos) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (int j = pos + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

inline std::size_t subset_count(int m, int k) {
  if (k < 0 || k > m) return 0;
  std::size_t c = 1;
  for (int i = 1; i <= k; ++i) c = c * static_cast<std::size_t>(m - k + i) / i;
  return c;
}

struct SupportCandidate {
  Vector normal;
  double offset;
  std::vector<int> incident;
};

/// All supporting hyperplanes of conv(pts) touching a full (d-1)-dimensional
/// set of points; returned with outward orientation and incidence lists.
inline std::vector<SupportCandidate> supporting_hyperplanes(
    int d, const std::vector<Vector>& pts, double tol) {
  const int v = static_cast<int>(pts.size());
  const double scale = coordinate_scale(pts);
  const double tol_inc = tol * scale;
  std::vector<SupportCandidate> raw;

  if (d == 1) {
    int imin = 0, imax = 0;
    for (int i = 1; i < v; ++i) {
      if (pts[i][0] < pts[imin][0]) imin = i;
      if (pts[i][0] > pts[imax][0]) imax = i;
    }
    SupportCandidate hi, lo;
    hi.normal = Vector::Constant(1, 1.0);
    hi.offset = pts[imax][0];
    lo.normal = Vector::Constant(1, -1.0);
    lo.offset = -pts[imin][0];
    for (int i = 0; i < v; ++i) {
      if (std::abs(pts[i][0] - pts[imax][0]) <= tol_inc) hi.incident.push_back(i);
      if (std::abs(pts[i][0] - pts[imin][0]) <= tol_inc) lo.incident.push_back(i);
    }
    return {lo, hi};
  }

  Matrix diffs(d - 1, d);
  for_each_subset(v, d, [&](const std::vector<int>& s) {
    for (int j = 1; j < d; ++j) diffs.row(j - 1) = (pts[s[j]] - pts[s[0]]).transpose();
    Eigen::JacobiSVD<Matrix> svd(diffs, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    // need the subset to span a unique hyperplane: rank exactly d-1
    if (sv[d - 2] <= tol * std::max(sv[0], scale)) return;
    Vector normal = svd.matrixV().col(d - 1);
    double offset = 0.0;
    for (int j = 0; j < d; ++j) offset += normal.dot(pts[s[j]]);
    offset /= d;
    double lo = 0.0, hi = 0.0;
    for (int i = 0; i < v; ++i) {
      const double r = normal.dot(pts[i]) - offset;
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    const bool support_above = hi <= tol_inc;
    const bool support_below = lo >= -tol_inc;
    if (!support_above && !support_below) return;
    if (support_below) {
      normal = -normal;
      offset = -offset;
    }
    SupportCandidate c;
    c.normal = normal;
    c.offset = offset;
    for (int i = 0; i < v; ++i)
      if (std::abs(normal.dot(pts[i]) - offset) <= tol_inc) c.incident.push_back(i);
    raw.push_back(std::move(c));
  });

  // Candidates from different d-subsets of the same facet carry identical
  // incidence sets; d points of affine rank d-1 pin a hyperplane down.
  std::map<std::vector<int>, SupportCandidate> unique;
  for (auto& c : raw) unique.try_emplace(c.incident, std::move(c));

  Vector interior = Vector::Zero(d);
  for (const auto& p : pts) interior += p;
  interior /= v;

  std::vector<SupportCandidate> facets;
  for (auto& [key, c] : unique) {
    // refit the hyperplane against every incident point
    Vector mean = Vector::Zero(d);
    for (int i : c.incident) mean += pts[i];
    mean /= static_cast<double>(c.incident.size());
    Matrix centered(static_cast<int>(c.incident.size()), d);
    for (int r = 0; r < static_cast<int>(c.incident.size()); ++r)
      centered.row(r) = (pts[c.incident[r]] - mean).transpose();
    Eigen::JacobiSVD<Matrix> svd(centered, Eigen::ComputeFullV);
    Vector normal = svd.matrixV().col(d - 1);
    double offset = normal.dot(mean);
    if (normal.dot(interior) > offset) {
      normal = -normal;
      offset = -offset;
    }
    c.normal = normal;
    c.offset = offset;
    facets.push_back(std::move(c));
  }

  // Merge any survivors describing the same hyperplane.
  std::vector<SupportCandidate> merged;
  std::vector<bool> used(facets.size(), false);
  for (std::size_t i = 0; i < facets.size(); ++i) {
    if (used[i]) continue;
    SupportCandidate c = facets[i];
    for (std::size_t j = i + 1; j < facets.size(); ++j) {
      if (used[j]) continue;
      const bool same_normal = (c.normal - facets[j].normal).cwiseAbs().maxCoeff() <= 1e-9;
      const bool same_offset =
          std::abs(c.offset - facets[j].offset) <= 1e-9 * (1.0 + std::abs(c.offset));
      if (same_normal && same_offset) {
        used[j] = true;
        std::vector<int> inc;
        std::set_union(c.incident.begin(), c.incident.end(), facets[j].incident.begin(),
                       facets[j].incident.end(), std::back_inserter(inc));
        c.incident = std::move(inc);
      }
    }
    merged.push_back(std::move(c));
  }
  return merged;
}

/// Decompose conv(pts) (affinely spanning R^d) into d-simplices, each given
/// as d+1 points. Recursive over facets; fans from the point average.
inline void append_simplices(int d, const std::vector<Vector>& pts, double tol,
                             std::vector<std::vector<Vector>>& out) {
  if (d <= 0 || pts.empty()) return;
  if (d == 1) {
    int imin = 0, imax = 0;
    for (int i = 1; i < static_cast<int>(pts.size()); ++i) {
      if (pts[i][0] < pts[imin][0]) imin = i;
      if (pts[i][0] > pts[imax][0]) imax = i;
    }
    out.push_back({pts[imin], pts[imax]});
    return;
  }
  if (static_cast<int>(pts.size()) == d + 1) {
    out.push_back(pts);
    return;
  }
  Vector apex = Vector::Zero(d);
  for (const auto& p : pts) apex += p;
  apex /= static_cast<double>(pts.size());

  for (const auto& face : supporting_hyperplanes(d, pts, tol)) {
    const Matrix basis = hyperplane_basis(face.normal);
    const Vector& org = pts[face.incident[0]];
    std::vector<Vector> local;
    local.reserve(face.incident.size());
    for (int i : face.incident) local.push_back(basis.transpose() * (pts[i] - org));
    std::vector<std::vector<Vector>> sub;
    append_simplices(d - 1, local, tol, sub);
    for (const auto& s : sub) {
      std::vector<Vector> lifted;
      lifted.reserve(d + 1);
      for (const auto& y : s) lifted.push_back(org + basis * y);
      lifted.push_back(apex);
      out.push_back(std::move(lifted));
    }
  }
}

inline double simplex_volume(const std::vector<Vector>& simplex) {
  const int d = static_cast<int>(simplex.size()) - 1;
  if (d <= 0) return 0.0;
  Matrix m(d, d);
  for (int j = 0; j < d; ++j) m.col(j) = simplex[j + 1] - simplex[0];
  double fact = 1.0;
  for (int i = 2; i <= d; ++i) fact *= i;
  return std::abs(m.determinant()) / fact;
}

}  // namespace detail

/// Immutable polytope value: extreme vertices, facet list with incidences and
/// measures, and precomputed volume/centroid/diameter. Construct through
/// build_from_vertices / build_from_halfspaces or Polytope::assemble.
class Polytope {
 public:
  int dim() const { return dim_; }
  double tol() const { return tol_; }
  const std::vector<Vector>& vertices() const { return vertices_; }
  const std::vector<Facet>& facets() const { return facets_; }
  double volume() const { return volume_; }
  const Vector& centroid() const { return centroid_; }
  double diameter() const { return diameter_; }
  /// Average of the vertices; strictly interior.
  const Vector& interior_point() const { return interior_; }

  bool contains(const Vector& x, double slack) const {
    for (const auto& f : facets_)
      if (f.normal.dot(x) > f.offset + slack) return false;
    return true;
  }

  /// True when the centroid sits at the origin within tol*(1 + diameter).
  bool is_centered(double tol = 1e-10) const {
    return centroid_.norm() <= tol * (1.0 + diameter_);
  }

  /// (n-1)-simplices covering facet i, lifted to ambient coordinates.
  std::vector<std::vector<Vector>> facet_simplices(int i) const {
    const Facet& f = facets_[i];
    const Matrix basis = hyperplane_basis(f.normal);
    const Vector& org = vertices_[f.vertex_indices[0]];
    std::vector<Vector> local;
    local.reserve(f.vertex_indices.size());
    for (int vi : f.vertex_indices) local.push_back(basis.transpose() * (vertices_[vi] - org));
    std::vector<std::vector<Vector>> sub;
    detail::append_simplices(dim_ - 1, local, tol_, sub);
    std::vector<std::vector<Vector>> lifted;
    lifted.reserve(sub.size());
    for (const auto& s : sub) {
      std::vector<Vector> q;
      q.reserve(s.size());
      for (const auto& y : s) q.push_back(org + basis * y);
      lifted.push_back(std::move(q));
    }
    return lifted;
  }

  /// Canonicalize and derive measures, volume, centroid and diameter from a
  /// prepared vertex/facet description. Single construction path.
  static Polytope assemble(int dim, std::vector<Vector> vertices, std::vector<Facet> facets,
                           double tol) {
    Polytope p;
    p.dim_ = dim;
    p.tol_ = tol;

    // canonical vertex order, facet incidences remapped
    std::vector<int> order(vertices.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return lex_less(vertices[a], vertices[b]); });
    std::vector<int> inverse(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) inverse[order[i]] = static_cast<int>(i);
    p.vertices_.reserve(vertices.size());
    for (int i : order) p.vertices_.push_back(vertices[i]);
    for (auto& f : facets) {
      for (auto& vi : f.vertex_indices) vi = inverse[vi];
      std::sort(f.vertex_indices.begin(), f.vertex_indices.end());
    }
    std::sort(facets.begin(), facets.end(),
              [](const Facet& a, const Facet& b) { return lex_less(a.normal, b.normal); });
    p.facets_ = std::move(facets);

    p.interior_ = Vector::Zero(dim);
    for (const auto& v : p.vertices_) p.interior_ += v;
    p.interior_ /= static_cast<double>(p.vertices_.size());

    p.diameter_ = 0.0;
    for (std::size_t i = 0; i < p.vertices_.size(); ++i)
      for (std::size_t j = i + 1; j < p.vertices_.size(); ++j)
        p.diameter_ = std::max(p.diameter_, (p.vertices_[i] - p.vertices_[j]).norm());

    if (dim == 1) {
      const double lo = p.vertices_.front()[0];
      const double hi = p.vertices_.back()[0];
      for (auto& f : p.facets_) f.measure = 1.0;
      p.volume_ = hi - lo;
      p.centroid_ = Vector::Constant(1, 0.5 * (lo + hi));
      p.validate();
      return p;
    }

    double fact_nm1 = 1.0;
    for (int i = 2; i <= dim - 1; ++i) fact_nm1 *= i;

    KahanSum vol;
    std::vector<KahanSum> cent(dim);
    for (std::size_t fi = 0; fi < p.facets_.size(); ++fi) {
      Facet& f = p.facets_[fi];
      const Matrix basis = hyperplane_basis(f.normal);
      const Vector& org = p.vertices_[f.vertex_indices[0]];
      std::vector<Vector> local;
      local.reserve(f.vertex_indices.size());
      for (int vi : f.vertex_indices)
        local.push_back(basis.transpose() * (p.vertices_[vi] - org));
      std::vector<std::vector<Vector>> sub;
      detail::append_simplices(dim - 1, local, tol, sub);

      KahanSum measure;
      Matrix cone(dim, dim);
      for (const auto& s : sub) {
        Matrix edge(dim - 1, dim - 1);
        for (int j = 0; j < dim - 1; ++j) edge.col(j) = s[j + 1] - s[0];
        measure.add(std::abs(edge.determinant()) / fact_nm1);

        Vector bary = p.interior_;
        for (int j = 0; j < dim - 1; ++j) {
          const Vector q = org + basis * s[j];
          cone.col(j) = q - p.interior_;
          bary += q;
        }
        const Vector qlast = org + basis * s[dim - 1];
        cone.col(dim - 1) = qlast - p.interior_;
        bary += qlast;
        bary /= static_cast<double>(dim + 1);
        const double w = std::abs(cone.determinant()) / (fact_nm1 * dim);
        vol.add(w);
        for (int c = 0; c < dim; ++c) cent[c].add(w * bary[c]);
      }
      f.measure = measure.value();
    }
    p.volume_ = vol.value();
    p.centroid_ = Vector::Zero(dim);
    for (int c = 0; c < dim; ++c) p.centroid_[c] = cent[c].value() / p.volume_;
    p.validate();
    return p;
  }

 private:
  Polytope() = default;

  void validate() const {
    if (volume_ <= 0.0) throw DegenerateInput("polytope has zero volume");
    const double scale = coordinate_scale(vertices_);
    for (const auto& f : facets_) {
      if (std::abs(f.normal.norm() - 1.0) > 1e-12)
        throw Error("internal: facet normal not unit length");
      if (static_cast<int>(f.vertex_indices.size()) < dim_)
        throw Error("internal: facet with too few incident vertices");
      if (f.measure <= 0.0) throw Error("internal: facet with nonpositive measure");
      for (int vi : f.vertex_indices)
        if (std::abs(f.normal.dot(vertices_[vi]) - f.offset) > 1e3 * tol_ * scale)
          throw Error("internal: facet incidence residual too large");
    }
  }

  friend Polytope translate(const Polytope& p, const Vector& t);

  int dim_ = 0;
  double tol_ = 1e-9;
  std::vector<Vector> vertices_;
  std::vector<Facet> facets_;
  double volume_ = 0.0;
  Vector centroid_;
  double diameter_ = 0.0;
  Vector interior_;
};

/// Convex hull of a point set. Vertices of the result are the extreme points;
/// facets are found by brute-force search over supporting hyperplanes.
inline Polytope build_from_vertices(int dim, const std::vector<Vector>& points,
                                    double tol = 1e-9) {
  if (dim < 1 || dim > 6) throw DegenerateInput("dimension outside supported range 1..6");
  const double scale = coordinate_scale(points);
  std::vector<Vector> pts = dedup_points(points, tol * scale);
  if (static_cast<int>(pts.size()) < dim + 1)
    throw TooFewPoints("need at least dim+1 distinct points");

  Matrix rel(dim, static_cast<int>(pts.size()) - 1);
  for (std::size_t i = 1; i < pts.size(); ++i) rel.col(static_cast<int>(i) - 1) = pts[i] - pts[0];
  if (rank_of(rel, tol) < dim)
    throw DegenerateInput("points do not affinely span the ambient space");

  auto candidates = detail::supporting_hyperplanes(dim, pts, tol);

  // extreme points: incident facet normals span R^dim
  std::vector<std::vector<int>> facets_of_point(pts.size());
  for (std::size_t ci = 0; ci < candidates.size(); ++ci)
    for (int vi : candidates[ci].incident) facets_of_point[vi].push_back(static_cast<int>(ci));
  std::vector<int> new_index(pts.size(), -1);
  std::vector<Vector> vertices;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (static_cast<int>(facets_of_point[i].size()) < dim) continue;
    Matrix normals(dim, static_cast<int>(facets_of_point[i].size()));
    for (std::size_t j = 0; j < facets_of_point[i].size(); ++j)
      normals.col(static_cast<int>(j)) = candidates[facets_of_point[i][j]].normal;
    if (rank_of(normals, tol) < dim) continue;
    new_index[i] = static_cast<int>(vertices.size());
    vertices.push_back(pts[i]);
  }
  if (static_cast<int>(vertices.size()) < dim + 1)
    throw DegenerateInput("hull has too few extreme points");

  std::vector<Facet> facets;
  facets.reserve(candidates.size());
  for (auto& c : candidates) {
    Facet f;
    f.normal = std::move(c.normal);
    f.offset = c.offset;
    for (int vi : c.incident)
      if (new_index[vi] >= 0) f.vertex_indices.push_back(new_index[vi]);
    facets.push_back(std::move(f));
  }
  return Polytope::assemble(dim, std::move(vertices), std::move(facets), tol);
}

namespace detail {

inline Polytope build_from_halfspaces_impl(std::vector<Vector> normals,
                                           std::vector<double> offsets, double tol,
                                           bool check_bounded) {
  if (normals.empty() || normals.size() != offsets.size())
    throw DegenerateInput("empty or mismatched halfspace system");
  const int dim = static_cast<int>(normals[0].size());
  if (dim < 1 || dim > 6) throw DegenerateInput("dimension outside supported range 1..6");

  for (std::size_t i = 0; i < normals.size(); ++i) {
    const double nrm = normals[i].norm();
    if (nrm <= tol) throw DegenerateInput("zero facet normal");
    normals[i] /= nrm;
    offsets[i] /= nrm;
  }

  // collapse duplicate directions, tightest offset wins
  std::vector<Vector> ns;
  std::vector<double> bs;
  for (std::size_t i = 0; i < normals.size(); ++i) {
    bool dup = false;
    for (std::size_t j = 0; j < ns.size(); ++j) {
      if ((normals[i] - ns[j]).cwiseAbs().maxCoeff() <= 1e-9) {
        bs[j] = std::min(bs[j], offsets[i]);
        dup = true;
        break;
      }
    }
    if (!dup) {
      ns.push_back(normals[i]);
      bs.push_back(offsets[i]);
    }
  }
  const int m = static_cast<int>(ns.size());

  if (check_bounded) {
    // bounded iff the origin lies strictly inside the hull of the normals
    bool bounded = m >= dim + 1;
    if (bounded) {
      try {
        const Polytope nh = build_from_vertices(dim, ns, tol);
        for (const auto& f : nh.facets())
          if (f.offset <= tol) bounded = false;
      } catch (const Error&) {
        bounded = false;
      }
    }
    if (!bounded) throw Unbounded("halfspace system has a nontrivial recession cone");
  }

  double bmax = 1.0;
  for (double b : bs) bmax = std::max(bmax, std::abs(b));

  std::vector<Vector> verts;
  if (dim == 1) {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
      if (ns[i][0] > 0)
        hi = std::min(hi, bs[i]);
      else
        lo = std::max(lo, -bs[i]);
    }
    if (!std::isfinite(lo) || !std::isfinite(hi))
      throw Unbounded("halfspace system has a nontrivial recession cone");
    if (hi - lo <= tol * bmax) throw Infeasible("interval is empty");
    verts.push_back(Vector::Constant(1, lo));
    verts.push_back(Vector::Constant(1, hi));
  } else {
    Matrix a(dim, dim);
    Vector rhs(dim);
    detail::for_each_subset(m, dim, [&](const std::vector<int>& s) {
      for (int j = 0; j < dim; ++j) {
        a.row(j) = ns[s[j]].transpose();
        rhs[j] = bs[s[j]];
      }
      Eigen::PartialPivLU<Matrix> lu(a);
      if (std::abs(lu.determinant()) <= tol) return;
      const Vector x = lu.solve(rhs);
      const double xmax = x.cwiseAbs().maxCoeff();
      const double tol_feas = tol * std::max({1.0, xmax, bmax});
      for (int i = 0; i < m; ++i)
        if (ns[i].dot(x) - bs[i] > tol_feas) return;
      for (const auto& w : verts)
        if ((w - x).cwiseAbs().maxCoeff() <= tol * std::max(1.0, xmax)) return;
      verts.push_back(x);
    });
    if (verts.empty()) throw Infeasible("no feasible basic solution");
    Matrix rel(dim, static_cast<int>(verts.size()) - 1);
    for (std::size_t i = 1; i < verts.size(); ++i)
      rel.col(static_cast<int>(i) - 1) = verts[i] - verts[0];
    if (static_cast<int>(verts.size()) < dim + 1 || rank_of(rel, tol) < dim)
      throw DegenerateInput("feasible set has empty interior");
  }

  const double vscale = coordinate_scale(verts);
  std::vector<Facet> facets;
  for (int i = 0; i < m; ++i) {
    Facet f;
    f.normal = ns[i];
    f.offset = bs[i];
    for (std::size_t vi = 0; vi < verts.size(); ++vi)
      if (std::abs(ns[i].dot(verts[vi]) - bs[i]) <= tol * std::max(vscale, bmax))
        f.vertex_indices.push_back(static_cast<int>(vi));
    if (static_cast<int>(f.vertex_indices.size()) < dim) continue;  // redundant
    if (dim >= 2) {
      Matrix rel(dim, static_cast<int>(f.vertex_indices.size()) - 1);
      for (std::size_t j = 1; j < f.vertex_indices.size(); ++j)
        rel.col(static_cast<int>(j) - 1) =
            verts[f.vertex_indices[j]] - verts[f.vertex_indices[0]];
      if (rank_of(rel, tol) < dim - 1) continue;  // touches only a ridge
    }
    facets.push_back(std::move(f));
  }
  return Polytope::assemble(dim, std::move(verts), std::move(facets), tol);
}

}  // namespace detail

/// Intersection of halfspaces {x : <a_i, x> <= b_i}. Normals are normalized
/// internally; redundant halfspaces are dropped.
inline Polytope build_from_halfspaces(const std::vector<Vector>& normals,
                                      const std::vector<double>& offsets, double tol = 1e-9) {
  return detail::build_from_halfspaces_impl(normals, offsets, tol, /*check_bounded=*/true);
}

inline double volume(const Polytope& p) { return p.volume(); }
inline Vector centroid(const Polytope& p) { return p.centroid(); }

inline std::vector<FacetDatum> facet_data(const Polytope& p) {
  std::vector<FacetDatum> out;
  out.reserve(p.facets().size());
  for (const auto& f : p.facets()) out.push_back({f.normal, f.offset, f.measure});
  return out;
}

/// Volume recomputed as cones over an arbitrary interior apex; used to check
/// that the decomposition does not depend on the reference point.
inline double volume_from_apex(const Polytope& p, const Vector& apex) {
  for (const auto& f : p.facets())
    if (f.normal.dot(apex) >= f.offset)
      throw DegenerateInput("apex is not strictly interior");
  if (p.dim() == 1) return p.volume();
  double fact = 1.0;
  for (int i = 2; i <= p.dim(); ++i) fact *= i;
  KahanSum vol;
  Matrix cone(p.dim(), p.dim());
  for (std::size_t fi = 0; fi < p.facets().size(); ++fi) {
    for (const auto& s : p.facet_simplices(static_cast<int>(fi))) {
      for (int j = 0; j < p.dim(); ++j) cone.col(j) = s[j] - apex;
      vol.add(std::abs(cone.determinant()) / fact);
    }
  }
  return vol.value();
}

/// Translate. Combinatorics, measures and volume are unchanged; offsets and
/// derived points shift.
inline Polytope translate(const Polytope& p, const Vector& t) {
  Polytope q = p;
  for (auto& v : q.vertices_) v += t;
  for (auto& f : q.facets_) f.offset += f.normal.dot(t);
  q.centroid_ += t;
  q.interior_ += t;
  return q;
}

/// Translated copy with the centroid at the origin.
inline Polytope center_at_centroid(const Polytope& p) {
  return translate(p, -p.centroid());
}

/// Image under an invertible linear map, rebuilt from transformed vertices.
inline Polytope apply_linear(const Polytope& p, const Matrix& t) {
  if (std::abs(t.determinant()) < 1e-12)
    throw DegenerateInput("linear map is singular");
  std::vector<Vector> pts;
  pts.reserve(p.vertices().size());
  for (const auto& v : p.vertices()) pts.push_back(t * v);
  return build_from_vertices(p.dim(), pts, p.tol());
}

/// P intersected with the flat {origin + span(basis)}, expressed in the
/// basis coordinates. Empty or lower-dimensional sections give nullopt.
inline std::optional<Polytope> restrict_to_flat(const Polytope& p, const Vector& origin,
                                                const Matrix& basis, double tol = 1e-9) {
  const int d = static_cast<int>(basis.cols());
  std::vector<Vector> ns;
  std::vector<double> bs;
  for (const auto& f : p.facets()) {
    Vector g = basis.transpose() * f.normal;
    const double c = f.offset - f.normal.dot(origin);
    const double gn = g.norm();
    if (gn <= tol) {
      if (c < -tol * (1.0 + std::abs(f.offset))) return std::nullopt;  // flat misses P
      continue;
    }
    ns.push_back(g / gn);
    bs.push_back(c / gn);
  }
  if (static_cast<int>(ns.size()) < d + 1) return std::nullopt;
  try {
    return detail::build_from_halfspaces_impl(std::move(ns), std::move(bs), tol,
                                              /*check_bounded=*/false);
  } catch (const Infeasible&) {
    return std::nullopt;
  } catch (const DegenerateInput&) {
    return std::nullopt;
  } catch (const Unbounded&) {
    return std::nullopt;
  }
}

}  // namespace conevol

#endif  // CONEVOL_POLYTOPE_HPP
