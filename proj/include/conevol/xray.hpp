// Slice-volume (X-ray) functions of a polytope: f_L(x) is the (n-k)-volume
// of the section through x parallel to the orthogonal complement of the
// k-dimensional subspace L.
//
// For k = 1 the function is piecewise polynomial of degree at most n-1 with
// breakpoints at the projections of the vertices; that structure is built
// explicitly and integrated in closed form. Larger k is evaluated pointwise.

#ifndef CONEVOL_XRAY_HPP
#define CONEVOL_XRAY_HPP

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "conevol/errors.hpp"
#include "conevol/linalg.hpp"
#include "conevol/polytope.hpp"
#include "conevol/rng.hpp"
#include "conevol/subspace.hpp"

namespace conevol {

/// Section volume V_{n-k}(P cut by x + L-perp); x is given in L-coordinates.
/// Empty and lower-dimensional sections count as 0.
inline double xray_value(const Polytope& p, const Subspace& l, const Vector& x) {
  const int n = p.dim();
  const int k = l.dim();
  if (k <= 0 || k >= n) throw InvalidK("section subspace must have dimension 1..n-1");
  const Vector p0 = l.basis() * x;
  const auto section = restrict_to_flat(p, p0, l.orthogonal_complement().basis(), p.tol());
  return section ? section->volume() : 0.0;
}

inline double xray_value(const Polytope& p, const Vector& direction, double t) {
  return xray_value(p, Subspace::span_of(direction), Vector::Constant(1, t));
}

/// One-dimensional piecewise polynomial: cells between consecutive
/// breakpoints, coefficients in ascending powers of the global parameter.
class PiecewisePolynomial {
 public:
  PiecewisePolynomial(Vector direction, std::vector<double> breakpoints,
                      std::vector<std::vector<double>> cells, double max_sample)
      : direction_(std::move(direction)),
        breakpoints_(std::move(breakpoints)),
        cells_(std::move(cells)),
        max_sample_(max_sample) {}

  const Vector& direction() const { return direction_; }
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<std::vector<double>>& cells() const { return cells_; }
  int cell_count() const { return static_cast<int>(cells_.size()); }
  double support_min() const { return breakpoints_.front(); }
  double support_max() const { return breakpoints_.back(); }
  /// Largest sample magnitude seen while fitting; scale for residual checks.
  double max_sample() const { return max_sample_; }

  double operator()(double t) const {
    if (t < breakpoints_.front() || t > breakpoints_.back()) return 0.0;
    return eval_cell(cell_index(t), t);
  }

  double eval_cell(int c, double t) const {
    const auto& coef = cells_[c];
    double acc = 0.0;
    for (int j = static_cast<int>(coef.size()) - 1; j >= 0; --j) acc = acc * t + coef[j];
    return acc;
  }

  int cell_index(double t) const {
    const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
    int c = static_cast<int>(it - breakpoints_.begin()) - 1;
    return std::clamp(c, 0, cell_count() - 1);
  }

  /// Exact integral over the support.
  double integral() const {
    KahanSum total;
    for (int c = 0; c < cell_count(); ++c) {
      const double a = breakpoints_[c], b = breakpoints_[c + 1];
      const auto& coef = cells_[c];
      for (std::size_t j = 0; j < coef.size(); ++j)
        total.add(coef[j] / (j + 1.0) * (std::pow(b, j + 1.0) - std::pow(a, j + 1.0)));
    }
    return total.value();
  }

  /// Exact integral of t * f(t).
  double first_moment() const {
    KahanSum total;
    for (int c = 0; c < cell_count(); ++c) {
      const double a = breakpoints_[c], b = breakpoints_[c + 1];
      const auto& coef = cells_[c];
      for (std::size_t j = 0; j < coef.size(); ++j)
        total.add(coef[j] / (j + 2.0) * (std::pow(b, j + 2.0) - std::pow(a, j + 2.0)));
    }
    return total.value();
  }

  /// Exact integral of t * f'(t); cell derivatives, breakpoints carry no mass.
  double gradient_moment() const {
    KahanSum total;
    for (int c = 0; c < cell_count(); ++c) {
      const double a = breakpoints_[c], b = breakpoints_[c + 1];
      const auto& coef = cells_[c];
      for (std::size_t j = 1; j < coef.size(); ++j) {
        const double d = static_cast<double>(j) * coef[j];  // degree j-1 term of f'
        total.add(d / (j + 1.0) * (std::pow(b, j + 1.0) - std::pow(a, j + 1.0)));
      }
    }
    return total.value();
  }

 private:
  Vector direction_;
  std::vector<double> breakpoints_;
  std::vector<std::vector<double>> cells_;
  double max_sample_;
};

namespace detail {

/// Fit one cell: interpolate at Chebyshev nodes in the normalized coordinate,
/// drop sub-noise coefficients (they would be amplified without bound when
/// converting a very thin cell to the global parameter), shift to powers of t.
inline std::vector<double> fit_cell_polynomial(const std::vector<double>& nodes_s,
                                               const std::vector<double>& values,
                                               double mid, double half, double scale) {
  const int n = static_cast<int>(nodes_s.size());
  Matrix vand(n, n);
  Vector rhs(n);
  for (int r = 0; r < n; ++r) {
    double p = 1.0;
    for (int c = 0; c < n; ++c) {
      vand(r, c) = p;
      p *= nodes_s[r];
    }
    rhs[r] = values[r];
  }
  Vector cs = Eigen::FullPivLU<Matrix>(vand).solve(rhs);
  const double floor = 1e-13 * std::max(scale, 1e-300);
  for (int i = 1; i < n; ++i)
    if (std::abs(cs[i]) <= floor) cs[i] = 0.0;

  // powers of u = t - mid
  std::vector<double> cu(n);
  double hp = 1.0;
  for (int i = 0; i < n; ++i) {
    cu[i] = cs[i] / hp;
    hp *= half;
  }
  // binomial shift to powers of t
  std::vector<double> ct(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double binom = 1.0;
    std::vector<double> pw(i + 1);  // pw[j] = (-mid)^(i-j)
    pw[i] = 1.0;
    for (int j = i - 1; j >= 0; --j) pw[j] = pw[j + 1] * (-mid);
    for (int j = i; j >= 0; --j) {
      ct[j] += cu[i] * binom * pw[j];
      binom = binom * j / (i - j + 1.0);
    }
  }
  while (ct.size() > 1 && ct.back() == 0.0) ct.pop_back();
  return ct;
}

}  // namespace detail

/// Build the k=1 X-ray along the unit direction u as an explicit piecewise
/// polynomial. Each cell is interpolated from n interior samples and checked
/// against 2n held-out samples; a residual above interp_tol * max f means the
/// breakpoint structure or the tolerance ladder failed, and throws.
inline PiecewisePolynomial xray_piecewise(const Polytope& p, const Vector& direction,
                                          double interp_tol = 1e-8) {
  const int n = p.dim();
  const Vector u = direction / direction.norm();
  const Subspace l = Subspace::span_of(u);

  std::vector<double> proj;
  proj.reserve(p.vertices().size());
  for (const auto& v : p.vertices()) proj.push_back(u.dot(v));
  std::sort(proj.begin(), proj.end());
  std::vector<double> breakpoints;
  for (double t : proj) {
    if (breakpoints.empty() || t - breakpoints.back() > 1e-9)
      breakpoints.push_back(t);
  }
  if (breakpoints.size() < 2) throw DegenerateInput("projection collapses to a point");

  const int cells = static_cast<int>(breakpoints.size()) - 1;
  std::vector<std::vector<double>> coeffs(cells);
  std::vector<std::vector<double>> fit_nodes(cells);
  std::vector<std::vector<double>> fit_values(cells);
  double fmax = 0.0;

  for (int c = 0; c < cells; ++c) {
    const double a = breakpoints[c], b = breakpoints[c + 1];
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    fit_nodes[c].resize(n);
    fit_values[c].resize(n);
    for (int j = 0; j < n; ++j) {
      const double s = std::cos(M_PI * (2.0 * j + 1.0) / (2.0 * n));
      fit_nodes[c][j] = s;
      fit_values[c][j] = xray_value(p, l, Vector::Constant(1, mid + half * s));
      fmax = std::max(fmax, std::abs(fit_values[c][j]));
    }
  }
  for (int c = 0; c < cells; ++c) {
    const double a = breakpoints[c], b = breakpoints[c + 1];
    coeffs[c] = detail::fit_cell_polynomial(fit_nodes[c], fit_values[c], 0.5 * (a + b),
                                            0.5 * (b - a), std::max(fmax, 1.0e-300));
  }

  PiecewisePolynomial pp(u, breakpoints, coeffs, fmax);

  // held-out validation, 2n fresh samples per cell
  double worst = 0.0;
  for (int c = 0; c < cells; ++c) {
    const double a = breakpoints[c], b = breakpoints[c + 1];
    for (int j = 0; j < 2 * n; ++j) {
      const double t = a + (b - a) * (j + 0.5) / (2.0 * n);
      const double truth = xray_value(p, l, Vector::Constant(1, t));
      fmax = std::max(fmax, std::abs(truth));
      worst = std::max(worst, std::abs(pp.eval_cell(c, t) - truth));
    }
  }
  if (worst > interp_tol * std::max(fmax, 1e-300))
    throw InterpolationMismatch("held-out residual " + std::to_string(worst) +
                                " exceeds bound " + std::to_string(interp_tol * fmax));
  return PiecewisePolynomial(u, pp.breakpoints(), pp.cells(), fmax);
}

inline double first_moment(const PiecewisePolynomial& pp) { return pp.first_moment(); }
inline double gradient_moment(const PiecewisePolynomial& pp) { return pp.gradient_moment(); }

/// Both sides of the k=1 divergence identity along a direction u: the facet
/// contribution inside span(u) equals V(P) plus the gradient moment of f.
struct DivergenceIdentityRecord {
  Vector direction;
  double lhs = 0.0;              // sum of measure * offset over facets in span(u)
  double k_volume = 0.0;         // k * V(P), k = 1
  double gradient_moment = 0.0;  // integral of t f'(t)
  double rhs = 0.0;              // k_volume + gradient_moment
  double residual = 0.0;
};

inline DivergenceIdentityRecord divergence_identity(const Polytope& p,
                                                    const PiecewisePolynomial& pp,
                                                    double tol = 1e-8) {
  for (const auto& f : p.facets())
    if (f.offset <= p.tol())
      throw OriginNotInterior("divergence identity needs the origin strictly inside");
  const Vector& u = pp.direction();
  const Subspace l = Subspace::span_of(u);

  KahanSum lhs;
  for (const auto& f : p.facets())
    if (l.residual(f.normal) <= p.tol()) lhs.add(f.measure * f.offset);

  DivergenceIdentityRecord rec;
  rec.direction = u;
  rec.lhs = lhs.value();
  rec.k_volume = p.volume();
  rec.gradient_moment = pp.gradient_moment();
  rec.rhs = rec.k_volume + rec.gradient_moment;
  rec.residual = std::abs(rec.lhs - rec.rhs);
  if (rec.residual > tol * p.volume())
    throw ToleranceFailure("divergence identity residual " + std::to_string(rec.residual) +
                               " over " + std::to_string(tol * p.volume()),
                           rec.lhs, rec.rhs);
  return rec;
}

inline DivergenceIdentityRecord divergence_identity(const Polytope& p, const Vector& direction,
                                                    double tol = 1e-8) {
  for (const auto& f : p.facets())
    if (f.offset <= p.tol())
      throw OriginNotInterior("divergence identity needs the origin strictly inside");
  return divergence_identity(p, xray_piecewise(p, direction), tol);
}

namespace detail {

/// Vertices of the orthogonal projection of P onto L, in L-coordinates.
inline std::vector<Vector> projected_vertices(const Polytope& p, const Subspace& l) {
  std::vector<Vector> proj;
  proj.reserve(p.vertices().size());
  for (const auto& v : p.vertices()) proj.push_back(l.coordinates(v));
  return proj;
}

/// Extreme points of the projection (the shadow polytope's vertex set).
inline std::vector<Vector> shadow_vertices(const Polytope& p, const Subspace& l) {
  const auto proj = projected_vertices(p, l);
  if (l.dim() == 1) {
    Vector lo = proj[0], hi = proj[0];
    for (const auto& t : proj) {
      if (t[0] < lo[0]) lo = t;
      if (t[0] > hi[0]) hi = t;
    }
    return {lo, hi};
  }
  const Polytope shadow = build_from_vertices(l.dim(), proj, p.tol());
  return shadow.vertices();
}

/// Deterministic strictly interior points: convex combinations of the shadow
/// vertices with Dirichlet weights from a seeded generator.
inline std::vector<Vector> interior_samples(const std::vector<Vector>& shadow, int count,
                                            std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Vector> out;
  out.reserve(count);
  const int k = static_cast<int>(shadow[0].size());
  for (int i = 0; i < count; ++i) {
    Vector x = Vector::Zero(k);
    double total = 0.0;
    std::vector<double> w(shadow.size());
    for (std::size_t j = 0; j < shadow.size(); ++j) {
      w[j] = -std::log(std::max(rng.uniform(), 1e-12));
      total += w[j];
    }
    for (std::size_t j = 0; j < shadow.size(); ++j) x += (w[j] / total) * shadow[j];
    out.push_back(std::move(x));
  }
  return out;
}

}  // namespace detail

struct LogConcavityViolation {
  Vector x, y;
  double lambda;
  double margin;  // how far below the concavity bound the sample fell
};

struct LogConcavityReport {
  int samples = 0;
  int violations = 0;
  double worst_margin = 0.0;  // most negative slack seen
  std::vector<LogConcavityViolation> details;
};

/// Sample pairs in the relative interior of P|L and test both the
/// (n-k)-th-root concavity of f_L and its log-concavity, with a small
/// absolute slack for rounding.
inline LogConcavityReport check_log_concavity(const Polytope& p, const Subspace& l,
                                              int samples, std::uint64_t seed,
                                              double slack = 1e-8) {
  const int n = p.dim();
  const int k = l.dim();
  if (k <= 0 || k >= n) throw InvalidK("section subspace must have dimension 1..n-1");
  const double root = 1.0 / (n - k);
  const auto shadow = detail::shadow_vertices(p, l);
  const auto xs = detail::interior_samples(shadow, samples, mix_seed(seed, 101));
  const auto ys = detail::interior_samples(shadow, samples, mix_seed(seed, 202));
  Rng lam(mix_seed(seed, 303));

  LogConcavityReport report;
  report.samples = samples;
  for (int i = 0; i < samples; ++i) {
    const double t = lam.uniform();
    const Vector z = (1.0 - t) * xs[i] + t * ys[i];
    const double fx = xray_value(p, l, xs[i]);
    const double fy = xray_value(p, l, ys[i]);
    const double fz = xray_value(p, l, z);
    const double root_gap =
        std::pow(fz, root) - ((1.0 - t) * std::pow(fx, root) + t * std::pow(fy, root));
    const double log_gap = fz - std::pow(fx, 1.0 - t) * std::pow(fy, t);
    const double margin = std::min(root_gap, log_gap);
    if (margin < -slack) {
      ++report.violations;
      if (report.details.size() < 16) report.details.push_back({xs[i], ys[i], t, margin});
    }
    report.worst_margin = std::min(report.worst_margin, margin);
  }
  return report;
}

/// True when f_L is constant over the projection, decided from 50
/// deterministic interior samples (for k = 1 the fitted cells are probed as
/// well, which makes the check exact up to the fit tolerance).
inline bool is_constant_section(const Polytope& p, const Subspace& l, double tol = 1e-8) {
  const int n = p.dim();
  const int k = l.dim();
  if (k <= 0 || k >= n) throw InvalidK("section subspace must have dimension 1..n-1");

  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  auto feed = [&](double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  };

  if (k == 1) {
    const PiecewisePolynomial pp = xray_piecewise(p, l.basis().col(0));
    const double a = pp.support_min(), b = pp.support_max();
    for (int i = 0; i < 50; ++i) feed(pp(a + (b - a) * (i + 0.5) / 50.0));
    for (int c = 0; c < pp.cell_count(); ++c) {
      const double ca = pp.breakpoints()[c], cb = pp.breakpoints()[c + 1];
      for (int j = 0; j < n + 1; ++j) {
        const double s = std::cos(M_PI * j / n);  // extrema nodes of the cell
        feed(pp.eval_cell(c, 0.5 * (ca + cb) + 0.5 * (cb - ca) * s));
      }
    }
  } else {
    const auto shadow = detail::shadow_vertices(p, l);
    for (const auto& x : detail::interior_samples(shadow, 50, 0x5eedf00dULL))
      feed(xray_value(p, l, x));
  }
  if (!(lo > 0.0)) return false;
  return hi <= lo * (1.0 + tol);
}

}  // namespace conevol

#endif  // CONEVOL_XRAY_HPP
