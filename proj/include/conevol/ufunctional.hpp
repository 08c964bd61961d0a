// The U-functional and its k-th analogues sigma_k. sigma_k(P)^k sums the
// products of cone volumes over ordered k-tuples of facets with linearly
// independent normals; it is computed as k! times the sum over unordered
// k-subsets. The ordered reading is forced by the equality case: a
// parallelotope has 2n cones of volume V/(2n) and exactly n! 2^n ordered
// independent n-tuples, giving U^n = n!/n^n V^n, the stated sharp constant.

#ifndef CONEVOL_UFUNCTIONAL_HPP
#define CONEVOL_UFUNCTIONAL_HPP

#include <cmath>
#include <string>
#include <vector>

#include "conevol/cone_measure.hpp"
#include "conevol/errors.hpp"
#include "conevol/polytope.hpp"
#include "conevol/scc.hpp"

namespace conevol {

namespace detail {

struct SigmaDetail {
  double value = 0.0;             // sigma_k
  double power_sum = 0.0;         // sigma_k^k
  std::size_t independent = 0;    // independent k-subsets
  int conditioning_warnings = 0;  // near-threshold rank decisions
};

inline SigmaDetail sigma_detailed(const ConeVolumeMeasure& mu, int k, double tol) {
  const int n = mu.dim();
  const int m = mu.size();
  if (k < 1 || k > n) throw InvalidK("k must be in 1..dim, got " + std::to_string(k));

  double k_factorial = 1.0;
  for (int i = 2; i <= k; ++i) k_factorial *= i;

  SigmaDetail out;
  KahanSum sum;
  Matrix normals(n, k);
  const bool log_space = k >= 5;  // products of many small weights
  for_each_subset(m, k, [&](const std::vector<int>& s) {
    for (int j = 0; j < k; ++j) normals.col(j) = mu.atoms()[s[j]].normal;
    const double ratio = singular_value_ratio(normals);
    if (ratio <= tol) return;
    if (ratio <= 10.0 * tol) ++out.conditioning_warnings;
    ++out.independent;
    if (log_space) {
      double lg = 0.0;
      for (int j = 0; j < k; ++j) lg += std::log(mu.atoms()[s[j]].weight);
      sum.add(std::exp(lg));
    } else {
      double prod = 1.0;
      for (int j = 0; j < k; ++j) prod *= mu.atoms()[s[j]].weight;
      sum.add(prod);
    }
  });
  out.power_sum = k_factorial * sum.value();
  out.value = std::pow(out.power_sum, 1.0 / k);
  return out;
}

}  // namespace detail

/// sigma_k, the k-th root of the ordered-tuple sum.
inline double sigma_k(const ConeVolumeMeasure& mu, int k, double tol = 1e-9) {
  return detail::sigma_detailed(mu, k, tol).value;
}

/// U = sigma_n. The atom directions must span the whole space.
inline double u_functional(const ConeVolumeMeasure& mu, double tol = 1e-9) {
  const int n = mu.dim();
  Matrix all(n, mu.size());
  for (int i = 0; i < mu.size(); ++i) all.col(i) = mu.atoms()[i].normal;
  if (rank_of(all, tol) < n)
    throw DegenerateNormals("atom directions do not span the ambient space");
  return sigma_k(mu, n, tol);
}

struct RecursionMargin {
  int k;          // step from sigma_k to sigma_{k+1}
  double lhs;     // sigma_{k+1}^{k+1}
  double rhs;     // ((n-k)/n) V sigma_k^k
  double margin;  // lhs - rhs, >= -tol V^{k+1} for centered P
};

struct UReport {
  int dim = 0;
  double volume = 0.0;
  double u = 0.0;
  double bound = 0.0;  // (n!)^{1/n} / n * V
  double ratio = 0.0;  // u / bound, >= 1 - tol for centered P
  std::vector<double> sigma;  // sigma_1..sigma_n
  std::vector<RecursionMargin> margins;
  bool equality = false;       // |ratio - 1| <= tol
  bool parallelotope = false;
  bool equality_matches_parallelotope = false;
  int conditioning_warnings = 0;
  double tol = 0.0;
};

namespace detail {

inline std::vector<RecursionMargin> recursion_margins(const std::vector<SigmaDetail>& sig,
                                                      int n, double vol) {
  std::vector<RecursionMargin> out;
  for (int k = 1; k < n; ++k) {
    const double lhs = sig[k].power_sum;  // sigma_{k+1}^{k+1}
    const double rhs = (static_cast<double>(n - k) / n) * vol * sig[k - 1].power_sum;
    out.push_back({k, lhs, rhs, lhs - rhs});
  }
  return out;
}

inline Polytope require_centered(const Polytope& p, bool auto_center) {
  if (p.is_centered()) return p;
  if (!auto_center)
    throw NotCentered("centroid has norm " + std::to_string(p.centroid().norm()) +
                      "; pass auto_center to recenter");
  return center_at_centroid(p);
}

}  // namespace detail

/// Verify the sharp lower bound U >= (n!)^{1/n}/n V and U <= V for a centered
/// polytope; violations raise ToleranceFailure.
inline UReport check_u_inequality(const Polytope& p, double tol = 1e-9,
                                  bool auto_center = false) {
  const Polytope q = detail::require_centered(p, auto_center);
  const int n = q.dim();
  const ConeVolumeMeasure mu = cone_volume_measure(q, tol);

  std::vector<detail::SigmaDetail> sig;
  sig.reserve(n);
  for (int k = 1; k <= n; ++k) sig.push_back(detail::sigma_detailed(mu, k, tol));

  UReport r;
  r.dim = n;
  r.volume = q.volume();
  r.tol = tol;
  for (const auto& s : sig) {
    r.sigma.push_back(s.value);
    r.conditioning_warnings += s.conditioning_warnings;
  }
  r.u = sig[n - 1].value;
  double n_factorial = 1.0;
  for (int i = 2; i <= n; ++i) n_factorial *= i;
  r.bound = std::pow(n_factorial, 1.0 / n) / n * r.volume;
  r.ratio = r.u / r.bound;
  r.margins = detail::recursion_margins(sig, n, r.volume);
  r.equality = std::abs(r.ratio - 1.0) <= tol;
  r.parallelotope = is_parallelotope(q, tol);
  r.equality_matches_parallelotope = (r.equality == r.parallelotope);

  if (r.u < r.bound - tol * r.volume)
    throw ToleranceFailure("U-functional below its lower bound", r.u, r.bound);
  if (r.u > r.volume + tol * r.volume)
    throw ToleranceFailure("U-functional above the volume", r.u, r.volume);
  return r;
}

/// Margins of the recursion sigma_{k+1}^{k+1} >= ((n-k)/n) V sigma_k^k.
inline std::vector<RecursionMargin> check_recursion(const Polytope& p, double tol = 1e-9,
                                                    bool auto_center = false) {
  const Polytope q = detail::require_centered(p, auto_center);
  const int n = q.dim();
  const ConeVolumeMeasure mu = cone_volume_measure(q, tol);
  std::vector<detail::SigmaDetail> sig;
  sig.reserve(n);
  for (int k = 1; k <= n; ++k) sig.push_back(detail::sigma_detailed(mu, k, tol));
  return detail::recursion_margins(sig, n, q.volume());
}

}  // namespace conevol

#endif  // CONEVOL_UFUNCTIONAL_HPP
