// Shared numerical helpers: compensated sums, rank decisions, orthonormal
// bases and canonical orderings for points and normals.

#ifndef CONEVOL_LINALG_HPP
#define CONEVOL_LINALG_HPP

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Dense>

namespace conevol {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Kahan-compensated accumulator. Sums in this library run over up to ~10^6
/// terms of mixed magnitude, which plain summation would feel at 1e-12 checks.
class KahanSum {
 public:
  void add(double x) {
    const double y = x - compensation_;
    const double t = sum_ + y;
    compensation_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

/// Strict lexicographic order on coordinate vectors.
inline bool lex_less(const Vector& a, const Vector& b) {
  for (int i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (a[i] > b[i]) return false;
  }
  return false;
}

/// Largest absolute coordinate over a point set; used to scale tolerances.
inline double coordinate_scale(const std::vector<Vector>& pts) {
  double s = 1.0;
  for (const auto& p : pts) s = std::max(s, p.cwiseAbs().maxCoeff());
  return s;
}

/// Numerical rank with a relative singular-value threshold.
inline int rank_of(const Matrix& m, double rel_tol) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv[0] <= 0.0) return 0;
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] > rel_tol * sv[0]) ++r;
  return r;
}

/// Ratio of smallest to largest singular value (0 for empty input).
inline double singular_value_ratio(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv[0] <= 0.0) return 0.0;
  return sv[sv.size() - 1] / sv[0];
}

/// Orthonormal basis of the span of the given columns (rank-revealing).
inline Matrix orthonormal_span(const Matrix& columns, double rel_tol) {
  if (columns.cols() == 0) return Matrix(columns.rows(), 0);
  Eigen::JacobiSVD<Matrix> svd(columns, Eigen::ComputeFullU);
  const auto& sv = svd.singularValues();
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[0] > 0.0 && sv[i] > rel_tol * sv[0]) ++r;
  return svd.matrixU().leftCols(r);
}

/// Orthonormal basis of the orthogonal complement of orthonormal columns.
inline Matrix orthonormal_complement(const Matrix& basis) {
  const int n = static_cast<int>(basis.rows());
  const int k = static_cast<int>(basis.cols());
  if (k == 0) return Matrix::Identity(n, n);
  Eigen::HouseholderQR<Matrix> qr(basis);
  Matrix q = qr.householderQ();
  return q.rightCols(n - k);
}

/// Orthonormal basis of the hyperplane with the given unit normal.
inline Matrix hyperplane_basis(const Vector& normal) {
  return orthonormal_complement(normal);
}

/// Remove near-duplicate points (infinity norm within tol), first kept.
inline std::vector<Vector> dedup_points(const std::vector<Vector>& pts, double tol) {
  std::vector<Vector> out;
  for (const auto& p : pts) {
    bool dup = false;
    for (const auto& q : out) {
      if ((p - q).cwiseAbs().maxCoeff() <= tol) {
        dup = true;
        break;
      }
    }
    if (!dup) out.push_back(p);
  }
  return out;
}

}  // namespace conevol

#endif  // CONEVOL_LINALG_HPP
