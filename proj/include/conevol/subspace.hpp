// Linear subspaces of R^n carried as an orthonormal basis plus the
// associated orthogonal projection matrix.

#ifndef CONEVOL_SUBSPACE_HPP
#define CONEVOL_SUBSPACE_HPP

#include <vector>

#include "conevol/errors.hpp"
#include "conevol/linalg.hpp"

namespace conevol {

class Subspace {
 public:
  /// Wrap orthonormal columns (validated to 1e-10).
  static Subspace from_basis(const Matrix& basis) {
    const int n = static_cast<int>(basis.rows());
    const int k = static_cast<int>(basis.cols());
    if (k > 0) {
      const Matrix gram = basis.transpose() * basis;
      if ((gram - Matrix::Identity(k, k)).cwiseAbs().maxCoeff() > 1e-10)
        throw DegenerateInput("subspace basis is not orthonormal");
    }
    return Subspace(n, basis);
  }

  /// Span of an arbitrary set of vectors; rank decided at rel_tol.
  static Subspace from_spanning(int ambient_dim, const std::vector<Vector>& spanning,
                                double rel_tol = 1e-9) {
    Matrix cols(ambient_dim, static_cast<int>(spanning.size()));
    for (int i = 0; i < static_cast<int>(spanning.size()); ++i) cols.col(i) = spanning[i];
    return Subspace(ambient_dim, orthonormal_span(cols, rel_tol));
  }

  /// Span of a subset of coordinate axes.
  static Subspace coordinate(int ambient_dim, const std::vector<int>& axes) {
    Matrix basis = Matrix::Zero(ambient_dim, static_cast<int>(axes.size()));
    for (int i = 0; i < static_cast<int>(axes.size()); ++i) basis(axes[i], i) = 1.0;
    return Subspace(ambient_dim, basis);
  }

  static Subspace span_of(const Vector& direction) {
    Vector u = direction / direction.norm();
    Matrix basis(u.size(), 1);
    basis.col(0) = u;
    return Subspace(static_cast<int>(u.size()), basis);
  }

  int ambient_dim() const { return ambient_; }
  int dim() const { return static_cast<int>(basis_.cols()); }
  const Matrix& basis() const { return basis_; }
  const Matrix& projection() const { return projection_; }

  Vector project(const Vector& v) const { return projection_ * v; }

  /// Coordinates of v in the basis of this subspace.
  Vector coordinates(const Vector& v) const { return basis_.transpose() * v; }

  /// Distance of v from the subspace.
  double residual(const Vector& v) const { return (v - projection_ * v).norm(); }

  bool contains(const Vector& v, double tol) const { return residual(v) <= tol; }

  Subspace orthogonal_complement() const {
    return Subspace(ambient_, orthonormal_complement(basis_));
  }

  /// Frobenius distance between projection matrices; metric used for dedup.
  double distance(const Subspace& other) const {
    return (projection_ - other.projection_).norm();
  }

 private:
  Subspace(int ambient, Matrix basis)
      : ambient_(ambient), basis_(std::move(basis)) {
    projection_ = basis_ * basis_.transpose();
  }

  int ambient_;
  Matrix basis_;
  Matrix projection_;
};

}  // namespace conevol

#endif  // CONEVOL_SUBSPACE_HPP
