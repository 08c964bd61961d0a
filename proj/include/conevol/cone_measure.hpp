// Discrete cone-volume measure of a polytope with the origin in its
// interior: one atom per facet direction, weighted by the volume of the cone
// spanned by the facet and the origin.

#ifndef CONEVOL_CONE_MEASURE_HPP
#define CONEVOL_CONE_MEASURE_HPP

#include <algorithm>
#include <string>
#include <vector>

#include "conevol/errors.hpp"
#include "conevol/linalg.hpp"
#include "conevol/polytope.hpp"
#include "conevol/subspace.hpp"

namespace conevol {

struct ConeVolumeAtom {
  Vector normal;  // unit direction
  double weight;  // cone volume, > 0
};

class ConeVolumeMeasure {
 public:
  /// Atoms are merged per direction, validated and canonically ordered.
  ConeVolumeMeasure(int dim, std::vector<ConeVolumeAtom> atoms, double dedup_tol = 1e-9)
      : dim_(dim) {
    for (auto& a : atoms) {
      if (a.weight <= 0.0) throw DegenerateInput("cone-volume atom with nonpositive weight");
      const double nrm = a.normal.norm();
      if (std::abs(nrm - 1.0) > 1e-9) throw DegenerateInput("atom direction is not unit length");
      a.normal /= nrm;
      bool merged = false;
      for (auto& b : atoms_) {
        if ((a.normal - b.normal).norm() <= dedup_tol) {
          b.weight += a.weight;
          merged = true;
          break;
        }
      }
      if (!merged) atoms_.push_back(a);
    }
    std::sort(atoms_.begin(), atoms_.end(), [](const ConeVolumeAtom& a, const ConeVolumeAtom& b) {
      return lex_less(a.normal, b.normal);
    });
    KahanSum total;
    for (const auto& a : atoms_) total.add(a.weight);
    total_ = total.value();
  }

  int dim() const { return dim_; }
  const std::vector<ConeVolumeAtom>& atoms() const { return atoms_; }
  double total() const { return total_; }
  int size() const { return static_cast<int>(atoms_.size()); }

 private:
  int dim_;
  std::vector<ConeVolumeAtom> atoms_;
  double total_;
};

/// The measure of P: per facet, weight (1/n) * V_{n-1}(F_i) * b_i. Requires
/// the origin strictly inside (every offset positive).
inline ConeVolumeMeasure cone_volume_measure(const Polytope& p, double tol = 1e-9) {
  std::vector<ConeVolumeAtom> atoms;
  atoms.reserve(p.facets().size());
  for (const auto& f : p.facets()) {
    if (f.offset <= tol)
      throw OriginNotInterior("facet at distance " + std::to_string(f.offset) +
                              " from the origin; center the polytope first");
    atoms.push_back({f.normal, f.measure * f.offset / p.dim()});
  }
  return ConeVolumeMeasure(p.dim(), std::move(atoms));
}

struct SubspaceMass {
  double mass = 0.0;
  std::vector<int> members;  // atom indices inside the subspace
  int borderline = 0;        // residual in (tol, 10*tol]: worth a warning
};

/// Total weight of the atoms whose direction lies in L, decided by the
/// projection residual.
inline SubspaceMass subspace_mass(const ConeVolumeMeasure& mu, const Subspace& l,
                                  double tol = 1e-9) {
  SubspaceMass out;
  KahanSum mass;
  for (int i = 0; i < mu.size(); ++i) {
    const double r = l.residual(mu.atoms()[i].normal);
    if (r <= tol) {
      mass.add(mu.atoms()[i].weight);
      out.members.push_back(i);
    } else if (r <= 10.0 * tol) {
      ++out.borderline;
    }
  }
  out.mass = mass.value();
  return out;
}

inline double measure_of_subspace(const ConeVolumeMeasure& mu, const Subspace& l,
                                  double tol = 1e-9) {
  return subspace_mass(mu, l, tol).mass;
}

}  // namespace conevol

#endif  // CONEVOL_CONE_MEASURE_HPP
