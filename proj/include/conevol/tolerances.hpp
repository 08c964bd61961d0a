// Central tolerance configuration. Every check that compares floating-point
// quantities takes its threshold from here (possibly scaled by the magnitude
// of the data it looks at), and reports echo the values they used.

#ifndef CONEVOL_TOLERANCES_HPP
#define CONEVOL_TOLERANCES_HPP

#include <cstddef>

namespace conevol {

struct Tolerances {
  /// Incidence, rank and feasibility decisions; scaled by coordinate magnitude.
  double geometry = 1e-9;
  /// Atoms closer than this in direction are merged.
  double normal_dedup = 1e-9;
  /// Projection residual below which a unit vector counts as inside a subspace.
  double membership = 1e-9;
  /// Residual band [membership, 10*membership] flagged as borderline.
  double membership_warn_factor = 10.0;
  /// Frobenius distance below which two projection matrices are the same span.
  double span_dedup = 1e-8;
  /// Width of the equality band, times V(P).
  double equality_band = 1e-9;
  /// Centroid-at-origin check, times (1 + diameter).
  double centering = 1e-10;
  /// Singular value ratio below which vectors count as dependent.
  double rank = 1e-9;
  /// Held-out residual bound for piecewise fits, times max |f|.
  double interpolation = 1e-8;
  /// Divergence identity residual, times V(P).
  double divergence = 1e-8;
  /// Upper bound on the gradient moment of a centered polytope, times V(P).
  double gradient_moment = 1e-10;
  /// First-moment residual, times V(P) * diam(P).
  double first_moment = 1e-9;
  /// Absolute slack in sampled concavity inequalities.
  double logconc_slack = 1e-8;
  /// Subset enumeration limit.
  std::size_t span_cap = 1'000'000;
};

}  // namespace conevol

#endif  // CONEVOL_TOLERANCES_HPP
