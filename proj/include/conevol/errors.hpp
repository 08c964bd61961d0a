// Exception hierarchy shared by all modules.

#ifndef CONEVOL_ERRORS_HPP
#define CONEVOL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace conevol {

/// Base class of every error this library raises deliberately.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input whose affine hull is lower-dimensional than the ambient space.
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

/// Fewer than dim+1 distinct points were supplied.
class TooFewPoints : public Error {
 public:
  using Error::Error;
};

/// Halfspace system with a nontrivial recession cone.
class Unbounded : public Error {
 public:
  using Error::Error;
};

/// Halfspace system with empty interior.
class Infeasible : public Error {
 public:
  using Error::Error;
};

/// Cone volumes require the origin strictly inside the polytope.
class OriginNotInterior : public Error {
 public:
  using Error::Error;
};

/// Operation requires the centroid at the origin and auto-centering is off.
class NotCentered : public Error {
 public:
  using Error::Error;
};

/// Subset enumeration would exceed the configured cap.
class CombinatorialLimit : public Error {
 public:
  using Error::Error;
};

/// k outside 1..n.
class InvalidK : public Error {
 public:
  using Error::Error;
};

/// Facet normals do not span the ambient space.
class DegenerateNormals : public Error {
 public:
  using Error::Error;
};

/// A piecewise fit failed its held-out validation.
class InterpolationMismatch : public Error {
 public:
  using Error::Error;
};

/// Random generation kept producing degenerate instances.
class DegenerateSample : public Error {
 public:
  using Error::Error;
};

/// Malformed input file or generator specification.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// An identity check missed its tolerance; carries both sides.
class ToleranceFailure : public Error {
 public:
  ToleranceFailure(const std::string& what, double lhs, double rhs)
      : Error(what), lhs(lhs), rhs(rhs) {}
  double lhs;
  double rhs;
};

}  // namespace conevol

#endif  // CONEVOL_ERRORS_HPP
