#pragma once

#include <functional>
#include <vector>

#include "momap/linalg.hpp"
#include "momap/tolerances.hpp"

namespace momap {

struct MinNormResult {
  RVector beta;               // closest point of the hull to the origin
  RVector coefficients;       // convex weights, one per input point
  std::vector<int> active;    // indices with nonzero weight (the final corral)
  int iterations = 0;
};

/// Minimum-norm point of conv(points) by Wolfe's active-set method with exact
/// affine projections. Ties between equally good points are broken by the
/// lexicographic order of the points. Throws std::invalid_argument on empty or
/// ragged input.
MinNormResult min_norm_point(const std::vector<RVector>& points);

/// Smallest value of <p - beta, beta> over the points (>= 0 at the optimum).
double kkt_gap(const std::vector<RVector>& points, const RVector& beta);

/// w - <v, w> v for a unit vector v.
CVector tangent_project(const CVector& v, const CVector& w);

/// Real cosine Re<a, b> / (|a| |b|), zero if either vector vanishes.
double real_cosine(const CVector& a, const CVector& b);

using StateFunction = std::function<double(const CVector&)>;

/// Central-difference gradient of a phase-invariant function on the unit sphere,
/// expressed in an orthonormal real frame of the horizontal tangent space at v
/// (the complement of v and i v). The result is a complex vector orthogonal to v.
CVector fd_gradient(const StateFunction& f, const CVector& v, const Tolerances& tol = {});

}  // namespace momap
