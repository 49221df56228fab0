#pragma once

#include "lindop/poly.hpp"

namespace lindop {

// Direction arg z = theta. Multiples of pi/2 are tracked symbolically so
// comparisons along the coordinate axes stay exact.
struct Angle {
  bool exact = true;  // theta is quarters * pi/2
  long quarters = 0;
  double radians = 0.0;

  static Angle quarter(long q);
  static Angle from_radians(double r);
};

enum class RayOrder { precedes, similar, succeeds };

// Orders exponential parts along the ray arg z = theta by the growth of
// Re p(z) - Re q(z): `precedes` when the difference tends to -infinity.
// Coefficients are compared from the highest exponent down; a leading
// nonzero difference whose real part along the ray is within tol of zero
// (and not exactly zero) raises near_tie — the caller must perturb theta.
RayOrder ray_compare(const Poly& p, const Poly& q, const Angle& theta,
                     double tol = 1e-12);

// Re p(re^{i theta}) ~ c r^d: returns the sign of the leading term, 0 when
// p is identically zero along no exponent (zero polynomial).
int ray_sign(const Poly& p, const Angle& theta, double tol = 1e-12);

} // namespace lindop
