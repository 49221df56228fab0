#include "lindop/ray.hpp"

#include <cmath>

namespace lindop {

Angle Angle::quarter(long q) {
  Angle a;
  a.exact = true;
  a.quarters = q;
  a.radians = static_cast<double>(q) * std::acos(0.0); // q * pi/2
  return a;
}

Angle Angle::from_radians(double r) {
  Angle a;
  a.exact = false;
  a.quarters = 0;
  a.radians = r;
  return a;
}

namespace {

// Sign of Re(c * e^{i * t * pi/2}) for integer t, exactly.
int exact_quarter_sign(const GaussRat& c, long t) {
  long m = ((t % 4) + 4) % 4;
  Rat v;
  switch (m) {
    case 0: v = c.re(); break;
    case 1: v = -c.im(); break;
    case 2: v = -c.re(); break;
    default: v = c.im(); break;
  }
  return v.sign();
}

// Sign of the real part of c e^{i phi} along the ray; -2 encodes a near tie.
int term_sign(const GaussRat& c, long j, long ram, const Angle& theta,
              double tol) {
  if (theta.exact) {
    long num = j * theta.quarters;
    if (num % ram == 0) return exact_quarter_sign(c, num / ram);
  }
  double phi = static_cast<double>(j) * theta.radians / static_cast<double>(ram);
  double v = c.re().to_double() * std::cos(phi) - c.im().to_double() * std::sin(phi);
  if (std::fabs(v) <= tol) return -2;
  return v > 0 ? 1 : -1;
}

} // namespace

RayOrder ray_compare(const Poly& p, const Poly& q, const Angle& theta,
                     double tol) {
  long r = Poly::common_ram(p, q);
  Poly a = p.lifted(r), b = q.lifted(r);
  long top = std::max(a.deg_w(), b.deg_w());
  for (long j = top; j >= 1; --j) {
    GaussRat d = a.coeff_w(j) - b.coeff_w(j);
    if (d.is_zero()) continue;
    int s = term_sign(d, j, r, theta, tol);
    if (s == -2)
      fail(ErrorCode::near_tie,
           "ray comparison within tolerance of a tie; perturb theta");
    if (s < 0) return RayOrder::precedes;
    if (s > 0) return RayOrder::succeeds;
    // s == 0 exactly: this term is purely oscillatory along the ray.
  }
  return RayOrder::similar;
}

int ray_sign(const Poly& p, const Angle& theta, double tol) {
  switch (ray_compare(p, Poly(), theta, tol)) {
    case RayOrder::precedes: return -1;
    case RayOrder::succeeds: return 1;
    default: return 0;
  }
}

} // namespace lindop
