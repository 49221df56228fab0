#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "lindop/operator.hpp"
#include "lindop/poly.hpp"
#include "lindop/ray.hpp"

namespace lindop {

// A linear differential operator whose coefficients are rational functions
// of z (ramified exponents allowed). This is the form the asymptotic
// machinery works on.
class RatOp {
public:
  RatOp() = default;
  explicit RatOp(std::vector<RatFun> ascending);
  static RatOp from_linop(const LinOp& l);

  int order() const { return static_cast<int>(a_.size()) - 1; }
  bool is_zero() const { return a_.empty(); }
  RatFun coeff(int j) const;
  const std::vector<RatFun>& coeffs() const { return a_; }

  // The operator g -> e^{-q} L[e^q g] for a polynomial q, given via w = q'.
  RatOp conjugate_by_logderiv(const RatFun& w) const;

private:
  std::vector<RatFun> a_;
};

// One exponential part e^q of a solution at infinity. q is a polynomial in
// a ramified variable z^{1/ram} with positive exponents; the zero part is
// q = 0. When a characteristic root resists exact recognition the part is
// reported with `approximate` set and only its leading term, the
// coefficient being a rational approximation of the numeric root.
struct ExpPart {
  Poly q;
  long mult = 1;
  bool approximate = false;
};

// All exponential parts of L at infinity, with multiplicity summing to the
// order of L; sorted canonically (higher degree first, then by coefficient).
std::vector<ExpPart> exponential_parts(const RatOp& L);

// Roots of a polynomial with coefficients in Q(i), constant term first.
// Exact roots are recognized by rationalizing numeric approximations and
// verifying exactly; the remainder is reported as clustered approximations.
struct QiRoot {
  GaussRat value;
  std::complex<double> approx;
  long mult = 1;
  bool exact = false;
};
std::vector<QiRoot> roots_qi(const std::vector<GaussRat>& ascending);

// A formal solution z^gamma e^q (c_0 + c_1 z^{-1/p} + ...) with c_0 = 1.
// `series` holds c_0..c_trunc on the 1/p grid with top exponent 0.
struct FormalSol {
  Poly q;
  GaussRat gamma;
  InfSeries series;
  long trunc = 0;
};

// The formal solution attached to the exponential part q of L. Requires the
// indicial polynomial in the conjugated operator to have degree exactly one.
FormalSol formal_solution(const RatOp& L, const Poly& q, long trunc = 8);

// One z^gamma e^q series tuple entering a formal Wronskian.
struct FormalTuple {
  Poly q;
  GaussRat gamma;
  InfSeries series;
};

// Series part of the Wronskian of the tuples: with y_j = z^{gamma_j} e^{q_j}
// s_j(z), returns the series S with W(y_1..y_k) = prod_j z^{gamma_j} e^{q_j}
// times S.
InfSeries formal_wronskian(const std::vector<FormalTuple>& ys);

// Exact verification that the exponential parts of L sum to zero, as forced
// by the Wronskian identity when a_{k-1}/a_k vanishes at infinity. Errors
// when that hypothesis fails or a part is only known approximately.
bool check_abel(const RatOp& L);

// Data of the Liouville-Green change of variable for y'' + A y = 0 with
// A = c z^n (1 + o(1)), n >= -1: the critical rays where c z^{n+2} turns
// real positive, the leading term of Z = int sqrt(A), and the power weight
// of the asymptotic solutions A^{-1/4} e^{+-iZ}.
struct HilleData {
  long n = 0;
  GaussRat cn;
  std::vector<double> critical_thetas; // sorted, in [0, 2*pi)
  std::optional<Poly> z_lead;          // exact when sqrt(cn) exists in Q(i)
  Rat gamma;                           // -n/4
};
HilleData hille_second_order(const RatFun& A);

// Parts of the transformed tuple: q_j + kappa for j != lambda and
// q_lambda - (k-1) kappa in place of q_lambda.
std::vector<Poly> shifted_parts(const std::vector<Poly>& parts,
                                const Poly& kappa, size_t lambda);

// Growth pattern of three shifted parts along a ray.
enum class RayClass { A, B, C, none };
RayClass classify_parts_on_ray(const std::vector<Poly>& shifted,
                               const Angle& theta, double tol = 1e-12);

} // namespace lindop
