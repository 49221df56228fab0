#pragma once

#include <random>
#include <utility>
#include <vector>

#include "lindop/operator.hpp"
#include "lindop/poly.hpp"

namespace lindop {

// The operator M_{k,mu} = sum_{m=mu}^{k} binom(m, mu) C_m D^{m-mu} built
// from the coefficient list C_0..C_{k-2} of a reduced equation
// y^(k) + C_{k-2} y^(k-2) + ... + C_0 y = 0 (so C_k = 1 and C_{k-1} = 0
// are implied). mu = -1 gives the zero operator; mu outside [-1, k] is an
// error.
LinOp m_k_mu(const TowerPtr& t, int k, const std::vector<TowerElem>& C,
             int mu);

// A relation  a * Phi = R[G]  with a in the coefficient field and R a
// linear operator acting on G.
struct PhiRelation {
  TowerElem phi_coef;
  LinOp rhs;

  PhiRelation scaled(const TowerElem& s) const;
  PhiRelation operator-(const PhiRelation& o) const;
};

// Frank's coupled system for a pair of reduced equations of order k >= 3
// with coefficient lists c_0..c_{k-2} and C_0..C_{k-2}: the k relations
//
//   M_{k,mu}[Phi] - c_mu Phi
//     = -M_{k,mu-1}[G] + c_mu M_{k,k-1}[G] + (c_mu' + c_{mu-1}) G,
//
// one per 0 <= mu <= k-1, written as S_mu[Phi] = T_mu[G]. The difference
// D_mu = C_mu - c_mu is the coefficient of Phi in S_mu and is always
// recomputed from the lists.
class FrankSystem {
public:
  FrankSystem(TowerPtr t, std::vector<TowerElem> c, std::vector<TowerElem> C);

  const TowerPtr& tower() const { return tower_; }
  int k() const { return k_; }

  // Accessors with the boundary conventions baked in:
  // c_{-1} = C_{-1} = c_{k-1} = C_{k-1} = 0 and c_k = C_k = 1.
  TowerElem c_at(int mu) const;
  TowerElem C_at(int mu) const;
  TowerElem D_at(int mu) const;

  LinOp m_op(int mu) const; // M_{k,mu} over the C-list
  LinOp s_op(int mu) const; // S_mu = M_{k,mu} - c_mu
  LinOp t_op(int mu) const; // T_mu as above
  LinOp u_op() const;       // Phi' = U[G] (the mu = k-1 relation, monic-free form)

  // The mu-th relation as the operator pair (S_mu, T_mu).
  std::pair<LinOp, LinOp> relation(int mu) const;
  std::vector<std::pair<LinOp, LinOp>> relations() const;

  // Eliminates Phi', Phi'', ... from the mu-th relation using Phi' = U[G]:
  // returns D_mu * Phi = (T_mu - sum_{j>=1} c_{j,mu} D^{j-1} U)[G].
  PhiRelation reduce(int mu) const;

  // d/dz of a relation, using Phi' = U[G] on the left-hand side.
  PhiRelation differentiate(const PhiRelation& r) const;

private:
  TowerPtr tower_;
  std::vector<TowerElem> c_, C_;
  int k_;
};

// The second-stage relations obtained by substituting Phi' = U[G] into the
// mu = k-2 and mu = k-3 relations and differentiating: eq_y and eq_z carry
// the G''' and G'''' leading terms, and eq_star = eq_z - d/dz(eq_y) drops
// both, leaving a G''-leading relation. d1..d4 are the lower-order
// coefficients of eq_z and eq_star that the displayed forms leave unnamed.
struct ChainRelations {
  PhiRelation eq_y;
  PhiRelation eq_z;
  PhiRelation eq_star;
  TowerElem d1, d2, d3, d4;
};

ChainRelations derive_chain(const FrankSystem& sys);

// Phi-elimination outcome. When every D_mu vanishes the two equations (and
// their operators) coincide; otherwise Phi = T*[G] for every solution pair,
// with nu the largest index with D_nu != 0, and G alone solves the reduced
// system {D T* - U, S_mu T* - T_mu (0 <= mu <= k-2)}.
enum class PhiCase { identical, eliminated };

struct PhiElimination {
  PhiCase kind;
  int nu = -1;
  LinOp tstar;
  std::vector<LinOp> reduced;
};

PhiElimination eliminate_phi(const FrankSystem& sys);

// A concrete coefficient set with exactly one non-vanishing D_mu (at index
// nu, 0 <= nu <= k-2) together with a witness pair (g, phi) satisfying all
// k relations exactly. Built over the base tower extended by a single
// exponential generator; the coefficients themselves are polynomials in z.
struct SyntheticPair {
  FrankSystem sys;
  TowerElem g, phi;
};

SyntheticPair make_synthetic_pair(int k, int nu, std::mt19937_64& rng);

// Writing p'/p = d0 (q'/q) + d1 with q'' + nu1 q' + nu0 q = 0, the quotient
// p^(k)/p is a polynomial of degree k in q'/q; returns its coefficients
// b_0..b_k (ascending). The top coefficient is the falling factorial
// d0 (d0 - 1) ... (d0 - k + 1).
std::vector<TowerElem> logderiv_substitution(const TowerElem& d0,
                                             const TowerElem& d1,
                                             const TowerElem& nu1,
                                             const TowerElem& nu0, int k);

// Under the same substitution with d0 not identically 0 or 1, returns the
// coefficients (E2, E1, E0) with
//   E2 p''/p + E1 p'/p + E0 = (p'/p)^2 + e1 (p'/p) + e0
// for every solution pair; E2 = d0/(d0 - 1) never vanishes.
struct SecondOrderResidual {
  TowerElem e2, e1, e0;
};

SecondOrderResidual second_order_residual(const TowerElem& d0,
                                          const TowerElem& d1,
                                          const TowerElem& nu1,
                                          const TowerElem& nu0,
                                          const TowerElem& e1,
                                          const TowerElem& e0);

// For linearly independent solutions u, v of y''' + B2 y'' + B1 y' + B0 y = 0
// whose Wronskian satisfies W' + E1 W = 0, u and v also solve
// y'' + E1 y' + E0 y = 0 with E0 = -E1' + E1^2 - E1 B2 + B1. B0 cancels in
// that computation and is accepted only to complete the cubic's data.
TowerElem wronskian_second_coeff(const TowerElem& B2, const TowerElem& B1,
                                 const TowerElem& B0, const TowerElem& E1);

// The coefficient table R_{j,mu} of phi^(j)/phi = Y1^{-j} sum_mu R_{j,mu}
// Y1^mu, where Y1 = 1 - e^{-T}, phi'/phi = Q(T) T' / Y1 and T is a free
// symbol. r[j-1][mu] holds R_{j,mu} for 1 <= j <= jmax, 0 <= mu <= j-1, as
// elements of `tower` (T and its derivatives symbolic, e^{-T} eliminated).
// R_{j,0} = Q(T)(Q(T)-1)...(Q(T)-j+1)(T')^j; the instance j = min(k, jmax)
// is verified internally.
struct RjTable {
  TowerPtr tower;
  int tvar = 1;                          // variable index of T
  std::vector<std::vector<TowerElem>> r; // r[j-1][mu]
};

RjTable rj_mu_recursion(const Poly& Q, int k, int jmax);

// The logarithmic-derivative normalization
//   T3 = (1/k) sum_{j=0}^{k-2} ((j-k+1)/(Q(T)-j)) Q'(T) T'
//        - (d2 (Q(T)-k+1) + (k-1)/2) T' - ((k-1)/2) T''/T'
// over a tower with T symbolic. Requires k d2 integral and 0 <= d2 <= 1/2.
// The equivalent form assembled from the Abel-identity route is checked
// internally before returning.
struct T3Formula {
  TowerPtr tower;
  int tvar = 1;
  TowerElem t3;
};

T3Formula t3_formula(const Poly& Q, int k, const Rat& d2);

// The constants attached to a pole of multiplicity m under a k-fold
// product operator: the multiplier (-1)^k m (m+1) ... (m+k-1) picked up by
// H^{-m}, and the weight chi(m) = m (m+1) ... (m+k-1) / (m + (k-1)/2)^k.
struct PoleWeight {
  Rat gprime_pow;
  Rat chi;
};

PoleWeight pole_weight(int k, long m);

} // namespace lindop
