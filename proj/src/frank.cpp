#include "lindop/frank.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "lindop/error.hpp"

namespace lindop {

namespace {

TowerElem rat_elem(const TowerPtr& t, const Rat& r) {
  return TowerElem::constant(t, GaussRat(r));
}

GaussRat binom_g(long n, long k) {
  return GaussRat(Rat::of_int(binomial(n, k)));
}

// Horner evaluation of an unramified polynomial at a tower element.
TowerElem eval_at(const Poly& q, const TowerElem& x) {
  if (q.ram() != 1) fail(ErrorCode::bad_arg, "ramified coefficient polynomial");
  TowerElem res = TowerElem::zero(x.tower());
  for (long t = q.deg_w(); t >= 0; --t)
    res = res * x + TowerElem::constant(x.tower(), q.coeff_w(t));
  return res;
}

Poly formal_derivative(const Poly& q) {
  std::vector<GaussRat> c;
  for (long t = 1; t <= q.deg_w(); ++t)
    c.push_back(q.coeff_w(t) * GaussRat(Rat(t)));
  return Poly::from_coeffs(std::move(c));
}

// Chain z < T^(n) < ... < T' < T with the top derivative declared constant;
// callers must consume at most n-1 derivative levels of T so the truncated
// rule is never consulted.
TowerPtr prim_chain(int n) {
  TowerPtr tw = Tower::base()->extend_const("T" + std::to_string(n));
  for (int i = n - 1; i >= 1; --i)
    tw = tw->extend_prim("T" + std::to_string(i),
                         TowerElem::gen(tw, tw->nvars() - 1));
  return tw->extend_prim("T", TowerElem::gen(tw, tw->nvars() - 1));
}

long pick_int(std::mt19937_64& rng, long lo, long hi) {
  return lo + static_cast<long>(rng() % static_cast<unsigned long>(hi - lo + 1));
}

Rat random_rat_nonzero(std::mt19937_64& rng) {
  long n = 0;
  while (n == 0) n = pick_int(rng, -3, 3);
  return Rat(n, pick_int(rng, 1, 2));
}

TowerElem random_poly(std::mt19937_64& rng, const TowerPtr& tw, int maxdeg) {
  TowerElem z = TowerElem::z(tw);
  for (int tries = 0; tries < 64; ++tries) {
    TowerElem p = TowerElem::zero(tw);
    for (int i = 0; i <= maxdeg; ++i)
      p += z.pow(i) * GaussRat(Rat(pick_int(rng, -2, 2)));
    if (!p.is_zero()) return p;
  }
  fail(ErrorCode::internal, "random draw degenerated");
}

// Particular polynomial solution of y' + lambda y = r for scalar lambda != 0
// and polynomial r: the alternating series of derivatives terminates.
TowerElem solve_linear_ode(const TowerElem& r, const TowerElem& lambda) {
  TowerElem c = TowerElem::zero(r.tower());
  TowerElem term = r / lambda;
  int guard = 0;
  while (!term.is_zero()) {
    c += term;
    term = -(term.derivative() / lambda);
    if (++guard > 512)
      fail(ErrorCode::internal, "reduction failed to terminate");
  }
  return c;
}

} // namespace

LinOp m_k_mu(const TowerPtr& t, int k, const std::vector<TowerElem>& C,
             int mu) {
  if (k < 3) fail(ErrorCode::bad_arg, "order must be at least 3");
  if (static_cast<int>(C.size()) != k - 1)
    fail(ErrorCode::bad_arg, "expected k-1 coefficients");
  if (mu < -1 || mu > k) fail(ErrorCode::bad_arg, "index out of range");
  if (mu == -1) return LinOp(t);
  std::vector<TowerElem> a;
  a.reserve(static_cast<size_t>(k - mu) + 1);
  for (int m = mu; m <= k; ++m) {
    TowerElem Cm = m == k       ? TowerElem::of_int(t, 1)
                   : m == k - 1 ? TowerElem::zero(t)
                                : C[m].lifted(t);
    a.push_back(Cm * binom_g(m, mu));
  }
  return LinOp::from_coeffs(t, std::move(a));
}

PhiRelation PhiRelation::scaled(const TowerElem& s) const {
  return {phi_coef * s, rhs * s};
}

PhiRelation PhiRelation::operator-(const PhiRelation& o) const {
  return {phi_coef - o.phi_coef, rhs - o.rhs};
}

FrankSystem::FrankSystem(TowerPtr t, std::vector<TowerElem> c,
                         std::vector<TowerElem> C)
    : tower_(std::move(t)), c_(std::move(c)), C_(std::move(C)) {
  if (c_.size() != C_.size())
    fail(ErrorCode::bad_arg, "coefficient lists differ in length");
  k_ = static_cast<int>(c_.size()) + 1;
  if (k_ < 3) fail(ErrorCode::bad_arg, "order must be at least 3");
  for (auto& e : c_) e = e.lifted(tower_);
  for (auto& e : C_) e = e.lifted(tower_);
}

TowerElem FrankSystem::c_at(int mu) const {
  if (mu < -1 || mu > k_) fail(ErrorCode::bad_arg, "index out of range");
  if (mu == -1 || mu == k_ - 1) return TowerElem::zero(tower_);
  if (mu == k_) return TowerElem::of_int(tower_, 1);
  return c_[static_cast<size_t>(mu)];
}

TowerElem FrankSystem::C_at(int mu) const {
  if (mu < -1 || mu > k_) fail(ErrorCode::bad_arg, "index out of range");
  if (mu == -1 || mu == k_ - 1) return TowerElem::zero(tower_);
  if (mu == k_) return TowerElem::of_int(tower_, 1);
  return C_[static_cast<size_t>(mu)];
}

TowerElem FrankSystem::D_at(int mu) const { return C_at(mu) - c_at(mu); }

LinOp FrankSystem::m_op(int mu) const { return m_k_mu(tower_, k_, C_, mu); }

LinOp FrankSystem::s_op(int mu) const {
  if (mu < 0 || mu > k_ - 1) fail(ErrorCode::bad_arg, "index out of range");
  return m_op(mu) - LinOp::of_elem(c_at(mu));
}

LinOp FrankSystem::t_op(int mu) const {
  if (mu < 0 || mu > k_ - 1) fail(ErrorCode::bad_arg, "index out of range");
  return -m_op(mu - 1) + m_op(k_ - 1) * c_at(mu) +
         LinOp::of_elem(c_at(mu).derivative() + c_at(mu - 1));
}

LinOp FrankSystem::u_op() const {
  std::vector<TowerElem> a{D_at(k_ - 2) * GaussRat(Rat(-1, k_)),
                           TowerElem::zero(tower_),
                           rat_elem(tower_, Rat(-(k_ - 1), 2))};
  return LinOp::from_coeffs(tower_, std::move(a));
}

std::pair<LinOp, LinOp> FrankSystem::relation(int mu) const {
  return {s_op(mu), t_op(mu)};
}

std::vector<std::pair<LinOp, LinOp>> FrankSystem::relations() const {
  std::vector<std::pair<LinOp, LinOp>> out;
  out.reserve(static_cast<size_t>(k_));
  for (int mu = 0; mu < k_; ++mu) out.push_back(relation(mu));
  return out;
}

PhiRelation FrankSystem::reduce(int mu) const {
  if (mu < 0 || mu > k_ - 1) fail(ErrorCode::bad_arg, "index out of range");
  LinOp rhs = t_op(mu);
  LinOp du = u_op();
  for (int j = 1; j <= k_ - mu; ++j) {
    rhs = rhs - du * (C_at(mu + j) * binom_g(mu + j, mu));
    if (j < k_ - mu) du = LinOp::d(tower_) * du;
  }
  return {D_at(mu), rhs};
}

PhiRelation FrankSystem::differentiate(const PhiRelation& r) const {
  return {r.phi_coef.derivative(),
          LinOp::d(tower_) * r.rhs - u_op() * r.phi_coef};
}

ChainRelations derive_chain(const FrankSystem& sys) {
  const int k = sys.k();
  const TowerPtr& tw = sys.tower();
  PhiRelation eq_y = sys.reduce(k - 2);
  PhiRelation eq_z = sys.reduce(k - 3).scaled(rat_elem(tw, Rat(2, k - 2)));
  PhiRelation eq_star = eq_z - sys.differentiate(eq_y);
  const TowerElem lead = rat_elem(tw, Rat(static_cast<long>(k) * (k * k - 1), 12));
  if (!eq_y.rhs.coeff(2).is_zero() || eq_y.rhs.coeff(3) != lead)
    fail(ErrorCode::internal, "unexpected third-order structure");
  if (!eq_z.rhs.coeff(3).is_zero() || eq_z.rhs.coeff(4) != lead)
    fail(ErrorCode::internal, "unexpected fourth-order structure");
  if (!eq_star.rhs.coeff(3).is_zero() || !eq_star.rhs.coeff(4).is_zero())
    fail(ErrorCode::internal, "top orders failed to cancel");
  return {eq_y,
          eq_z,
          eq_star,
          eq_z.rhs.coeff(1),
          eq_z.rhs.coeff(0),
          eq_star.rhs.coeff(1),
          eq_star.rhs.coeff(0)};
}

PhiElimination eliminate_phi(const FrankSystem& sys) {
  const int k = sys.k();
  int nu = -1;
  for (int mu = k - 2; mu >= 0; --mu) {
    if (!sys.D_at(mu).is_zero()) {
      nu = mu;
      break;
    }
  }
  PhiElimination out;
  if (nu < 0) {
    out.kind = PhiCase::identical;
    return out;
  }
  out.kind = PhiCase::eliminated;
  out.nu = nu;
  PhiRelation r = sys.reduce(nu);
  out.tstar = r.rhs * r.phi_coef.inv();
  out.reduced.push_back(LinOp::d(sys.tower()) * out.tstar - sys.u_op());
  for (int mu = 0; mu <= k - 2; ++mu)
    out.reduced.push_back(sys.s_op(mu) * out.tstar - sys.t_op(mu));
  return out;
}

SyntheticPair make_synthetic_pair(int k, int nu, std::mt19937_64& rng) {
  if (k < 3) fail(ErrorCode::bad_arg, "order must be at least 3");
  if (nu < 0 || nu > k - 2) fail(ErrorCode::bad_arg, "index out of range");
  const Rat a = random_rat_nonzero(rng);
  TowerPtr tw =
      Tower::base()->extend_logderiv("G", TowerElem::constant(Tower::base(), GaussRat(a)));
  const int gv = 1;
  const TowerElem G = TowerElem::gen(tw, gv);
  const TowerElem aE = rat_elem(tw, a);
  const TowerElem one = TowerElem::of_int(tw, 1);

  // Seed the top difference through phi = b g: the first-order relation
  // pins D_{k-2} = -k(b' + a b) - (k(k-1)/2) a^2.
  TowerElem b, Dk2;
  if (nu == k - 2) {
    for (int tries = 0;; ++tries) {
      b = random_poly(rng, tw, 2);
      Dk2 = (b.derivative() + aE * b) * GaussRat(Rat(-k)) +
            aE * aE * GaussRat(Rat(static_cast<long>(-k) * (k - 1), 2));
      if (!Dk2.is_zero()) break;
      if (tries > 64) fail(ErrorCode::internal, "random draw degenerated");
    }
  } else {
    b = aE * GaussRat(Rat(-(k - 1), 2));
    Dk2 = TowerElem::zero(tw);
  }
  const TowerElem phi = b * G;

  std::vector<TowerElem> pd(static_cast<size_t>(k) + 1),
      gd(static_cast<size_t>(k) + 1);
  pd[0] = phi;
  gd[0] = G;
  for (int j = 1; j <= k; ++j) {
    pd[j] = pd[j - 1].derivative();
    gd[j] = gd[j - 1].derivative();
  }

  std::vector<TowerElem> cF(static_cast<size_t>(k) + 1, TowerElem::zero(tw));
  std::vector<TowerElem> CF(static_cast<size_t>(k) + 1, TowerElem::zero(tw));
  std::vector<TowerElem> DF(static_cast<size_t>(k) + 1, TowerElem::zero(tw));
  cF[k] = one;
  CF[k] = one;
  DF[k - 2] = Dk2;

  // Back-substitution: the index-mu relation determines D_{mu-1} once
  // everything above mu is fixed, and c_mu is free. Forcing D_{mu-1} = 0
  // amounts to a first-order equation for c_mu with a polynomial solution.
  for (int mu = k - 2; mu >= 1; --mu) {
    TowerElem S1 = DF[mu] * phi;
    for (int m = mu + 1; m <= k; ++m)
      S1 += CF[m] * pd[m - mu] * binom_g(m, mu);
    TowerElem S2 = TowerElem::zero(tw);
    for (int m = mu + 1; m <= k; ++m)
      S2 += CF[m] * gd[m - mu + 1] * binom_g(m, mu - 1);
    const TowerElem K = (S1 + S2 + aE * DF[mu] * G * GaussRat(Rat(mu))) / G;
    if (K.depends_on(gv))
      fail(ErrorCode::internal, "generator failed to cancel");
    const TowerElem lambda = aE * GaussRat(Rat(k - mu));
    if (mu - 1 == nu) {
      for (int tries = 0;; ++tries) {
        TowerElem cmu = random_poly(rng, tw, 2);
        TowerElem Dprev = cmu.derivative() + lambda * cmu - K;
        if (!Dprev.is_zero()) {
          cF[mu] = cmu;
          DF[mu - 1] = Dprev;
          break;
        }
        if (tries > 64) fail(ErrorCode::internal, "random draw degenerated");
      }
    } else {
      cF[mu] = solve_linear_ode(K, lambda);
    }
    CF[mu] = cF[mu] + DF[mu];
  }

  // The remaining index-zero relation has no difference left to absorb it;
  // it fixes c_0 instead.
  TowerElem S0 = DF[0] * phi;
  for (int m = 1; m <= k; ++m) S0 += CF[m] * pd[m];
  const TowerElem K0 = S0 / G;
  if (K0.depends_on(gv)) fail(ErrorCode::internal, "generator failed to cancel");
  cF[0] = solve_linear_ode(K0, aE * GaussRat(Rat(k)));
  CF[0] = cF[0] + DF[0];

  std::vector<TowerElem> cs(cF.begin(), cF.begin() + (k - 1));
  std::vector<TowerElem> Cs(CF.begin(), CF.begin() + (k - 1));
  FrankSystem sys(tw, std::move(cs), std::move(Cs));
  for (int mu = 0; mu <= k - 1; ++mu) {
    auto rel = sys.relation(mu);
    if (rel.first.apply(phi) != rel.second.apply(G))
      fail(ErrorCode::internal, "constructed pair violates a relation");
  }
  return {std::move(sys), G, phi};
}

std::vector<TowerElem> logderiv_substitution(const TowerElem& d0,
                                             const TowerElem& d1,
                                             const TowerElem& nu1,
                                             const TowerElem& nu0, int k) {
  if (k < 1) fail(ErrorCode::bad_arg, "order must be positive");
  TowerPtr t0 = Tower::common(Tower::common(d0.tower(), d1.tower()),
                              Tower::common(nu1.tower(), nu0.tower()));
  const TowerElem D0 = d0.lifted(t0), D1 = d1.lifted(t0);
  const TowerElem N1 = nu1.lifted(t0), N0 = nu0.lifted(t0);

  // Assemble the Riccati derivative of the new generator over a throwaway
  // constant extension, then rebind the same numerator/denominator as the
  // custom rule: the variable layout matches by construction.
  const int vq = t0->nvars();
  TowerPtr tc = t0->extend_const("qq");
  const TowerElem Qc = TowerElem::gen(tc, vq);
  const TowerElem dexpr =
      -(Qc * Qc) - N1.lifted(tc) * Qc - N0.lifted(tc);
  TowerPtr t1 = t0->extend_custom("qq", dexpr.num(), dexpr.den());
  const TowerElem Q = TowerElem::gen(t1, vq);

  const TowerElem w = D0.lifted(t1) * Q + D1.lifted(t1);
  std::vector<TowerElem> r = logderiv_powers(w, k);
  std::vector<TowerElem> bs = r[static_cast<size_t>(k) - 1].coeffs_in(vq);
  if (bs.size() > static_cast<size_t>(k) + 1)
    fail(ErrorCode::internal, "degree overflow in the substitution");
  bs.resize(static_cast<size_t>(k) + 1, TowerElem::zero(t1));
  std::vector<TowerElem> out;
  out.reserve(bs.size());
  for (const auto& bj : bs) out.push_back(bj.projected(t0));

  TowerElem ff = TowerElem::of_int(t0, 1);
  for (int j = 0; j < k; ++j) ff *= D0 - TowerElem::of_int(t0, j);
  if (out.back() != ff)
    fail(ErrorCode::internal, "inconsistent leading coefficient");
  return out;
}

SecondOrderResidual second_order_residual(const TowerElem& d0,
                                          const TowerElem& d1,
                                          const TowerElem& nu1,
                                          const TowerElem& nu0,
                                          const TowerElem& e1,
                                          const TowerElem& e0) {
  TowerPtr t0 = Tower::common(Tower::common(d0.tower(), d1.tower()),
                              Tower::common(nu1.tower(), nu0.tower()));
  t0 = Tower::common(t0, Tower::common(e1.tower(), e0.tower()));
  const TowerElem D0 = d0.lifted(t0), D1 = d1.lifted(t0);
  const TowerElem N1 = nu1.lifted(t0), N0 = nu0.lifted(t0);
  const TowerElem f1 = e1.lifted(t0), f0 = e0.lifted(t0);
  const TowerElem one = TowerElem::of_int(t0, 1);
  if (D0.is_zero() || D0 == one)
    fail(ErrorCode::bad_arg, "leading ratio must avoid 0 and 1");

  const TowerElem A = D0.inv();
  const TowerElem B = -(D1 / D0);
  const TowerElem denom = A - A * A;
  SecondOrderResidual res;
  res.e2 = A / denom;
  res.e1 = (A.derivative() + A * B * GaussRat(Rat(2)) + N1 * A) / denom + f1;
  res.e0 = (B.derivative() + B * B + N1 * B + N0) / denom + f0;

  // Witness check over a formal solution ratio P with the induced
  // derivative rule; the defining identity must hold verbatim.
  const int vp = t0->nvars();
  TowerPtr tc = t0->extend_const("pp");
  const TowerElem Pc = TowerElem::gen(tc, vp);
  const TowerElem Qc = A.lifted(tc) * Pc + B.lifted(tc);
  const TowerElem dexpr =
      (-(Qc * Qc) - N1.lifted(tc) * Qc - N0.lifted(tc) -
       A.derivative().lifted(tc) * Pc - B.derivative().lifted(tc)) /
      A.lifted(tc);
  TowerPtr t1 = t0->extend_custom("pp", dexpr.num(), dexpr.den());
  const TowerElem P = TowerElem::gen(t1, vp);
  const TowerElem lhs = res.e2.lifted(t1) * (P.derivative() + P * P) +
                        res.e1.lifted(t1) * P + res.e0.lifted(t1);
  const TowerElem rhs = P * P + f1.lifted(t1) * P + f0.lifted(t1);
  if (lhs != rhs) fail(ErrorCode::internal, "residual identity failed");
  return res;
}

TowerElem wronskian_second_coeff(const TowerElem& B2, const TowerElem& B1,
                                 const TowerElem& B0, const TowerElem& E1) {
  (void)B0; // cancels in the underlying determinant computation
  TowerPtr t0 = Tower::common(Tower::common(B2.tower(), B1.tower()), E1.tower());
  const TowerElem b2 = B2.lifted(t0), b1 = B1.lifted(t0), e1 = E1.lifted(t0);
  return -e1.derivative() + e1 * e1 - e1 * b2 + b1;
}

RjTable rj_mu_recursion(const Poly& Q, int k, int jmax) {
  if (k < 1 || jmax < 1) fail(ErrorCode::bad_arg, "indices must be positive");
  if (Q.ram() != 1)
    fail(ErrorCode::bad_arg, "coefficient polynomial must be unramified");
  TowerPtr tw = prim_chain(jmax + 1);
  const int vT = tw->nvars() - 1;
  const int vtop = 1;
  const TowerElem T1 = TowerElem::gen(tw, vT - 1);
  const TowerElem Te = TowerElem::gen(tw, vT);

  TowerPtr twe = tw->extend_logderiv("E", -T1);
  const int vE = twe->nvars() - 1;
  const TowerElem Ee = TowerElem::gen(twe, vE);
  const TowerElem one = TowerElem::of_int(twe, 1);
  const TowerElem Y1 = one - Ee;
  const TowerElem Y1d = Y1.derivative();
  const TowerElem S1 = eval_at(Q, Te).lifted(twe) * T1.lifted(twe);

  RjTable out;
  out.tower = tw;
  out.tvar = vT;
  TowerElem S = S1;
  for (int j = 1; j <= jmax; ++j) {
    if (j > 1) S = Y1 * S.derivative() - S * Y1d * GaussRat(Rat(j - 1)) + S1 * S;
    std::vector<TowerElem> p = S.coeffs_in(vE);
    if (p.size() > static_cast<size_t>(j))
      fail(ErrorCode::internal, "exponential degree overflow");
    p.resize(static_cast<size_t>(j), TowerElem::zero(twe));
    std::vector<TowerElem> row;
    row.reserve(static_cast<size_t>(j));
    for (int mu = 0; mu < j; ++mu) {
      TowerElem R = TowerElem::zero(twe);
      for (int t = mu; t < j; ++t) R += p[t] * binom_g(t, mu);
      if (mu % 2) R = -R;
      if (R.depends_on(vtop))
        fail(ErrorCode::internal, "derivative depth exceeded");
      row.push_back(R.projected(tw));
    }
    out.r.push_back(std::move(row));
  }

  const int jj = std::min(k, jmax);
  TowerElem cf = T1.pow(jj);
  const TowerElem QT = eval_at(Q, Te);
  for (int i = 0; i < jj; ++i) cf *= QT - TowerElem::of_int(tw, i);
  if (out.r[static_cast<size_t>(jj) - 1][0] != cf)
    fail(ErrorCode::internal, "closed form mismatch");
  return out;
}

T3Formula t3_formula(const Poly& Q, int k, const Rat& d2) {
  if (k < 2) fail(ErrorCode::bad_arg, "order must be at least 2");
  if (Q.ram() != 1)
    fail(ErrorCode::bad_arg, "coefficient polynomial must be unramified");
  if (d2 < Rat(0) || d2 > Rat(1, 2))
    fail(ErrorCode::bad_arg, "normalization constant out of range");
  if (!(d2 * Rat(k)).is_integer())
    fail(ErrorCode::bad_arg, "normalization constant must be a multiple of 1/k");

  TowerPtr tw = prim_chain(3);
  const TowerElem T2 = TowerElem::gen(tw, 2);
  const TowerElem T1 = TowerElem::gen(tw, 3);
  const TowerElem Te = TowerElem::gen(tw, 4);
  const Poly Qd = formal_derivative(Q);
  const TowerElem QT = eval_at(Q, Te);
  const TowerElem QdT = eval_at(Qd, Te);

  TowerElem t3 = TowerElem::zero(tw);
  if (!Qd.is_zero()) {
    TowerElem s = TowerElem::zero(tw);
    for (int j = 0; j <= k - 2; ++j)
      s += (QT - TowerElem::of_int(tw, j)).inv() * GaussRat(Rat(j - k + 1));
    t3 += s * QdT * T1 * GaussRat(Rat(1, k));
  }
  t3 -= (rat_elem(tw, d2) * (QT - TowerElem::of_int(tw, k - 1)) +
         rat_elem(tw, Rat(k - 1, 2))) *
        T1;
  t3 -= T2 / T1 * GaussRat(Rat(k - 1, 2));

  // Cross-check against the assembly through the normalized solution ratio.
  Poly Q0(GaussRat(1));
  for (int i = 0; i < k; ++i) Q0 = Q0 * (Q - Poly(GaussRat(Rat(i))));
  if (!Q0.is_zero()) {
    const TowerElem E =
        eval_at(formal_derivative(Q0), Te) * T1 / (eval_at(Q0, Te) * GaussRat(Rat(k)));
    const TowerElem tau = T2 / T1;
    const TowerElem nu1 =
        T1 * GaussRat(Rat(1) - d2 * Rat(2)) + E * GaussRat(Rat(2)) + tau;
    const TowerElem t3b = QT * (T1 * GaussRat(d2 - Rat(1)) - E - tau) +
                          (QT - rat_elem(tw, Rat(k - 1, 2))) * nu1 - QdT * T1;
    if (t3 != t3b) fail(ErrorCode::internal, "normalization cross-check failed");
  }
  return {tw, 4, t3};
}

PoleWeight pole_weight(int k, long m) {
  if (k < 2) fail(ErrorCode::bad_arg, "order must be at least 2");
  if (m < 1) fail(ErrorCode::bad_arg, "multiplicity must be positive");
  Rat rise(1);
  for (int i = 0; i < k; ++i) rise *= Rat(m + i);
  const Rat c = (k % 2) ? -rise : rise;
  return {c, rise / Rat(2 * m + k - 1, 2).pow(k)};
}

} // namespace lindop
