#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "lindop/error.hpp"
#include "lindop/mpoly.hpp"
#include "lindop/tower.hpp"

using namespace lindop;

namespace {

MPoly C(int nv, long c) { return MPoly::constant(nv, GaussRat(c)); }
MPoly V(int nv, int v) { return MPoly::var(nv, v); }

MPoly random_mpoly(std::mt19937& rng, int nv, int maxdeg, int nterms) {
  std::uniform_int_distribution<int> dc(-4, 4), de(0, maxdeg);
  MPoly p(nv);
  for (int t = 0; t < nterms; ++t) {
    std::vector<int> e(nv);
    for (int v = 0; v < nv; ++v) e[v] = de(rng);
    p += MPoly::monomial(nv, std::move(e), GaussRat(Rat(dc(rng))));
  }
  return p;
}

} // namespace

TEST_CASE("mpoly arithmetic and canonical form") {
  MPoly x = V(2, 0), y = V(2, 1);
  MPoly p = (x + y) * (x - y);
  CHECK(p == x * x - y * y);
  CHECK((p - p).is_zero());
  CHECK(p.deg(0) == 2);
  CHECK(p.deg(1) == 2);
  CHECK(p.top_var() == 1);
  CHECK((x * y + C(2, 1)).terms().size() == 2);

  MPoly q = x.pow(3) - C(2, 1);
  CHECK(q.coeff_of(0, 3) == C(2, 1));
  CHECK(q.coeff_of(0, 0) == C(2, -1));
  CHECK(q.derivative(0) == C(2, 3) * x * x);
  CHECK(q.derivative(1).is_zero());

  CHECK(p.substituted(1, x) == MPoly(2));
  CHECK(q.substituted(0, y) == y.pow(3) - C(2, 1));

  MPoly lifted = p.lifted(4);
  CHECK(lifted.nvars() == 4);
  CHECK(lifted.projected(2) == p);
  CHECK_THROWS_AS((x * y).projected(1), Error);
}

TEST_CASE("mpoly exact division") {
  MPoly x = V(3, 0), y = V(3, 1), t = V(3, 2);
  MPoly a = (x + y + t).pow(3);
  MPoly b = (x + y + t);
  CHECK(MPoly::div_exact(a, b) == b * b);
  CHECK_THROWS_AS(MPoly::div_exact(a + C(3, 1), b), Error);
  CHECK(MPoly::div_exact(MPoly(3), b).is_zero());
}

TEST_CASE("mpoly gcd: fast paths") {
  MPoly x = V(2, 0), y = V(2, 1);
  CHECK(MPoly::gcd(x.pow(3) * y, x * y.pow(2)) == x * y);
  CHECK(MPoly::gcd(y * y - C(2, 1), y - C(2, 1)) == y - C(2, 1));
  CHECK(MPoly::gcd(x + y, MPoly(2)) == x + y);
  CHECK(MPoly::gcd(MPoly(2), MPoly(2)).is_zero());
  CHECK(MPoly::gcd(C(2, 6), x + y) == C(2, 1));
  MPoly g = MPoly::gcd(x * GaussRat(Rat(3)), x * GaussRat(Rat(5)));
  CHECK(g == x);
}

TEST_CASE("mpoly gcd: multivariate subresultant path") {
  MPoly x = V(2, 0), y = V(2, 1);
  MPoly g = (x + y).pow(3);
  MPoly a = x * g;
  MPoly b = (y + C(2, 1)) * g;
  MPoly d = MPoly::gcd(a, b);
  CHECK(d == g);

  MPoly g2 = x * y + C(2, 2);
  MPoly a2 = (x * x * y + x + C(2, 1)) * g2;
  MPoly b2 = (x * y * y - C(2, 2)) * g2;
  MPoly d2 = MPoly::gcd(a2, b2);
  CHECK(MPoly::div_exact(d2, g2).is_constant());
  CHECK(MPoly::div_exact(a2, d2) * d2 == a2);

  std::mt19937 rng(20260816);
  for (int it = 0; it < 15; ++it) {
    MPoly gg = random_mpoly(rng, 3, 2, 3) + C(3, 1);
    MPoly aa = random_mpoly(rng, 3, 2, 3);
    MPoly bb = random_mpoly(rng, 3, 2, 3);
    if (aa.is_zero() || bb.is_zero()) continue;
    MPoly dd = MPoly::gcd(aa * gg, bb * gg);
    CHECK(MPoly::div_exact(aa * gg, dd) * dd == aa * gg);
    CHECK(MPoly::div_exact(bb * gg, dd) * dd == bb * gg);
    MPoly q = MPoly::div_exact(dd, MPoly::gcd(dd, gg));
    CHECK(MPoly::gcd(dd, gg) * q == dd);
  }
}

TEST_CASE("tower construction and prefix discipline") {
  TowerPtr base = Tower::base();
  CHECK(base == Tower::base());
  TowerElem z = TowerElem::z(base);
  TowerPtr tw = base->extend_logderiv("t", TowerElem::of_int(base, 1));
  TowerPtr tw2 = tw->extend_prim("u", TowerElem::gen(tw, "t"));
  CHECK(Tower::is_prefix(base, tw2));
  CHECK(Tower::is_prefix(tw, tw2));
  CHECK(!Tower::is_prefix(tw2, tw));
  TowerPtr other = base->extend_logderiv("s", TowerElem::of_int(base, 2));
  CHECK(!Tower::is_prefix(other, tw2));
  CHECK_THROWS_AS(Tower::common(other, tw), Error);
  CHECK(*tw2->find("u") == 2);
  CHECK(*tw2->find("z") == 0);
  CHECK(!tw2->find("nope"));

  // Mixed arithmetic lifts along the prefix chain automatically.
  TowerElem t = TowerElem::gen(tw, "t");
  TowerElem u = TowerElem::gen(tw2, "u");
  TowerElem s = z.lifted(tw2) + t * u;
  CHECK(s.tower() == tw2);
  CHECK(s - t * u == z.lifted(tw2));
  CHECK_THROWS_AS(t + TowerElem::gen(other, "s"), Error);
}

TEST_CASE("tower derivatives by generator kind") {
  TowerPtr base = Tower::base();
  TowerElem z = TowerElem::z(base);

  TowerPtr tw = base->extend_logderiv("t", TowerElem::of_int(base, 1));
  TowerElem t = TowerElem::gen(tw, "t");
  CHECK(t.derivative() == t);
  CHECK((t * t).derivative() == t * t * GaussRat(Rat(2)));

  // quotient rule through the tower: (1/(1-t))' = t/(1-t)^2
  TowerElem one = TowerElem::of_int(tw, 1);
  TowerElem f = one / (one - t);
  CHECK(f.derivative() == t / ((one - t) * (one - t)));

  TowerPtr pw = base->extend_prim("P", z * z);
  TowerElem P = TowerElem::gen(pw, "P");
  CHECK(P.derivative() == z.lifted(pw) * z.lifted(pw));

  TowerPtr ew = base->extend_exp("E", z * z);
  TowerElem E = TowerElem::gen(ew, "E");
  CHECK(E.derivative() == z.lifted(ew) * E * GaussRat(Rat(2)));

  TowerPtr rw = base->extend_root("w", 2);
  TowerElem w = TowerElem::gen(rw, "w");
  TowerElem y = w.pow(3);
  CHECK(y.derivative() == y / z.lifted(rw) * GaussRat(Rat(3, 2)));

  TowerPtr cw = base->extend_const("c");
  CHECK(TowerElem::gen(cw, "c").derivative().is_zero());

  // custom kind: a Riccati variable Q with Q' = -Q^2 - z Q - 1
  MPoly Q2 = V(2, 1), Z2 = V(2, 0);
  TowerPtr qw = base->extend_custom("Q", -(Q2 * Q2) - Z2 * Q2 - C(2, 1), C(2, 1));
  TowerElem Q = TowerElem::gen(qw, "Q");
  TowerElem zq = z.lifted(qw);
  CHECK(Q.derivative() == -(Q * Q) - zq * Q - TowerElem::of_int(qw, 1));
  CHECK((Q * Q).derivative() == Q.derivative() * Q * GaussRat(Rat(2)));
}

TEST_CASE("derivative laws hold in a deep chain") {
  TowerPtr t = Tower::base();
  std::vector<TowerElem> gens;
  TowerElem prev = TowerElem::z(t);
  for (int k = 0; k < 8; ++k) {
    t = t->extend_prim("p" + std::to_string(k), prev);
    prev = TowerElem::gen(t, "p" + std::to_string(k));
    gens.push_back(prev);
  }
  for (int k = 7; k >= 1; --k)
    CHECK(gens[k].lifted(t).derivative() == gens[k - 1].lifted(t));

  TowerElem a = gens[7] * gens[3] + gens[5];
  TowerElem b = gens[2] - gens[7].pow(2);
  CHECK((a * b).derivative() == a.derivative() * b + a * b.derivative());
  CHECK((a + b).derivative() == a.derivative() + b.derivative());
  TowerElem q = a / (b + TowerElem::of_int(t, 1));
  TowerElem bp1 = b + TowerElem::of_int(t, 1);
  CHECK(q.derivative() == (a.derivative() * bp1 - a * bp1.derivative()) / (bp1 * bp1));
}

TEST_CASE("logarithmic derivative powers") {
  TowerPtr base = Tower::base();
  TowerElem z = TowerElem::z(base);

  // w = u' with u = z^2: r_j must match the expansion of (e^u)^(j)/e^u.
  TowerElem w = z * GaussRat(Rat(2));
  auto r = logderiv_powers(w, 3);
  CHECK(r[0] == w);
  CHECK(r[1] == TowerElem::of_int(base, 2) + z * z * GaussRat(Rat(4)));
  CHECK(r[2] == z * GaussRat(Rat(12)) + z.pow(3) * GaussRat(Rat(8)));

  // w = P/(1-t) with t' = t: the second transform has the pinned shape
  // ((P - P') t + (P' + P^2)) / (1 - t)^2.
  TowerPtr tw = base->extend_logderiv("t", TowerElem::of_int(base, 1));
  TowerElem t = TowerElem::gen(tw, "t");
  TowerElem P = z.lifted(tw); // P(z) = z
  TowerElem one = TowerElem::of_int(tw, 1);
  TowerElem wt = P / (one - t);
  auto rt = logderiv_powers(wt, 3);
  TowerElem q1 = P - one;           // P - P'
  TowerElem q0 = one + P * P;       // P' + P^2
  CHECK(rt[1] == (q1 * t + q0) / ((one - t) * (one - t)));
  CHECK(rt[2] == rt[1].derivative() + wt * rt[1]);
}

TEST_CASE("coefficient extraction and projection") {
  TowerPtr base = Tower::base();
  TowerPtr tw = base->extend_logderiv("t", TowerElem::of_int(base, 1));
  TowerElem z = TowerElem::z(tw);
  TowerElem t = TowerElem::gen(tw, "t");
  TowerElem e = ((z - TowerElem::of_int(tw, 1)) * t + z * z) / (z * z * z);
  auto cs = e.coeffs_in(1);
  REQUIRE(cs.size() == 2);
  CHECK(cs[0] == TowerElem::of_int(tw, 1) / z);
  CHECK(cs[1] == (z - TowerElem::of_int(tw, 1)) / (z * z * z));

  TowerElem bad = TowerElem::of_int(tw, 1) / (TowerElem::of_int(tw, 1) - t);
  CHECK_THROWS_AS(bad.coeffs_in(1), Error);

  CHECK(z.projected(base) == TowerElem::z(base));
  CHECK_THROWS_AS(t.projected(base), Error);
}

TEST_CASE("ratfun bridge") {
  TowerPtr base = Tower::base();
  RatFun f = (RatFun::z() + RatFun(GaussRat(1))) / (RatFun::z() * RatFun::z() - RatFun(GaussRat(2)));
  TowerElem e = TowerElem::from_ratfun(base, f);
  CHECK(e.to_ratfun() == f);
  CHECK(TowerElem::from_ratfun(base, f.derivative()) == e.derivative());

  TowerPtr tw = base->extend_logderiv("t", TowerElem::of_int(base, 1));
  TowerElem t = TowerElem::gen(tw, "t");
  CHECK_THROWS_AS(t.to_ratfun(), Error);

  Poly half = Poly::monomial(GaussRat(1), Rat(1, 2));
  CHECK_THROWS_AS(TowerElem::from_ratfun(base, RatFun(half)), Error);
}

TEST_CASE("scalar handling and powers") {
  TowerPtr base = Tower::base();
  TowerElem z = TowerElem::z(base);
  TowerElem a = (z + TowerElem::of_int(base, 1)) / (z - TowerElem::of_int(base, 1));
  CHECK(a * a.inv() == TowerElem::of_int(base, 1));
  CHECK(a.pow(-2) == (a * a).inv());
  CHECK(a.pow(0) == TowerElem::of_int(base, 1));
  CHECK_THROWS_AS(TowerElem::zero(base).inv(), Error);
  CHECK(TowerElem::constant(base, GaussRat(Rat(3), Rat(1, 2))).scalar_value() ==
        GaussRat(Rat(3), Rat(1, 2)));
  CHECK(!a.is_scalar());
}
