#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "lindop/poly.hpp"
#include "lindop/ray.hpp"

using namespace lindop;

namespace {

std::mt19937_64 rng(20260816);

Rat rand_rat() {
  std::uniform_int_distribution<long> num(-20, 20), den(1, 12);
  return Rat(num(rng), den(rng));
}

GaussRat rand_gauss() { return GaussRat(rand_rat(), rand_rat()); }

Poly rand_poly(long max_deg, long ram) {
  std::uniform_int_distribution<long> deg(0, max_deg);
  long d = deg(rng);
  std::vector<GaussRat> c(static_cast<size_t>(d) + 1);
  for (auto& x : c) x = rand_gauss();
  return Poly::from_coeffs(std::move(c), ram);
}

RatFun rand_ratfun(long max_deg, long ram) {
  Poly den = rand_poly(max_deg, ram);
  while (den.is_zero()) den = rand_poly(max_deg, ram);
  return RatFun(rand_poly(max_deg, ram), den);
}

} // namespace

TEST_CASE("rational canonical form and arithmetic") {
  CHECK(Rat(4, 6) == Rat(2, 3));
  CHECK(Rat(3, -6) == Rat(-1, 2));
  CHECK(Rat(3, -6).den() == 2);
  CHECK(Rat(3, -6).num() == -1);
  CHECK((Rat(1, 2) + Rat(1, 3)) == Rat(5, 6));
  CHECK((Rat(1, 2) * Rat(2, 3)) == Rat(1, 3));
  CHECK((Rat(7, 2) / Rat(7, 4)) == Rat(2));
  CHECK(Rat(-3, 4).abs() == Rat(3, 4));
  CHECK(Rat(2, 3).pow(-2) == Rat(9, 4));
  CHECK(Rat(-7, 2).floor() == -4);
  CHECK_THROWS_AS(Rat(1) / Rat(0), Error);
}

TEST_CASE("rational parse and render") {
  CHECK(*Rat::parse("-22/4") == Rat(-11, 2));
  CHECK(*Rat::parse("17") == Rat(17));
  CHECK(!Rat::parse("1.5"));
  CHECK(!Rat::parse("1/0"));
  CHECK(!Rat::parse(""));
  CHECK(Rat(-11, 2).str() == "-11/2");
  CHECK(Rat(5).str() == "5");
}

TEST_CASE("rational sqrt") {
  CHECK(*Rat(9, 4).sqrt() == Rat(3, 2));
  CHECK(*Rat(0).sqrt() == Rat(0));
  CHECK(!Rat(2).sqrt());
  CHECK(!Rat(-4).sqrt());
}

TEST_CASE("rationalize recovers small fractions") {
  CHECK(*rationalize(0.5, 1e-9, Int(100000000)) == Rat(1, 2));
  CHECK(*rationalize(-2.0 / 3.0, 1e-9, Int(100000000)) == Rat(-2, 3));
  CHECK(*rationalize(3.0, 1e-9, Int(100000000)) == Rat(3));
}

TEST_CASE("gaussian rational field operations") {
  GaussRat i = GaussRat::i();
  CHECK(i * i == GaussRat(-1));
  CHECK((GaussRat(Rat(1), Rat(2)) * GaussRat(Rat(3), Rat(-1))) ==
        GaussRat(Rat(5), Rat(5)));
  GaussRat w(Rat(2, 3), Rat(-1, 6));
  CHECK(w * w.inv() == GaussRat(1));
  CHECK(w.pow(3) * w.pow(-3) == GaussRat(1));
  CHECK_THROWS_AS(GaussRat(1) / GaussRat(), Error);
}

TEST_CASE("gaussian rational sqrt") {
  CHECK(*GaussRat(Rat(0), Rat(2)).sqrt() == GaussRat(Rat(1), Rat(1)));
  CHECK(*GaussRat(-1).sqrt() == GaussRat::i());
  CHECK(*GaussRat(Rat(9, 4)).sqrt() == GaussRat(Rat(3, 2)));
  CHECK(*GaussRat(Rat(-9)).sqrt() == GaussRat(Rat(0), Rat(3)));
  CHECK(*GaussRat(Rat(3, 4), Rat(1)).sqrt() == GaussRat(Rat(1), Rat(1, 2)));
  CHECK(!GaussRat(Rat(2)).sqrt());
  CHECK(!GaussRat(Rat(1), Rat(1)).sqrt());
  for (int t = 0; t < 50; ++t) {
    GaussRat w = rand_gauss();
    auto s = (w * w).sqrt();
    REQUIRE(s);
    CHECK(*s * *s == w * w);
  }
}

TEST_CASE("gaussian rational rendering") {
  CHECK(GaussRat(Rat(1, 2), Rat(3, 4)).str() == "1/2+3/4i");
  CHECK(GaussRat(Rat(1, 2), Rat(-1)).str() == "1/2-i");
  CHECK(GaussRat(Rat(0), Rat(-5)).str() == "-5i");
  CHECK(GaussRat(Rat(-3)).str() == "-3");
  CHECK(GaussRat().str() == "0");
  CHECK(GaussRat::i().str() == "i");
}

TEST_CASE("binomial") {
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(7, 0) == 1);
  CHECK(binomial(3, 5) == 0);
}

TEST_CASE("poly canonical ramification") {
  // z given on the half-integer grid collapses to ram 1.
  Poly p = Poly::from_coeffs({GaussRat(), GaussRat(), GaussRat(1)}, 2);
  CHECK(p.ram() == 1);
  CHECK(p == Poly::z());
  // z^(3/2) needs the finer grid.
  Poly q = Poly::monomial(GaussRat(1), Rat(3, 2));
  CHECK(q.ram() == 2);
  CHECK(*q.deg_z() == Rat(3, 2));
  CHECK(q.coeff_z(Rat(3, 2)) == GaussRat(1));
  CHECK(q.coeff_z(Rat(1)) == GaussRat());
  // Mixed-ram arithmetic lands on the joint grid.
  Poly s = q + Poly::z();
  CHECK(s.ram() == 2);
  CHECK(*s.deg_z() == Rat(3, 2));
  CHECK((q * q).ram() == 1);
}

TEST_CASE("poly arithmetic is canonical and exact") {
  for (int t = 0; t < 40; ++t) {
    Poly a = rand_poly(5, t % 3 + 1), b = rand_poly(5, t % 2 + 1),
         c = rand_poly(4, 1);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a - a == Poly());
    if (!a.is_zero() && !b.is_zero())
      CHECK(*(a * b).deg_z() == *a.deg_z() + *b.deg_z());
  }
}

TEST_CASE("poly division and gcd") {
  Poly z = Poly::z();
  Poly a = (z + Poly(1)) * (z - Poly(2)) * (z - Poly(2));
  Poly b = (z - Poly(2)) * (z + Poly(3));
  Poly q, r;
  Poly::divrem(a, b, q, r);
  CHECK(a == q * b + r);
  CHECK(r.deg_w() < b.deg_w());
  CHECK(Poly::gcd_monic(a, b) == z - Poly(2));
  CHECK(Poly::gcd_monic(a, Poly()) == a * a.lc().inv());
}

TEST_CASE("poly derivative") {
  Poly z = Poly::z();
  RatFun d = (z * z * GaussRat(3)).derivative();
  CHECK(d == RatFun(z * GaussRat(6)));
  // d/dz z^(1/2) = (1/2) z^(-1/2)
  RatFun h = Poly::monomial(GaussRat(1), Rat(1, 2)).derivative();
  RatFun expect = RatFun(Poly(GaussRat(Rat(1, 2))),
                         Poly::monomial(GaussRat(1), Rat(1, 2)));
  CHECK(h == expect);
}

TEST_CASE("ratfun canonical form") {
  Poly z = Poly::z();
  RatFun f(z * z - Poly(1), (z - Poly(1)) * GaussRat(2));
  // gcd cancelled, denominator monic.
  CHECK(f.den() == Poly(GaussRat(1)));
  CHECK(f == RatFun((z + Poly(1)) * GaussRat(Rat(1, 2))));
  RatFun g(z, z * z * GaussRat(3));
  CHECK(g.den() == z);
  CHECK(g.num() == Poly(GaussRat(Rat(1, 3))));
  // Joint ramification minimization.
  Poly w = Poly::monomial(GaussRat(1), Rat(1, 2));
  RatFun h(w * w * w, w * w);
  CHECK(h.ram() == 2);
  CHECK(h == RatFun(Poly::monomial(GaussRat(1), Rat(1, 2))));
}

TEST_CASE("ratfun field laws and leibniz") {
  for (int t = 0; t < 25; ++t) {
    RatFun f = rand_ratfun(3, t % 2 + 1), g = rand_ratfun(3, 1);
    CHECK(f + g == g + f);
    CHECK(f * g == g * f);
    CHECK((f * g).derivative() == f.derivative() * g + f * g.derivative());
    CHECK((f + g).derivative() == f.derivative() + g.derivative());
    if (!g.is_zero()) CHECK(f / g * g == f);
  }
}

TEST_CASE("deg_infty") {
  Poly z = Poly::z();
  RatFun f(z * z + Poly(1), z);
  CHECK(*f.deg_infty() == Rat(1));
  CHECK(!RatFun().deg_infty());
  // z^(1/2)(1 + 1/z) has degree 1/2 at infinity.
  Poly w = Poly::monomial(GaussRat(1), Rat(1, 2));
  RatFun g = RatFun(w) * (RatFun(1) + RatFun(Poly(1), z));
  CHECK(*g.deg_infty() == Rat(1, 2));
  CHECK(g.lc_infty() == GaussRat(1));
  CHECK(*(f * g).deg_infty() == Rat(3, 2));
}

TEST_CASE("series expansion at infinity") {
  Poly z = Poly::z();
  // z/(z-1) = 1 + z^-1 + z^-2 + ...
  InfSeries s = expand_at_infinity(RatFun(z, z - Poly(1)), 1, 5);
  CHECK(s.top == 0);
  for (auto& c : s.c) CHECK(c == GaussRat(1));
  // Series arithmetic: (1 + 1/z)^2.
  InfSeries u = expand_at_infinity(RatFun(z + Poly(1), z), 1, 4);
  InfSeries sq = u * u;
  CHECK(sq.c[0] == GaussRat(1));
  CHECK(sq.c[1] == GaussRat(2));
  CHECK(sq.c[2] == GaussRat(1));
  CHECK(sq.c[3] == GaussRat(0));
  // Derivative of the expansion equals expansion of the derivative.
  RatFun f(z * z + Poly(1), z * (z - Poly(1)));
  InfSeries a = expand_at_infinity(f, 1, 6).derivative();
  InfSeries b = expand_at_infinity(f.derivative(), 1, 6);
  for (long t = 1; t < 5; ++t)
    CHECK(a.c[static_cast<size_t>(t)] ==
          b.c[static_cast<size_t>(t + b.top - a.top)]);
}

TEST_CASE("ray comparison on the positive axis") {
  Angle th = Angle::quarter(0);
  Poly z = Poly::z();
  Poly m2z = z * GaussRat(-2), mz = z * GaussRat(-1);
  CHECK(ray_compare(m2z, mz, th) == RayOrder::precedes);
  CHECK(ray_compare(z, Poly(), th) == RayOrder::succeeds);
  CHECK(ray_compare(mz, Poly(), th) == RayOrder::precedes);
  CHECK(ray_compare(z, z, th) == RayOrder::similar);
  // Purely imaginary leading coefficient only oscillates along theta = 0.
  CHECK(ray_compare(z * GaussRat::i(), Poly(), th) == RayOrder::similar);
  // Lower-order terms decide when leading terms agree.
  CHECK(ray_compare(z * z + z, z * z, th) == RayOrder::succeeds);
  // Constant differences never matter.
  CHECK(ray_compare(z + Poly(7), z, th) == RayOrder::similar);
}

TEST_CASE("ray comparison off-axis and exact quarter shortcut") {
  // At theta = pi/2: Re(z) = 0 oscillatory, Re(z^2) = -r^2.
  Angle th = Angle::quarter(1);
  Poly z = Poly::z();
  CHECK(ray_compare(z, Poly(), th) == RayOrder::similar);
  CHECK(ray_compare(z * z, Poly(), th) == RayOrder::precedes);
  CHECK(ray_compare(z * GaussRat::i(), Poly(), th) == RayOrder::precedes);
  // Ramified exponent on an exact axis: z^(3/2) at theta = pi gives
  // angle 3*pi/2, still exact.
  Poly q = Poly::monomial(GaussRat(1), Rat(3, 2));
  CHECK(ray_compare(q, Poly(), Angle::quarter(2)) == RayOrder::similar);
  Poly q2 = Poly::monomial(GaussRat::i(), Rat(3, 2));
  CHECK(ray_compare(q2, Poly(), Angle::quarter(2)) == RayOrder::succeeds);
  // Generic angle goes through floating point.
  CHECK(ray_compare(z, Poly(), Angle::from_radians(0.3)) == RayOrder::succeeds);
  CHECK(ray_compare(z, Poly(), Angle::from_radians(3.0)) == RayOrder::precedes);
}

TEST_CASE("ray near-tie raises") {
  // Re((3+4i) e^{i atan(3/4)}) = 0 up to rounding: not exactly zero on the
  // float path, so the comparison must refuse.
  Angle th = Angle::from_radians(std::atan2(3.0, 4.0));
  Poly p = Poly::z() * GaussRat(Rat(3), Rat(4));
  CHECK_THROWS_AS(ray_compare(p, Poly(), th), Error);
  try {
    ray_compare(p, Poly(), th);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::near_tie);
  }
}
