#pragma once

#include <optional>
#include <vector>

#include "lindop/rational.hpp"

namespace lindop {

class RatFun;

// Univariate polynomial in w = z^(1/ram) over Q(i), with the smallest
// representable ramification: gcd(ram, all exponents in the support) is 1
// unless the polynomial is zero (then ram = 1). Coefficients ascending in w.
class Poly {
public:
  Poly() : ram_(1) {}
  Poly(const GaussRat& c) : ram_(1) {
    if (!c.is_zero()) c_.push_back(c);
  }
  Poly(long n) : Poly(GaussRat(n)) {}
  static Poly from_coeffs(std::vector<GaussRat> ascending, long ram = 1);
  static Poly z();
  // c * z^exp with exp >= 0 rational.
  static Poly monomial(const GaussRat& c, const Rat& exp);

  long ram() const { return ram_; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  // Degree in w; -1 for the zero polynomial.
  long deg_w() const { return static_cast<long>(c_.size()) - 1; }
  // Degree in z as an exact rational; nullopt for the zero polynomial.
  std::optional<Rat> deg_z() const;
  const GaussRat& coeff_w(long t) const;
  GaussRat coeff_z(const Rat& e) const;
  GaussRat lc() const;
  GaussRat constant_term() const { return coeff_w(0); }

  // Representation with ramification new_ram (a multiple of ram()).
  Poly lifted(long new_ram) const;
  static long common_ram(const Poly& a, const Poly& b);

  Poly operator-() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator*(const GaussRat& s) const;
  Poly& operator+=(const Poly& o) { *this = *this + o; return *this; }
  Poly& operator-=(const Poly& o) { *this = *this - o; return *this; }
  Poly& operator*=(const Poly& o) { *this = *this * o; return *this; }
  bool operator==(const Poly& o) const { return ram_ == o.ram_ && c_ == o.c_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  Poly pow(unsigned long e) const;
  // Substitute z -> z^n (n >= 1): multiplies every z-exponent by n.
  Poly subst_z_pow(long n) const;
  // d/dz as a rational function (fractional exponents lower into 1/z).
  RatFun derivative() const;
  // Euclidean division in w; both operands must carry the same ram.
  static void divrem(const Poly& a, const Poly& b, Poly& q, Poly& r);
  static Poly gcd_monic(const Poly& a, const Poly& b);
  // Evaluation; requires an unramified polynomial (ram == 1).
  GaussRat eval(const GaussRat& x) const;

  std::string str() const; // canonical rendering, implemented in parse.cpp

private:
  long ram_;
  std::vector<GaussRat> c_;
  void normalize();
  friend class RatFun;
};

inline Poly operator*(const GaussRat& s, const Poly& p) { return p * s; }

// Rational function num/den in z^(1/ram), canonical: gcd(num, den) = 1,
// den monic, joint ramification minimal.
class RatFun {
public:
  RatFun() : num_(), den_(GaussRat(1)) {}
  RatFun(const Poly& p) : num_(p), den_(GaussRat(1)) { reduce_ram_only(); }
  RatFun(const GaussRat& c) : RatFun(Poly(c)) {}
  RatFun(long n) : RatFun(Poly(n)) {}
  RatFun(const Poly& num, const Poly& den);
  static RatFun z() { return RatFun(Poly::z()); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  long ram() const { return num_.ram(); } // num and den share their ram
  bool is_zero() const { return num_.is_zero(); }
  bool is_poly() const { return den_.is_constant(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  GaussRat constant_value() const;

  RatFun operator-() const;
  RatFun operator+(const RatFun& o) const;
  RatFun operator-(const RatFun& o) const;
  RatFun operator*(const RatFun& o) const;
  RatFun operator/(const RatFun& o) const;
  RatFun& operator+=(const RatFun& o) { *this = *this + o; return *this; }
  RatFun& operator-=(const RatFun& o) { *this = *this - o; return *this; }
  RatFun& operator*=(const RatFun& o) { *this = *this * o; return *this; }
  RatFun& operator/=(const RatFun& o) { *this = *this / o; return *this; }
  bool operator==(const RatFun& o) const {
    return num_ == o.num_ && den_ == o.den_;
  }
  bool operator!=(const RatFun& o) const { return !(*this == o); }

  RatFun pow(long e) const;
  RatFun derivative() const;
  // deg_infty: deg(num) - deg(den) in z, exact; nullopt encodes -infinity.
  std::optional<Rat> deg_infty() const;
  // Leading coefficient of the expansion at infinity: lc(num)/lc(den).
  GaussRat lc_infty() const;
  RatFun subst_z_pow(long n) const;
  GaussRat eval(const GaussRat& x) const;

  std::string str() const;

private:
  Poly num_, den_;
  void canonicalize();
  void reduce_ram_only();
};

// Truncated expansion at infinity on the grid z^(top/ram), z^((top-1)/ram),
// ...: value = sum c[t] * z^((top - t)/ram). `known` counts reliable leading
// coefficients (the rest of c is absent); c[0] may be zero only for the
// exact zero series (c empty).
struct InfSeries {
  long ram = 1;
  long top = 0;
  std::vector<GaussRat> c;

  bool is_zero() const { return c.empty(); }
  long known() const { return static_cast<long>(c.size()); }
  static InfSeries zero(long ram, long top, long known);
  InfSeries lifted(long new_ram) const;
  InfSeries truncated(long keep) const;

  InfSeries operator+(const InfSeries& o) const;
  InfSeries operator-(const InfSeries& o) const;
  InfSeries operator*(const InfSeries& o) const;
  InfSeries scaled(const GaussRat& s) const;
  // d/dz term by term; exponents shift down by ram.
  InfSeries derivative() const;
  // Multiply by z^(k/ram).
  InfSeries shifted(long k) const;
};

// Expansion of f at infinity with `terms` coefficients on the 1/ram grid;
// ram must be a multiple of f.ram().
InfSeries expand_at_infinity(const RatFun& f, long ram, long terms);

} // namespace lindop
