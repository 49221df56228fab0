#pragma once

#include <gmpxx.h>

#include <complex>
#include <optional>
#include <string>

#include "lindop/error.hpp"

namespace lindop {

using Int = mpz_class;

// Exact rational number, always in lowest terms with positive denominator.
class Rat {
public:
  Rat() : v_(0) {}
  Rat(long n) : v_(n) {}
  Rat(long n, long d);
  Rat(const Int& n, const Int& d);
  explicit Rat(const mpq_class& v);

  static Rat of_int(const Int& n) { return Rat(n, Int(1)); }
  // Accepts "n" or "n/d" with optional sign; rejects anything else.
  static std::optional<Rat> parse(const std::string& s);

  Int num() const { return v_.get_num(); }
  Int den() const { return v_.get_den(); }
  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return v_ == 1; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }

  Rat operator-() const { return Rat(mpq_class(-v_)); }
  Rat operator+(const Rat& o) const { return Rat(mpq_class(v_ + o.v_)); }
  Rat operator-(const Rat& o) const { return Rat(mpq_class(v_ - o.v_)); }
  Rat operator*(const Rat& o) const { return Rat(mpq_class(v_ * o.v_)); }
  Rat operator/(const Rat& o) const;
  Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
  Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
  Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
  Rat& operator/=(const Rat& o) { *this = *this / o; return *this; }

  bool operator==(const Rat& o) const { return v_ == o.v_; }
  bool operator!=(const Rat& o) const { return v_ != o.v_; }
  bool operator<(const Rat& o) const { return v_ < o.v_; }
  bool operator<=(const Rat& o) const { return v_ <= o.v_; }
  bool operator>(const Rat& o) const { return v_ > o.v_; }
  bool operator>=(const Rat& o) const { return v_ >= o.v_; }

  Rat abs() const { return sign() < 0 ? -*this : *this; }
  Rat inv() const;
  // Integer exponent; negative exponents invert (error on zero base).
  Rat pow(long e) const;
  // Exact square root if one exists.
  std::optional<Rat> sqrt() const;
  // Largest integer <= value.
  Int floor() const;

  double to_double() const { return v_.get_d(); }
  std::string str() const;

private:
  mpq_class v_; // canonical: mpq_class arithmetic keeps reduced form
};

inline Rat operator*(long a, const Rat& b) { return Rat(a) * b; }

// Nearest-fraction reconstruction from a double via continued fractions.
// Returns a candidate with denominator <= max_den whose value is within tol
// of x, or nullopt if none exists.
std::optional<Rat> rationalize(double x, double tol, const Int& max_den);

// Element of Q(i): re + im*i with exact rational parts.
class GaussRat {
public:
  GaussRat() = default;
  GaussRat(long n) : re_(n) {}
  GaussRat(const Rat& re) : re_(re) {}
  GaussRat(const Rat& re, const Rat& im) : re_(re), im_(im) {}

  static GaussRat i() { return GaussRat(Rat(0), Rat(1)); }

  const Rat& re() const { return re_; }
  const Rat& im() const { return im_; }
  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  bool is_one() const { return re_.is_one() && im_.is_zero(); }
  bool is_real() const { return im_.is_zero(); }

  GaussRat conj() const { return GaussRat(re_, -im_); }
  Rat norm() const { return re_ * re_ + im_ * im_; }

  GaussRat operator-() const { return GaussRat(-re_, -im_); }
  GaussRat operator+(const GaussRat& o) const {
    return GaussRat(re_ + o.re_, im_ + o.im_);
  }
  GaussRat operator-(const GaussRat& o) const {
    return GaussRat(re_ - o.re_, im_ - o.im_);
  }
  GaussRat operator*(const GaussRat& o) const {
    if (im_.is_zero()) {
      if (o.im_.is_zero()) return GaussRat(re_ * o.re_);
      return GaussRat(re_ * o.re_, re_ * o.im_);
    }
    if (o.im_.is_zero()) return GaussRat(re_ * o.re_, im_ * o.re_);
    return GaussRat(re_ * o.re_ - im_ * o.im_, re_ * o.im_ + im_ * o.re_);
  }
  GaussRat operator/(const GaussRat& o) const;
  GaussRat& operator+=(const GaussRat& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussRat& operator-=(const GaussRat& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussRat& operator*=(const GaussRat& o) {
    if (im_.is_zero() && o.im_.is_zero()) {
      re_ *= o.re_;
    } else {
      *this = *this * o;
    }
    return *this;
  }
  GaussRat& operator/=(const GaussRat& o) { *this = *this / o; return *this; }

  bool operator==(const GaussRat& o) const {
    return re_ == o.re_ && im_ == o.im_;
  }
  bool operator!=(const GaussRat& o) const { return !(*this == o); }

  GaussRat inv() const;
  GaussRat pow(long e) const;
  // Exact square root in Q(i) if one exists.
  std::optional<GaussRat> sqrt() const;

  std::complex<double> to_complex() const {
    return {re_.to_double(), im_.to_double()};
  }
  // Canonical rendering: "a", "bi", or "a+bi"/"a-bi"; unit imaginary parts
  // drop the coefficient ("i", "-i", "a+i").
  std::string str() const;

  // Deterministic total order (lexicographic on re, then im); used only to
  // canonicalize output orderings, no arithmetic meaning.
  static int cmp(const GaussRat& a, const GaussRat& b);

private:
  Rat re_, im_;
};

inline GaussRat operator*(const Rat& a, const GaussRat& b) {
  return GaussRat(a) * b;
}
inline GaussRat operator*(long a, const GaussRat& b) {
  return GaussRat(Rat(a)) * b;
}

// Binomial coefficient as an exact rational-free integer.
Int binomial(long n, long k);

} // namespace lindop
