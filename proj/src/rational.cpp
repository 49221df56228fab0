#include "lindop/rational.hpp"

#include <cctype>
#include <cmath>

namespace lindop {

Rat::Rat(long n, long d) {
  if (d == 0) fail(ErrorCode::div_zero, "rational with zero denominator");
  v_ = mpq_class(n, d);
  v_.canonicalize();
}

Rat::Rat(const Int& n, const Int& d) {
  if (sgn(d) == 0) fail(ErrorCode::div_zero, "rational with zero denominator");
  v_ = mpq_class(n, d);
  v_.canonicalize();
}

Rat::Rat(const mpq_class& v) : v_(v) { v_.canonicalize(); }

std::optional<Rat> Rat::parse(const std::string& s) {
  if (s.empty()) return std::nullopt;
  size_t slash = s.find('/');
  auto is_int = [](const std::string& t) {
    if (t.empty()) return false;
    size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };
  try {
    if (slash == std::string::npos) {
      if (!is_int(s)) return std::nullopt;
      return Rat(mpq_class(Int(s)));
    }
    std::string n = s.substr(0, slash), d = s.substr(slash + 1);
    if (!is_int(n) || !is_int(d)) return std::nullopt;
    Int den(d);
    if (sgn(den) == 0) return std::nullopt;
    return Rat(Int(n), den);
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

Rat Rat::operator/(const Rat& o) const {
  if (o.is_zero()) fail(ErrorCode::div_zero, "rational division by zero");
  return Rat(mpq_class(v_ / o.v_));
}

Rat Rat::inv() const {
  if (is_zero()) fail(ErrorCode::div_zero, "inverse of zero");
  return Rat(mpq_class(1 / v_));
}

Rat Rat::pow(long e) const {
  if (e == 0) return Rat(1);
  Rat base = e < 0 ? inv() : *this;
  unsigned long n = e < 0 ? static_cast<unsigned long>(-e)
                          : static_cast<unsigned long>(e);
  mpq_class r;
  mpz_pow_ui(r.get_num_mpz_t(), base.v_.get_num_mpz_t(), n);
  mpz_pow_ui(r.get_den_mpz_t(), base.v_.get_den_mpz_t(), n);
  return Rat(r); // already canonical but constructor re-checks cheaply
}

std::optional<Rat> Rat::sqrt() const {
  if (sign() < 0) return std::nullopt;
  Int n = num(), d = den();
  if (mpz_perfect_square_p(n.get_mpz_t()) == 0) return std::nullopt;
  if (mpz_perfect_square_p(d.get_mpz_t()) == 0) return std::nullopt;
  Int rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  return Rat(rn, rd);
}

Int Rat::floor() const {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), num().get_mpz_t(), den().get_mpz_t());
  return q;
}

std::string Rat::str() const {
  if (is_integer()) return num().get_str();
  return num().get_str() + "/" + den().get_str();
}

std::optional<Rat> rationalize(double x, double tol, const Int& max_den) {
  if (!std::isfinite(x)) return std::nullopt;
  // Continued fraction expansion with convergent tracking.
  Int p0(0), q0(1), p1(1), q1(0);
  double v = x;
  for (int iter = 0; iter < 64; ++iter) {
    double fl = std::floor(v);
    if (fl > 9.0e18 || fl < -9.0e18) break;
    Int a(static_cast<long>(fl));
    Int p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    Rat cand(p1, q1);
    double err = std::fabs(cand.to_double() - x);
    double scale = std::max(1.0, std::fabs(x));
    if (err <= tol * scale) return cand;
    double frac = v - fl;
    if (frac < 1e-18) break;
    v = 1.0 / frac;
  }
  return std::nullopt;
}

GaussRat GaussRat::operator/(const GaussRat& o) const {
  if (o.is_zero()) fail(ErrorCode::div_zero, "division by zero in Q(i)");
  if (o.im_.is_zero()) return GaussRat(re_ / o.re_, im_ / o.re_);
  Rat n = o.norm();
  GaussRat t = *this * o.conj();
  return GaussRat(t.re() / n, t.im() / n);
}

GaussRat GaussRat::inv() const { return GaussRat(Rat(1)) / *this; }

GaussRat GaussRat::pow(long e) const {
  if (e == 0) return GaussRat(Rat(1));
  GaussRat base = e < 0 ? inv() : *this;
  unsigned long n = e < 0 ? static_cast<unsigned long>(-e)
                          : static_cast<unsigned long>(e);
  GaussRat acc(Rat(1));
  while (n) {
    if (n & 1) acc *= base;
    base *= base;
    n >>= 1;
  }
  return acc;
}

std::optional<GaussRat> GaussRat::sqrt() const {
  if (is_zero()) return GaussRat();
  // For w = a+bi, |w| must be rational: norm(w) a perfect square in Q.
  auto napx = norm().sqrt();
  if (!napx) return std::nullopt;
  Rat r = *napx; // r = |w|
  if (im().is_zero()) {
    if (re().sign() > 0) {
      if (auto s = re().sqrt()) return GaussRat(*s);
      return std::nullopt;
    }
    if (auto s = (-re()).sqrt()) return GaussRat(Rat(0), *s);
    return std::nullopt;
  }
  // x^2 = (a+r)/2, y = b/(2x); works whenever (a+r)/2 is a rational square.
  auto x2 = ((re() + r) / Rat(2)).sqrt();
  if (!x2 || x2->is_zero()) return std::nullopt;
  Rat x = *x2;
  Rat y = im() / (Rat(2) * x);
  GaussRat cand(x, y);
  if (cand * cand == *this) return cand;
  return std::nullopt;
}

std::string GaussRat::str() const {
  auto imag_part = [](const Rat& b) -> std::string {
    Rat a = b.abs();
    if (a.is_one()) return "i";
    return a.str() + "i";
  };
  if (im().is_zero()) return re().str();
  if (re().is_zero()) {
    std::string s = imag_part(im());
    return im().sign() < 0 ? "-" + s : s;
  }
  std::string s = re().str();
  s += im().sign() < 0 ? "-" : "+";
  s += imag_part(im());
  return s;
}

int GaussRat::cmp(const GaussRat& a, const GaussRat& b) {
  if (a.re() != b.re()) return a.re() < b.re() ? -1 : 1;
  if (a.im() != b.im()) return a.im() < b.im() ? -1 : 1;
  return 0;
}

Int binomial(long n, long k) {
  if (k < 0 || k > n) return Int(0);
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  return r;
}

} // namespace lindop
