#include "lindop/poly.hpp"

#include <numeric>

namespace lindop {

namespace {

// Formal derivative with respect to w, as a value: d/dw sum c_t w^t
// evaluated at w = z^(1/ram).
Poly dw(const Poly& p) {
  std::vector<GaussRat> out;
  long d = p.deg_w();
  for (long t = 1; t <= d; ++t) out.push_back(Rat(t) * p.coeff_w(t));
  return Poly::from_coeffs(std::move(out), p.ram());
}

} // namespace

void Poly::normalize() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  if (c_.empty()) {
    ram_ = 1;
    return;
  }
  long g = ram_;
  for (size_t t = 0; t < c_.size() && g > 1; ++t)
    if (!c_[t].is_zero()) g = std::gcd(g, static_cast<long>(t));
  if (g > 1) {
    std::vector<GaussRat> packed((c_.size() - 1) / g + 1);
    for (size_t t = 0; t < c_.size(); ++t)
      if (!c_[t].is_zero()) packed[t / g] = c_[t];
    c_ = std::move(packed);
    ram_ /= g;
  }
}

Poly Poly::from_coeffs(std::vector<GaussRat> ascending, long ram) {
  if (ram < 1) fail(ErrorCode::bad_arg, "ramification must be positive");
  Poly p;
  p.ram_ = ram;
  p.c_ = std::move(ascending);
  p.normalize();
  return p;
}

Poly Poly::z() { return monomial(GaussRat(1), Rat(1)); }

Poly Poly::monomial(const GaussRat& c, const Rat& exp) {
  if (exp.sign() < 0) fail(ErrorCode::bad_arg, "negative exponent in monomial");
  if (c.is_zero()) return Poly();
  if (!exp.den().fits_slong_p() || !exp.num().fits_slong_p())
    fail(ErrorCode::bad_arg, "monomial exponent too large");
  long q = exp.den().get_si(), pn = exp.num().get_si();
  std::vector<GaussRat> v(static_cast<size_t>(pn) + 1);
  v[static_cast<size_t>(pn)] = c;
  return from_coeffs(std::move(v), q);
}

std::optional<Rat> Poly::deg_z() const {
  if (is_zero()) return std::nullopt;
  return Rat(deg_w(), ram_);
}

const GaussRat& Poly::coeff_w(long t) const {
  static const GaussRat kZero{};
  if (t < 0 || t >= static_cast<long>(c_.size())) return kZero;
  return c_[static_cast<size_t>(t)];
}

GaussRat Poly::coeff_z(const Rat& e) const {
  Rat t = e * Rat(ram_);
  if (!t.is_integer() || t.sign() < 0) return GaussRat();
  if (!t.num().fits_slong_p()) return GaussRat();
  return coeff_w(t.num().get_si());
}

GaussRat Poly::lc() const {
  if (is_zero()) fail(ErrorCode::bad_arg, "leading coefficient of zero");
  return c_.back();
}

Poly Poly::lifted(long new_ram) const {
  if (new_ram % ram_ != 0)
    fail(ErrorCode::bad_arg, "ramification lift must be a multiple");
  long f = new_ram / ram_;
  if (f == 1 || is_zero()) return *this;
  Poly p;
  p.ram_ = new_ram;
  p.c_.assign(static_cast<size_t>(deg_w() * f) + 1, GaussRat());
  for (size_t t = 0; t < c_.size(); ++t) p.c_[t * f] = c_[t];
  return p;
}

long Poly::common_ram(const Poly& a, const Poly& b) {
  return std::lcm(a.ram_, b.ram_);
}

Poly Poly::operator-() const {
  Poly p = *this;
  for (auto& x : p.c_) x = -x;
  return p;
}

Poly Poly::operator+(const Poly& o) const {
  long r = common_ram(*this, o);
  Poly a = lifted(r), b = o.lifted(r);
  if (a.c_.size() < b.c_.size()) a.c_.resize(b.c_.size());
  for (size_t t = 0; t < b.c_.size(); ++t) a.c_[t] += b.c_[t];
  a.ram_ = r;
  a.normalize();
  return a;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return Poly();
  long r = common_ram(*this, o);
  Poly a = lifted(r), b = o.lifted(r);
  std::vector<GaussRat> out(a.c_.size() + b.c_.size() - 1);
  for (size_t s = 0; s < a.c_.size(); ++s) {
    if (a.c_[s].is_zero()) continue;
    for (size_t t = 0; t < b.c_.size(); ++t)
      if (!b.c_[t].is_zero()) out[s + t] += a.c_[s] * b.c_[t];
  }
  return from_coeffs(std::move(out), r);
}

Poly Poly::operator*(const GaussRat& s) const {
  if (s.is_zero()) return Poly();
  Poly p = *this;
  for (auto& x : p.c_) x *= s;
  return p;
}

Poly Poly::pow(unsigned long e) const {
  Poly acc(GaussRat(1)), base = *this;
  while (e) {
    if (e & 1) acc *= base;
    if (e >>= 1) base *= base;
  }
  return acc;
}

Poly Poly::subst_z_pow(long n) const {
  if (n < 1) fail(ErrorCode::bad_arg, "substitution power must be >= 1");
  if (is_zero()) return Poly();
  std::vector<GaussRat> out(static_cast<size_t>(deg_w() * n) + 1);
  for (size_t t = 0; t < c_.size(); ++t) out[t * n] = c_[t];
  return from_coeffs(std::move(out), ram_);
}

RatFun Poly::derivative() const {
  if (is_zero() || is_constant()) return RatFun();
  Poly nw = dw(*this);
  if (ram_ == 1) return RatFun(nw);
  Poly w = Poly::monomial(GaussRat(1), Rat(1, ram_));
  return RatFun(nw * w, Poly::z() * GaussRat(Rat(ram_)));
}

void Poly::divrem(const Poly& a, const Poly& b, Poly& q, Poly& r) {
  if (b.is_zero()) fail(ErrorCode::div_zero, "polynomial division by zero");
  long rr = common_ram(a, b);
  std::vector<GaussRat> rv = a.lifted(rr).c_;
  std::vector<GaussRat> bv = b.lifted(rr).c_;
  long db = static_cast<long>(bv.size()) - 1;
  GaussRat blc = bv.back();
  std::vector<GaussRat> qv;
  long da = static_cast<long>(rv.size()) - 1;
  if (da >= db) qv.assign(static_cast<size_t>(da - db) + 1, GaussRat());
  while (static_cast<long>(rv.size()) - 1 >= db && !rv.empty()) {
    while (!rv.empty() && rv.back().is_zero()) rv.pop_back();
    long dr = static_cast<long>(rv.size()) - 1;
    if (dr < db) break;
    GaussRat t = rv.back() / blc;
    qv[static_cast<size_t>(dr - db)] = t;
    for (long i = 0; i <= db; ++i)
      rv[static_cast<size_t>(dr - db + i)] -= t * bv[static_cast<size_t>(i)];
  }
  q = from_coeffs(std::move(qv), rr);
  r = from_coeffs(std::move(rv), rr);
}

Poly Poly::gcd_monic(const Poly& a, const Poly& b) {
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly q, r;
    divrem(x, y, q, r);
    x = y;
    y = r;
  }
  if (x.is_zero()) return Poly();
  return x * x.lc().inv();
}

GaussRat Poly::eval(const GaussRat& x) const {
  if (ram_ != 1)
    fail(ErrorCode::bad_arg, "evaluation requires an unramified polynomial");
  GaussRat acc;
  for (size_t t = c_.size(); t-- > 0;) acc = acc * x + c_[t];
  return acc;
}

RatFun::RatFun(const Poly& num, const Poly& den) : num_(num), den_(den) {
  canonicalize();
}

void RatFun::canonicalize() {
  if (den_.is_zero())
    fail(ErrorCode::div_zero, "rational function with zero denominator");
  if (num_.is_zero()) {
    den_ = Poly(GaussRat(1));
    return;
  }
  long r = Poly::common_ram(num_, den_);
  num_ = num_.lifted(r);
  den_ = den_.lifted(r);
  Poly g = Poly::gcd_monic(num_, den_);
  if (g.deg_w() > 0) {
    Poly q1, r1, q2, r2;
    Poly::divrem(num_, g, q1, r1);
    Poly::divrem(den_, g, q2, r2);
    if (!r1.is_zero() || !r2.is_zero())
      fail(ErrorCode::internal, "gcd does not divide");
    num_ = q1;
    den_ = q2;
  }
  GaussRat lc = den_.lc();
  if (!lc.is_one()) {
    GaussRat inv = lc.inv();
    num_ = num_ * inv;
    den_ = den_ * inv;
  }
  reduce_ram_only();
}

void RatFun::reduce_ram_only() {
  // Joint ramification minimization: the pair (num, den) may share a
  // coarser grid even when each alone does not.
  if (num_.is_zero()) return;
  long r = Poly::common_ram(num_, den_);
  num_ = num_.lifted(r);
  den_ = den_.lifted(r);
  long g = r;
  for (long t = 0; t <= num_.deg_w() && g > 1; ++t)
    if (!num_.coeff_w(t).is_zero()) g = std::gcd(g, t);
  for (long t = 0; t <= den_.deg_w() && g > 1; ++t)
    if (!den_.coeff_w(t).is_zero()) g = std::gcd(g, t);
  if (g > 1) {
    auto compress = [&](const Poly& p) {
      std::vector<GaussRat> v(static_cast<size_t>(p.deg_w() / g) + 1);
      for (long t = 0; t <= p.deg_w(); t += g)
        v[static_cast<size_t>(t / g)] = p.coeff_w(t);
      return Poly::from_coeffs(std::move(v), r / g);
    };
    Poly n2 = compress(num_), d2 = compress(den_);
    num_ = n2;
    den_ = d2;
  }
}

GaussRat RatFun::constant_value() const {
  if (!is_constant()) fail(ErrorCode::bad_arg, "not a constant");
  if (is_zero()) return GaussRat();
  return num_.coeff_w(0) / den_.coeff_w(0);
}

RatFun RatFun::operator-() const {
  RatFun f = *this;
  f.num_ = -f.num_;
  return f;
}

RatFun RatFun::operator+(const RatFun& o) const {
  return RatFun(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFun RatFun::operator-(const RatFun& o) const { return *this + (-o); }

RatFun RatFun::operator*(const RatFun& o) const {
  return RatFun(num_ * o.num_, den_ * o.den_);
}

RatFun RatFun::operator/(const RatFun& o) const {
  if (o.is_zero()) fail(ErrorCode::div_zero, "rational function division by zero");
  return RatFun(num_ * o.den_, den_ * o.num_);
}

RatFun RatFun::pow(long e) const {
  if (e == 0) return RatFun(Poly(GaussRat(1)));
  if (e < 0) {
    if (is_zero()) fail(ErrorCode::div_zero, "negative power of zero");
    return RatFun(den_, num_).pow(-e);
  }
  return RatFun(num_.pow(static_cast<unsigned long>(e)),
                den_.pow(static_cast<unsigned long>(e)));
}

RatFun RatFun::derivative() const {
  if (is_zero()) return RatFun();
  long p = ram();
  Poly nw = dw(num_), dnw = dw(den_);
  Poly core = nw * den_ - num_ * dnw;
  if (core.is_zero()) return RatFun();
  if (p == 1) return RatFun(core, den_ * den_);
  Poly w = Poly::monomial(GaussRat(1), Rat(1, p));
  return RatFun(core * w, den_ * den_ * Poly::z() * GaussRat(Rat(p)));
}

std::optional<Rat> RatFun::deg_infty() const {
  if (is_zero()) return std::nullopt;
  return Rat(num_.deg_w() - den_.deg_w(), ram());
}

GaussRat RatFun::lc_infty() const {
  if (is_zero()) fail(ErrorCode::bad_arg, "leading coefficient of zero");
  return num_.lc() / den_.lc();
}

RatFun RatFun::subst_z_pow(long n) const {
  return RatFun(num_.subst_z_pow(n), den_.subst_z_pow(n));
}

GaussRat RatFun::eval(const GaussRat& x) const {
  GaussRat d = den_.eval(x);
  if (d.is_zero()) fail(ErrorCode::div_zero, "evaluation at a pole");
  return num_.eval(x) / d;
}

InfSeries InfSeries::zero(long ram, long top, long known) {
  InfSeries s;
  s.ram = ram;
  s.top = top;
  s.c.assign(static_cast<size_t>(known), GaussRat());
  return s;
}

InfSeries InfSeries::lifted(long new_ram) const {
  if (new_ram % ram != 0)
    fail(ErrorCode::bad_arg, "series ramification lift must be a multiple");
  long f = new_ram / ram;
  if (f == 1) return *this;
  InfSeries s;
  s.ram = new_ram;
  s.top = top * f;
  if (!c.empty()) {
    s.c.assign((c.size() - 1) * static_cast<size_t>(f) + 1, GaussRat());
    for (size_t t = 0; t < c.size(); ++t) s.c[t * f] = c[t];
  }
  return s;
}

InfSeries InfSeries::truncated(long keep) const {
  InfSeries s = *this;
  if (keep < static_cast<long>(s.c.size()))
    s.c.resize(static_cast<size_t>(std::max(0L, keep)));
  return s;
}

InfSeries InfSeries::operator+(const InfSeries& o) const {
  long r = std::lcm(ram, o.ram);
  InfSeries a = lifted(r), b = o.lifted(r);
  if (a.c.empty()) return b;
  if (b.c.empty()) return a;
  long top2 = std::max(a.top, b.top);
  long bot2 = std::max(a.top - a.known() + 1, b.top - b.known() + 1);
  if (bot2 > top2) fail(ErrorCode::internal, "series windows do not overlap");
  InfSeries s = zero(r, top2, top2 - bot2 + 1);
  for (long t = 0; t < a.known(); ++t) {
    long pos = top2 - (a.top - t);
    if (pos >= 0 && pos < s.known()) s.c[static_cast<size_t>(pos)] += a.c[static_cast<size_t>(t)];
  }
  for (long t = 0; t < b.known(); ++t) {
    long pos = top2 - (b.top - t);
    if (pos >= 0 && pos < s.known()) s.c[static_cast<size_t>(pos)] += b.c[static_cast<size_t>(t)];
  }
  return s;
}

InfSeries InfSeries::operator-(const InfSeries& o) const {
  return *this + o.scaled(GaussRat(-1));
}

InfSeries InfSeries::operator*(const InfSeries& o) const {
  long r = std::lcm(ram, o.ram);
  InfSeries a = lifted(r), b = o.lifted(r);
  long k = std::min(a.known(), b.known());
  InfSeries s = zero(r, a.top + b.top, k);
  for (long u = 0; u < k; ++u) {
    if (a.c[static_cast<size_t>(u)].is_zero()) continue;
    for (long v = 0; u + v < k; ++v)
      s.c[static_cast<size_t>(u + v)] +=
          a.c[static_cast<size_t>(u)] * b.c[static_cast<size_t>(v)];
  }
  return s;
}

InfSeries InfSeries::scaled(const GaussRat& sc) const {
  InfSeries s = *this;
  for (auto& x : s.c) x *= sc;
  return s;
}

InfSeries InfSeries::derivative() const {
  InfSeries s = *this;
  for (long t = 0; t < s.known(); ++t)
    s.c[static_cast<size_t>(t)] *= Rat(s.top - t, s.ram);
  s.top -= s.ram;
  return s;
}

InfSeries InfSeries::shifted(long k) const {
  InfSeries s = *this;
  s.top += k;
  return s;
}

InfSeries expand_at_infinity(const RatFun& f, long ram, long terms) {
  if (terms < 1) fail(ErrorCode::bad_arg, "series needs at least one term");
  if (f.is_zero()) return InfSeries::zero(ram, 0, terms);
  if (ram % f.ram() != 0)
    fail(ErrorCode::bad_arg, "series grid does not refine the function grid");
  Poly n = f.num().lifted(ram / f.ram() * f.num().ram());
  Poly d = f.den().lifted(ram / f.ram() * f.den().ram());
  long dn = n.deg_w(), dd = d.deg_w();
  InfSeries s = InfSeries::zero(ram, dn - dd, terms);
  GaussRat dlc = d.coeff_w(dd);
  for (long t = 0; t < terms; ++t) {
    GaussRat acc = n.coeff_w(dn - t);
    for (long u = 0; u < t; ++u)
      acc -= s.c[static_cast<size_t>(u)] * d.coeff_w(dd - (t - u));
    s.c[static_cast<size_t>(t)] = acc / dlc;
  }
  return s;
}

} // namespace lindop
