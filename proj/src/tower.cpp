#include "lindop/tower.hpp"

#include <algorithm>

#include "lindop/error.hpp"

namespace lindop {

namespace {

MPoly one_poly(int nv) { return MPoly::constant(nv, GaussRat(1)); }

} // namespace

TowerPtr Tower::base() {
  static TowerPtr b(new Tower());
  return b;
}

TowerPtr Tower::extended(Generator g) const {
  auto t = std::shared_ptr<Tower>(new Tower());
  t->parent_ = shared_from_this();
  t->gens_ = gens_;
  t->gens_.push_back(std::move(g));
  return t;
}

TowerPtr Tower::extend_logderiv(const std::string& name, const TowerElem& w) const {
  TowerElem lw = w.lifted(shared_from_this());
  int nv = nvars() + 1;
  Generator g{GenKind::logderiv, name,
              lw.num().lifted(nv) * MPoly::var(nv, nv - 1),
              lw.den().lifted(nv), 0};
  return extended(std::move(g));
}

TowerPtr Tower::extend_exp(const std::string& name, const TowerElem& u) const {
  TowerElem du = u.lifted(shared_from_this()).derivative();
  int nv = nvars() + 1;
  Generator g{GenKind::exp_, name,
              du.num().lifted(nv) * MPoly::var(nv, nv - 1),
              du.den().lifted(nv), 0};
  return extended(std::move(g));
}

TowerPtr Tower::extend_prim(const std::string& name, const TowerElem& w) const {
  TowerElem lw = w.lifted(shared_from_this());
  int nv = nvars() + 1;
  Generator g{GenKind::prim, name, lw.num().lifted(nv), lw.den().lifted(nv), 0};
  return extended(std::move(g));
}

TowerPtr Tower::extend_root(const std::string& name, long p) const {
  if (p < 1) fail(ErrorCode::bad_arg, "root order must be positive");
  int nv = nvars() + 1;
  Generator g{GenKind::root, name, MPoly::var(nv, nv - 1),
              MPoly::var(nv, 0) * GaussRat(Rat(p)), p};
  return extended(std::move(g));
}

TowerPtr Tower::extend_const(const std::string& name) const {
  int nv = nvars() + 1;
  Generator g{GenKind::constant, name, MPoly(nv), one_poly(nv), 0};
  return extended(std::move(g));
}

TowerPtr Tower::extend_custom(const std::string& name, MPoly dnum, MPoly dden) const {
  int nv = nvars() + 1;
  if (dnum.nvars() > nv || dden.nvars() > nv)
    fail(ErrorCode::bad_arg, "generator derivative uses unknown variables");
  if (dden.is_zero()) fail(ErrorCode::div_zero, "generator derivative denominator is zero");
  Generator g{GenKind::custom, name, dnum.lifted(nv), dden.lifted(nv), 0};
  return extended(std::move(g));
}

std::optional<int> Tower::find(const std::string& name) const {
  if (name == "z") return 0;
  for (int i = ngens(); i-- > 0;)
    if (gens_[i].name == name) return i + 1;
  return std::nullopt;
}

std::vector<std::string> Tower::var_names() const {
  std::vector<std::string> names{"z"};
  for (const auto& g : gens_) names.push_back(g.name);
  return names;
}

bool Tower::is_prefix(const TowerPtr& a, const TowerPtr& b) {
  if (!a || !b || a->ngens() > b->ngens()) return false;
  const Tower* cur = b.get();
  for (int k = b->ngens() - a->ngens(); k > 0; --k) cur = cur->parent_.get();
  return cur == a.get();
}

TowerPtr Tower::common(const TowerPtr& a, const TowerPtr& b) {
  if (is_prefix(a, b)) return b;
  if (is_prefix(b, a)) return a;
  fail(ErrorCode::tower_mismatch, "towers are not prefix-compatible");
}

TowerElem::TowerElem()
    : tower_(Tower::base()), num_(MPoly(1)), den_(one_poly(1)) {}

TowerElem TowerElem::zero(const TowerPtr& t) {
  return from(t, MPoly(t->nvars()), one_poly(t->nvars()));
}

TowerElem TowerElem::constant(const TowerPtr& t, const GaussRat& c) {
  return from(t, MPoly::constant(t->nvars(), c), one_poly(t->nvars()));
}

TowerElem TowerElem::of_int(const TowerPtr& t, long n) {
  return constant(t, GaussRat(n));
}

TowerElem TowerElem::z(const TowerPtr& t) {
  return from(t, MPoly::var(t->nvars(), 0), one_poly(t->nvars()));
}

TowerElem TowerElem::gen(const TowerPtr& t, int var_index) {
  if (var_index < 0 || var_index >= t->nvars())
    fail(ErrorCode::bad_arg, "generator index out of range");
  return from(t, MPoly::var(t->nvars(), var_index), one_poly(t->nvars()));
}

TowerElem TowerElem::gen(const TowerPtr& t, const std::string& name) {
  auto v = t->find(name);
  if (!v) fail(ErrorCode::bad_arg, "unknown generator: " + name);
  return gen(t, *v);
}

TowerElem TowerElem::from(const TowerPtr& t, MPoly num, MPoly den) {
  if (!t) fail(ErrorCode::internal, "null tower");
  int nv = t->nvars();
  if (num.nvars() > nv || den.nvars() > nv)
    fail(ErrorCode::tower_mismatch, "polynomial uses variables beyond the tower");
  TowerElem e;
  e.tower_ = t;
  e.num_ = num.lifted(nv);
  e.den_ = den.lifted(nv);
  e.canonicalize();
  return e;
}

TowerElem TowerElem::from_ratfun(const TowerPtr& t, const RatFun& f) {
  if (f.ram() != 1)
    fail(ErrorCode::bad_arg, "fractional exponents cannot enter a tower");
  auto conv = [&](const Poly& p) {
    MPoly m(t->nvars());
    for (long k = 0; k <= p.deg_w(); ++k) {
      if (p.coeff_w(k).is_zero()) continue;
      std::vector<int> e(t->nvars(), 0);
      e[0] = static_cast<int>(k);
      m += MPoly::monomial(t->nvars(), std::move(e), p.coeff_w(k));
    }
    return m;
  };
  return from(t, conv(f.num()), conv(f.den()));
}

GaussRat TowerElem::scalar_value() const {
  if (!is_scalar()) fail(ErrorCode::internal, "element is not a scalar");
  if (num_.is_zero()) return GaussRat();
  return num_.constant_value() / den_.constant_value();
}

void TowerElem::canonicalize() {
  if (den_.is_zero()) fail(ErrorCode::div_zero, "zero denominator");
  if (num_.is_zero()) {
    den_ = one_poly(den_.nvars());
    return;
  }
  if (!den_.is_constant()) {
    MPoly g = MPoly::gcd(num_, den_);
    if (!g.is_constant()) {
      num_ = MPoly::div_exact(num_, g);
      den_ = MPoly::div_exact(den_, g);
    }
  }
  GaussRat s = den_.lc().inv();
  if (!s.is_one()) {
    num_ = num_ * s;
    den_ = den_ * s;
  }
}

void TowerElem::align(TowerElem& a, TowerElem& b) {
  TowerPtr t = Tower::common(a.tower_, b.tower_);
  if (a.tower_ != t) a = a.lifted(t);
  if (b.tower_ != t) b = b.lifted(t);
}

TowerElem TowerElem::lifted(const TowerPtr& t) const {
  if (t == tower_) return *this;
  if (!Tower::is_prefix(tower_, t))
    fail(ErrorCode::tower_mismatch, "element tower is not a prefix");
  TowerElem e;
  e.tower_ = t;
  e.num_ = num_.lifted(t->nvars());
  e.den_ = den_.lifted(t->nvars());
  return e;
}

TowerElem TowerElem::projected(const TowerPtr& t) const {
  if (t == tower_) return *this;
  if (!Tower::is_prefix(t, tower_))
    fail(ErrorCode::tower_mismatch, "target is not a prefix of the element tower");
  for (int v = t->nvars(); v < tower_->nvars(); ++v)
    if (depends_on(v))
      fail(ErrorCode::tower_mismatch,
           "element still depends on generator " + tower_->gen(v - 1).name);
  TowerElem e;
  e.tower_ = t;
  e.num_ = num_.projected(t->nvars());
  e.den_ = den_.projected(t->nvars());
  return e;
}

TowerElem TowerElem::operator-() const {
  TowerElem e(*this);
  e.num_ = -e.num_;
  return e;
}

TowerElem TowerElem::operator+(const TowerElem& o) const {
  TowerElem a(*this), b(o);
  align(a, b);
  TowerElem r;
  r.tower_ = a.tower_;
  if (a.den_ == b.den_) {
    r.num_ = a.num_ + b.num_;
    r.den_ = a.den_;
  } else {
    MPoly g = MPoly::gcd(a.den_, b.den_);
    MPoly da = MPoly::div_exact(a.den_, g);
    MPoly db = MPoly::div_exact(b.den_, g);
    r.num_ = a.num_ * db + b.num_ * da;
    r.den_ = a.den_ * db;
  }
  r.canonicalize();
  return r;
}

TowerElem TowerElem::operator-(const TowerElem& o) const { return *this + (-o); }

TowerElem TowerElem::operator*(const TowerElem& o) const {
  TowerElem a(*this), b(o);
  align(a, b);
  TowerElem r;
  r.tower_ = a.tower_;
  if (a.is_zero() || b.is_zero()) return zero(a.tower_);
  MPoly g1 = MPoly::gcd(a.num_, b.den_);
  MPoly g2 = MPoly::gcd(b.num_, a.den_);
  r.num_ = MPoly::div_exact(a.num_, g1) * MPoly::div_exact(b.num_, g2);
  r.den_ = MPoly::div_exact(a.den_, g2) * MPoly::div_exact(b.den_, g1);
  GaussRat s = r.den_.lc().inv();
  if (!s.is_one()) {
    r.num_ = r.num_ * s;
    r.den_ = r.den_ * s;
  }
  return r;
}

TowerElem TowerElem::operator*(const GaussRat& s) const {
  if (s.is_zero()) return zero(tower_);
  TowerElem r(*this);
  r.num_ = r.num_ * s;
  return r;
}

TowerElem TowerElem::operator/(const TowerElem& o) const { return *this * o.inv(); }

TowerElem TowerElem::inv() const {
  if (is_zero()) fail(ErrorCode::div_zero, "division by zero element");
  TowerElem r;
  r.tower_ = tower_;
  r.num_ = den_;
  r.den_ = num_;
  GaussRat s = r.den_.lc().inv();
  if (!s.is_one()) {
    r.num_ = r.num_ * s;
    r.den_ = r.den_ * s;
  }
  return r;
}

bool TowerElem::operator==(const TowerElem& o) const {
  TowerElem a(*this), b(o);
  align(a, b);
  return a.num_ == b.num_ && a.den_ == b.den_;
}

TowerElem TowerElem::pow(long e) const {
  if (e < 0) return inv().pow(-e);
  TowerElem r = constant(tower_, GaussRat(1));
  TowerElem b = *this;
  unsigned long u = static_cast<unsigned long>(e);
  while (u > 0) {
    if (u & 1) r = r * b;
    u >>= 1;
    if (u) b = b * b;
  }
  return r;
}

namespace {

// d/dz of a polynomial in the tower variables, as a tower element.
TowerElem poly_derivative(const TowerPtr& t, const MPoly& p) {
  int nv = t->nvars();
  TowerElem res = TowerElem::zero(t);
  for (int v = 0; v < nv; ++v) {
    MPoly pv = p.derivative(v);
    if (pv.is_zero()) continue;
    if (v == 0) {
      res += TowerElem::from(t, pv, one_poly(nv));
    } else {
      const Generator& g = t->gen(v - 1);
      res += TowerElem::from(t, pv * g.dnum.lifted(nv), g.dden.lifted(nv));
    }
  }
  return res;
}

} // namespace

TowerElem TowerElem::derivative() const {
  if (den_.is_constant()) return poly_derivative(tower_, num_);
  TowerElem n = from(tower_, num_, one_poly(num_.nvars()));
  TowerElem d = from(tower_, den_, one_poly(den_.nvars()));
  return (poly_derivative(tower_, num_) * d - n * poly_derivative(tower_, den_)) / (d * d);
}

std::vector<TowerElem> TowerElem::coeffs_in(int v) const {
  if (v < 1 || v >= tower_->nvars())
    fail(ErrorCode::bad_arg, "not a generator variable");
  if (den_.depends_on(v))
    fail(ErrorCode::not_supported,
         "denominator depends on the extraction variable");
  int d = num_.deg(v);
  std::vector<TowerElem> out;
  out.reserve(d + 1);
  for (int k = 0; k <= d; ++k)
    out.push_back(from(tower_, num_.coeff_of(v, k), den_));
  return out;
}

RatFun TowerElem::to_ratfun() const {
  for (int v = 1; v < tower_->nvars(); ++v)
    if (depends_on(v))
      fail(ErrorCode::not_supported, "element involves a transcendental generator");
  auto conv = [&](const MPoly& m) {
    long d = m.deg(0);
    std::vector<GaussRat> coeffs(static_cast<size_t>(d) + 1);
    for (const auto& t : m.terms()) coeffs[t.e[0]] = t.c;
    return Poly::from_coeffs(std::move(coeffs), 1);
  };
  if (num_.is_zero()) return RatFun();
  return RatFun(conv(num_), conv(den_));
}

std::string TowerElem::str() const {
  auto names = tower_->var_names();
  if (den_.is_constant()) return num_.str(names);
  return "(" + num_.str(names) + ")/(" + den_.str(names) + ")";
}

std::vector<TowerElem> logderiv_powers(const TowerElem& w, int jmax) {
  if (jmax < 1) fail(ErrorCode::bad_arg, "order must be at least 1");
  std::vector<TowerElem> r;
  r.reserve(jmax);
  r.push_back(w);
  for (int j = 1; j < jmax; ++j) r.push_back(r.back().derivative() + w * r.back());
  return r;
}

} // namespace lindop
