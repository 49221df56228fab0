#include "lindop/operator.hpp"

#include <algorithm>

#include "lindop/error.hpp"

namespace lindop {

void LinOp::trim() {
  while (!a_.empty() && a_.back().is_zero()) a_.pop_back();
}

LinOp LinOp::from_coeffs(const TowerPtr& t, std::vector<TowerElem> ascending) {
  LinOp op(t);
  op.a_ = std::move(ascending);
  for (auto& c : op.a_) c = c.lifted(t);
  op.trim();
  return op;
}

LinOp LinOp::identity(const TowerPtr& t) {
  return from_coeffs(t, {TowerElem::of_int(t, 1)});
}

LinOp LinOp::d(const TowerPtr& t) {
  return from_coeffs(t, {TowerElem::zero(t), TowerElem::of_int(t, 1)});
}

LinOp LinOp::of_elem(const TowerElem& f) {
  return from_coeffs(f.tower(), {f});
}

TowerElem LinOp::coeff(int j) const {
  if (j < 0 || j >= static_cast<int>(a_.size())) return TowerElem::zero(tower_);
  return a_[j];
}

const TowerElem& LinOp::lc() const {
  if (a_.empty()) fail(ErrorCode::internal, "leading coefficient of zero operator");
  return a_.back();
}

bool LinOp::is_monic() const {
  return !a_.empty() && a_.back().is_scalar() && a_.back().scalar_value().is_one();
}

void LinOp::align(LinOp& a, LinOp& b) {
  TowerPtr t = Tower::common(a.tower_, b.tower_);
  if (a.tower_ != t) a = from_coeffs(t, a.a_);
  if (b.tower_ != t) b = from_coeffs(t, b.a_);
}

LinOp LinOp::operator-() const {
  LinOp r(*this);
  for (auto& c : r.a_) c = -c;
  return r;
}

LinOp LinOp::operator+(const LinOp& o) const {
  LinOp a(*this), b(o);
  align(a, b);
  if (a.a_.size() < b.a_.size()) std::swap(a, b);
  for (size_t j = 0; j < b.a_.size(); ++j) a.a_[j] += b.a_[j];
  a.trim();
  return a;
}

LinOp LinOp::operator-(const LinOp& o) const { return *this + (-o); }

LinOp LinOp::operator*(const LinOp& o) const {
  LinOp a(*this), b(o);
  align(a, b);
  if (a.is_zero() || b.is_zero()) return LinOp(a.tower_);
  LinOp acc(a.tower_);
  // c holds D^j * b; stepping j multiplies by D on the left.
  std::vector<TowerElem> c = b.a_;
  for (size_t j = 0; j < a.a_.size(); ++j) {
    if (j > 0) {
      std::vector<TowerElem> next(c.size() + 1, TowerElem::zero(a.tower_));
      for (size_t i = 0; i < c.size(); ++i) {
        next[i + 1] += c[i];
        next[i] += c[i].derivative();
      }
      c = std::move(next);
    }
    if (a.a_[j].is_zero()) continue;
    if (acc.a_.size() < c.size()) acc.a_.resize(c.size(), TowerElem::zero(a.tower_));
    for (size_t i = 0; i < c.size(); ++i) acc.a_[i] += a.a_[j] * c[i];
  }
  acc.trim();
  return acc;
}

LinOp LinOp::operator*(const TowerElem& s) const {
  LinOp r(*this);
  if (s.is_zero()) return LinOp(tower_);
  for (auto& c : r.a_) c = c * s;
  r.tower_ = Tower::common(tower_, s.tower());
  for (auto& c : r.a_) c = c.lifted(r.tower_);
  return r;
}

LinOp LinOp::operator*(const GaussRat& s) const {
  if (s.is_zero()) return LinOp(tower_);
  LinOp r(*this);
  for (auto& c : r.a_) c = c * s;
  return r;
}

bool LinOp::operator==(const LinOp& o) const {
  LinOp a(*this), b(o);
  align(a, b);
  if (a.a_.size() != b.a_.size()) return false;
  for (size_t j = 0; j < a.a_.size(); ++j)
    if (a.a_[j] != b.a_[j]) return false;
  return true;
}

TowerElem LinOp::apply(const TowerElem& f) const {
  TowerPtr t = Tower::common(tower_, f.tower());
  TowerElem acc = TowerElem::zero(t);
  TowerElem der = f.lifted(t);
  for (size_t j = 0; j < a_.size(); ++j) {
    if (j > 0) der = der.derivative();
    if (!a_[j].is_zero()) acc += a_[j].lifted(t) * der;
  }
  return acc;
}

TowerElem LinOp::apply_logderiv(const TowerElem& w) const {
  TowerPtr t = Tower::common(tower_, w.tower());
  TowerElem acc = coeff(0).lifted(t);
  if (order() < 1) return acc;
  auto r = logderiv_powers(w.lifted(t), order());
  for (int j = 1; j <= order(); ++j)
    if (!coeff(j).is_zero()) acc += coeff(j).lifted(t) * r[j - 1];
  return acc;
}

void LinOp::divrem(const LinOp& a, const LinOp& b, LinOp& q, LinOp& r) {
  if (b.is_zero()) fail(ErrorCode::div_zero, "division by zero operator");
  LinOp aa(a), bb(b);
  align(aa, bb);
  TowerPtr t = aa.tower_;
  q = LinOp(t);
  r = aa;
  while (r.order() >= bb.order()) {
    int d = r.order() - bb.order();
    TowerElem c = r.lc() / bb.lc();
    std::vector<TowerElem> mono(static_cast<size_t>(d) + 1, TowerElem::zero(t));
    mono.back() = c;
    LinOp term = from_coeffs(t, std::move(mono));
    q = q + term;
    r = r - term * bb;
    if (r.order() == d + bb.order())
      fail(ErrorCode::internal, "division failed to reduce order");
  }
}

LinOp LinOp::gcrd(const LinOp& a, const LinOp& b) {
  LinOp x(a), y(b);
  align(x, y);
  if (x.is_zero() && y.is_zero()) return LinOp(x.tower_);
  while (!y.is_zero()) {
    LinOp q, r;
    divrem(x, y, q, r);
    x = y;
    y = r;
  }
  return x * x.lc().inv();
}

LinOp LinOp::conjugate_by_logderiv(const TowerElem& w) const {
  TowerPtr t = Tower::common(tower_, w.tower());
  int k = order();
  if (k < 0) return LinOp(t);
  std::vector<TowerElem> r{TowerElem::of_int(t, 1)};
  if (k >= 1) {
    auto rp = logderiv_powers(w.lifted(t), k);
    r.insert(r.end(), rp.begin(), rp.end());
  }
  std::vector<TowerElem> b(static_cast<size_t>(k) + 1, TowerElem::zero(t));
  for (int i = 0; i <= k; ++i)
    for (int j = i; j <= k; ++j) {
      if (coeff(j).is_zero()) continue;
      GaussRat bin(Rat(binomial(j, i)));
      b[i] += coeff(j).lifted(t) * r[j - i] * bin;
    }
  return from_coeffs(t, std::move(b));
}

std::pair<LinOp, TowerElem> LinOp::gauge_normalize() const {
  int k = order();
  if (k < 1) fail(ErrorCode::bad_arg, "operator order must be positive");
  if (!is_monic()) fail(ErrorCode::bad_arg, "operator must be monic");
  TowerElem w = -(coeff(k - 1) / TowerElem::of_int(tower_, k));
  LinOp n = conjugate_by_logderiv(w);
  if (!n.coeff(k - 1).is_zero())
    fail(ErrorCode::internal, "normalization left a subleading term");
  return {n, w};
}

LinOp LinOp::change_variables(long n) const {
  if (n < 1) fail(ErrorCode::bad_arg, "exponent must be positive");
  int k = order();
  if (k < 0) return LinOp(Tower::base());
  TowerPtr base = Tower::base();
  // Substitute z^n into each coefficient; this also enforces z-only content.
  std::vector<RatFun> an;
  an.reserve(a_.size());
  for (const auto& c : a_) an.push_back(c.to_ratfun().subst_z_pow(n));
  TowerElem dz = TowerElem::z(base).pow(n - 1) * GaussRat(Rat(n)); // (z^n)'
  // c[p] carries y^(m)(z^n) = sum_p c[p] * d^p/dz^p [y(z^n)], advanced in m.
  std::vector<TowerElem> c{TowerElem::of_int(base, 1)};
  std::vector<TowerElem> out(static_cast<size_t>(k) + 1, TowerElem::zero(base));
  if (!an[0].is_zero()) out[0] += TowerElem::from_ratfun(base, an[0]);
  for (int m = 1; m <= k; ++m) {
    std::vector<TowerElem> next(static_cast<size_t>(m) + 1, TowerElem::zero(base));
    for (size_t p = 0; p < c.size(); ++p) {
      next[p] += c[p].derivative() / dz;
      next[p + 1] += c[p] / dz;
    }
    c = std::move(next);
    if (an[m].is_zero()) continue;
    TowerElem am = TowerElem::from_ratfun(base, an[m]);
    for (size_t p = 0; p < c.size(); ++p) out[p] += am * c[p];
  }
  TowerElem clear = dz.pow(k);
  for (auto& o : out) o = o * clear;
  return from_coeffs(base, std::move(out));
}

std::string LinOp::str() const {
  if (is_zero()) return "0";
  std::string out;
  for (int j = order(); j >= 0; --j) {
    if (coeff(j).is_zero()) continue;
    std::string cs = coeff(j).str();
    std::string piece;
    std::string dpart = j == 0 ? "" : (j == 1 ? "D" : "D^" + std::to_string(j));
    if (dpart.empty()) {
      piece = cs;
    } else if (cs == "1") {
      piece = dpart;
    } else if (cs == "-1") {
      piece = "-" + dpart;
    } else {
      bool wrap = cs.find_first_of("+-", 1) != std::string::npos ||
                  cs.find('/') != std::string::npos;
      piece = (wrap ? "(" + cs + ")" : cs) + "*" + dpart;
    }
    if (out.empty()) {
      out = piece;
    } else if (piece[0] == '-') {
      out += " - " + piece.substr(1);
    } else {
      out += " + " + piece;
    }
  }
  return out;
}

TowerElem wronskian(const std::vector<TowerElem>& fs) {
  if (fs.empty()) fail(ErrorCode::bad_arg, "empty function list");
  TowerPtr t = fs[0].tower();
  for (const auto& f : fs) t = Tower::common(t, f.tower());
  size_t k = fs.size();
  std::vector<std::vector<TowerElem>> m(k, std::vector<TowerElem>());
  for (size_t j = 0; j < k; ++j) {
    TowerElem cur = fs[j].lifted(t);
    m[j].push_back(cur);
    for (size_t i = 1; i < k; ++i) {
      cur = cur.derivative();
      m[j].push_back(cur);
    }
  }
  // m[j][i] = f_j^{(i)}; exact Gaussian elimination on the k x k matrix.
  std::vector<std::vector<TowerElem>> a(k, std::vector<TowerElem>(k, TowerElem::zero(t)));
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < k; ++j) a[i][j] = m[j][i];
  TowerElem det = TowerElem::of_int(t, 1);
  for (size_t col = 0; col < k; ++col) {
    size_t piv = col;
    while (piv < k && a[piv][col].is_zero()) ++piv;
    if (piv == k) return TowerElem::zero(t);
    if (piv != col) {
      std::swap(a[piv], a[col]);
      det = -det;
    }
    det = det * a[col][col];
    TowerElem inv = a[col][col].inv();
    for (size_t row = col + 1; row < k; ++row) {
      if (a[row][col].is_zero()) continue;
      TowerElem f = a[row][col] * inv;
      for (size_t cc = col; cc < k; ++cc) a[row][cc] -= f * a[col][cc];
    }
  }
  return det;
}

} // namespace lindop
