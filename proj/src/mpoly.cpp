#include "lindop/mpoly.hpp"

#include <algorithm>
#include <map>

#include "lindop/error.hpp"

namespace lindop {

struct MPolyBuilder {
  static MPoly make(int nv, std::vector<MPoly::Term> ts) {
    MPoly p(nv);
    p.terms_ = std::move(ts);
    p.normalize();
    return p;
  }
};

int MPoly::mcmp(const std::vector<int>& a, const std::vector<int>& b) {
  for (size_t k = a.size(); k-- > 0;) {
    if (a[k] != b[k]) return a[k] < b[k] ? -1 : 1;
  }
  return 0;
}

void MPoly::normalize() {
  for (auto& t : terms_) t.e.resize(nv_, 0);
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& x, const Term& y) { return mcmp(x.e, y.e) > 0; });
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!out.empty() && mcmp(out.back().e, t.e) == 0) {
      out.back().c = out.back().c + t.c;
      if (out.back().c.is_zero()) out.pop_back();
    } else if (!t.c.is_zero()) {
      out.push_back(std::move(t));
    }
  }
  terms_ = std::move(out);
}

MPoly MPoly::constant(int nvars, const GaussRat& c) {
  MPoly p(nvars);
  if (!c.is_zero()) p.terms_.push_back({std::vector<int>(nvars, 0), c});
  return p;
}

MPoly MPoly::var(int nvars, int v) {
  if (v < 0 || v >= nvars) fail(ErrorCode::internal, "variable index out of range");
  MPoly p(nvars);
  std::vector<int> e(nvars, 0);
  e[v] = 1;
  p.terms_.push_back({std::move(e), GaussRat(1)});
  return p;
}

MPoly MPoly::monomial(int nvars, std::vector<int> exps, const GaussRat& c) {
  MPoly p(nvars);
  exps.resize(nvars, 0);
  if (!c.is_zero()) p.terms_.push_back({std::move(exps), c});
  return p;
}

bool MPoly::is_constant() const {
  return terms_.empty() ||
         (terms_.size() == 1 &&
          std::all_of(terms_[0].e.begin(), terms_[0].e.end(),
                      [](int x) { return x == 0; }));
}

GaussRat MPoly::constant_value() const {
  if (terms_.empty()) return GaussRat();
  if (!is_constant()) fail(ErrorCode::internal, "not a constant polynomial");
  return terms_[0].c;
}

int MPoly::deg(int v) const {
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, t.e[v]);
  return d;
}

int MPoly::top_var() const {
  int top = -1;
  for (const auto& t : terms_)
    for (int v = nv_; v-- > 0;) {
      if (v <= top) break;
      if (t.e[v] > 0) top = v;
    }
  return top;
}

MPoly MPoly::operator-() const {
  MPoly r(*this);
  for (auto& t : r.terms_) t.c = -t.c;
  return r;
}

MPoly MPoly::operator+(const MPoly& o) const {
  if (nv_ != o.nv_) fail(ErrorCode::internal, "variable count mismatch");
  MPoly r(nv_);
  r.terms_.reserve(terms_.size() + o.terms_.size());
  size_t i = 0, j = 0;
  while (i < terms_.size() && j < o.terms_.size()) {
    int c = mcmp(terms_[i].e, o.terms_[j].e);
    if (c > 0) {
      r.terms_.push_back(terms_[i++]);
    } else if (c < 0) {
      r.terms_.push_back(o.terms_[j++]);
    } else {
      GaussRat s = terms_[i].c + o.terms_[j].c;
      if (!s.is_zero()) r.terms_.push_back({terms_[i].e, s});
      ++i, ++j;
    }
  }
  for (; i < terms_.size(); ++i) r.terms_.push_back(terms_[i]);
  for (; j < o.terms_.size(); ++j) r.terms_.push_back(o.terms_[j]);
  return r;
}

MPoly MPoly::operator-(const MPoly& o) const { return *this + (-o); }

MPoly MPoly::operator*(const MPoly& o) const {
  if (nv_ != o.nv_) fail(ErrorCode::internal, "variable count mismatch");
  if (is_zero() || o.is_zero()) return MPoly(nv_);

  // single-term factor: shifting every exponent vector by the same monomial
  // keeps the term order
  if (terms_.size() == 1 || o.terms_.size() == 1) {
    const MPoly& big = terms_.size() == 1 ? o : *this;
    const Term& mono = terms_.size() == 1 ? terms_[0] : o.terms_[0];
    MPoly r(nv_);
    r.terms_.reserve(big.terms_.size());
    for (const auto& t : big.terms_) {
      Term nt{t.e, t.c * mono.c};
      for (int v = 0; v < nv_; ++v) nt.e[v] += mono.e[v];
      r.terms_.push_back(std::move(nt));
    }
    return r;
  }

  // pack exponent vectors into 64-bit keys whose integer order matches the
  // reverse-lexicographic term order, when the product degrees fit
  std::vector<int> shift(static_cast<size_t>(nv_), 0);
  std::vector<unsigned long long> mask(static_cast<size_t>(nv_), 0);
  bool packable = true;
  {
    std::vector<int> dp(static_cast<size_t>(nv_), 0);
    for (int v = 0; v < nv_; ++v) dp[static_cast<size_t>(v)] = deg(v) + o.deg(v);
    int bits = 0;
    for (int v = 0; v < nv_ && packable; ++v) {
      int b = 1;
      while (b < 31 && (1 << b) <= dp[static_cast<size_t>(v)]) ++b;
      shift[static_cast<size_t>(v)] = bits;
      mask[static_cast<size_t>(v)] = (1ull << b) - 1;
      bits += b;
      if (bits > 63) packable = false;
    }
  }
  if (packable) {
    auto pack = [&](const Term& t) {
      unsigned long long k = 0;
      for (int v = 0; v < nv_; ++v)
        k |= static_cast<unsigned long long>(t.e[v])
             << shift[static_cast<size_t>(v)];
      return k;
    };
    struct KC {
      unsigned long long k;
      GaussRat c;
    };
    std::vector<unsigned long long> kb(o.terms_.size());
    for (size_t j = 0; j < o.terms_.size(); ++j) kb[j] = pack(o.terms_[j]);
    std::vector<KC> prod;
    prod.reserve(terms_.size() * o.terms_.size());
    for (const auto& ta : terms_) {
      unsigned long long ka = pack(ta);
      for (size_t j = 0; j < o.terms_.size(); ++j)
        prod.push_back({ka + kb[j], ta.c * o.terms_[j].c});
    }
    std::sort(prod.begin(), prod.end(),
              [](const KC& x, const KC& y) { return x.k > y.k; });
    MPoly r(nv_);
    r.terms_.reserve(prod.size());
    for (size_t i = 0; i < prod.size();) {
      GaussRat acc = std::move(prod[i].c);
      size_t j = i + 1;
      for (; j < prod.size() && prod[j].k == prod[i].k; ++j)
        acc += prod[j].c;
      if (!acc.is_zero()) {
        std::vector<int> e(static_cast<size_t>(nv_));
        for (int v = 0; v < nv_; ++v)
          e[static_cast<size_t>(v)] = static_cast<int>(
              (prod[i].k >> shift[static_cast<size_t>(v)]) &
              mask[static_cast<size_t>(v)]);
        r.terms_.push_back({std::move(e), std::move(acc)});
      }
      i = j;
    }
    return r;
  }

  auto cmp = [](const std::vector<int>& a, const std::vector<int>& b) {
    return mcmp(a, b) > 0;
  };
  std::map<std::vector<int>, GaussRat, decltype(cmp)> acc(cmp);
  std::vector<int> e(nv_);
  for (const auto& ta : terms_) {
    for (const auto& tb : o.terms_) {
      for (int v = 0; v < nv_; ++v) e[v] = ta.e[v] + tb.e[v];
      auto [it, fresh] = acc.try_emplace(e, GaussRat());
      it->second = it->second + ta.c * tb.c;
      (void)fresh;
    }
  }
  MPoly r(nv_);
  r.terms_.reserve(acc.size());
  for (auto& [ee, cc] : acc)
    if (!cc.is_zero()) r.terms_.push_back({ee, cc});
  return r;
}

MPoly MPoly::operator*(const GaussRat& s) const {
  if (s.is_zero()) return MPoly(nv_);
  MPoly r(*this);
  for (auto& t : r.terms_) t.c = t.c * s;
  return r;
}

bool MPoly::operator==(const MPoly& o) const {
  if (nv_ != o.nv_ || terms_.size() != o.terms_.size()) return false;
  for (size_t k = 0; k < terms_.size(); ++k)
    if (mcmp(terms_[k].e, o.terms_[k].e) != 0 || !(terms_[k].c == o.terms_[k].c))
      return false;
  return true;
}

MPoly MPoly::pow(unsigned long e) const {
  MPoly r = constant(nv_, GaussRat(1));
  MPoly b = *this;
  while (e > 0) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

MPoly MPoly::coeff_of(int v, int d) const {
  MPoly r(nv_);
  for (const auto& t : terms_) {
    if (t.e[v] == d) {
      Term u = t;
      u.e[v] = 0;
      r.terms_.push_back(std::move(u));
    }
  }
  r.normalize();
  return r;
}

MPoly MPoly::derivative(int v) const {
  MPoly r(nv_);
  for (const auto& t : terms_) {
    if (t.e[v] == 0) continue;
    Term u = t;
    u.c = u.c * GaussRat(Rat(u.e[v]));
    u.e[v] -= 1;
    r.terms_.push_back(std::move(u));
  }
  r.normalize();
  return r;
}

MPoly MPoly::lifted(int new_nvars) const {
  if (new_nvars < nv_) fail(ErrorCode::internal, "lift shrinks variable space");
  MPoly r(new_nvars);
  r.terms_ = terms_;
  for (auto& t : r.terms_) t.e.resize(new_nvars, 0);
  return r;
}

MPoly MPoly::projected(int new_nvars) const {
  if (new_nvars > nv_) fail(ErrorCode::internal, "project grows variable space");
  for (int v = new_nvars; v < nv_; ++v)
    if (depends_on(v)) fail(ErrorCode::internal, "projection drops a live variable");
  MPoly r(new_nvars);
  r.terms_ = terms_;
  for (auto& t : r.terms_) t.e.resize(new_nvars);
  return r;
}

MPoly MPoly::substituted(int v, const MPoly& value) const {
  if (value.nvars() != nv_) fail(ErrorCode::internal, "variable count mismatch");
  int d = deg(v);
  MPoly r = coeff_of(v, d);
  for (int k = d - 1; k >= 0; --k) r = r * value + coeff_of(v, k);
  return r;
}

const GaussRat& MPoly::lc() const {
  if (terms_.empty()) fail(ErrorCode::internal, "leading coefficient of zero");
  return terms_[0].c;
}

MPoly MPoly::div_exact(const MPoly& a, const MPoly& b) {
  if (b.is_zero()) fail(ErrorCode::div_zero, "exact division by zero");
  if (a.nvars() != b.nvars()) fail(ErrorCode::internal, "variable count mismatch");
  int nv = a.nvars();
  MPoly rem = a;
  std::vector<Term> q;
  const Term& lb = b.terms_.front();
  GaussRat lbinv = lb.c.inv();
  while (!rem.is_zero()) {
    const Term& lr = rem.terms_.front();
    std::vector<int> e(nv);
    for (int v = 0; v < nv; ++v) {
      e[v] = lr.e[v] - lb.e[v];
      if (e[v] < 0) fail(ErrorCode::internal, "inexact polynomial division");
    }
    Term t{std::move(e), lr.c * lbinv};
    rem = rem - b * MPolyBuilder::make(nv, {t});
    q.push_back(std::move(t));
  }
  return MPolyBuilder::make(nv, std::move(q));
}

namespace {

bool univariate_in(const MPoly& p, int v) {
  for (const auto& t : p.terms())
    for (int k = 0; k < p.nvars(); ++k)
      if (k != v && t.e[k] != 0) return false;
  return true;
}

// Leading coefficient of p viewed as a polynomial in x_v.
MPoly lead_in(const MPoly& p, int v) { return p.coeff_of(v, p.deg(v)); }

MPoly xv_pow(int nv, int v, int d) {
  std::vector<int> e(nv, 0);
  e[v] = d;
  return MPoly::monomial(nv, std::move(e), GaussRat(1));
}

// Fraction-free pseudo-remainder of a by b with respect to x_v:
// lc_v(b)^(deg_v a - deg_v b + 1) * a  mod  b.
MPoly prem(const MPoly& a, const MPoly& b, int v) {
  int e = b.deg(v);
  MPoly lb = lead_in(b, v);
  MPoly r = a;
  long k = a.deg(v) - e + 1;
  while (!r.is_zero() && r.deg(v) >= e) {
    MPoly lr = lead_in(r, v);
    r = r * lb - b * lr * xv_pow(a.nvars(), v, r.deg(v) - e);
    --k;
  }
  for (; k > 0; --k) r = r * lb;
  return r;
}

MPoly monic(const MPoly& p) {
  if (p.is_zero()) return p;
  return p * p.lc().inv();
}

// Content of p with respect to x_v: gcd of its x_v-coefficients.
MPoly content_in(const MPoly& p, int v) {
  MPoly c(p.nvars());
  for (int d = p.deg(v); d >= 0; --d) {
    MPoly cd = p.coeff_of(v, d);
    if (cd.is_zero()) continue;
    c = MPoly::gcd(c, cd);
    if (c.is_constant()) break;
  }
  return c;
}

// Euclidean gcd degree of two univariate coefficient vectors; -1 for (0, 0).
int uni_gcd_degree(std::vector<GaussRat> x, std::vector<GaussRat> y) {
  auto trim = [](std::vector<GaussRat>& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
  };
  trim(x);
  trim(y);
  while (!y.empty()) {
    GaussRat inv = y.back().inv();
    for (auto& c : y) c = c * inv;
    while (x.size() >= y.size()) {
      GaussRat c = x.back();
      x.pop_back();
      if (c.is_zero()) continue;
      size_t off = x.size() + 1 - y.size();
      for (size_t j = 0; j + 1 < y.size(); ++j) x[off + j] -= c * y[j];
    }
    trim(x);
    std::swap(x, y);
  }
  return static_cast<int>(x.size()) - 1;
}

// Specialization test: fix integer points for every variable but x_v and
// take the gcd of the univariate images.  Degree zero for each variable,
// with a leading coefficient that survives the specialization, certifies
// a constant gcd; anything else is inconclusive.
bool certified_coprime(const MPoly& a, const MPoly& b) {
  static const int points[] = {2,  -3,  5,  -7,  11, -13,
                               17, -19, 23, -29, 31, -37};
  const int npts = static_cast<int>(sizeof(points) / sizeof(points[0]));
  int nv = a.nvars();
  for (int attempt = 0; attempt < 2; ++attempt) {
    std::vector<std::vector<Rat>> pw(nv);
    for (int v = 0; v < nv; ++v) {
      Rat pt(points[(v + 3 * attempt) % npts]);
      int d = std::max(a.deg(v), b.deg(v));
      pw[v].resize(d + 1);
      pw[v][0] = Rat(1);
      for (int k = 1; k <= d; ++k) pw[v][k] = pw[v][k - 1] * pt;
    }
    auto mono_values = [&](const MPoly& p) {
      std::vector<Rat> m;
      m.reserve(p.terms().size());
      for (const auto& t : p.terms()) {
        Rat r(1);
        for (int v = 0; v < nv; ++v)
          if (t.e[v]) r *= pw[v][t.e[v]];
        m.push_back(std::move(r));
      }
      return m;
    };
    std::vector<Rat> ma = mono_values(a), mb = mono_values(b);
    auto image_in = [&](const MPoly& p, const std::vector<Rat>& m, int v) {
      std::vector<GaussRat> img(p.deg(v) + 1);
      const auto& ts = p.terms();
      for (size_t i = 0; i < ts.size(); ++i)
        img[ts[i].e[v]] += ts[i].c * GaussRat(m[i] / pw[v][ts[i].e[v]]);
      return img;
    };
    bool ok = true;
    for (int v = 0; v < nv && ok; ++v) {
      int da = a.deg(v), db = b.deg(v);
      if (da == 0 || db == 0) continue;
      std::vector<GaussRat> ia = image_in(a, ma, v);
      std::vector<GaussRat> ib = image_in(b, mb, v);
      if (ia[da].is_zero() && ib[db].is_zero()) {
        ok = false;
        break;
      }
      if (uni_gcd_degree(std::move(ia), std::move(ib)) != 0) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

} // namespace

MPoly MPoly::gcd(const MPoly& a, const MPoly& b) {
  if (a.is_zero()) return monic(b);
  if (b.is_zero()) return monic(a);
  if (a.is_constant() || b.is_constant())
    return constant(a.nvars(), GaussRat(1));
  int nv = a.nvars();
  if (nv != b.nvars()) fail(ErrorCode::internal, "variable count mismatch");

  if (a.terms_.size() == 1 || b.terms_.size() == 1) {
    const MPoly& m = a.terms_.size() == 1 ? a : b;
    const MPoly& p = a.terms_.size() == 1 ? b : a;
    std::vector<int> e = m.terms_[0].e;
    for (const auto& t : p.terms_)
      for (int v = 0; v < nv; ++v) e[v] = std::min(e[v], t.e[v]);
    return monomial(nv, std::move(e), GaussRat(1));
  }

  int v = std::max(a.top_var(), b.top_var());
  if (univariate_in(a, v) && univariate_in(b, v)) {
    MPoly x = a, y = b;
    while (!y.is_zero()) {
      // Remainder of x by y in the single variable v.
      MPoly r = x;
      GaussRat ly = y.lc();
      int dy = y.deg(v);
      while (!r.is_zero() && r.deg(v) >= dy) {
        GaussRat c = r.lc() / ly;
        r = r - y * xv_pow(nv, v, r.deg(v) - dy) * c;
      }
      x = y;
      y = r;
    }
    return monic(x);
  }

  if (certified_coprime(a, b)) return constant(nv, GaussRat(1));

  if (!a.depends_on(v)) return gcd(content_in(b, v), a);
  if (!b.depends_on(v)) return gcd(content_in(a, v), b);

  MPoly ca = content_in(a, v), cb = content_in(b, v);
  MPoly A = div_exact(a, ca), B = div_exact(b, cb);
  MPoly c = gcd(ca, cb);
  if (A.deg(v) < B.deg(v)) std::swap(A, B);
  MPoly g = constant(nv, GaussRat(1)), h = g;
  while (true) {
    long delta = A.deg(v) - B.deg(v);
    MPoly r = prem(A, B, v);
    if (r.is_zero()) break;
    if (r.deg(v) == 0) {
      B = constant(nv, GaussRat(1));
      break;
    }
    A = B;
    MPoly divisor = g * h.pow(static_cast<unsigned long>(delta));
    B = div_exact(r, divisor);
    g = lead_in(A, v);
    if (delta > 0)
      h = delta == 1 ? g
                     : div_exact(g.pow(static_cast<unsigned long>(delta)),
                                 h.pow(static_cast<unsigned long>(delta - 1)));
  }
  MPoly pp = div_exact(B, content_in(B, v));
  return monic(c * pp);
}

std::string MPoly::str(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& t : terms_) {
    std::string mono;
    for (int v = 0; v < nv_; ++v) {
      if (t.e[v] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += v < static_cast<int>(names.size()) ? names[v]
                                                 : "x" + std::to_string(v);
      if (t.e[v] != 1) mono += "^" + std::to_string(t.e[v]);
    }
    std::string cs = t.c.str();
    std::string piece;
    if (mono.empty()) {
      piece = cs;
    } else if (cs == "1") {
      piece = mono;
    } else if (cs == "-1") {
      piece = "-" + mono;
    } else {
      bool wrap = cs.find_first_of("+-", 1) != std::string::npos;
      piece = (wrap ? "(" + cs + ")" : cs) + "*" + mono;
    }
    if (out.empty()) {
      out = piece;
    } else if (!piece.empty() && piece[0] == '-') {
      out += " - " + piece.substr(1);
    } else {
      out += " + " + piece;
    }
  }
  return out;
}

} // namespace lindop
