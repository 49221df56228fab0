#include "lindop/formal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lindop/error.hpp"

namespace lindop {

RatOp::RatOp(std::vector<RatFun> ascending) : a_(std::move(ascending)) {
  while (!a_.empty() && a_.back().is_zero()) a_.pop_back();
}

RatOp RatOp::from_linop(const LinOp& l) {
  std::vector<RatFun> cs;
  cs.reserve(l.coeffs().size());
  for (const auto& c : l.coeffs()) cs.push_back(c.to_ratfun());
  return RatOp(std::move(cs));
}

RatFun RatOp::coeff(int j) const {
  if (j < 0 || j >= static_cast<int>(a_.size())) return RatFun();
  return a_[j];
}

RatOp RatOp::conjugate_by_logderiv(const RatFun& w) const {
  int k = order();
  if (k < 0) return RatOp();
  std::vector<RatFun> r{RatFun(GaussRat(1))};
  for (int m = 1; m <= k; ++m) r.push_back(r.back().derivative() + w * r.back());
  std::vector<RatFun> b(static_cast<size_t>(k) + 1);
  for (int i = 0; i <= k; ++i)
    for (int j = i; j <= k; ++j) {
      if (a_[j].is_zero()) continue;
      b[i] = b[i] + a_[j] * r[j - i] * RatFun(GaussRat(Rat(binomial(j, i))));
    }
  return RatOp(std::move(b));
}

// ---------------------------------------------------------------------------
// roots over Q(i)

namespace {

GaussRat eval_qi(const std::vector<GaussRat>& c, const GaussRat& x) {
  GaussRat acc;
  for (size_t k = c.size(); k-- > 0;) acc = acc * x + c[k];
  return acc;
}

std::vector<GaussRat> deflate_qi(const std::vector<GaussRat>& c, const GaussRat& r) {
  size_t n = c.size() - 1;
  std::vector<GaussRat> q(n);
  GaussRat carry = c[n];
  for (size_t k = n; k-- > 0;) {
    q[k] = carry;
    carry = c[k] + carry * r;
  }
  if (!carry.is_zero()) fail(ErrorCode::internal, "deflation by a non-root");
  return q;
}

std::vector<std::complex<double>> durand_kerner(const std::vector<GaussRat>& c) {
  size_t n = c.size() - 1;
  std::vector<std::complex<double>> a(n + 1);
  for (size_t k = 0; k <= n; ++k) a[k] = c[k].to_complex();
  for (size_t k = 0; k <= n; ++k) a[k] /= a[n];
  double radius = 1.0;
  for (size_t k = 0; k < n; ++k) radius = std::max(radius, std::abs(a[k]));
  radius = 1.0 + radius;
  std::vector<std::complex<double>> x(n);
  std::complex<double> seed(0.4, 0.9);
  std::complex<double> cur = seed;
  for (size_t i = 0; i < n; ++i, cur *= seed) x[i] = cur * radius;
  auto eval = [&](std::complex<double> v) {
    std::complex<double> acc = 0.0;
    for (size_t k = n + 1; k-- > 0;) acc = acc * v + a[k];
    return acc;
  };
  for (int it = 0; it < 500; ++it) {
    double delta = 0.0;
    for (size_t i = 0; i < n; ++i) {
      std::complex<double> den = 1.0;
      for (size_t j = 0; j < n; ++j)
        if (j != i) den *= x[i] - x[j];
      std::complex<double> step = eval(x[i]) / den;
      x[i] -= step;
      delta = std::max(delta, std::abs(step) / (1.0 + std::abs(x[i])));
    }
    if (delta < 1e-14) break;
  }
  return x;
}

void push_exact_root(std::vector<QiRoot>& out, const GaussRat& r, long mult) {
  for (auto& q : out)
    if (q.exact && q.value == r) {
      q.mult += mult;
      return;
    }
  out.push_back({r, r.to_complex(), mult, true});
}

Rat loose_rationalize(double x) {
  if (auto r = rationalize(x, 1e-6, Int(1000000))) return *r;
  if (auto r = rationalize(x, 1e-3, Int(10000))) return *r;
  return Rat();
}

} // namespace

std::vector<QiRoot> roots_qi(const std::vector<GaussRat>& ascending) {
  std::vector<GaussRat> c = ascending;
  while (!c.empty() && c.back().is_zero()) c.pop_back();
  std::vector<QiRoot> out;
  if (c.size() <= 1) return out;

  size_t z0 = 0;
  while (z0 < c.size() && c[z0].is_zero()) ++z0;
  if (z0 > 0) {
    push_exact_root(out, GaussRat(), static_cast<long>(z0));
    c.erase(c.begin(), c.begin() + static_cast<long>(z0));
  }

  while (c.size() >= 2) {
    if (c.size() == 2) {
      push_exact_root(out, -(c[0] / c[1]), 1);
      break;
    }
    if (c.size() == 3) {
      GaussRat two(Rat(2)), four(Rat(4));
      GaussRat disc = c[1] * c[1] - four * c[2] * c[0];
      if (auto s = disc.sqrt()) {
        push_exact_root(out, (-c[1] + *s) / (two * c[2]), 1);
        push_exact_root(out, (-c[1] - *s) / (two * c[2]), 1);
      } else {
        std::complex<double> sd = std::sqrt(disc.to_complex());
        std::complex<double> b = c[1].to_complex(), a2 = two.to_complex() * c[2].to_complex();
        out.push_back({GaussRat(), (-b + sd) / a2, 1, false});
        out.push_back({GaussRat(), (-b - sd) / a2, 1, false});
      }
      break;
    }
    auto approx = durand_kerner(c);
    bool found = false;
    for (const auto& x : approx) {
      auto re = rationalize(x.real(), 1e-9, Int(1000000000000L));
      auto im = rationalize(x.imag(), 1e-9, Int(1000000000000L));
      if (!re || !im) continue;
      GaussRat cand(*re, *im);
      if (eval_qi(c, cand).is_zero()) {
        push_exact_root(out, cand, 1);
        c = deflate_qi(c, cand);
        found = true;
        break;
      }
    }
    if (found) continue;
    // nothing recognizable: cluster the numeric roots and report them
    std::vector<bool> used(approx.size(), false);
    for (size_t i = 0; i < approx.size(); ++i) {
      if (used[i]) continue;
      long mult = 1;
      for (size_t j = i + 1; j < approx.size(); ++j) {
        if (used[j]) continue;
        if (std::abs(approx[i] - approx[j]) < 1e-8 * (1.0 + std::abs(approx[i]))) {
          used[j] = true;
          ++mult;
        }
      }
      out.push_back({GaussRat(), approx[i], mult, false});
    }
    break;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Newton polygon at infinity and exponential parts

namespace {

struct HullPoint {
  long j;
  Rat d;
};

// Upper convex hull of points sorted by j; slopes strictly decrease along it.
std::vector<HullPoint> upper_hull(const std::vector<HullPoint>& pts) {
  std::vector<HullPoint> h;
  for (const auto& p : pts) {
    while (h.size() >= 2) {
      const auto& a = h[h.size() - 2];
      const auto& b = h[h.size() - 1];
      // pop b when slope(a,b) <= slope(b,p)
      if ((b.d - a.d) * Rat(p.j - b.j) <= (p.d - b.d) * Rat(b.j - a.j))
        h.pop_back();
      else
        break;
    }
    h.push_back(p);
  }
  return h;
}

Poly approx_leading_poly(const std::complex<double>& alpha, const Rat& mu) {
  GaussRat ca(loose_rationalize(alpha.real()), loose_rationalize(alpha.imag()));
  return Poly::monomial(ca / GaussRat(mu), mu);
}

void collect_parts(const RatOp& L, const std::optional<Rat>& bound,
                   const Poly& prefix, long expect, int depth,
                   std::vector<ExpPart>& out) {
  if (depth > 64) fail(ErrorCode::internal, "part recursion failed to terminate");
  int k = L.order();
  if (k < 0) fail(ErrorCode::internal, "operator degenerated during recursion");
  std::vector<HullPoint> pts;
  for (int j = 0; j <= k; ++j)
    if (auto d = L.coeff(j).deg_infty()) pts.push_back({j, *d});
  auto hull = upper_hull(pts);

  long zero_mult = k;
  bool seen_growth = false;
  long grown = 0;
  for (size_t e = 0; e + 1 < hull.size(); ++e) {
    const auto& p1 = hull[e];
    const auto& p2 = hull[e + 1];
    Rat nu = (p1.d - p2.d) / Rat(p2.j - p1.j);
    if (!(nu > Rat(-1))) continue;
    if (!seen_growth) {
      zero_mult = p1.j;
      seen_growth = true;
    }
    if (bound && !(nu < *bound)) continue;
    Rat mx = p1.d + Rat(p1.j) * nu;
    std::vector<GaussRat> chi(static_cast<size_t>(p2.j - p1.j) + 1);
    for (long j = p1.j; j <= p2.j; ++j) {
      auto dj = L.coeff(static_cast<int>(j)).deg_infty();
      if (dj && *dj + Rat(j) * nu == mx)
        chi[j - p1.j] = L.coeff(static_cast<int>(j)).lc_infty();
    }
    Rat mu = nu + Rat(1);
    for (const auto& root : roots_qi(chi)) {
      if (!root.exact) {
        out.push_back({prefix + approx_leading_poly(root.approx, mu), root.mult, true});
        grown += root.mult;
        continue;
      }
      GaussRat alpha = root.value;
      Poly lead = Poly::monomial(alpha / GaussRat(mu), mu);
      RatFun w = RatFun(Poly::monomial(alpha, mu)) / RatFun(Poly::z());
      collect_parts(L.conjugate_by_logderiv(w), nu, prefix + lead, root.mult,
                    depth + 1, out);
      grown += root.mult;
    }
  }
  if (zero_mult > 0) out.push_back({prefix, zero_mult, false});
  if (expect >= 0 && zero_mult + grown != expect)
    fail(ErrorCode::internal, "part multiplicities do not add up");
}

bool part_less(const ExpPart& a, const ExpPart& b) {
  // higher degree first, then lexicographically larger coefficients first
  auto da = a.q.deg_z(), db = b.q.deg_z();
  if (da.has_value() != db.has_value()) return da.has_value();
  if (da && db && *da != *db) return *db < *da;
  long ram = Poly::common_ram(a.q, b.q);
  Poly pa = a.q.lifted(ram), pb = b.q.lifted(ram);
  for (long t = std::max(pa.deg_w(), pb.deg_w()); t >= 0; --t) {
    const GaussRat& ca = t <= pa.deg_w() ? pa.coeff_w(t) : GaussRat();
    const GaussRat& cb = t <= pb.deg_w() ? pb.coeff_w(t) : GaussRat();
    int c = GaussRat::cmp(ca, cb);
    if (c != 0) return c > 0;
  }
  return a.approximate < b.approximate;
}

} // namespace

std::vector<ExpPart> exponential_parts(const RatOp& L) {
  if (L.order() < 1) fail(ErrorCode::bad_arg, "operator order must be positive");
  std::vector<ExpPart> out;
  collect_parts(L, std::nullopt, Poly(), -1, 0, out);
  long total = 0;
  for (const auto& p : out) total += p.mult;
  if (total != L.order()) fail(ErrorCode::internal, "part count mismatch");
  // merge identical parts, then order canonically
  std::vector<ExpPart> merged;
  for (auto& p : out) {
    bool hit = false;
    for (auto& m : merged)
      if (m.approximate == p.approximate && m.q == p.q) {
        m.mult += p.mult;
        hit = true;
        break;
      }
    if (!hit) merged.push_back(std::move(p));
  }
  std::sort(merged.begin(), merged.end(), part_less);
  return merged;
}

// ---------------------------------------------------------------------------
// formal solutions

namespace {

GaussRat falling(const GaussRat& s, long j) {
  GaussRat acc(1);
  for (long t = 0; t < j; ++t) acc = acc * (s - GaussRat(Rat(t)));
  return acc;
}

// coefficients (ascending in s) of s(s-1)...(s-j+1)
std::vector<GaussRat> falling_coeffs(long j) {
  std::vector<GaussRat> c{GaussRat(1)};
  for (long t = 0; t < j; ++t) {
    std::vector<GaussRat> n(c.size() + 1);
    for (size_t i = 0; i < c.size(); ++i) {
      n[i + 1] = n[i + 1] + c[i];
      n[i] = n[i] - c[i] * GaussRat(Rat(t));
    }
    c = std::move(n);
  }
  return c;
}

} // namespace

FormalSol formal_solution(const RatOp& L, const Poly& q, long trunc) {
  if (L.order() < 1) fail(ErrorCode::bad_arg, "operator order must be positive");
  if (trunc < 0) fail(ErrorCode::bad_arg, "negative truncation");
  int k = L.order();
  RatOp B = q.is_zero() ? L : L.conjugate_by_logderiv(q.derivative());

  std::optional<Rat> sigma;
  for (int j = 0; j <= k; ++j) {
    auto d = B.coeff(j).deg_infty();
    if (!d) continue;
    Rat s = *d - Rat(j);
    if (!sigma || s > *sigma) sigma = s;
  }
  if (!sigma) fail(ErrorCode::internal, "conjugated operator vanished");

  std::vector<GaussRat> chi(static_cast<size_t>(k) + 1);
  for (int j = 0; j <= k; ++j) {
    auto d = B.coeff(j).deg_infty();
    if (!d || *d - Rat(j) != *sigma) continue;
    GaussRat lc = B.coeff(j).lc_infty();
    auto fc = falling_coeffs(j);
    for (size_t i = 0; i < fc.size(); ++i) chi[i] = chi[i] + lc * fc[i];
  }
  while (!chi.empty() && chi.back().is_zero()) chi.pop_back();
  if (chi.size() <= 1)
    fail(ErrorCode::bad_arg, "operator has no solution with this exponential part");
  if (chi.size() > 2)
    fail(ErrorCode::not_supported,
         "indicial polynomial is not linear; logarithmic or multiple solutions");
  GaussRat gamma = -(chi[0] / chi[1]);

  long p = 1;
  for (int j = 0; j <= k; ++j)
    if (!B.coeff(j).is_zero()) p = std::lcm(p, B.coeff(j).ram());

  // phi expansions: coefficient of B_j at z^{sigma + j - m/p}
  std::vector<InfSeries> ej(static_cast<size_t>(k) + 1);
  std::vector<long> off(static_cast<size_t>(k) + 1, 0);
  for (int j = 0; j <= k; ++j) {
    if (B.coeff(j).is_zero()) continue;
    Rat dj = *B.coeff(j).deg_infty();
    Rat o = (dj - *sigma - Rat(j)) * Rat(p);
    if (o.den() != 1) fail(ErrorCode::internal, "grid misalignment");
    off[j] = static_cast<long>(o.num().get_si());
    ej[j] = expand_at_infinity(B.coeff(j), p, trunc + 1);
  }
  auto phi = [&](long m, const GaussRat& s) {
    GaussRat acc;
    for (int j = 0; j <= k; ++j) {
      if (B.coeff(j).is_zero()) continue;
      long idx = m + off[j];
      if (idx < 0 || idx >= ej[j].known()) continue;
      if (ej[j].c[idx].is_zero()) continue;
      acc = acc + ej[j].c[idx] * falling(s, j);
    }
    return acc;
  };

  std::vector<GaussRat> c(static_cast<size_t>(trunc) + 1);
  c[0] = GaussRat(1);
  for (long n = 1; n <= trunc; ++n) {
    GaussRat rhs;
    for (long m = 1; m <= n; ++m) {
      if (c[n - m].is_zero()) continue;
      GaussRat s = gamma - GaussRat(Rat(n - m, p));
      rhs = rhs - phi(m, s) * c[n - m];
    }
    GaussRat chival = chi[1] * (gamma - GaussRat(Rat(n, p))) + chi[0];
    if (chival.is_zero()) fail(ErrorCode::internal, "resonance in linear indicial case");
    c[n] = rhs / chival;
  }

  FormalSol sol;
  sol.q = q;
  sol.gamma = gamma;
  sol.series = InfSeries{p, 0, std::move(c)};
  sol.trunc = trunc;
  return sol;
}

// ---------------------------------------------------------------------------
// formal Wronskians

InfSeries formal_wronskian(const std::vector<FormalTuple>& ys) {
  size_t k = ys.size();
  if (k == 0) fail(ErrorCode::bad_arg, "empty solution list");
  long p = 1;
  for (const auto& y : ys) {
    p = std::lcm(p, y.series.ram);
    if (!y.q.is_zero()) p = std::lcm(p, y.q.derivative().ram());
  }
  // columns: S_{0,j} = series, S_{i+1,j} = q_j' S + gamma_j S / z + S'.
  std::vector<std::vector<InfSeries>> S(k, std::vector<InfSeries>(k));
  for (size_t j = 0; j < k; ++j) {
    InfSeries cur = ys[j].series.lifted(p);
    RatFun qp = ys[j].q.derivative();
    bool has_q = !qp.is_zero();
    InfSeries qps;
    if (has_q) qps = expand_at_infinity(qp, p, cur.known());
    S[0][j] = cur;
    for (size_t i = 1; i < k; ++i) {
      InfSeries next = cur.derivative();
      if (has_q) next = next + qps.truncated(cur.known()) * cur;
      if (!ys[j].gamma.is_zero()) next = next + cur.scaled(ys[j].gamma).shifted(-p);
      S[i][j] = next;
      cur = std::move(next);
    }
  }
  // cofactor expansion over the first row of each minor
  std::vector<size_t> cols(k);
  for (size_t j = 0; j < k; ++j) cols[j] = j;
  auto det = [&](auto&& self, size_t row, std::vector<size_t> cs) -> InfSeries {
    if (cs.size() == 1) return S[row][cs[0]];
    std::optional<InfSeries> acc;
    for (size_t idx = 0; idx < cs.size(); ++idx) {
      std::vector<size_t> rest;
      for (size_t t = 0; t < cs.size(); ++t)
        if (t != idx) rest.push_back(cs[t]);
      InfSeries term = S[row][cs[idx]] * self(self, row + 1, rest);
      if (idx % 2 == 1) term = term.scaled(GaussRat(Rat(-1)));
      acc = acc ? *acc + term : term;
    }
    return *acc;
  };
  return det(det, 0, cols);
}

// ---------------------------------------------------------------------------

bool check_abel(const RatOp& L) {
  int k = L.order();
  if (k < 1) fail(ErrorCode::bad_arg, "operator order must be positive");
  RatFun b = L.coeff(k - 1) / L.coeff(k);
  if (!b.is_zero()) {
    auto d = b.deg_infty();
    if (d && !(*d < Rat(0)))
      fail(ErrorCode::not_supported,
           "subleading coefficient ratio does not vanish at infinity");
  }
  Poly sum;
  for (const auto& part : exponential_parts(L)) {
    if (part.approximate)
      fail(ErrorCode::not_supported, "exponential parts not exactly computable");
    sum = sum + part.q * GaussRat(Rat(part.mult));
  }
  return sum.is_zero();
}

HilleData hille_second_order(const RatFun& A) {
  if (A.is_zero()) fail(ErrorCode::bad_arg, "zero coefficient");
  if (A.ram() != 1)
    fail(ErrorCode::not_supported, "coefficient must be unramified");
  Rat d = *A.deg_infty();
  if (d.den() != 1) fail(ErrorCode::internal, "unramified degree expected");
  long n = static_cast<long>(d.num().get_si());
  if (n < -1) fail(ErrorCode::bad_arg, "degree at infinity must be at least -1");
  HilleData h;
  h.n = n;
  h.cn = A.lc_infty();
  h.gamma = Rat(-n, 4);
  long N = n + 2;
  double arg = std::atan2(h.cn.to_complex().imag(), h.cn.to_complex().real());
  const double twopi = 8.0 * std::atan(1.0);
  for (long t = 0; t < N; ++t) {
    double v = (-arg + twopi * static_cast<double>(t)) / static_cast<double>(N);
    v = std::fmod(v, twopi);
    if (v < 0) v += twopi;
    h.critical_thetas.push_back(v);
  }
  std::sort(h.critical_thetas.begin(), h.critical_thetas.end());
  if (auto s = h.cn.sqrt())
    h.z_lead = Poly::monomial(GaussRat(Rat(2)) * *s / GaussRat(Rat(N)), Rat(N, 2));
  return h;
}

std::vector<Poly> shifted_parts(const std::vector<Poly>& parts, const Poly& kappa,
                                size_t lambda) {
  if (lambda >= parts.size()) fail(ErrorCode::bad_arg, "index out of range");
  long k = static_cast<long>(parts.size());
  std::vector<Poly> out;
  out.reserve(parts.size());
  for (size_t j = 0; j < parts.size(); ++j) {
    if (j == lambda)
      out.push_back(parts[j] - kappa * GaussRat(Rat(k - 1)));
    else
      out.push_back(parts[j] + kappa);
  }
  return out;
}

RayClass classify_parts_on_ray(const std::vector<Poly>& shifted, const Angle& theta,
                               double tol) {
  if (shifted.size() != 3)
    fail(ErrorCode::bad_arg, "classification needs exactly three parts");
  std::vector<int> sign(3);
  for (size_t i = 0; i < 3; ++i) sign[i] = ray_sign(shifted[i], theta, tol);
  int neg = 0, zero = 0, pos = 0;
  std::vector<size_t> negs;
  for (size_t i = 0; i < 3; ++i) {
    if (sign[i] < 0) {
      ++neg;
      negs.push_back(i);
    } else if (sign[i] > 0) {
      ++pos;
    } else {
      ++zero;
    }
  }
  if (neg == 2) {
    bool strict = ray_compare(shifted[negs[0]], shifted[negs[1]], theta, tol) !=
                  RayOrder::similar;
    if (!strict) return RayClass::none;
    if (pos == 1) return RayClass::A;
    if (zero == 1) return RayClass::B;
  }
  if (neg == 1 && zero == 1 && pos == 1) return RayClass::C;
  return RayClass::none;
}

} // namespace lindop
