#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lindop/mpoly.hpp"
#include "lindop/poly.hpp"

namespace lindop {

class Tower;
using TowerPtr = std::shared_ptr<const Tower>;
class TowerElem;

enum class GenKind { logderiv, exp_, prim, root, constant, custom };

// One transcendental generator. Its derivative is stored as a rational
// expression dnum/dden in the variables [z, g_1, ..., g_self], i.e. over
// nvars = (own index) + 1 variables.
struct Generator {
  GenKind kind;
  std::string name;
  MPoly dnum, dden;
  long root_ord = 0;
};

// An immutable chain z < g_1 < ... < g_n of differential generators. Every
// extension allocates a new node whose parent is the extended tower, so
// pointer identity along the parent chain decides prefix compatibility.
class Tower : public std::enable_shared_from_this<Tower> {
public:
  static TowerPtr base();

  // New generator t with t'/t = w          (w over this tower or a prefix).
  TowerPtr extend_logderiv(const std::string& name, const TowerElem& w) const;
  // New generator t = exp(u), i.e. t' = u' t.
  TowerPtr extend_exp(const std::string& name, const TowerElem& u) const;
  // New generator t with t' = w.
  TowerPtr extend_prim(const std::string& name, const TowerElem& w) const;
  // New generator t with t' = t/(p z)  (a formal p-th root of z).
  TowerPtr extend_root(const std::string& name, long p) const;
  // New generator t with t' = 0.
  TowerPtr extend_const(const std::string& name) const;
  // New generator with an arbitrary derivative over [z, g_1, ..., g_self].
  TowerPtr extend_custom(const std::string& name, MPoly dnum, MPoly dden) const;

  const TowerPtr& parent() const { return parent_; }
  int ngens() const { return static_cast<int>(gens_.size()); }
  int nvars() const { return ngens() + 1; }
  const Generator& gen(int i) const { return gens_[i]; } // 0-based
  // Variable index of the named generator (z is index 0).
  std::optional<int> find(const std::string& name) const;
  std::vector<std::string> var_names() const;

  static bool is_prefix(const TowerPtr& a, const TowerPtr& b);
  // The deeper of the two when one is a prefix of the other.
  static TowerPtr common(const TowerPtr& a, const TowerPtr& b);

private:
  Tower() = default;
  TowerPtr extended(Generator g) const;
  TowerPtr parent_;
  std::vector<Generator> gens_;
};

// An element N/D of the rational function field of a tower, kept canonical:
// gcd(N, D) = 1 and D monic in the global monomial order.
class TowerElem {
public:
  TowerElem(); // zero over the base tower
  static TowerElem zero(const TowerPtr& t);
  static TowerElem constant(const TowerPtr& t, const GaussRat& c);
  static TowerElem of_int(const TowerPtr& t, long n);
  static TowerElem z(const TowerPtr& t);
  static TowerElem gen(const TowerPtr& t, int var_index);
  static TowerElem gen(const TowerPtr& t, const std::string& name);
  static TowerElem from(const TowerPtr& t, MPoly num, MPoly den);
  // Bridge from a plain rational function (requires ram() == 1).
  static TowerElem from_ratfun(const TowerPtr& t, const RatFun& f);

  const TowerPtr& tower() const { return tower_; }
  const MPoly& num() const { return num_; }
  const MPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_scalar() const { return num_.is_constant() && den_.is_constant(); }
  GaussRat scalar_value() const;
  bool depends_on(int v) const { return num_.depends_on(v) || den_.depends_on(v); }

  TowerElem operator-() const;
  TowerElem operator+(const TowerElem& o) const;
  TowerElem operator-(const TowerElem& o) const;
  TowerElem operator*(const TowerElem& o) const;
  TowerElem operator*(const GaussRat& s) const;
  TowerElem operator/(const TowerElem& o) const;
  TowerElem& operator+=(const TowerElem& o) { *this = *this + o; return *this; }
  TowerElem& operator-=(const TowerElem& o) { *this = *this - o; return *this; }
  TowerElem& operator*=(const TowerElem& o) { *this = *this * o; return *this; }
  TowerElem& operator/=(const TowerElem& o) { *this = *this / o; return *this; }
  bool operator==(const TowerElem& o) const;
  bool operator!=(const TowerElem& o) const { return !(*this == o); }

  TowerElem pow(long e) const;
  TowerElem inv() const;
  TowerElem derivative() const;

  // View over a deeper tower (this element's tower must be a prefix).
  TowerElem lifted(const TowerPtr& t) const;
  // View over a prefix tower; fails if a dropped generator is still used.
  TowerElem projected(const TowerPtr& t) const;

  // Coefficients with respect to generator variable v, constant term first.
  // The denominator must be free of v.
  std::vector<TowerElem> coeffs_in(int v) const;

  // Conversion to a plain rational function; the element must only involve z.
  RatFun to_ratfun() const;

  std::string str() const;

private:
  TowerPtr tower_;
  MPoly num_, den_;
  void canonicalize();
  static void align(TowerElem& a, TowerElem& b);
};

// Successive logarithmic-derivative transforms of w: the returned vector
// holds r_1 = w and r_{j+1} = r_j' + w r_j, so that r_j = f^(j)/f whenever
// w = f'/f.
std::vector<TowerElem> logderiv_powers(const TowerElem& w, int jmax);

} // namespace lindop
