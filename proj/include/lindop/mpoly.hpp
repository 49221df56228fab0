#pragma once

#include <vector>

#include "lindop/rational.hpp"

namespace lindop {

// Sparse multivariate polynomial over Q(i) in a fixed number of variables.
// Terms are kept sorted (descending) in the monomial order that treats the
// highest-index variable as most significant, so representations are
// canonical for a fixed variable count.
class MPoly {
public:
  struct Term {
    std::vector<int> e;
    GaussRat c;
  };

  MPoly() : nv_(0) {}
  explicit MPoly(int nvars) : nv_(nvars) {}
  static MPoly constant(int nvars, const GaussRat& c);
  static MPoly var(int nvars, int v);
  static MPoly monomial(int nvars, std::vector<int> exps, const GaussRat& c);

  int nvars() const { return nv_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  GaussRat constant_value() const; // requires is_constant()
  const std::vector<Term>& terms() const { return terms_; }
  // Total degree in variable v.
  int deg(int v) const;
  bool depends_on(int v) const { return deg(v) > 0; }
  // Highest variable index with positive degree, or -1.
  int top_var() const;

  MPoly operator-() const;
  MPoly operator+(const MPoly& o) const;
  MPoly operator-(const MPoly& o) const;
  MPoly operator*(const MPoly& o) const;
  MPoly operator*(const GaussRat& s) const;
  MPoly& operator+=(const MPoly& o) { *this = *this + o; return *this; }
  MPoly& operator-=(const MPoly& o) { *this = *this - o; return *this; }
  MPoly& operator*=(const MPoly& o) { *this = *this * o; return *this; }
  bool operator==(const MPoly& o) const;
  bool operator!=(const MPoly& o) const { return !(*this == o); }

  MPoly pow(unsigned long e) const;
  // Coefficient of x_v^d: polynomial in the same variable space with e[v]=0.
  MPoly coeff_of(int v, int d) const;
  // Partial derivative with respect to x_v.
  MPoly derivative(int v) const;
  // Same polynomial viewed in a larger variable space.
  MPoly lifted(int new_nvars) const;
  // Drop unused trailing variables down to new_nvars; the polynomial must
  // not depend on any dropped variable.
  MPoly projected(int new_nvars) const;
  // Substitute x_v := value (an MPoly over the same variable space).
  MPoly substituted(int v, const MPoly& value) const;

  const GaussRat& lc() const; // coefficient of the globally leading term
  // Exact division; fails (internal) when b does not divide a.
  static MPoly div_exact(const MPoly& a, const MPoly& b);
  // Monic gcd in the global order; gcd(0,0) = 0.
  static MPoly gcd(const MPoly& a, const MPoly& b);

  std::string str(const std::vector<std::string>& names) const;

private:
  int nv_;
  std::vector<Term> terms_; // sorted descending, no zero coefficients
  void normalize();
  static int mcmp(const std::vector<int>& a, const std::vector<int>& b);
  friend struct MPolyBuilder;
};

} // namespace lindop
