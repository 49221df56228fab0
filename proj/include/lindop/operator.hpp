#pragma once

#include <utility>
#include <vector>

#include "lindop/tower.hpp"

namespace lindop {

// A linear differential operator sum a_j D^j with coefficients in a tower's
// rational function field. Multiplication is composition, so the ring is
// noncommutative: D * a = a * D + a'.
class LinOp {
public:
  LinOp() : LinOp(Tower::base()) {}
  explicit LinOp(TowerPtr t) : tower_(std::move(t)) {}
  static LinOp from_coeffs(const TowerPtr& t, std::vector<TowerElem> ascending);
  static LinOp identity(const TowerPtr& t);
  static LinOp d(const TowerPtr& t);
  // Multiplication by a function, as an operator of order zero.
  static LinOp of_elem(const TowerElem& f);

  const TowerPtr& tower() const { return tower_; }
  // Order of the operator; -1 for the zero operator.
  int order() const { return static_cast<int>(a_.size()) - 1; }
  bool is_zero() const { return a_.empty(); }
  // Coefficient of D^j (zero element beyond the order).
  TowerElem coeff(int j) const;
  const std::vector<TowerElem>& coeffs() const { return a_; }
  const TowerElem& lc() const;
  bool is_monic() const;

  LinOp operator-() const;
  LinOp operator+(const LinOp& o) const;
  LinOp operator-(const LinOp& o) const;
  LinOp operator*(const LinOp& o) const; // composition: this after o
  LinOp operator*(const TowerElem& s) const; // scale every coefficient
  LinOp operator*(const GaussRat& s) const;
  bool operator==(const LinOp& o) const;
  bool operator!=(const LinOp& o) const { return !(*this == o); }

  // L[f] for a tower element f.
  TowerElem apply(const TowerElem& f) const;
  // L[f]/f expressed through w = f'/f alone.
  TowerElem apply_logderiv(const TowerElem& w) const;

  // Right division: a = q * b + r with ord r < ord b.
  static void divrem(const LinOp& a, const LinOp& b, LinOp& q, LinOp& r);
  // Monic greatest common right divisor.
  static LinOp gcrd(const LinOp& a, const LinOp& b);

  // The operator g -> (1/f) L[f g] where f'/f = w.
  LinOp conjugate_by_logderiv(const TowerElem& w) const;
  // For monic L of order k: conjugation killing the D^{k-1} coefficient.
  // Returns the normalized operator and the logarithmic derivative used.
  std::pair<LinOp, TowerElem> gauge_normalize() const;

  // Operator annihilating y(z^n) for every solution y; more precisely
  // result[y(z^n)] = (n z^{n-1})^k * L[y](z^n) for all y. Coefficients must
  // involve z only.
  LinOp change_variables(long n) const;

  std::string str() const;

private:
  TowerPtr tower_;
  std::vector<TowerElem> a_;
  void trim();
  static void align(LinOp& a, LinOp& b);
};

// Wronskian determinant of tower elements: det(f_j^{(i)}).
TowerElem wronskian(const std::vector<TowerElem>& fs);

} // namespace lindop
