#pragma once

#include <initializer_list>
#include <utility>
#include <vector>

#include "conglab/rational.hpp"

namespace conglab {

// Dense univariate polynomial over Q, constant term first.  Immutable value
// semantics; the zero polynomial has an empty coefficient vector.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rat> coeffs);
  UniPoly(std::initializer_list<Rat> coeffs);
  static UniPoly monomial(int degree, const Rat& c);

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for 0
  const Rat& leading() const;
  const Rat& coeff(int i) const;  // 0 beyond degree
  const std::vector<Rat>& coeffs() const { return c_; }

  Rat eval(const Rat& x) const;
  UniPoly derivative() const;

  UniPoly operator+(const UniPoly& o) const;
  UniPoly operator-(const UniPoly& o) const;
  UniPoly operator*(const UniPoly& o) const;
  UniPoly operator*(const Rat& s) const;
  UniPoly operator-() const;
  bool operator==(const UniPoly& o) const { return c_ == o.c_; }

  // quotient/remainder; divisor nonzero
  std::pair<UniPoly, UniPoly> divrem(const UniPoly& d) const;

  UniPoly monic_gcd(const UniPoly& o) const;
  UniPoly squarefree_part() const;

  std::string str(const std::string& var = "x") const;

 private:
  std::vector<Rat> c_;
  void trim();
  static const Rat kZero;
};

// Exact count of real roots of p in the half-open interval (lo, hi].
// p must be nonzero (its squarefree part is taken internally).
int sturm_count(const UniPoly& p, const Rat& lo, const Rat& hi);

// Complete multiset of rational roots of p (degree <= 8 by contract):
// clears denominators, monicises via x = y/lc so rational roots become
// integers, isolates real roots with Sturm bisection down to width < 1,
// and verifies the unique integer candidate exactly.
std::vector<std::pair<Rat, int>> rational_roots(const UniPoly& p);

}  // namespace conglab
