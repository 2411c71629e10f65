#pragma once

#include <array>
#include <iosfwd>
#include <string>

#include "conglab/rational.hpp"

namespace conglab {

// Exact arithmetic in Q(zeta_24) = Q[x]/(x^8 - x^4 + 1), dense in the power
// basis 1, z, ..., z^7.  This one field contains every irrationality in the
// level-2/3/4 group generators (zeta_3, zeta_8, sqrt(-2), sqrt(-3)).
class Cyclo {
 public:
  Cyclo() : c_{} {}
  Cyclo(long n) : c_{} { c_[0] = Rat(n); }  // NOLINT(google-explicit-constructor)
  Cyclo(const Rat& r) : c_{} { c_[0] = r; }  // NOLINT(google-explicit-constructor)

  static Cyclo zeta();          // zeta_24
  static Cyclo zeta_pow(int k); // zeta_24^k, any integer k

  // named roots used by the group generators:
  // "zeta3", "zeta4", "zeta8", "sqrt-2", "sqrt-3", "1/sqrt-2", "1/sqrt-3"
  static Cyclo embed_root(const std::string& symbol);

  const std::array<Rat, 8>& coords() const { return c_; }
  bool is_zero() const;
  bool is_rational() const;
  Rat rational_part() const { return c_[0]; }

  Cyclo operator+(const Cyclo& o) const;
  Cyclo operator-(const Cyclo& o) const;
  Cyclo operator-() const;
  Cyclo operator*(const Cyclo& o) const;
  Cyclo inverse() const;  // throws std::domain_error on zero
  bool operator==(const Cyclo& o) const { return c_ == o.c_; }
  bool operator<(const Cyclo& o) const { return c_ < o.c_; }  // lexicographic

  std::string str() const;

 private:
  std::array<Rat, 8> c_;
};

std::ostream& operator<<(std::ostream& os, const Cyclo& z);

struct CycloMat {
  Cyclo a, b, c, d;  // [[a, b], [c, d]]

  CycloMat operator*(const CycloMat& o) const;
  Cyclo det() const { return a * d - b * c; }
  bool operator==(const CycloMat& o) const = default;
  bool operator<(const CycloMat& o) const;

  static CycloMat identity();
  bool is_scalar() const;  // b = c = 0, a = d
};

}  // namespace conglab
