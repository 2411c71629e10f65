#include "conglab/cyclo.hpp"

#include <ostream>
#include <sstream>
#include <stdexcept>

#include "conglab/unipoly.hpp"

namespace conglab {

namespace {
// x^8 = x^4 - 1
const UniPoly& modulus() {
  static const UniPoly phi{Rat(1), Rat(0), Rat(0), Rat(0), Rat(-1), Rat(0), Rat(0), Rat(0), Rat(1)};
  return phi;
}
}  // namespace

Cyclo Cyclo::zeta() { return zeta_pow(1); }

Cyclo Cyclo::zeta_pow(int k) {
  k %= 24;
  if (k < 0) k += 24;
  // reduce z^k mod (z^8 - z^4 + 1) by repeated z^8 = z^4 - 1
  std::array<Rat, 16> buf{};
  buf[k] = Rat(1);
  for (int i = 15; i >= 8; --i) {
    if (conglab::is_zero(buf[i])) continue;
    buf[i - 4] += buf[i];
    buf[i - 8] -= buf[i];
    buf[i] = Rat(0);
  }
  Cyclo z;
  for (int i = 0; i < 8; ++i) z.c_[i] = buf[i];
  return z;
}

Cyclo Cyclo::embed_root(const std::string& symbol) {
  if (symbol == "zeta3") return zeta_pow(8);
  if (symbol == "zeta4") return zeta_pow(6);
  if (symbol == "zeta8") return zeta_pow(3);
  if (symbol == "sqrt-2") return zeta_pow(3) + zeta_pow(9);
  if (symbol == "sqrt-3") return Cyclo(1) + zeta_pow(8) + zeta_pow(8);
  if (symbol == "1/sqrt-2") return embed_root("sqrt-2").inverse();
  if (symbol == "1/sqrt-3") return embed_root("sqrt-3").inverse();
  throw std::invalid_argument("unknown root symbol: " + symbol);
}

bool Cyclo::is_zero() const {
  for (const auto& x : c_)
    if (!conglab::is_zero(x)) return false;
  return true;
}

bool Cyclo::is_rational() const {
  for (int i = 1; i < 8; ++i)
    if (!conglab::is_zero(c_[i])) return false;
  return true;
}

Cyclo Cyclo::operator+(const Cyclo& o) const {
  Cyclo r;
  for (int i = 0; i < 8; ++i) r.c_[i] = c_[i] + o.c_[i];
  return r;
}

Cyclo Cyclo::operator-(const Cyclo& o) const {
  Cyclo r;
  for (int i = 0; i < 8; ++i) r.c_[i] = c_[i] - o.c_[i];
  return r;
}

Cyclo Cyclo::operator-() const {
  Cyclo r;
  for (int i = 0; i < 8; ++i) r.c_[i] = -c_[i];
  return r;
}

Cyclo Cyclo::operator*(const Cyclo& o) const {
  std::array<Rat, 15> buf{};
  for (int i = 0; i < 8; ++i) {
    if (conglab::is_zero(c_[i])) continue;
    for (int j = 0; j < 8; ++j) {
      if (conglab::is_zero(o.c_[j])) continue;
      buf[i + j] += c_[i] * o.c_[j];
    }
  }
  for (int i = 14; i >= 8; --i) {
    if (conglab::is_zero(buf[i])) continue;
    buf[i - 4] += buf[i];
    buf[i - 8] -= buf[i];
    buf[i] = Rat(0);
  }
  Cyclo r;
  for (int i = 0; i < 8; ++i) r.c_[i] = buf[i];
  return r;
}

Cyclo Cyclo::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero in Q(zeta24)");
  // extended gcd of the representative against Phi_24
  std::vector<Rat> cv(c_.begin(), c_.end());
  UniPoly a(std::move(cv));
  UniPoly b = modulus();
  UniPoly s0{Rat(1)}, s1{};  // coefficients on a
  UniPoly r0 = a, r1 = b;
  while (!r1.is_zero()) {
    auto [q, r] = r0.divrem(r1);
    UniPoly s2 = s0 - q * s1;
    r0 = r1;
    r1 = r;
    s0 = s1;
    s1 = s2;
  }
  // r0 = gcd = nonzero constant (Phi_24 irreducible over Q)
  if (r0.degree() != 0) throw std::logic_error("non-unit gcd against Phi24");
  UniPoly inv = s0 * (Rat(1) / r0.coeff(0));
  inv = inv.divrem(modulus()).second;
  Cyclo r;
  for (int i = 0; i <= inv.degree(); ++i) r.c_[i] = inv.coeff(i);
  return r;
}

std::string Cyclo::str() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < 8; ++i) {
    if (i) os << ",";
    os << rat_str(c_[i]);
  }
  os << "]";
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Cyclo& z) { return os << z.str(); }

CycloMat CycloMat::operator*(const CycloMat& o) const {
  return {a * o.a + b * o.c, a * o.b + b * o.d,
          c * o.a + d * o.c, c * o.b + d * o.d};
}

bool CycloMat::operator<(const CycloMat& o) const {
  if (!(a == o.a)) return a < o.a;
  if (!(b == o.b)) return b < o.b;
  if (!(c == o.c)) return c < o.c;
  return d < o.d;
}

CycloMat CycloMat::identity() { return {Cyclo(1), Cyclo(0), Cyclo(0), Cyclo(1)}; }

bool CycloMat::is_scalar() const {
  return b.is_zero() && c.is_zero() && a == d;
}

}  // namespace conglab
