#include "conglab/unipoly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace conglab {

const Rat UniPoly::kZero = Rat(0);

UniPoly::UniPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

UniPoly::UniPoly(std::initializer_list<Rat> coeffs) : c_(coeffs) { trim(); }

UniPoly UniPoly::monomial(int degree, const Rat& c) {
  std::vector<Rat> v(degree + 1, Rat(0));
  v[degree] = c;
  return UniPoly(std::move(v));
}

void UniPoly::trim() {
  while (!c_.empty() && conglab::is_zero(c_.back())) c_.pop_back();
}

const Rat& UniPoly::leading() const {
  if (c_.empty()) throw std::logic_error("leading() of zero polynomial");
  return c_.back();
}

const Rat& UniPoly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return kZero;
  return c_[i];
}

Rat UniPoly::eval(const Rat& x) const {
  Rat acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

UniPoly UniPoly::derivative() const {
  if (c_.size() <= 1) return UniPoly();
  std::vector<Rat> d(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * Rat(static_cast<long>(i));
  return UniPoly(std::move(d));
}

UniPoly UniPoly::operator+(const UniPoly& o) const {
  std::vector<Rat> r(std::max(c_.size(), o.c_.size()), Rat(0));
  for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
  return UniPoly(std::move(r));
}

UniPoly UniPoly::operator-(const UniPoly& o) const { return *this + (-o); }

UniPoly UniPoly::operator-() const {
  std::vector<Rat> r(c_);
  for (auto& x : r) x = -x;
  return UniPoly(std::move(r));
}

UniPoly UniPoly::operator*(const UniPoly& o) const {
  if (is_zero() || o.is_zero()) return UniPoly();
  std::vector<Rat> r(c_.size() + o.c_.size() - 1, Rat(0));
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  return UniPoly(std::move(r));
}

UniPoly UniPoly::operator*(const Rat& s) const {
  std::vector<Rat> r(c_);
  for (auto& x : r) x *= s;
  return UniPoly(std::move(r));
}

std::pair<UniPoly, UniPoly> UniPoly::divrem(const UniPoly& d) const {
  if (d.is_zero()) throw std::invalid_argument("division by zero polynomial");
  std::vector<Rat> rem(c_);
  int dd = d.degree();
  if (degree() < dd) return {UniPoly(), *this};
  std::vector<Rat> quo(degree() - dd + 1, Rat(0));
  for (int i = degree(); i >= dd; --i) {
    if (conglab::is_zero(rem[i])) continue;
    Rat f = rem[i] / d.leading();
    quo[i - dd] = f;
    for (int j = 0; j <= dd; ++j) rem[i - dd + j] -= f * d.coeff(j);
  }
  return {UniPoly(std::move(quo)), UniPoly(std::move(rem))};
}

UniPoly UniPoly::monic_gcd(const UniPoly& o) const {
  UniPoly a = *this, b = o;
  while (!b.is_zero()) {
    UniPoly r = a.divrem(b).second;
    a = b;
    b = r;
  }
  if (a.is_zero()) return a;
  return a * (Rat(1) / a.leading());
}

UniPoly UniPoly::squarefree_part() const {
  if (is_zero()) throw std::invalid_argument("squarefree part of zero");
  UniPoly g = monic_gcd(derivative());
  if (g.degree() <= 0) return *this * (Rat(1) / leading());
  UniPoly q = divrem(g).first;
  return q * (Rat(1) / q.leading());
}

std::string UniPoly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    if (conglab::is_zero(c_[i])) continue;
    if (!first) os << (sgn(c_[i]) > 0 ? " + " : " - ");
    else if (sgn(c_[i]) < 0) os << "-";
    Rat a = abs(Rat(c_[i]));
    if (a != 1 || i == 0) os << rat_str(a);
    if (i > 0) {
      if (a != 1) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
    first = false;
  }
  return os.str();
}

namespace {

// Sturm work happens on primitive integer-coefficient copies of the chain:
// sign evaluations are then pure mpz Horner steps, no rational gcd churn.
using IntPoly = std::vector<Int>;  // constant first, no trailing zeros

IntPoly clear_to_int(const UniPoly& p) {
  Int den(1);
  for (const auto& c : p.coeffs())
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
  IntPoly out;
  out.reserve(p.coeffs().size());
  Int content(0);
  for (const auto& c : p.coeffs()) {
    Rat v = c * Rat(den);
    out.push_back(v.get_num());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), out.back().get_mpz_t());
  }
  if (content > 1)
    for (auto& c : out) c /= content;
  return out;
}

// sign of p(a/b) with b > 0, via sum c_i a^i b^(n-i)
int sign_at(const IntPoly& p, const Int& a, const Int& b) {
  Int acc(0), apow(1);
  const int n = static_cast<int>(p.size()) - 1;
  std::vector<Int> bpow(n + 1);
  bpow[0] = 1;
  for (int i = 1; i <= n; ++i) bpow[i] = bpow[i - 1] * b;
  for (int i = 0; i <= n; ++i) {
    acc += p[i] * apow * bpow[n - i];
    apow *= a;
  }
  return sgn(acc);
}

std::vector<IntPoly> sturm_chain_int(const UniPoly& squarefree) {
  std::vector<UniPoly> chain{squarefree, squarefree.derivative()};
  while (!chain.back().is_zero() && chain.back().degree() > 0) {
    UniPoly r = chain[chain.size() - 2].divrem(chain.back()).second;
    if (r.is_zero()) break;
    chain.push_back(-r);
  }
  std::vector<IntPoly> out;
  for (const auto& q : chain)
    if (!q.is_zero()) out.push_back(clear_to_int(q));
  return out;
}

// Sign variations with zeros dropped.  For a squarefree chain this makes
// V(lo) - V(hi) count roots in the half-open interval (lo, hi] even when an
// endpoint is itself a root.
int variations_at(const std::vector<IntPoly>& chain, const Int& a, const Int& b) {
  int var = 0, last = 0;
  for (const auto& q : chain) {
    int s = sign_at(q, a, b);
    if (s == 0) continue;
    if (last != 0 && s != last) ++var;
    last = s;
  }
  return var;
}

// integer roots of a monic integer polynomial via Sturm bisection on
// integer endpoints
void integer_roots_monic(const UniPoly& q, std::vector<Int>& out) {
  UniPoly sfq = q.squarefree_part();
  if (sfq.degree() <= 0) return;
  auto chain = sturm_chain_int(sfq);
  IntPoly qi = clear_to_int(q);
  // Cauchy bound for the monic q: 1 + max |coeff|
  Int bound(2);
  for (int i = 0; i < q.degree(); ++i) {
    Int a = abs(Rat(q.coeff(i)).get_num()) / Rat(q.coeff(i)).get_den() + 2;
    if (a > bound) bound = a;
  }
  struct Iv {
    Int lo, hi;
    int count;
  };
  auto count_in = [&](const Int& lo, const Int& hi) {
    return variations_at(chain, lo, Int(1)) - variations_at(chain, hi, Int(1));
  };
  std::vector<Iv> work{{-bound, bound, count_in(-bound, bound)}};
  while (!work.empty()) {
    Iv iv = work.back();
    work.pop_back();
    if (iv.count == 0) continue;
    if (iv.hi - iv.lo == 1) {
      // the only integer in (lo, hi] is hi
      if (sign_at(qi, iv.hi, Int(1)) == 0) out.push_back(iv.hi);
      continue;
    }
    Int mid = (iv.lo + iv.hi) / 2;
    if (mid == iv.lo) mid = iv.lo + 1;
    int left = count_in(iv.lo, mid);
    if (left > 0) work.push_back({iv.lo, mid, left});
    if (iv.count - left > 0) work.push_back({mid, iv.hi, iv.count - left});
  }
}

}  // namespace

int sturm_count(const UniPoly& p, const Rat& lo, const Rat& hi) {
  if (p.is_zero()) throw std::invalid_argument("sturm_count of zero polynomial");
  if (lo >= hi) return 0;
  UniPoly q = p.squarefree_part();
  if (q.degree() <= 0) return 0;
  auto chain = sturm_chain_int(q);
  return variations_at(chain, lo.get_num(), lo.get_den()) -
         variations_at(chain, hi.get_num(), hi.get_den());
}

std::vector<std::pair<Rat, int>> rational_roots(const UniPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("rational_roots of zero polynomial");
  if (p.degree() > 8) throw std::invalid_argument("rational_roots: degree > 8");
  if (p.degree() == 0) return {};
  // clear denominators
  Int den(1);
  for (const auto& c : p.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
  std::vector<Rat> ic(p.coeffs());
  for (auto& c : ic) c *= Rat(den);
  // monicise: roots of q(y) = lc^(n-1) p(y/lc) are lc * (roots of p)
  Rat lc = ic.back();
  int n = p.degree();
  std::vector<Rat> q(n + 1);
  // q_i = a_i * lc^(n-1-i) for i < n; the leading coefficient becomes 1
  q[n] = Rat(1);
  for (int i = 0; i < n; ++i) {
    Rat pw(1);
    for (int k = 0; k < n - 1 - i; ++k) pw *= lc;
    q[i] = ic[i] * pw;
  }
  UniPoly monic{std::vector<Rat>(q)};
  std::vector<Int> iroots;
  integer_roots_monic(monic, iroots);
  std::vector<std::pair<Rat, int>> out;
  for (const Int& y : iroots) {
    Rat root = Rat(y) / lc;
    // multiplicity by repeated exact division
    int mult = 0;
    UniPoly rem = p;
    UniPoly lin{-root, Rat(1)};
    while (true) {
      auto [quo, r] = rem.divrem(lin);
      if (!r.is_zero()) break;
      ++mult;
      rem = quo;
    }
    if (mult > 0) out.emplace_back(root, mult);
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

}  // namespace conglab
