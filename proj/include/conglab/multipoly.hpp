#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "conglab/rational.hpp"

namespace conglab {

// Sparse multivariate polynomial over a pluggable exact field K.
// K needs +, -, *, ==, default construction (= 0) and a K(long) conversion.
// No zero coefficients are stored; exponent vectors have fixed arity.
template <class K>
class MultiPoly {
 public:
  using Exp = std::vector<uint16_t>;

  explicit MultiPoly(int nvars = 0) : nvars_(nvars) {}

  static MultiPoly constant(int nvars, const K& c) {
    MultiPoly p(nvars);
    p.add_term(Exp(nvars, 0), c);
    return p;
  }
  static MultiPoly var(int nvars, int i, int power = 1) {
    MultiPoly p(nvars);
    Exp e(nvars, 0);
    e.at(i) = static_cast<uint16_t>(power);
    p.add_term(e, K(1));
    return p;
  }

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  size_t term_count() const { return terms_.size(); }
  const std::map<Exp, K>& terms() const { return terms_; }

  void add_term(const Exp& e, const K& c) {
    if (static_cast<int>(e.size()) != nvars_) throw std::invalid_argument("arity mismatch");
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      if (!(c == K())) terms_.emplace(e, c);
    } else {
      it->second = it->second + c;
      if (it->second == K()) terms_.erase(it);
    }
  }

  MultiPoly operator+(const MultiPoly& o) const {
    check(o);
    MultiPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
  }
  MultiPoly operator-(const MultiPoly& o) const {
    check(o);
    MultiPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, K() - c);
    return r;
  }
  MultiPoly operator-() const {
    MultiPoly r(nvars_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, K() - c);
    return r;
  }
  MultiPoly operator*(const MultiPoly& o) const {
    check(o);
    MultiPoly r(nvars_);
    for (const auto& [e1, c1] : terms_)
      for (const auto& [e2, c2] : o.terms_) {
        Exp e(nvars_);
        for (int i = 0; i < nvars_; ++i) e[i] = e1[i] + e2[i];
        r.add_term(e, c1 * c2);
      }
    return r;
  }
  MultiPoly operator*(const K& s) const {
    MultiPoly r(nvars_);
    if (s == K()) return r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, c * s);
    return r;
  }
  bool operator==(const MultiPoly& o) const {
    return nvars_ == o.nvars_ && terms_ == o.terms_;
  }

  MultiPoly pow(int n) const {
    MultiPoly r = constant(nvars_, K(1));
    MultiPoly b = *this;
    while (n > 0) {
      if (n & 1) r = r * b;
      b = b * b;
      n >>= 1;
    }
    return r;
  }

  K eval(std::span<const K> xs) const {
    if (static_cast<int>(xs.size()) != nvars_) throw std::invalid_argument("arity mismatch");
    K acc{};
    for (const auto& [e, c] : terms_) {
      K m = c;
      for (int i = 0; i < nvars_; ++i)
        for (int k = 0; k < e[i]; ++k) m = m * xs[i];
      acc = acc + m;
    }
    return acc;
  }

  // substitute variable i -> imgs[i]; all images share an arity
  MultiPoly substitute(std::span<const MultiPoly> imgs) const {
    if (static_cast<int>(imgs.size()) != nvars_) throw std::invalid_argument("arity mismatch");
    int out_vars = imgs.empty() ? 0 : imgs[0].nvars();
    // cache powers of each image
    std::vector<std::vector<MultiPoly>> pows(nvars_);
    for (int i = 0; i < nvars_; ++i) pows[i].push_back(constant(out_vars, K(1)));
    MultiPoly r(out_vars);
    for (const auto& [e, c] : terms_) {
      MultiPoly m = constant(out_vars, c);
      for (int i = 0; i < nvars_; ++i) {
        while (static_cast<int>(pows[i].size()) <= e[i])
          pows[i].push_back(pows[i].back() * imgs[i]);
        if (e[i] > 0) m = m * pows[i][e[i]];
      }
      r = r + m;
    }
    return r;
  }

  // total degree in the given variable
  int degree(int i) const {
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(e[i]));
    return d;
  }

  template <class K2, class F>
  MultiPoly<K2> map_coeffs(F f) const {
    MultiPoly<K2> r(nvars_);
    for (const auto& [e, c] : terms_) r.add_term(e, f(c));
    return r;
  }

  std::string str(std::span<const std::string> names) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      if (!first) os << " + ";
      os << "(" << c << ")";
      for (int i = 0; i < nvars_; ++i)
        if (e[i] > 0) {
          os << "*" << names[i];
          if (e[i] > 1) os << "^" << e[i];
        }
      first = false;
    }
    return os.str();
  }

 private:
  void check(const MultiPoly& o) const {
    if (nvars_ != o.nvars_) throw std::invalid_argument("arity mismatch");
  }
  int nvars_;
  std::map<Exp, K> terms_;
};

using QPoly = MultiPoly<Rat>;

}  // namespace conglab
