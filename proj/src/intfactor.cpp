#include "conglab/intfactor.hpp"

#include <stdexcept>

namespace conglab {

bool is_probable_prime(const Int& n) {
  // 40 Miller-Rabin rounds; GMP uses fixed bases below 2^64 territory anyway
  return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

namespace {

Int pollard_brent(const Int& n) {
  // Brent's cycle variant; n odd composite, not a prime power of interest
  gmp_randclass rng(gmp_randinit_default);
  rng.seed(0xC0FFEEul);
  while (true) {
    Int y = rng.get_z_range(n - 3) + 2;
    Int c = rng.get_z_range(n - 3) + 1;
    Int m = 128, g = 1, r = 1, q = 1, x, ys;
    while (g == 1) {
      x = y;
      for (Int i = 0; i < r; ++i) y = (y * y + c) % n;
      Int k = 0;
      while (k < r && g == 1) {
        ys = y;
        Int lim = m < r - k ? m : r - k;
        for (Int i = 0; i < lim; ++i) {
          y = (y * y + c) % n;
          q = q * abs(x - y) % n;
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += m;
      }
      r *= 2;
    }
    if (g == n) {
      g = 1;
      while (g == 1) {
        ys = (ys * ys + c) % n;
        Int d = abs(x - ys);
        mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
      }
    }
    if (g != n) return g;
  }
}

void factor_into(Int n, std::map<Int, unsigned>& out) {
  if (n == 1) return;
  if (is_probable_prime(n)) {
    ++out[n];
    return;
  }
  Int d = pollard_brent(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

std::map<Int, unsigned> factorize(const Int& n) {
  if (sgn(n) <= 0) throw std::invalid_argument("factorize needs n > 0");
  std::map<Int, unsigned> out;
  Int m = n;
  for (long p : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L, 37L}) {
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      ++out[Int(p)];
      m /= p;
    }
  }
  long d = 41;
  while (m > 1 && d < 100000 && Int(d) * d <= m) {
    while (mpz_divisible_ui_p(m.get_mpz_t(), d)) {
      ++out[Int(d)];
      m /= d;
    }
    d += 2;
  }
  if (m > 1) factor_into(m, out);
  return out;
}

Int least_kth_root_multiple(const Int& n, unsigned k) {
  Int t = 1;
  for (const auto& [p, e] : factorize(n)) {
    unsigned need = (e + k - 1) / k;
    Int pe;
    mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), need);
    t *= pe;
  }
  return t;
}

}  // namespace conglab
