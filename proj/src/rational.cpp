#include "conglab/rational.hpp"

#include <stdexcept>

namespace conglab {

Rat make_rat(const Int& num, const Int& den) {
  if (sgn(den) == 0) throw std::invalid_argument("zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

Rat make_rat(long num, long den) { return make_rat(Int(num), Int(den)); }

Rat parse_rat(std::string_view s) {
  if (s.empty()) throw std::invalid_argument("empty rational");
  const auto slash = s.find('/');
  try {
    if (slash == std::string_view::npos) {
      return Rat(Int(std::string(s)));
    }
    Int num(std::string(s.substr(0, slash)));
    Int den(std::string(s.substr(slash + 1)));
    return make_rat(num, den);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("malformed rational: " + std::string(s));
  }
}

std::string rat_str(const Rat& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Int height(const Rat& x) {
  Int n = abs(x.get_num());
  return n > x.get_den() ? n : Int(x.get_den());
}

namespace {

std::optional<Int> int_root(const Int& n, unsigned long k) {
  if (sgn(n) < 0 && k % 2 == 0) return std::nullopt;
  Int r;
  // mpz_root returns nonzero iff the root is exact
  if (mpz_root(r.get_mpz_t(), n.get_mpz_t(), k) != 0) return r;
  return std::nullopt;
}

std::optional<Rat> rat_root(const Rat& x, unsigned long k) {
  auto rn = int_root(x.get_num(), k);
  if (!rn) return std::nullopt;
  auto rd = int_root(x.get_den(), k);
  if (!rd) return std::nullopt;
  return make_rat(*rn, *rd);
}

}  // namespace

std::optional<Rat> is_square(const Rat& x) {
  if (sgn(x) < 0) return std::nullopt;
  auto r = rat_root(x, 2);
  if (r && sgn(*r) < 0) return -*r;
  return r;
}

std::optional<Rat> is_cube(const Rat& x) { return rat_root(x, 3); }

std::optional<Rat> is_fourth_power(const Rat& x) {
  if (sgn(x) < 0) return std::nullopt;
  auto r = rat_root(x, 4);
  if (r && sgn(*r) < 0) return -*r;
  return r;
}

}  // namespace conglab
