#include "conglab/curves.hpp"

#include <algorithm>
#include <mutex>

#include "conglab/intfactor.hpp"
#include "json.hpp"

namespace conglab {

namespace {

Rat disc_of(const Rat& a1, const Rat& a2, const Rat& a3, const Rat& a4, const Rat& a6) {
  Rat b2 = a1 * a1 + 4 * a2;
  Rat b4 = 2 * a4 + a1 * a3;
  Rat b6 = a3 * a3 + 4 * a6;
  Rat b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
  return -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
}

}  // namespace

WeierstrassCurve::WeierstrassCurve(Rat a1_, Rat a2_, Rat a3_, Rat a4_, Rat a6_)
    : a1(std::move(a1_)), a2(std::move(a2_)), a3(std::move(a3_)),
      a4(std::move(a4_)), a6(std::move(a6_)) {
  if (is_zero(disc_of(a1, a2, a3, a4, a6))) throw SingularCurve("discriminant is zero");
}

WeierstrassCurve WeierstrassCurve::short_form(const Rat& A, const Rat& B) {
  return WeierstrassCurve(Rat(0), Rat(0), Rat(0), A, B);
}

CurveInvariants invariants(const WeierstrassCurve& e) {
  CurveInvariants v;
  v.b2 = e.a1 * e.a1 + 4 * e.a2;
  v.b4 = 2 * e.a4 + e.a1 * e.a3;
  v.b6 = e.a3 * e.a3 + 4 * e.a6;
  v.b8 = e.a1 * e.a1 * e.a6 + 4 * e.a2 * e.a6 - e.a1 * e.a3 * e.a4 +
         e.a2 * e.a3 * e.a3 - e.a4 * e.a4;
  v.c4 = v.b2 * v.b2 - 24 * v.b4;
  v.c6 = -v.b2 * v.b2 * v.b2 + 36 * v.b2 * v.b4 - 216 * v.b6;
  v.disc = -v.b2 * v.b2 * v.b8 - 8 * v.b4 * v.b4 * v.b4 - 27 * v.b6 * v.b6 +
           9 * v.b2 * v.b4 * v.b6;
  v.j = v.c4 * v.c4 * v.c4 / v.disc;
  v.J = v.j / 1728;
  return v;
}

WeierstrassCurve quadratic_twist(const WeierstrassCurve& e, const Rat& d) {
  if (is_zero(d)) throw std::invalid_argument("twist by zero");
  auto v = invariants(e);
  // complete the square, then scale the even model
  return WeierstrassCurve(Rat(0), v.b2 * d / 4, Rat(0), v.b4 * d * d / 2,
                          v.b6 * d * d * d / 4);
}

WeierstrassCurve integralize(const WeierstrassCurve& e) {
  // need u with den(a_i) | u^i; least u = lcm over i of the least t with
  // den(a_i) | t^i
  Int u(1);
  const std::pair<const Rat*, unsigned> parts[] = {
      {&e.a1, 1}, {&e.a2, 2}, {&e.a3, 3}, {&e.a4, 4}, {&e.a6, 6}};
  for (const auto& [a, w] : parts) {
    Int den = a->get_den();
    if (den == 1) continue;
    Int t = least_kth_root_multiple(den, w);
    mpz_lcm(u.get_mpz_t(), u.get_mpz_t(), t.get_mpz_t());
  }
  if (u == 1) return e;
  Rat u1(u), u2 = u1 * u1, u3 = u2 * u1;
  return WeierstrassCurve(e.a1 * u1, e.a2 * u2, e.a3 * u3, e.a4 * u2 * u2,
                          e.a6 * u3 * u3);
}

bool has_good_reduction(const WeierstrassCurve& e, long p) {
  auto v = invariants(integralize(e));
  return !mpz_divisible_ui_p(v.disc.get_num().get_mpz_t(), p);
}

namespace {

struct ApCache {
  std::map<std::tuple<Int, Int, long>, long> memo;
  std::shared_mutex mu;
};

ApCache& ap_cache() {
  static ApCache c;
  return c;
}

long count_ap(long A, long B, long p) {
  // a_p = -sum_x chi(x^3 + Ax + B); via a table of square counts
  std::vector<uint8_t> sq(p, 0);
  for (long y = 0; y < p; ++y) ++sq[static_cast<size_t>(y * y % p)];
  long affine = 0;
  for (long x = 0; x < p; ++x) {
    long fx = ((x * x % p) * x + A * x % p + B) % p;
    affine += sq[static_cast<size_t>(fx)];
  }
  return p + 1 - (affine + 1);
}

}  // namespace

long trace_of_frobenius(const WeierstrassCurve& e, long p) {
  if (p == 2 || p == 3) throw std::invalid_argument("p in {2,3} rejected");
  WeierstrassCurve m = integralize(e);
  auto v = invariants(m);
  if (mpz_divisible_ui_p(v.disc.get_num().get_mpz_t(), p))
    throw std::invalid_argument("bad reduction at p=" + std::to_string(p));
  // reduce the short model y^2 = x^3 - 27 c4 x - 54 c6 (valid for p > 3)
  Int A = (-27 * v.c4.get_num()) % p;
  Int B = (-54 * v.c6.get_num()) % p;
  long Al = ((A.get_si() % p) + p) % p;
  long Bl = ((B.get_si() % p) + p) % p;
  std::tuple<Int, Int, long> key{Int(Al), Int(Bl), p};
  {
    std::shared_lock lk(ap_cache().mu);
    auto it = ap_cache().memo.find(key);
    if (it != ap_cache().memo.end()) return it->second;
  }
  long ap = count_ap(Al, Bl, p);
  {
    std::unique_lock lk(ap_cache().mu);
    ap_cache().memo[key] = ap;  // last write wins; values deterministic
  }
  return ap;
}

bool is_cm_j(const Rat& j) {
  static const Int cm[] = {
      Int(0),
      Int(1728),
      Int(-3375),
      Int(8000),
      Int(-32768),
      Int(54000),
      Int(287496),
      Int(-884736),
      Int(-12288000),
      Int(16581375),
      Int(-884736000),
      Int("-147197952000"),
      Int("-262537412640768000"),
  };
  if (!is_integer(j)) return false;
  return std::find(std::begin(cm), std::end(cm), j.get_num()) != std::end(cm);
}

std::optional<long> non_isogeny_witness(const WeierstrassCurve& e,
                                        const WeierstrassCurve& ep, long bound) {
  Rat j = invariants(e).j, jp = invariants(ep).j;
  if (is_cm_j(j) || is_cm_j(jp))
    throw std::invalid_argument("non_isogeny_witness: CM input rejected");
  WeierstrassCurve a = integralize(e), b = integralize(ep);
  for (long p : primes_up_to(bound)) {
    if (p == 2 || p == 3) continue;
    if (!has_good_reduction(a, p) || !has_good_reduction(b, p)) continue;
    long s = trace_of_frobenius(a, p), t = trace_of_frobenius(b, p);
    if (s * s != t * t) return p;
  }
  return std::nullopt;
}

std::vector<long> primes_up_to(long n) {
  std::vector<bool> s(n + 1, true);
  std::vector<long> out;
  for (long i = 2; i <= n; ++i) {
    if (!s[i]) continue;
    out.push_back(i);
    for (long k = i * i; k <= n; k += i) s[k] = false;
  }
  return out;
}

WeierstrassCurve curve_from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  if (!j.is_array()) throw std::invalid_argument("curve JSON must be an array");
  if (j.size() == 2) {
    return WeierstrassCurve::short_form(parse_rat(j[0].get<std::string>()),
                                        parse_rat(j[1].get<std::string>()));
  }
  if (j.size() == 5) {
    return WeierstrassCurve(
        parse_rat(j[0].get<std::string>()), parse_rat(j[1].get<std::string>()),
        parse_rat(j[2].get<std::string>()), parse_rat(j[3].get<std::string>()),
        parse_rat(j[4].get<std::string>()));
  }
  throw std::invalid_argument("curve JSON must have 2 or 5 entries");
}

std::string curve_to_json(const WeierstrassCurve& e) {
  nlohmann::json j = {rat_str(e.a1), rat_str(e.a2), rat_str(e.a3),
                      rat_str(e.a4), rat_str(e.a6)};
  return j.dump();
}

}  // namespace conglab
