#include "conglab/moduli.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <sstream>
#include <thread>

#include "conglab/congruence.hpp"
#include "conglab/curves.hpp"
#include "json.hpp"

namespace conglab {

namespace {

QPoly U() { return QPoly::var(2, 0); }
QPoly V() { return QPoly::var(2, 1); }
QPoly C2(long n) { return QPoly::constant(2, Rat(n)); }

QPoly build_surface(int r) {
  QPoly u = U(), v = V();
  QPoly u2 = u * u, u3 = u2 * u, u4 = u3 * u;
  QPoly v2 = v * v, v4 = v2 * v2, v6 = v4 * v2, v8 = v4 * v4;
  switch (r) {
    case 1:
      return C2(-4) * u4 - C2(2) * (C2(2) * v2 + C2(3)) * u3 -
             (v4 - C2(13) * v2 + C2(3)) * u2 +
             C2(2) * (C2(5) * v4 + C2(9) * v2) * u + v6 - C2(6) * v4 +
             C2(9) * v2;
    case 5: {
      QPoly u5 = u4 * u, u6 = u5 * u, u7 = u6 * u, u8 = u7 * u;
      QPoly v10 = v8 * v2;
      return v2 * u8 + C2(4) * v2 * u7 +
             (C2(-4) * v4 - C2(20) * v2 + C2(4)) * u6 +
             (C2(-12) * v4 - C2(32) * v2 - C2(8)) * u5 +
             (C2(6) * v6 + C2(44) * v4 + C2(160) * v2 - C2(76)) * u4 +
             (C2(12) * v6 + C2(64) * v4 - C2(64) * v2 + C2(352)) * u3 +
             (C2(-4) * v8 - C2(28) * v6 - C2(204) * v4 - C2(232) * v2 -
              C2(592)) * u2 +
             (C2(-4) * v8 - C2(32) * v6 + C2(72) * v4 + C2(224) * v2 +
              C2(448)) * u +
             v10 + C2(4) * v8 + C2(40) * v6 + C2(52) * v4 - C2(32) * v2 -
             C2(128);
    }
    case 7:
      return -(u - C2(1)) * ((v2 + C2(1)) * u + v2 - C2(1)) *
             (u4 + C2(6) * u3 + (C2(-2) * v2 + C2(12)) * u2 +
              (C2(-6) * v2 + C2(8)) * u + v4 - v2);
    case 11:
      return -(u + C2(1)) *
             ((v4 + C2(6) * v2 + C2(1)) * u - C2(7) * v4 - C2(2) * v2 + C2(1)) *
             (v4 * u4 + C2(8) * v4 * u3 +
              (C2(-9) * v6 + C2(24) * v4 + C2(11) * v2) * u2 +
              (C2(-54) * v6 - C2(36) * v4 - C2(6) * v2) * u + C2(27) * v8 +
              C2(27) * v6 + C2(9) * v4 - v2 - C2(1));
    default:
      throw std::invalid_argument("r must be in {1,5,7,11}");
  }
}

Rat div_or_pole(const Rat& num, const Rat& den, const char* name) {
  if (is_zero(den)) throw ChainPole(name);
  return num / den;
}

void put(ChainState& st, const std::string& name, const Rat& val) {
  st.ledger.emplace_back(name, val);
}

// ---- the W(3,1) route shared by r = 1 and r = 7 ----
void route_via_w31(ChainState& st, const Rat& s, const Rat& t) {
  Rat p = div_or_pole(-4 * (s - 3) * (s + 1) * (3 * s - 2 * t - 1) * (3 * s - 2 * t - 1),
                      3 * (s - 1) * (s - 1) * (s - 2 * t - 1) * (3 * s + 2 * t + 1),
                      "3(s-1)^2(s-2t-1)(3s+2t+1)");
  Rat qp = div_or_pole(8 * s * (t - 1), 3 * (s - 1) * (s - 2 * t - 1),
                       "3(s-1)(s-2t-1)");
  Rat g4p = div_or_pole(4 * s * (s - 3) * (3 * s - 2 * t - 1),
                        (s - 1) * (s - 2 * t - 1) * (3 * s + 2 * t + 1),
                        "(s-1)(s-2t-1)(3s+2t+1)");
  put(st, "p", p);
  put(st, "q'", qp);
  put(st, "gamma4'", g4p);
  Rat q = div_or_pole((g4p * g4p - 3 * p + 4 * g4p - 8) * qp - 2 * p * g4p -
                          4 * p + 4 * g4p - 16,
                      6 * g4p, "6*gamma4'");
  put(st, "q", q);
  Rat q2 = q * q;
  Rat c = div_or_pole(p * p * p * q + 6 * p * p * q2 + 9 * p * q2 * q +
                          12 * p * q2 - 12 * p * q + 9 * q2 * q2 +
                          12 * q2 * q - 24 * q2 - 16 * q + 16,
                      2 * q2 * (3 * q2 + 4), "2q^2(3q^2+4)");
  Rat d = div_or_pole(Rat(2), q, "q");
  Rat b4p = div_or_pole(p, q, "q");
  put(st, "c", c);
  put(st, "d", d);
  put(st, "beta4'", b4p);
  Rat a = c;
  Rat b = (d * d - 1) / 2;
  put(st, "a", a);
  put(st, "b", b);
  put(st, "alpha4'", d);
  Rat e1 = -2 * a * b + b * b - 4 * a - 4 * b;
  Rat e2 = -a * b + b * b - 2 * a - 2 * b;
  Rat e3 = a * a * b - 2 * a * b * b + b * b * b + 2 * a * a + a * b -
           2 * b * b + a + b;
  Rat den = (2 * b + 1) * (2 * b + 1) * (2 * b + 1) * e2 * e2;
  st.jj = div_or_pole(-e1 * e1 * e1, den, "(2b+1)^3(-ab+b^2-2a-2b)^2");
  st.jm = div_or_pole((b + 2) * (b + 2) * e3 * e3, den,
                      "(2b+1)^3(-ab+b^2-2a-2b)^2");
  Rat alpha4 = div_or_pole(-(b + 2) * e3, (2 * b + 1) * (2 * b + 1) * e2,
                           "(2b+1)^2(-ab+b^2-2a-2b)") * d;
  put(st, "alpha4", alpha4);
  Rat d2 = d * d, d3 = d2 * d, d4 = d2 * d2;
  Rat bnum = (d4 - 4 * c * d2 - 10 * d2 - 12 * c + 9) *
             ((d2 - 2 * d - 3) * b4p - d4 + 2 * c * d2 + 2 * d3 + 6 * d2 +
              6 * c - 6 * d - 9);
  Rat bden = 2 * d3 * (d4 - 2 * c * d2 - 6 * d2 - 6 * c + 5);
  Rat beta4 = div_or_pole(bnum, bden, "2d^3(d^4-2cd^2-6d^2-6c+5)");
  beta4 = div_or_pole(beta4, b4p, "beta4'");
  put(st, "beta4", beta4);
  Rat gn = 2 * p * p * p * q + 12 * p * p * q2 + 18 * p * q2 * q + 9 * q2 * q2 +
           24 * p * q2 + 24 * q2 * q - 24 * p * q - 8 * q2 - 32 * q + 16;
  Rat gden = 64 * (p + 4 * q - 4) * (p + q + 2) * (p + q + 2) * (p + q + 2);
  Rat gamma4 = div_or_pole(gn * gn, gden, "64(p+4q-4)(p+q+2)^3") * g4p;
  put(st, "gamma4", gamma4);
  put(st, "delta4", 3 * (st.jj - (alpha4 + 1) * (alpha4 + 1)));
}

// ---- the W(4,r) route shared by r = 5 and r = 11 ----
Rat h1(const Rat& s, const Rat& t) {
  return s * s * s + (3 * t + 6) * s * s + (3 * t * t + 12 * t + 12) * s +
         3 * t * t * t + 6 * t * t + 12 * t + 8;
}
Rat h2(const Rat& s, const Rat& t) {
  return 4 * s * s * s + 4 * s * s * t - 3 * s * t * t - 2 * s * t - 6 * s -
         3 * t * t * t - 2 * t + 2;
}
Rat h3(const Rat& s, const Rat& t) {
  return 2 * s * s * s * s + (4 * t + 4) * s * s * s +
         (5 * t * t + 18 * t + 12) * s * s +
         (6 * t * t * t + 20 * t * t + 24 * t + 10) * s + 3 * t * t * t * t +
         6 * t * t * t + 11 * t * t + 8 * t - 1;
}

void route_via_w4r(ChainState& st, const Rat& s, const Rat& t) {
  Rat H1 = h1(s, t), H2 = h2(s, t), H3 = h3(s, t);
  Rat c = div_or_pole(6 * (s + t) * H1, H3, "h3(s,t)");
  Rat d = div_or_pole(t, s + t + 2, "s+t+2");
  Rat sq = (s + t + 2) * (s + t + 2);
  // the printed tuple runs theta' and beta3' together; the quadric
  // relations pin the reading down (theta' is the 2 h1 h2 fraction)
  Rat thp = div_or_pole(2 * H1 * H2, sq * H3, "(s+t+2)^2 h3");
  Rat b3p = div_or_pole(-4 * (s - 1) * (s * s + s * t + s + 2 * t + 1) * H1,
                        sq * H3, "(s+t+2)^2 h3");
  put(st, "c", c);
  put(st, "d", d);
  put(st, "beta3'", b3p);
  put(st, "theta'", thp);
  Rat d2 = d * d, d3 = d2 * d;
  Rat a = div_or_pole(-c * d3 + 8 * d3 + 4, 2 * (c + 2 * d3 + 1), "2(c+2d^3+1)");
  Rat b = div_or_pole(-c + 2 * d3 + 1, c + 2 * d3 + 1, "c+2d^3+1");
  Rat a3p = div_or_pole(-c * d2, c + 2 * d3 + 1, "c+2d^3+1");
  put(st, "a", a);
  put(st, "b", b);
  put(st, "alpha3'", a3p);
  Rat e1 = -2 * a * b + b * b + 2 * a + 2 * b;
  Rat e2 = -a + b + 1;
  Rat e3 = a * a * b + 2 * a * b * b + b * b * b - a * a + b * b - 2 * a + b + 1;
  Rat den = (b - 1) * (b - 1) * e2 * e2 * e2 * e2;
  st.jj = div_or_pole(16 * e1 * e1 * e1, 27 * den, "27(b-1)^2(-a+b+1)^4");
  st.jm = div_or_pole(e3 * e3, den, "(b-1)^2(-a+b+1)^4");
  Rat alpha3 =
      div_or_pole(2 * e1, 3 * (b - 1) * e2 * e2, "3(b-1)(-a+b+1)^2") * a3p;
  put(st, "alpha3", alpha3);
  Rat twod1 = 2 * d3 + 1;
  Rat g1 = 8 * twod1 * (c * c - 6 * c + 9 * twod1);
  Rat g2 = (3 * d2 * d2 - 8 * d3 - 4) * c * c + 24 * (d2 + 1) * twod1 * c +
           12 * twod1 * twod1;
  Rat g3num = d3 * d3 * c * c * c - 8 * twod1 * twod1 * c * c +
              48 * twod1 * twod1 * c - 8 * twod1 * twod1 * twod1;
  Rat g3 = div_or_pole(g3num, c * c * c * c * d2 * d2 * d2 * d2, "c^4 d^8");
  Rat lift_den = 3 * (b3p + 2 * twod1);
  Rat theta = div_or_pole(
      g3 * g3 * (g1 * thp + g2 * b3p + 2 * twod1 * g2), lift_den,
      "3(beta3'+2(2d^3+1))");
  Rat beta3 = div_or_pole(
      g3 * (-3 * (d2 * c + 4 * twod1) * b3p +
            2 * twod1 * (2 * c * c - 3 * (d2 + 4) * c + 6 * twod1)),
      lift_den, "3(beta3'+2(2d^3+1))");
  put(st, "theta", theta);
  put(st, "beta3", beta3);
}

}  // namespace

const QPoly& surface_polynomial(int r) {
  static const QPoly f1 = build_surface(1);
  static const QPoly f5 = build_surface(5);
  static const QPoly f7 = build_surface(7);
  static const QPoly f11 = build_surface(11);
  switch (r) {
    case 1: return f1;
    case 5: return f5;
    case 7: return f7;
    case 11: return f11;
  }
  throw std::invalid_argument("r must be in {1,5,7,11}");
}

Rat surface_value(int r, const Rat& u, const Rat& v) {
  const std::array<Rat, 2> xs{u, v};
  return surface_polynomial(r).eval(xs);
}

bool on_surface(int r, const Rat& u, const Rat& v, const Rat& z) {
  return surface_value(r, u, v) == z * z;
}

const Rat& ChainState::at(const std::string& name) const {
  for (const auto& [n, val] : ledger)
    if (n == name) return val;
  throw std::out_of_range("chain value not present: " + name);
}

bool ChainState::has(const std::string& name) const {
  for (const auto& [n, val] : ledger)
    if (n == name) return true;
  return false;
}

ChainState chain(int r, const Rat& u, const Rat& v) {
  ChainState st;
  st.r = r;
  st.u = u;
  st.v = v;
  Rat u2 = u * u, v2 = v * v;
  switch (r) {
    case 1: {
      Rat den1 = u * v2 + u + 4 * v2;
      Rat den2 = 2 * u + v2 + 3;
      Rat s = div_or_pole(-2 * u2 - u * v2 - u + 4 * v2, den1, "uv^2+u+4v^2");
      Rat t = div_or_pole(2 * u2 * v2 - 4 * u2 + u * v2 * v2 - 6 * u * v2 -
                              3 * u - 8 * v2 * v2,
                          den2 * den1, "(2u+v^2+3)(uv^2+u+4v^2)");
      Rat wp = div_or_pole(
          36 * v * (u + 2) * (u + v2 + 1) * (u + 2 * v2) *
              (2 * u2 + u * v2 + u - 4 * v2) * (2 * u2 + u * v2 + u - 4 * v2),
          den2 * den2 * den1 * den1 * den1, "(2u+v^2+3)^2(uv^2+u+4v^2)^3");
      put(st, "s", s);
      put(st, "t", t);
      put(st, "w'", wp);
      route_via_w31(st, s, t);
      break;
    }
    case 7: {
      Rat den = u2 * u + u2 - u * v2 - 3 * u - v2 + 1;
      Rat s = div_or_pole((u - 1) * (u2 - v2 + 4 * u + 1), den,
                          "u^3+u^2-uv^2-3u-v^2+1");
      Rat t = div_or_pole(u2 * u - u * v2 + 7 * u2 - v2 + 9 * u + 1, den,
                          "u^3+u^2-uv^2-3u-v^2+1");
      Rat wp = div_or_pole(36 * u * v * (u + 2) * (u2 + 4 * u - v2 + 1),
                           den * den, "(u^3+u^2-uv^2-3u-v^2+1)^2");
      put(st, "s", s);
      put(st, "t", t);
      put(st, "w'", wp);
      route_via_w31(st, s, t);
      break;
    }
    case 5: {
      Rat den = u2 - 2 * u - v2;
      Rat s = div_or_pole(-u2 + v2 + 2 * u - 2, den, "u^2-2u-v^2");
      Rat t = div_or_pole(2 * u - 2, den, "u^2-2u-v^2");
      Rat wp = div_or_pole(2 * v, den, "u^2-2u-v^2");
      put(st, "s", s);
      put(st, "t", t);
      put(st, "w'", wp);
      route_via_w4r(st, s, t);
      break;
    }
    case 11: {
      Rat den1 = u * v2 + u + v2 + 1;
      Rat s = div_or_pole(-u * v2 + u - 3 * v2 - 1, den1, "uv^2+u+v^2+1");
      Rat t = div_or_pole(-u + 1, u + 1, "u+1");
      Rat wp = div_or_pole(2 * v, v2 + 1, "v^2+1");
      put(st, "s", s);
      put(st, "t", t);
      put(st, "w'", wp);
      route_via_w4r(st, s, t);
      break;
    }
    default:
      throw std::invalid_argument("r must be in {1,5,7,11}");
  }
  return st;
}

std::optional<std::string> chain_defect(const ChainState& st) {
  const Rat s = st.at("s"), t = st.at("t"), wp = st.at("w'");
  auto bad = [](const char* n) { return std::optional<std::string>(n); };
  if (st.r == 1) {
    if (wp * wp != 3 * s * (t - 1) * (-s + 2 * t + 1) * (3 * s + 2 * t + 1) *
                       (s * t + 2 * s - 2 * t - 1))
      return bad("w'^2 surface relation");
  } else if (st.r == 7) {
    if (wp * wp !=
        3 * (t - 1) *
            (-9 * s * s * s + 12 * s * s * t + 4 * s * t * t + 15 * s * s +
             4 * s * t - 12 * t * t + s - 12 * t - 3))
      return bad("w'^2 surface relation");
  } else if (st.r == 5) {
    if (wp * wp != -s * s + t * t + 1) return bad("w'^2 surface relation");
  } else {
    if (wp * wp != -(s + t) * (s + t + 2)) return bad("w'^2 surface relation");
  }
  if (st.r == 1 || st.r == 7) {
    const Rat p = st.at("p"), qp = st.at("q'"), g4p = st.at("gamma4'");
    if (3 * qp * qp - 2 * g4p * qp + 8 * qp + p + 4 != 0)
      return bad("W+(12,1) quadric");
    const Rat c = st.at("c"), d = st.at("d"), b4p = st.at("beta4'");
    Rat d2 = d * d, d4 = d2 * d2;
    if (b4p * b4p * b4p + 6 * b4p * b4p - 3 * (d + 1) * (d - 3) * b4p -
            (2 * c * d2 + 6 * c - d4 + 2 * d2 * d + 6 * d2 - 6 * d - 9) !=
        0)
      return bad("W(6,1) cubic");
    const Rat a4p = st.at("alpha4'"), b = st.at("b");
    if (a4p * a4p != 2 * b + 1) return bad("alpha4' square relation");
    const Rat alpha4 = st.at("alpha4"), beta4 = st.at("beta4"),
              gamma4 = st.at("gamma4");
    if (alpha4 * alpha4 != st.jm) return bad("alpha4^2 = (J-1)(J'-1)");
    if (beta4 * beta4 * beta4 - 3 * st.jj * beta4 -
            2 * st.jj * (alpha4 + 1) != 0)
      return bad("beta4 cubic");
    Rat g2 = gamma4 * gamma4;
    if (g2 * g2 - 6 * st.jj * beta4 * g2 - 16 * st.jj * st.jj * gamma4 +
            3 * st.jj * st.jj * (4 * st.jj - beta4 * beta4) != 0)
      return bad("gamma4 quartic");
  } else {
    const Rat c = st.at("c"), d = st.at("d"), b3p = st.at("beta3'"),
              thp = st.at("theta'");
    Rat d2 = d * d, d3 = d2 * d, d4 = d2 * d2, d5 = d4 * d;
    if (2 * b3p * b3p - 2 * b3p * thp - thp * thp +
            (-8 * d3 - 4) * b3p + (-8 * d3 - 4) * thp + c * c * d4 -
            8 * c * d5 - 4 * c * d2 !=
        0)
      return bad("W+(12,5) quadric 1");
    if (-3 * b3p * b3p + 3 * thp * thp - 6 * c * d2 * b3p - 3 * c * c * d4 +
            8 * c * c * d3 - 48 * c * d3 + 4 * c * c - 24 * c !=
        0)
      return bad("W+(12,5) quadric 2");
    const Rat a3p = st.at("alpha3'"), a = st.at("a"), b = st.at("b");
    if (a3p * a3p * a3p != 2 * (b - 1) * (-a + b + 1) * (-a + b + 1))
      return bad("alpha3' cube relation");
    const Rat alpha3 = st.at("alpha3"), theta = st.at("theta"),
              beta3 = st.at("beta3");
    if (alpha3 * alpha3 * alpha3 != st.jj) return bad("alpha3^3 = JJ'");
    if (beta3 * beta3 != theta) return bad("beta3^2 = theta");
    if (theta * theta - 6 * (alpha3 + 1) * st.jm * theta -
            8 * st.jm * st.jm * beta3 -
            3 * (alpha3 - 1) * (alpha3 - 1) * st.jm * st.jm !=
        0)
      return bad("theta quadric");
  }
  return std::nullopt;
}

JPair jpair(int r, const Rat& u, const Rat& v, const Rat& z) {
  if (!on_surface(r, u, v, z)) throw NotASquare("point not on the surface");
  ChainState st = chain(r, u, v);
  Rat sigma = st.jj + 1 - st.jm;      // J + J'
  Rat disc = sigma * sigma - 4 * st.jj;
  auto root = is_square(disc);
  if (!root) throw NotASquare("(J - J')^2 is not a rational square");
  Rat J1 = (sigma + *root) / 2, J2 = (sigma - *root) / 2;
  Rat j1 = 1728 * J1, j2 = 1728 * J2;
  if (is_zero(j1) || j1 == 1728 || is_zero(j2) || j2 == 1728)
    throw DegenerateJ("j-invariant in {0, 1728}");
  if (j2 < j1) std::swap(j1, j2);
  return {j1, j2};
}

namespace {

struct HeckeRow {
  int m;
  Rat (*val)(int sign, const Rat& u, const Rat& v);
};

Rat S(int s) { return Rat(s); }

const std::vector<HeckeRow>& hecke_table(int r) {
  static const std::vector<HeckeRow> t1 = {
      {13, [](int s, const Rat& u, const Rat& v) -> Rat { return S(s) * v + 1; }},
      {25, [](int s, const Rat& u, const Rat& v) -> Rat {
         return 2 * u + v * v + S(s) * 2 * v + 1;
       }},
      {37, [](int s, const Rat& u, const Rat& v) -> Rat {
         return 2 * u * u + (v * v + S(s) * 2 * v + 1) * u + S(s) * v * v * v -
                3 * v * v + S(s) * 3 * v - 1;
       }},
      {49, [](int s, const Rat& u, const Rat& v) -> Rat {
         return 4 * u * u + 2 * (3 * v * v + S(s) * 2 * v + 3) * u +
                v * v * v * v + S(s) * 4 * v * v * v + 6 * v * v +
                S(s) * 4 * v + 1;
       }},
      {61, [](int s, const Rat& u, const Rat& v) -> Rat {
         Rat v2 = v * v, v3 = v2 * v, v4 = v2 * v2, v5 = v4 * v;
         return 4 * u * u * u + 2 * (v2 + S(s) * 2 * v + 5) * u * u +
                (-v4 + S(s) * 6 * v3 - 4 * v2 + S(s) * 10 * v + 5) * u +
                S(s) * v5 - 5 * v4 + S(s) * 10 * v3 - 10 * v2 + S(s) * 5 * v -
                1;
       }},
  };
  static const std::vector<HeckeRow> t5 = {
      {17, [](int s, const Rat& u, const Rat& v) -> Rat { return u + S(s) * v; }},
      {29, [](int s, const Rat& u, const Rat& v) -> Rat {
         return u * u + 2 * u - v * v + S(s) * 2 * v - 4;
       }},
      {41, [](int s, const Rat& u, const Rat& v) -> Rat {
         Rat v2 = v * v, v3 = v2 * v;
         return u * u * u - (S(s) * v - 2) * u * u + (-v2 - 12) * u +
                S(s) * v3 - 2 * v2 + S(s) * 4 * v + 8;
       }},
      {53, [](int s, const Rat& u, const Rat& v) -> Rat {
         Rat v2 = v * v, v3 = v2 * v, v4 = v2 * v2;
         return u * u * u * u - (2 * v2 + S(s) * 4 * v) * u * u +
                (S(s) * 8 * v - 16) * u + v4 + S(s) * 4 * v3 + 8 * v2 + 16;
       }},
  };
  static const std::vector<HeckeRow> t7 = {
      {19, [](int s, const Rat& u, const Rat& v) -> Rat { return 1 + S(s) * v; }},
      {31, [](int s, const Rat& u, const Rat& v) -> Rat {
         return u * u - (S(s) * v - 1) * u + S(s) * 2 * v - 2;
       }},
      {43, [](int s, const Rat& u, const Rat& v) -> Rat {
         return -(S(s) * v - 1) * u * u + (v * v + S(s) * 2 * v + 1) * u +
                2 * v * v - 2;
       }},
      {55, [](int s, const Rat& u, const Rat& v) -> Rat {
         Rat v2 = v * v, v3 = v2 * v, v4 = v2 * v2;
         return (v2 - S(s) * 6 * v + 1) * u * u +
                (-2 * v2 + S(s) * 4 * v - 2) * u - v4 - S(s) * 2 * v3 +
                S(s) * 2 * v + 1;
       }},
  };
  static const std::vector<HeckeRow> t11 = {
      {11, [](int s, const Rat& u, const Rat& v) -> Rat { return 1 + S(s) * v; }},
      {23, [](int s, const Rat& u, const Rat& v) -> Rat {
         return S(s) * v * u + v * v + S(s) * v + 1;
       }},
      {35, [](int s, const Rat& u, const Rat& v) -> Rat {
         Rat v2 = v * v, v3 = v2 * v, v4 = v2 * v2;
         return -(S(s) * v3 + S(s) * 3 * v) * u - v4 + S(s) * 3 * v3 +
                S(s) * v + 1;
       }},
      {47, [](int s, const Rat& u, const Rat& v) -> Rat {
         Rat v2 = v * v, v3 = v2 * v, v4 = v2 * v2;
         return (S(s) * 3 * v3 + 2 * v2 + S(s) * 3 * v) * u + v4 +
                S(s) * v3 + 4 * v2 + S(s) * v + 1;
       }},
      {59, [](int s, const Rat& u, const Rat& v) -> Rat {
         Rat v2 = v * v, v3 = v2 * v, v4 = v2 * v2, v5 = v4 * v;
         return (-3 * v4 + S(s) * 3 * v3 - v2 + S(s) * v) * u + S(s) * v5 +
                8 * v4 + S(s) * 7 * v3 + 11 * v2 + S(s) * 4 * v + 1;
       }},
      {71, [](int s, const Rat& u, const Rat& v) -> Rat {
         Rat v2 = v * v, v3 = v2 * v, v4 = v2 * v2, v5 = v4 * v, v6 = v3 * v3;
         return (S(s) * 7 * v5 + S(s) * 10 * v3 - S(s) * v) * u + v6 -
                S(s) * v5 + 15 * v4 + S(s) * 10 * v3 + 15 * v2 + S(s) * 7 * v +
                1;
       }},
  };
  switch (r) {
    case 1: return t1;
    case 5: return t5;
    case 7: return t7;
    case 11: return t11;
  }
  throw std::invalid_argument("r must be in {1,5,7,11}");
}

}  // namespace

std::vector<int> hecke_membership(int r, const Rat& u, const Rat& v) {
  std::vector<int> out;
  for (const auto& row : hecke_table(r)) {
    if (is_zero(row.val(+1, u, v)) || is_zero(row.val(-1, u, v)))
      out.push_back(row.m);
  }
  return out;
}

namespace {

// truncated power series in eps (order 5) with coefficients in Q[t]
struct EpsSeries {
  std::array<UniPoly, 5> c;

  static EpsSeries constant(const UniPoly& p) {
    EpsSeries s;
    s.c[0] = p;
    return s;
  }
  EpsSeries operator+(const EpsSeries& o) const {
    EpsSeries r;
    for (int i = 0; i < 5; ++i) r.c[i] = c[i] + o.c[i];
    return r;
  }
  EpsSeries operator*(const EpsSeries& o) const {
    EpsSeries r;
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j + i < 5; ++j) r.c[i + j] = r.c[i + j] + c[i] * o.c[j];
    return r;
  }
  EpsSeries pow(int n) const {
    EpsSeries r = constant(UniPoly{Rat(1)});
    for (int i = 0; i < n; ++i) r = r * *this;
    return r;
  }
};

}  // namespace

UniPoly blowdown_coefficient(int r, int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +-1");
  EpsSeries u, v;
  UniPoly expected;
  Rat sg(sign);
  if (r == 5) {
    // u = (3 - eps)/2, v = (sign + sign*eps + eps^2 t)/2
    u.c[0] = UniPoly{Rat(3) / 2};
    u.c[1] = UniPoly{Rat(-1) / 2};
    v.c[0] = UniPoly{sg / 2};
    v.c[1] = UniPoly{sg / 2};
    v.c[2] = UniPoly{Rat(0), Rat(1) / 2};
    expected = UniPoly{Rat(4), sg * Rat(-11), Rat(-1) / 4};
  } else if (r == 7) {
    // u = -eps, v = sign + sign*eps + eps^2 t
    u.c[1] = UniPoly{Rat(-1)};
    v.c[0] = UniPoly{sg};
    v.c[1] = UniPoly{sg};
    v.c[2] = UniPoly{Rat(0), Rat(1)};
    expected = UniPoly{Rat(-27), sg * Rat(52), Rat(4)};
  } else {
    throw std::invalid_argument("blow-down rows exist for r = 5 and 7 only");
  }
  const QPoly& f = surface_polynomial(r);
  EpsSeries acc;
  for (const auto& [e, coef] : f.terms()) {
    EpsSeries term = EpsSeries::constant(UniPoly{coef});
    term = term * u.pow(e[0]) * v.pow(e[1]);
    acc = acc + term;
  }
  for (int k = 0; k < 4; ++k)
    if (!acc.c[k].is_zero())
      throw std::logic_error("blow-down identity failure: eps^" +
                             std::to_string(k) + " coefficient nonzero");
  if (!(acc.c[4] == expected))
    throw std::logic_error("blow-down identity failure: eps^4 mismatch");
  return acc.c[4];
}

namespace {

std::vector<Rat> rationals_of_height(long bound, bool nonnegative) {
  std::vector<Rat> out;
  for (long den = 1; den <= bound; ++den)
    for (long num = nonnegative ? 0 : -bound; num <= bound; ++num) {
      if (std::max(std::abs(num), den) > bound) continue;
      Int g;
      mpz_gcd_ui(g.get_mpz_t(), Int(num).get_mpz_t(), den);
      if (g != 1) continue;
      out.push_back(make_rat(num, den));
    }
  std::sort(out.begin(), out.end());
  return out;
}

void annotate(int r, SearchHit& hit, const SearchOptions& opt) {
  if (opt.hecke) hit.hecke = hecke_membership(r, hit.u, hit.v);
  if (!opt.annotate) return;
  try {
    JPair jp = jpair(r, hit.u, hit.v, hit.z);
    hit.jp = jp;
    if (is_cm_j(jp.j1) || is_cm_j(jp.j2)) {
      hit.note = "cm-j-invariant";
      return;
    }
    Rat f1 = jp.j1 / (jp.j1 - 1728), f2 = jp.j2 / (jp.j2 - 1728);
    WeierstrassCurve e1 = WeierstrassCurve::short_form(-27 * f1, -54 * f1);
    WeierstrassCurve e2 = WeierstrassCurve::short_form(-27 * f2, -54 * f2);
    hit.noniso_prime = non_isogeny_witness(e1, e2, opt.noniso_bound);
  } catch (const ChainPole& ex) {
    hit.note = ex.what();
  } catch (const NotASquare& ex) {
    hit.note = ex.what();
  } catch (const DegenerateJ& ex) {
    hit.note = ex.what();
  }
}

}  // namespace

std::vector<SearchHit> search(int r, long height_bound, const SearchOptions& opt) {
  if (height_bound < 1) throw std::invalid_argument("height bound >= 1");
  const std::vector<Rat> us = rationals_of_height(height_bound, false);
  const std::vector<Rat> vs = rationals_of_height(height_bound, true);
  const int workers = std::max(1, opt.workers);
  std::vector<std::vector<SearchHit>> buckets(us.size());
  std::atomic<size_t> next{0};
  auto body = [&] {
    for (size_t i = next.fetch_add(1); i < us.size(); i = next.fetch_add(1)) {
      const Rat& u = us[i];
      for (const Rat& v : vs) {
        Rat f = surface_value(r, u, v);
        auto z = is_square(f);
        if (!z) continue;
        SearchHit hit;
        hit.u = u;
        hit.v = v;
        hit.z = *z;
        Int hu = height(u), hv = height(v);
        hit.height = (hu > hv ? hu : hv).get_si();
        annotate(r, hit, opt);
        buckets[i].push_back(std::move(hit));
      }
    }
  };
  if (workers == 1) {
    body();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(body);
    for (auto& th : pool) th.join();
  }
  std::vector<SearchHit> out;
  for (auto& b : buckets)
    for (auto& h : b) out.push_back(std::move(h));
  std::sort(out.begin(), out.end(), [](const SearchHit& a, const SearchHit& b) {
    if (a.height != b.height) return a.height < b.height;
    if (a.u != b.u) return a.u < b.u;
    return a.v < b.v;
  });
  return out;
}

std::string search_hit_jsonl(int r, const SearchHit& h) {
  nlohmann::json j;
  j["r"] = r;
  j["u"] = rat_str(h.u);
  j["v"] = rat_str(h.v);
  j["z"] = rat_str(h.z);
  j["height"] = h.height;
  j["hecke"] = h.hecke;
  if (h.jp) {
    j["j1"] = rat_str(h.jp->j1);
    j["j2"] = rat_str(h.jp->j2);
  }
  if (h.noniso_prime) j["nonisogeny_prime"] = *h.noniso_prime;
  if (!h.note.empty()) j["note"] = h.note;
  return j.dump();
}

}  // namespace conglab
