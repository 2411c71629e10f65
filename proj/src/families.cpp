#include "conglab/families.hpp"

namespace conglab {

namespace {

UniPoly P(std::vector<long> coeffs) {  // constant term first
  std::vector<Rat> c;
  c.reserve(coeffs.size());
  for (long v : coeffs) c.emplace_back(v);
  return UniPoly(std::move(c));
}

UniPoly from_degrees(std::vector<std::pair<int, const char*>> terms) {
  UniPoly acc;
  for (const auto& [deg, cs] : terms) acc = acc + UniPoly::monomial(deg, Rat(Int(cs)));
  return acc;
}

FamilySpec make_ex121() {
  FamilySpec f;
  f.name = "ex121";
  f.n = 12;
  f.r = 1;
  UniPoly p = P({16, 160, 736, 2000, 3652, 4792, 4964, 4128, 2808, 1530, 693, 234, 36});
  UniPoly q = P({64, 1024, 7840, 37728, 127472, 320528, 622592, 960528, 1208628,
                 1270440, 1137762, 875862, 581103, 330453, 159111, 63720, 20196,
                 4320, 432});
  UniPoly pp = P({144, 288, 288, -1008, 900, -6600, 2612, -86384, 177280,
                  -206878, 230581, -97238, 55396});
  UniPoly qp = from_degrees({{0, "1728"}, {1, "6912"}, {2, "14688"}, {3, "-4320"},
                             {4, "-17712"}, {5, "-137808"}, {6, "531072"},
                             {7, "1350576"}, {8, "2972844"}, {9, "-7544088"},
                             {10, "7345854"}, {11, "-36145662"}, {12, "71325401"},
                             {13, "-163049017"}, {14, "236336753"},
                             {15, "-207914808"}, {16, "165178492"},
                             {17, "-62137376"}, {18, "26076112"}});
  UniPoly t2p1 = P({1, 0, 1});                 // t^2 + 1
  UniPoly quad = P({1, 2, 4});                 // 4t^2 + 2t + 1
  UniPoly c = t2p1 * quad;
  UniPoly c2 = t2p1 * t2p1 * quad;
  f.a_num = c * p * Rat(-3);
  f.a_den = UniPoly{Rat(1)};
  f.b_num = c2 * q * Rat(-2);
  f.b_den = UniPoly{Rat(1)};
  f.ap_num = c * pp * Rat(-3);
  f.ap_den = UniPoly{Rat(1)};
  f.bp_num = c2 * qp * Rat(2);
  f.bp_den = UniPoly{Rat(1)};
  return f;
}

FamilySpec make_ex127() {
  FamilySpec f;
  f.name = "ex127";
  f.n = 12;
  f.r = 7;
  UniPoly p = from_degrees({{0, "2187"}, {2, "53946"}, {4, "-15795"},
                            {6, "15093"}, {8, "-7533"}, {10, "2889"},
                            {12, "-729"}, {14, "135"}, {16, "-18"}, {18, "1"}});
  UniPoly q = from_degrees({{0, "-59049"}, {2, "3483891"}, {4, "4183731"},
                            {6, "-3133971"}, {8, "1337715"}, {10, "-141345"},
                            {12, "-109350"}, {14, "85158"}, {16, "-35559"},
                            {18, "10341"}, {20, "-2133"}, {22, "309"},
                            {24, "-27"}, {26, "1"}});
  UniPoly pp = from_degrees({{0, "177147"}, {2, "-354294"}, {4, "295245"},
                             {6, "-177147"}, {8, "78003"}, {10, "-22599"},
                             {12, "5031"}, {14, "-585"}, {16, "222"}, {18, "1"}});
  UniPoly qp = from_degrees({{0, "-43046721"}, {2, "129140163"}, {4, "-164215269"},
                             {6, "125951517"}, {8, "-67847301"}, {10, "25922511"},
                             {12, "-6897798"}, {14, "984150"}, {16, "141345"},
                             {18, "-148635"}, {20, "38691"}, {22, "-5739"},
                             {24, "-531"}, {26, "1"}});
  UniPoly f1 = P({9, 0, -3, 0, 1}) * P({3, 0, 1});   // (t^4-3t^2+9)(t^2+3)
  UniPoly f2 = P({3, 0, 0, 0, 1}) * P({27, 0, 0, 0, 1});
  f.a_num = f1 * p * Rat(-3);
  f.a_den = f2;
  f.b_num = f1 * q * Rat(-2);
  f.b_den = f2;
  f.ap_num = f1 * f2 * pp * Rat(-3);
  f.ap_den = UniPoly{Rat(1)};
  f.bp_num = f1 * f2 * f2 * qp * Rat(-2);
  f.bp_den = UniPoly{Rat(1)};
  return f;
}

FamilySpec make_ex1211() {
  FamilySpec f;
  f.name = "ex1211";
  f.n = 12;
  f.r = 11;
  UniPoly g1 = P({-27, 0, 27, 0, 63, 0, 25});        // 25t^6+63t^4+27t^2-27
  UniPoly g2 = P({-27, 0, 3, 0, 15, 0, 1});
  UniPoly g3 = P({81, 0, 0, 0, -78, 0, -24, 0, 5});  // 5t^8-24t^6-78t^4+81
  UniPoly d1 = P({-27, 0, -18, 0, 1});
  UniPoly d2 = P({-3, 0, 6, 0, 1});
  UniPoly pp = from_degrees({{0, "6561"}, {2, "1458"}, {4, "-13851"},
                             {6, "-332424"}, {8, "-500526"}, {10, "-367092"},
                             {12, "-138942"}, {14, "-16200"}, {16, "-1971"},
                             {18, "18"}, {20, "25"}});
  UniPoly qp = from_degrees({{0, "-1594323"}, {4, "7558272"}, {6, "-163447632"},
                             {8, "-233440380"}, {10, "288404064"},
                             {12, "1733188752"}, {14, "3140007120"},
                             {16, "3069524646"}, {18, "1821351744"},
                             {20, "693690912"}, {22, "173317968"},
                             {24, "25070580"}, {26, "878688"}, {28, "94800"},
                             {30, "30000"}, {32, "3125"}});
  f.a_num = g1 * g2 * Rat(-3);
  f.a_den = d1 * d2;
  f.b_num = g1 * g3 * Rat(-2);
  f.b_den = d1 * d2;
  f.ap_num = d1 * d2 * pp * Rat(-3);
  f.ap_den = UniPoly{Rat(1)};
  f.bp_num = d1 * d1 * d2 * d2 * qp * Rat(-2);
  f.bp_den = g1;
  return f;
}

}  // namespace

const FamilySpec& family_spec(const std::string& name) {
  static const FamilySpec ex121 = make_ex121();
  static const FamilySpec ex127 = make_ex127();
  static const FamilySpec ex1211 = make_ex1211();
  if (name == "ex121") return ex121;
  if (name == "ex127") return ex127;
  if (name == "ex1211") return ex1211;
  throw std::invalid_argument("unknown family: " + name);
}

const std::vector<std::string>& family_names() {
  static const std::vector<std::string> names{"ex121", "ex127", "ex1211"};
  return names;
}

std::pair<WeierstrassCurve, WeierstrassCurve> family_pair(
    const std::string& name, const Rat& t) {
  const FamilySpec& f = family_spec(name);
  auto ratio = [&](const UniPoly& num, const UniPoly& den) {
    Rat d = den.eval(t);
    if (is_zero(d)) throw BadParameter("pole at t = " + rat_str(t));
    return num.eval(t) / d;
  };
  try {
    WeierstrassCurve e =
        WeierstrassCurve::short_form(ratio(f.a_num, f.a_den), ratio(f.b_num, f.b_den));
    WeierstrassCurve ep = WeierstrassCurve::short_form(ratio(f.ap_num, f.ap_den),
                                                       ratio(f.bp_num, f.bp_den));
    return {integralize(e), integralize(ep)};
  } catch (const SingularCurve&) {
    throw BadParameter("singular fibre at t = " + rat_str(t));
  }
}

std::pair<WeierstrassCurve, WeierstrassCurve> intro_pair() {
  WeierstrassCurve e(Rat(1), Rat(0), Rat(0), Rat(-21666120), Rat(Int("-57035036608")));
  WeierstrassCurve ep(Rat(1), Rat(0), Rat(0), Rat(398520965), Rat(Int("166506419482597")));
  return {e, ep};
}

bool k3_section_check(const Rat& t) {
  static const UniPoly acoef = P({9, 0, -186, 0, 859, 0, 46, 0, 1}) * Rat(-27);
  static const UniPoly bcoef =
      P({27, 0, 621, 0, -7848, 0, 24731, 0, 2082, 0, 69, 0, 1}) * Rat(-54);
  static const UniPoly xnum = P({54, 0, -27, 0, 450, 0, 37, 0, 2}) * Rat(3);
  Rat den = (t * t - 3) * (t * t - 3);
  if (is_zero(den)) throw BadParameter("section pole at t^2 = 3");
  Rat x = xnum.eval(t) / den;
  Rat val = x * x * x + acoef.eval(t) * x + bcoef.eval(t);
  return is_square(val).has_value();
}

namespace {
// eta^2 = xi^3 - xi^2 - 16 xi + 16, i.e. a2 = -1, a4 = -16, a6 = 16
Rat curve_c_rhs(const Rat& xi) { return xi * xi * xi - xi * xi - 16 * xi + 16; }
}  // namespace

CurveCPoint CurveCPoint::affine(const Rat& xi, const Rat& eta) {
  CurveCPoint p;
  p.coords = {xi, eta};
  return p;
}

bool curve_c_contains(const CurveCPoint& p) {
  if (p.is_infinity()) return true;
  const auto& [xi, eta] = *p.coords;
  return eta * eta == curve_c_rhs(xi);
}

CurveCPoint curve_c_add(const CurveCPoint& p, const CurveCPoint& q) {
  if (!curve_c_contains(p) || !curve_c_contains(q))
    throw std::invalid_argument("point not on the curve");
  if (p.is_infinity()) return q;
  if (q.is_infinity()) return p;
  const auto& [x1, y1] = *p.coords;
  const auto& [x2, y2] = *q.coords;
  Rat lambda;
  if (x1 == x2) {
    if (y1 == -y2) return CurveCPoint::infinity();
    // tangent: (3x^2 - 2x - 16) / 2y
    lambda = (3 * x1 * x1 - 2 * x1 - 16) / (2 * y1);
  } else {
    lambda = (y2 - y1) / (x2 - x1);
  }
  Rat x3 = lambda * lambda + 1 - x1 - x2;  // a2 = -1
  Rat y3 = lambda * (x1 - x3) - y1;
  return CurveCPoint::affine(x3, y3);
}

CurveCPoint curve_c_double(const CurveCPoint& p) { return curve_c_add(p, p); }

std::vector<CurveCPoint> curve_c_small_multiples(const CurveCPoint& p, int k) {
  std::vector<CurveCPoint> out;
  CurveCPoint acc = CurveCPoint::infinity();
  for (int i = 1; i <= k; ++i) {
    acc = curve_c_add(acc, p);
    out.push_back(acc);
  }
  return out;
}

}  // namespace conglab
