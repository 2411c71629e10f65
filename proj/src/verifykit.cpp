#include "conglab/verifykit.hpp"

#include <deque>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "conglab/congruence.hpp"
#include "conglab/moduli.hpp"

namespace conglab {

namespace {

QPoly X0() { return QPoly::var(2, 0); }
QPoly X1() { return QPoly::var(2, 1); }
QPoly K2(long n) { return QPoly::constant(2, Rat(n)); }
QPoly K4(long n) { return QPoly::constant(4, Rat(n)); }

LevelForms make_forms(int n) {
  QPoly x0 = X0(), x1 = X1();
  switch (n) {
    case 2:
      return {x0 * (K2(64) * x0 * x0 - x1 * x1),
              K2(192) * x0 * x0 + x1 * x1,
              x1 * (K2(576) * x0 * x0 - x1 * x1)};
    case 3: {
      QPoly x03 = x0 * x0 * x0, x13 = x1 * x1 * x1;
      return {-x0 * (K2(27) * x03 + x13),
              -x1 * (K2(216) * x03 - x13),
              K2(5832) * x03 * x03 - K2(540) * x03 * x13 - x13 * x13};
    }
    case 4: {
      QPoly x04 = (x0 * x0) * (x0 * x0), x14 = (x1 * x1) * (x1 * x1);
      QPoly x08 = x04 * x04, x18 = x14 * x14;
      return {x0 * x1 * (K2(16) * x04 - x14),
              K2(256) * x08 + K2(224) * x04 * x14 + x18,
              K2(4096) * x08 * x04 - K2(8448) * x08 * x14 -
                  K2(528) * x04 * x18 + x14 * x18};
    }
  }
  throw std::invalid_argument("level must be 2, 3, or 4");
}

// embed a 2-variable form into 4 variables, unprimed (0,1) or primed (2,3)
QPoly lift(const QPoly& f, bool primed) {
  QPoly r(4);
  for (const auto& [e, c] : f.terms()) {
    QPoly::Exp e4(4, 0);
    e4[primed ? 2 : 0] = e[0];
    e4[primed ? 3 : 1] = e[1];
    r.add_term(e4, c);
  }
  return r;
}

struct FourVars {
  QPoly x0 = QPoly::var(4, 0), x1 = QPoly::var(4, 1);
  QPoly y0 = QPoly::var(4, 2), y1 = QPoly::var(4, 3);
};

BiInvariantTable make_table(int n, int r) {
  const LevelForms& lf = level_forms(n);
  QPoly c4 = lift(lf.c4, false), c4p = lift(lf.c4, true);
  QPoly c6 = lift(lf.c6, false), c6p = lift(lf.c6, true);
  QPoly D = lift(lf.D, false), Dp = lift(lf.D, true);
  FourVars v;
  BiInvariantTable t;
  t.n = n;
  t.r = r;
  if (n == 2) {
    QPoly i11 = K4(192) * v.x0 * v.y0 + v.x1 * v.y1;
    t.names = {"I11", "c4c4'", "DD'", "w0", "w1", "w2"};
    t.basic = {i11, c4 * c4p, D * Dp};
    t.w = {i11.pow(3), K4(2) * i11 * c4 * c4p, K4(1728) * D * Dp};
  } else if (n == 4) {
    QPoly cross = v.x0 * v.y1 - v.x1 * v.y0;
    QPoly i22 = K4(16) * cross * cross;
    QPoly i44 = K4(256) * (v.x0 * v.y0).pow(4) + K4(16) * v.x0.pow(4) * v.y1.pow(4) +
                K4(192) * (v.x0 * v.x1 * v.y0 * v.y1).pow(2) +
                K4(16) * v.x1.pow(4) * v.y0.pow(4) + (v.x1 * v.y1).pow(4);
    t.names = {"I22", "I44", "c4c4'", "DD'", "w0", "w1", "w2", "w3"};
    t.basic = {i22, i44, c4 * c4p, D * Dp};
    t.w = {i44.pow(3), K4(2) * i44 * c4 * c4p, K4(3) * i22.pow(2) * i44.pow(2),
           K4(72) * i22 * i44 * D * Dp};
  } else if (n == 3 && r == 1) {
    QPoly i22 = K4(3) * (K4(54) * (v.x0 * v.y0).pow(2) + v.x0 * v.x1 * v.y1 * v.y1 +
                         v.x1 * v.x1 * v.y0 * v.y1);
    QPoly cross = v.x0 * v.y1 - v.x1 * v.y0;
    QPoly i66 = K4(729) * cross.pow(6);
    t.names = {"I22", "I66", "c6c6'", "DD'", "w0", "w1", "w2", "w3"};
    t.basic = {i22, i66, c6 * c6p, D * Dp};
    t.w = {K4(12) * i66, K4(4) * i22.pow(3), c6 * c6p, K4(144) * i22 * D * Dp};
  } else if (n == 3 && r == 2) {
    QPoly base = K4(18) * v.x0 * v.y0 + v.x1 * v.y1;
    QPoly i22 = base * base;
    t.names = {"I22", "c4c4'", "DD'", "w0", "w1", "w2"};
    t.basic = {i22, c4 * c4p, D * Dp};
    QPoly w0 = (i22.pow(2) * K4(3) - c4 * c4p - K4(144) * D * Dp) * Rat(3, 2);
    t.w = {w0, c4 * c4p, K4(144) * D * Dp};
  } else {
    throw std::invalid_argument("no bi-invariant table for this (N, r)");
  }
  return t;
}

}  // namespace

const LevelForms& level_forms(int n) {
  static const LevelForms f2 = make_forms(2);
  static const LevelForms f3 = make_forms(3);
  static const LevelForms f4 = make_forms(4);
  switch (n) {
    case 2: return f2;
    case 3: return f3;
    case 4: return f4;
  }
  throw std::invalid_argument("level must be 2, 3, or 4");
}

const BiInvariantTable& bi_invariants(int n, int r) {
  static const BiInvariantTable t21 = make_table(2, 1);
  static const BiInvariantTable t31 = make_table(3, 1);
  static const BiInvariantTable t32 = make_table(3, 2);
  static const BiInvariantTable t41 = make_table(4, 1);
  static const BiInvariantTable t43 = make_table(4, 3);
  if (n == 2 && r == 1) return t21;
  if (n == 3 && r == 1) return t31;
  if (n == 3 && r == 2) return t32;
  if (n == 4 && r == 1) return t41;
  if (n == 4 && r == 3) return t43;
  throw std::invalid_argument("no bi-invariant table for this (N, r)");
}

bool verify_klein_relation(int n) {
  const LevelForms& f = level_forms(n);
  QPoly lhs = f.c4.pow(3) - f.c6.pow(2) - QPoly::constant(2, Rat(1728)) * f.D.pow(n);
  return lhs.is_zero();
}

bool verify_jmap_compatibility() {
  const LevelForms& f2 = level_forms(2);
  const LevelForms& f4 = level_forms(4);
  QPoly x0 = X0(), x1 = X1();
  // forgetful X(4) -> X(2): [x0 : x1] -> [-x0^2 x1^2 : 16 x0^4 + x1^4]
  std::array<QPoly, 2> fw{-(x0 * x0) * (x1 * x1),
                          K2(16) * (x0 * x0).pow(2) + (x1 * x1).pow(2)};
  QPoly c4_2 = f2.c4.substitute(fw);
  QPoly d_2 = f2.D.substitute(fw);
  // j4 = j2 o forget, cross-multiplied
  QPoly lhs = f4.c4.pow(3) * d_2.pow(2) - c4_2.pow(3) * f4.D.pow(4);
  return lhs.is_zero();
}

namespace {

struct Target {
  // numerator/denominator pair of a symmetric function written in the w's,
  // checked against (c4c4')^3 / (1728^2 (DD')^N) or (c6c6')^2 / same
  std::string name;
  QPoly num, den;
  bool uses_c6;  // target numerator: (c6c6')^2 if true else (c4c4')^3
  int n;
};

bool check_target(const Target& t, std::string& fail) {
  const LevelForms& lf = level_forms(t.n);
  QPoly c4c4 = lift(lf.c4, false) * lift(lf.c4, true);
  QPoly c6c6 = lift(lf.c6, false) * lift(lf.c6, true);
  QPoly dd = lift(lf.D, false) * lift(lf.D, true);
  QPoly tnum = t.uses_c6 ? c6c6.pow(2) : c4c4.pow(3);
  QPoly tden = K4(1728 * 1728) * dd.pow(t.n);
  if (!(t.num * tden - t.den * tnum).is_zero()) {
    fail = t.name;
    return false;
  }
  return true;
}

}  // namespace

RelationReport verify_surface_relations() {
  RelationReport rep;
  auto fail = [&](const std::string& what) {
    rep.ok = false;
    rep.first_failure = what;
    return rep;
  };

  {  // (2,1): c6c6' = 4w0 - 3/2 w1 - w2
    const auto& t = bi_invariants(2, 1);
    const LevelForms& lf = level_forms(2);
    QPoly c6c6 = lift(lf.c6, false) * lift(lf.c6, true);
    QPoly rel = c6c6 - (t.w[0] * Rat(4) - t.w[1] * Rat(3, 2) - t.w[2]);
    if (!rel.is_zero()) return fail("(2,1) c6c6' relation");
  }
  {  // (4,r): the quadric and c6c6' * w2 = 4 w0 w2 - 3/2 w1 w2 - w3^2
    const auto& t = bi_invariants(4, 1);
    QPoly q = t.w[0].pow(2) * Rat(192) - t.w[0] * t.w[1] * Rat(96) +
              t.w[0] * t.w[3] * Rat(128) + t.w[0] * t.w[2] * Rat(48) -
              t.w[2].pow(2);
    if (!q.is_zero()) return fail("(4,r) quadric");
    const LevelForms& lf = level_forms(4);
    QPoly c6c6 = lift(lf.c6, false) * lift(lf.c6, true);
    QPoly rel = c6c6 * t.w[2] -
                (t.w[0] * t.w[2] * Rat(4) - t.w[1] * t.w[2] * Rat(3, 2) -
                 t.w[3].pow(2));
    if (!rel.is_zero()) return fail("(4,r) c6c6' relation");
  }
  {  // (3,1): the cubic surface relation
    const auto& t = bi_invariants(3, 1);
    const QPoly &w0 = t.w[0], &w1 = t.w[1], &w2 = t.w[2], &w3 = t.w[3];
    QPoly cub = w0.pow(2) * w1 * Rat(8) - w0 * w1.pow(2) * Rat(60) +
                w0 * w1 * w2 * Rat(12) + w0 * w1 * w3 * Rat(36) -
                w1.pow(3) * Rat(9) + w1.pow(2) * w3 * Rat(27) -
                w1 * w3.pow(2) * Rat(27) + w3.pow(3) * Rat(9);
    if (!cub.is_zero()) return fail("(3,1) cubic");
  }

  std::string failed;
  {  // (2,1) JJ' and (J-1)(J'-1) displays
    const auto& t = bi_invariants(2, 1);
    QPoly m = t.w[0] * Rat(4) - t.w[1] * Rat(3, 2) - t.w[2];
    if (!check_target({"(2,1) JJ' display", t.w[1].pow(3),
                       t.w[0] * t.w[2].pow(2) * Rat(8), false, 2}, failed))
      return fail(failed);
    if (!check_target({"(2,1) (J-1)(J'-1) display", m.pow(2), t.w[2].pow(2),
                       true, 2}, failed))
      return fail(failed);
  }
  {  // (4,r) via S(2,1) with [w0 : w1 : w3^2/w2]
    const auto& t = bi_invariants(4, 1);
    if (!check_target({"(4,r) JJ' display", t.w[1].pow(3) * t.w[2].pow(2),
                       t.w[0] * t.w[3].pow(4) * Rat(8), false, 4}, failed))
      return fail(failed);
    QPoly m = t.w[0] * t.w[2] * Rat(4) - t.w[1] * t.w[2] * Rat(3, 2) -
              t.w[3].pow(2);
    if (!check_target({"(4,r) (J-1)(J'-1) display", m.pow(2), t.w[3].pow(4),
                       true, 4}, failed))
      return fail(failed);
  }
  {  // (3,1)
    const auto& t = bi_invariants(3, 1);
    const QPoly &w0 = t.w[0], &w1 = t.w[1], &w2 = t.w[2], &w3 = t.w[3];
    QPoly inner = w0.pow(2) * Rat(4) - w0 * w1 * Rat(192) + w0 * w2 * Rat(12) +
                  w0 * w3 * Rat(72) + w1.pow(2) * Rat(603) -
                  w1 * w2 * Rat(144) - w1 * w3 * Rat(918) + w2.pow(2) * Rat(9) +
                  w2 * w3 * Rat(108) + w3.pow(2) * Rat(351);
    if (!check_target({"(3,1) JJ' display", w1 * inner, w3.pow(3) * Rat(36),
                       false, 3}, failed))
      return fail(failed);
    if (!check_target({"(3,1) (J-1)(J'-1) display", w1 * w2.pow(2),
                       w3.pow(3) * Rat(4), true, 3}, failed))
      return fail(failed);
  }
  {  // (3,2)
    const auto& t = bi_invariants(3, 2);
    const QPoly &w0 = t.w[0], &w1 = t.w[1], &w2 = t.w[2];
    if (!check_target({"(3,2) JJ' display", w1.pow(3), w2.pow(3), false, 3},
                      failed))
      return fail(failed);
    QPoly m = w0.pow(2) - w1.pow(2) * Rat(3) - w1 * w2 * Rat(3) - w2.pow(2) * Rat(3);
    QPoly den = w2.pow(3) * (w0 * Rat(2) + w1 * Rat(3) + w2 * Rat(3)) * Rat(4);
    if (!check_target({"(3,2) (J-1)(J'-1) display", m.pow(2), den, true, 3},
                      failed))
      return fail(failed);
  }
  return rep;
}

// ---- SL2(Z/N) ----

bool ModMatrix::operator<(const ModMatrix& o) const {
  return std::tie(a, b, c, d, mod) < std::tie(o.a, o.b, o.c, o.d, o.mod);
}

ModMatrix ModMatrix::mul(const ModMatrix& o) const {
  auto m = [this](int x) { return ((x % mod) + mod) % mod; };
  return {m(a * o.a + b * o.c), m(a * o.b + b * o.d), m(c * o.a + d * o.c),
          m(c * o.b + d * o.d), mod};
}

ModMatrix ModMatrix::identity(int mod) { return {1, 0, 0, 1, mod}; }

int ModMatrix::det() const { return (((a * d - b * c) % mod) + mod) % mod; }

ModMatrix letter_matrix(Letter l, int mod) {
  auto m = [mod](int x) { return ((x % mod) + mod) % mod; };
  switch (l) {
    case Letter::S: return {0, 1, m(-1), 0, mod};
    case Letter::T: return {1, 1, 0, 1, mod};
    case Letter::Sinv: return {0, m(-1), 1, 0, mod};
    case Letter::Tinv: return {1, m(-1), 0, 1, mod};
  }
  throw std::logic_error("bad letter");
}

ModMatrix conjugate_by_diag(const ModMatrix& m, int r) {
  // diag(r,1) * m * diag(r,1)^-1; r must be a unit mod m.mod
  int mod = m.mod;
  int rinv = -1;
  for (int i = 1; i < mod; ++i)
    if ((i * r) % mod == 1) { rinv = i; break; }
  if (rinv < 0) throw std::invalid_argument("r not a unit");
  auto mm = [mod](long x) { return static_cast<int>(((x % mod) + mod) % mod); };
  return {mm(m.a), mm(static_cast<long>(r) * m.b), mm(static_cast<long>(rinv) * m.c),
          mm(m.d), mod};
}

std::vector<Letter> sl2_word(const ModMatrix& target) {
  if (target.det() != 1) throw std::invalid_argument("target not in SL2");
  const int mod = target.mod;
  ModMatrix id = ModMatrix::identity(mod);
  std::map<ModMatrix, std::pair<ModMatrix, Letter>> parent;  // node -> (prev, letter)
  std::deque<ModMatrix> queue{id};
  parent.emplace(id, std::pair{id, Letter::S});
  const Letter letters[] = {Letter::S, Letter::T, Letter::Sinv, Letter::Tinv};
  while (!queue.empty()) {
    ModMatrix cur = queue.front();
    queue.pop_front();
    if (cur == target) break;
    for (Letter l : letters) {
      ModMatrix nxt = cur.mul(letter_matrix(l, mod));
      if (parent.emplace(nxt, std::pair{cur, l}).second) queue.push_back(nxt);
    }
  }
  if (!parent.count(target)) throw std::invalid_argument("target not generated");
  std::vector<Letter> word;
  ModMatrix cur = target;
  while (!(cur == ModMatrix::identity(mod))) {
    auto [prev, l] = parent.at(cur);
    word.push_back(l);
    cur = prev;
  }
  std::reverse(word.begin(), word.end());
  return word;
}

// ---- the twisted diagonal invariance check over Q(zeta24) ----

namespace {

std::pair<CycloMat, CycloMat> group_generators(int n) {
  auto R = [](long num, long den) { return Cyclo(make_rat(num, den)); };
  if (n == 2) {
    CycloMat s{R(1, 2), R(1, 16), R(12, 1), R(-1, 2)};
    CycloMat t{R(1, 1), R(0, 1), R(0, 1), R(-1, 1)};
    return {s, t};
  }
  if (n == 3) {
    Cyclo f = Cyclo::embed_root("1/sqrt-3");
    CycloMat s{f * R(1, 1), f * R(1, 3), f * R(6, 1), f * R(-1, 1)};
    Cyclo z3 = Cyclo::embed_root("zeta3");
    CycloMat t{z3, Cyclo(0), Cyclo(0), z3 * z3};
    return {s, t};
  }
  if (n == 4) {
    Cyclo f = Cyclo::embed_root("1/sqrt-2");
    CycloMat s{f * R(1, 1), f * R(1, 2), f * R(2, 1), f * R(-1, 1)};
    Cyclo z8 = Cyclo::embed_root("zeta8");
    CycloMat t{z8.inverse(), Cyclo(0), Cyclo(0), z8 * z8 * z8.inverse()};
    return {s, t};
  }
  throw std::invalid_argument("level must be 2, 3, or 4");
}

CycloMat mat_inverse(const CycloMat& m) {
  Cyclo dinv = m.det().inverse();
  return {m.d * dinv, (-m.b) * dinv, (-m.c) * dinv, m.a * dinv};
}

using CPoly = MultiPoly<Cyclo>;

CPoly to_cyclo(const QPoly& f) {
  return f.map_coeffs<Cyclo>([](const Rat& c) { return Cyclo(c); });
}

// substitution images for the pair (g on x, h on x')
std::array<CPoly, 4> pair_substitution(const CycloMat& g, const CycloMat& h) {
  CPoly x0 = CPoly::var(4, 0), x1 = CPoly::var(4, 1);
  CPoly y0 = CPoly::var(4, 2), y1 = CPoly::var(4, 3);
  return {x0 * g.a + x1 * g.b, x0 * g.c + x1 * g.d,
          y0 * h.a + y1 * h.b, y0 * h.c + y1 * h.d};
}

int degree_in(const QPoly& f, int lo, int hi) {
  int d = -1;
  for (const auto& [e, c] : f.terms()) {
    int s = 0;
    for (int i = lo; i <= hi; ++i) s += e[i];
    if (d < 0) d = s;
    else if (d != s) throw std::logic_error("form not bihomogeneous");
  }
  return d;
}

}  // namespace

std::vector<CycloMat> group_closure(int n, size_t cap) {
  auto [s, t] = group_generators(n);
  std::set<CycloMat> seen{CycloMat::identity()};
  std::deque<CycloMat> frontier{CycloMat::identity()};
  const CycloMat gens[] = {s, t};
  while (!frontier.empty()) {
    CycloMat cur = frontier.front();
    frontier.pop_front();
    for (const CycloMat& g : gens) {
      CycloMat nxt = cur * g;
      if (seen.insert(nxt).second) {
        if (seen.size() > cap)
          throw std::runtime_error("group closure exceeded cap");
        frontier.push_back(nxt);
      }
    }
  }
  return {seen.begin(), seen.end()};
}

namespace {

// Is g = c * f for a constant c?  Returns c when so.
std::optional<Cyclo> constant_ratio(const CPoly& g, const CPoly& f) {
  if (f.is_zero()) return std::nullopt;
  const auto& [e0, a0] = *f.terms().begin();
  auto it = g.terms().find(e0);
  if (it == g.terms().end()) return g.is_zero() ? std::nullopt : std::nullopt;
  Cyclo c = it->second * a0.inverse();
  if (g == f * c) return c;
  return std::nullopt;
}

bool is_root_of_unity_24(const Cyclo& c) {
  Cyclo p(1);
  for (int i = 0; i < 24; ++i) p = p * c;
  return p == Cyclo(1);
}

}  // namespace

BiInvarianceReport verify_biinvariance(int n, int r) {
  BiInvarianceReport rep;
  const BiInvariantTable& table = bi_invariants(n, r);
  std::vector<CycloMat> group = group_closure(n);
  rep.group_size = group.size();
  for (const CycloMat& m : group)
    if (m.is_scalar()) rep.scalars.push_back(m.a);

  auto fail = [&](const std::string& what) {
    rep.ok = false;
    rep.first_failure = what;
    return rep;
  };

  // The (4,3) action has the same invariants as (4,1) only after the change
  // of coordinates realising the twist by the discriminant (the isomorphism
  // Z(4,1) = Z(4,3)); it is implemented by the intertwiner below, which
  // conjugates the epsilon_3-twisted generator pairs back into the
  // stabiliser of the table.  All other (N, r) use the table as printed.
  const bool transported = (n == 4 && r == 3);
  const CycloMat twist{Cyclo(0), Cyclo(1), Cyclo(-4), Cyclo(0)};

  auto prepare = [&](const QPoly& f) {
    CPoly cf = to_cyclo(f);
    if (!transported) return cf;
    auto sub = pair_substitution(CycloMat::identity(), twist);
    return cf.substitute(std::span<const CPoly>(sub));
  };

  struct Form {
    std::string name;
    CPoly poly;
    int du, dv;
    bool is_w;
  };
  std::vector<Form> forms;
  for (size_t i = 0; i < table.basic.size(); ++i)
    forms.push_back({table.names[i], prepare(table.basic[i]),
                     degree_in(table.basic[i], 0, 1),
                     degree_in(table.basic[i], 2, 3), false});
  int wdeg = -1;
  for (size_t i = 0; i < table.w.size(); ++i) {
    int du = degree_in(table.w[i], 0, 1);
    int dv = degree_in(table.w[i], 2, 3);
    if (du != dv) return fail("w-tuple not of bidegree (m, m)");
    if (wdeg < 0) wdeg = du;
    else if (du != wdeg) return fail("w-tuple bidegrees differ");
    forms.push_back({table.names[table.basic.size() + i], prepare(table.w[i]),
                     du, dv, true});
  }

  // scalar pairs act by the forced lambda^degree character; forms must
  // transform by exactly that factor (literal invariance when it is 1)
  for (const Form& f : forms) {
    for (const Cyclo& lam : rep.scalars) {
      Cyclo lu(1), lv(1);
      for (int i = 0; i < f.du; ++i) lu = lu * lam;
      for (int i = 0; i < f.dv; ++i) lv = lv * lam;
      CycloMat lm{lam, Cyclo(0), Cyclo(0), lam};
      auto sub_u = pair_substitution(lm, CycloMat::identity());
      auto sub_v = pair_substitution(CycloMat::identity(), lm);
      if (!(f.poly.substitute(std::span<const CPoly>(sub_u)) == f.poly * lu))
        return fail(f.name + " under scalar pair (lambda I, I)");
      if (!(f.poly.substitute(std::span<const CPoly>(sub_v)) == f.poly * lv))
        return fail(f.name + " under scalar pair (I, lambda I)");
    }
  }

  // twisted generator pairs (g_S, h_S), (g_T, h_T) with h realising
  // rho(epsilon_r(S)), rho(epsilon_r(T)) through the generator images.
  // The tabulated w-forms are literally fixed; the building-block forms may
  // pick up a root-of-unity character (e.g. I22 for (3,1) scales by zeta3),
  // which cancels in the w-combinations.
  auto [gs, gt] = group_generators(n);
  auto replay = [&, gs = gs, gt = gt](const ModMatrix& target) {
    CycloMat acc = CycloMat::identity();
    for (Letter l : sl2_word(target)) {
      switch (l) {
        case Letter::S: acc = acc * gs; break;
        case Letter::T: acc = acc * gt; break;
        case Letter::Sinv: acc = acc * mat_inverse(gs); break;
        case Letter::Tinv: acc = acc * mat_inverse(gt); break;
      }
    }
    return acc;
  };
  ModMatrix s_mod = letter_matrix(Letter::S, n), t_mod = letter_matrix(Letter::T, n);
  CycloMat hs = replay(conjugate_by_diag(s_mod, r));
  CycloMat ht = replay(conjugate_by_diag(t_mod, r));
  for (const Form& f : forms) {
    for (const auto& [g, h, tag] :
         {std::tuple{gs, hs, "S"}, std::tuple{gt, ht, "T"}}) {
      auto sub = pair_substitution(g, h);
      CPoly img = f.poly.substitute(std::span<const CPoly>(sub));
      if (f.is_w) {
        if (!(img == f.poly))
          return fail(f.name + " under the twisted " + tag + " pair");
      } else {
        auto c = constant_ratio(img, f.poly);
        if (!c || !is_root_of_unity_24(*c))
          return fail(f.name + " not a relative invariant under the twisted " +
                      tag + " pair");
      }
    }
  }
  return rep;
}

namespace {

Rat random_rat(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-100, 100), den(1, 100);
  return make_rat(num(rng), den(rng));
}

// all (3,1) witness delta values at a specialised point
std::vector<Rat> delta3_candidates(const Rat& jj, const Rat& jm) {
  Rat S = jj + 1 - jm;
  std::vector<Rat> out;
  UniPoly acubic{-jj * S, -3 * jj, Rat(0), Rat(1)};
  for (const auto& [alpha, m0] : rational_roots(acubic)) {
    UniPoly quartic{-3 * (4 * alpha + 1) * jm * jm, -8 * jm * jm, -6 * jm,
                    Rat(0), Rat(1)};
    for (const auto& [beta, m1] : rational_roots(quartic)) {
      Rat den = beta * beta * beta - 3 * jm * beta - 2 * jm * jm;
      if (is_zero(den)) continue;
      Rat num = 2 * beta * beta * beta - (5 * alpha + 2) * beta * beta -
                10 * jm * beta + 3 * jm * (13 * alpha - 2 + 6 * S);
      out.push_back(Rat(-6) * num / den);
    }
  }
  return out;
}

Rat claimed_product(int r, const Rat& s, const Rat& t) {
  switch (r) {
    case 1:
      return 3 * s * (t - 1) * (-s + 2 * t + 1) * (3 * s + 2 * t + 1) *
             (s * t + 2 * s - 2 * t - 1);
    case 7:
      return 3 * (t - 1) *
             (-9 * s * s * s + 12 * s * s * t + 4 * s * t * t + 15 * s * s +
              4 * s * t - 12 * t * t + s - 12 * t - 3);
    case 5:
      return -s * s + t * t + 1;
    case 11:
      return -(s + t) * (s + t + 2);
  }
  throw std::invalid_argument("r must be in {1,5,7,11}");
}

}  // namespace

TrialReport verify_square_class_claims(int r, int trials, uint64_t seed) {
  TrialReport rep;
  rep.check = "square-class r=" + std::to_string(r);
  rep.seed = seed;
  std::mt19937_64 rng(seed);
  int done = 0;
  long guard = 0;
  while (done < trials && ++guard < 200L * trials + 1000) {
    Rat u = random_rat(rng), v = random_rat(rng);
    ChainState st;
    try {
      st = chain(r, u, v);
    } catch (const ChainPole&) {
      continue;
    }
    Rat claimed = claimed_product(r, st.at("s"), st.at("t"));
    if (is_zero(claimed)) continue;  // branch locus of the double cover
    std::vector<Rat> witnesses;
    bool unit_failure = false;
    if (r == 1 || r == 7) {
      Rat alpha4 = st.at("alpha4"), delta4 = st.at("delta4");
      if (is_zero(alpha4) || is_zero(delta4)) unit_failure = true;
      for (const Rat& d3 : delta3_candidates(st.jj, st.jm))
        witnesses.push_back(r == 1 ? Rat(alpha4 * delta4 * d3) : Rat(alpha4 * d3));
    } else {
      Rat beta3 = st.at("beta3");
      auto root = is_square(st.jm);
      if (!root || is_zero(*root)) continue;
      for (const Rat& alpha4 : {Rat(*root), Rat(-*root)}) {
        Rat delta4 = 3 * (st.jj - (alpha4 + 1) * (alpha4 + 1));
        if (is_zero(alpha4) || is_zero(delta4)) { unit_failure = true; continue; }
        witnesses.push_back(r == 5 ? Rat(alpha4 * delta4 * beta3) : Rat(alpha4 * beta3));
      }
    }
    ++done;
    ++rep.trials;
    bool good = false;
    for (const Rat& w : witnesses)
      if (!is_zero(w) && is_square(claimed * w)) { good = true; break; }
    if (!good || unit_failure) {
      rep.ok = false;
      std::ostringstream os;
      os << "(u,v)=(" << rat_str(u) << "," << rat_str(v) << ")"
         << (unit_failure ? " unit-vanishes" : " product-not-square");
      rep.failures.push_back(os.str());
    }
  }
  if (done < trials) {
    rep.ok = false;
    rep.failures.push_back("sampling exhausted before reaching trial count");
  }
  return rep;
}

TrialReport verify_xi_equivalence(int trials, uint64_t seed) {
  TrialReport rep;
  rep.check = "xi-norm-equivalence";
  rep.seed = seed;
  // exact expansion in Q(zeta3)[J, J', x, y] mod (x^3 - J, y^3 - J')
  using CP = MultiPoly<Cyclo>;
  const int nv = 4;  // J, J', x, y
  auto var = [&](int i) { return CP::var(nv, i); };
  auto reduce = [&](const CP& f) {
    CP out(nv);
    for (const auto& [e, c] : f.terms()) {
      CP::Exp r(e);
      int qx = r[2] / 3, qy = r[3] / 3;
      r[2] %= 3;
      r[3] %= 3;
      CP term(nv);
      CP::Exp mono(nv, 0);
      mono[0] = e[0] + qx;   // J^qx
      mono[1] = e[1] + qy;   // J'^qy
      mono[2] = r[2];
      mono[3] = r[3];
      term.add_term(mono, c);
      out = out + term;
    }
    return out;
  };
  Cyclo omega = Cyclo::embed_root("zeta3");
  CP prod = CP::constant(nv, Cyclo(1));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Cyclo wi(1), wj(1);
      for (int k = 0; k < i; ++k) wi = wi * omega;
      for (int k = 0; k < j; ++k) wj = wj * omega;
      CP one = CP::constant(nv, Cyclo(1));
      CP factor = (one + var(2) * wi) * (one + var(3) * wj) - one;
      prod = reduce(prod * factor);
    }
  // expected: xi in (J, J') with no x, y left
  CP xi(nv);
  {
    CP J = var(0), Jp = var(1);
    CP P = J * Jp, S = J + Jp;
    xi = P.pow(3) + P.pow(2) * S * Cyclo(3) - P.pow(2) * Cyclo(27) +
         P * S.pow(2) * Cyclo(3) + S.pow(3);
  }
  if (!(prod == xi)) {
    rep.ok = false;
    rep.failures.push_back("norm expansion differs from xi (factor not 1)");
    return rep;
  }
  rep.failures.push_back("monomial factor between norm form and xi: 1");
  // pointwise agreement spot-checks
  std::mt19937_64 rng(seed);
  for (int i = 0; i < trials; ++i) {
    Rat J = random_rat(rng), Jp = random_rat(rng);
    Rat P = J * Jp, S = J + Jp;
    Rat xival = P * P * P + 3 * P * P * S - 27 * P * P + 3 * P * S * S + S * S * S;
    if (xival != xi_value(J, Jp)) {
      rep.ok = false;
      rep.failures.push_back("pointwise xi mismatch");
      return rep;
    }
    ++rep.trials;
  }
  return rep;
}

}  // namespace conglab
