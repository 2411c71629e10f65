#include "conglab/congruence.hpp"

#include <vector>

#include "conglab/unipoly.hpp"

namespace conglab {

namespace {

struct Pair {
  Rat J, Jp, c6c6;
};

Pair prepare(const WeierstrassCurve& e, const WeierstrassCurve& ep,
             bool need_distinct) {
  auto v = invariants(e), vp = invariants(ep);
  if (is_zero(v.j) || v.j == 1728 || is_zero(vp.j) || vp.j == 1728)
    throw Unsupported("j-invariant in {0, 1728}");
  if (need_distinct && v.J == vp.J) throw Unsupported("J = J'");
  return {v.J, vp.J, v.c6 * vp.c6};
}

std::vector<Rat> roots_of(const UniPoly& p) {
  std::vector<Rat> out;
  for (const auto& [r, m] : rational_roots(p)) out.push_back(r);
  return out;
}

// the two candidate signs for alpha with alpha^2 = (J-1)(J'-1)
std::vector<Rat> alpha_candidates(const Rat& J, const Rat& Jp) {
  std::vector<Rat> out;
  if (auto r = is_square((J - 1) * (Jp - 1))) {
    out.push_back(*r);
    if (!is_zero(*r)) out.push_back(-*r);
  }
  return out;
}

}  // namespace

Rat xi_value(const Rat& J, const Rat& Jp) {
  Rat P = J * Jp, S = J + Jp;
  return P * P * P + 3 * P * P * S - 27 * P * P + 3 * P * S * S + S * S * S;
}

CongruenceVerdict test_2_1(const WeierstrassCurve& e, const WeierstrassCurve& ep) {
  auto [J, Jp, c6c6] = prepare(e, ep, false);
  Rat P = J * Jp;
  auto alphas = alpha_candidates(J, Jp);
  if (alphas.empty())
    return {CongruenceVerdict::Status::NotCongruent, std::nullopt, "no-rational-alpha"};
  for (const Rat& alpha : alphas) {
    UniPoly cubic{-2 * P * (alpha + 1), -3 * P, Rat(0), Rat(1)};
    auto betas = roots_of(cubic);
    if (!betas.empty()) {
      CongruenceWitness w;
      w.alpha = alpha;
      w.beta = betas.front();
      return {CongruenceVerdict::Status::Congruent, w, std::nullopt};
    }
  }
  return {CongruenceVerdict::Status::NotCongruent, std::nullopt, "no-rational-beta"};
}

CongruenceVerdict test_4_r(const WeierstrassCurve& e, const WeierstrassCurve& ep,
                           int r) {
  if (r % 2 == 0) throw std::invalid_argument("power must be odd");
  auto [J, Jp, c6c6] = prepare(e, ep, true);
  Rat P = J * Jp;
  auto alphas = alpha_candidates(J, Jp);
  if (alphas.empty())
    return {CongruenceVerdict::Status::NotCongruent, std::nullopt, "no-rational-alpha"};
  bool saw_chain = false;
  // all rational witnesses are enumerated jointly: a chain that dies at one
  // level may succeed with another root further up
  for (const Rat& alpha : alphas) {
    UniPoly cubic{-2 * P * (alpha + 1), -3 * P, Rat(0), Rat(1)};
    for (const Rat& beta : roots_of(cubic)) {
      UniPoly quartic{3 * P * P * (4 * P - beta * beta), -16 * P * P,
                      -6 * P * beta, Rat(0), Rat(1)};
      for (const Rat& gamma : roots_of(quartic)) {
        saw_chain = true;
        Rat delta = 3 * (P - (alpha + 1) * (alpha + 1));
        Rat val = (r % 4 == 1) ? Rat(3 * c6c6 * delta * alpha) : Rat(3 * c6c6 * alpha);
        if (is_square(val)) {
          CongruenceWitness w;
          w.alpha = alpha;
          w.beta = beta;
          w.gamma = gamma;
          w.delta = delta;
          w.tau_square_class_checked = true;
          w.which_tau_branch = (r % 4 == 1) ? TauBranch::r1mod4 : TauBranch::r3mod4;
          return {CongruenceVerdict::Status::Congruent, w, std::nullopt};
        }
      }
    }
  }
  return {CongruenceVerdict::Status::NotCongruent, std::nullopt,
          saw_chain ? "tau-not-square" : "no-rational-witness-chain"};
}

CongruenceVerdict test_3_1(const WeierstrassCurve& e, const WeierstrassCurve& ep) {
  auto [J, Jp, c6c6] = prepare(e, ep, true);
  if (is_zero(xi_value(J, Jp))) throw Unsupported("xi = 0");
  Rat P = J * Jp, S = J + Jp, M = (J - 1) * (Jp - 1);
  UniPoly acubic{-P * S, -3 * P, Rat(0), Rat(1)};
  auto alphas = roots_of(acubic);
  if (alphas.empty())
    return {CongruenceVerdict::Status::NotCongruent, std::nullopt, "no-rational-alpha"};
  bool any_candidate = false, all_degenerate = true;
  for (const Rat& alpha : alphas) {
    UniPoly quartic{-3 * (4 * alpha + 1) * M * M, -8 * M * M, -6 * M, Rat(0), Rat(1)};
    for (const Rat& beta : roots_of(quartic)) {
      any_candidate = true;
      Rat den = beta * beta * beta - 3 * M * beta - 2 * M * M;
      if (is_zero(den)) continue;  // degenerate candidate, keep looking
      all_degenerate = false;
      Rat num = 2 * beta * beta * beta - (5 * alpha + 2) * beta * beta -
                10 * M * beta + 3 * M * (13 * alpha - 2 + 6 * S);
      Rat delta = Rat(-6) * num / den;
      if (is_square(3 * c6c6 * delta)) {
        CongruenceWitness w;
        w.alpha = alpha;
        w.beta = beta;
        w.delta = delta;
        w.tau_square_class_checked = true;
        w.which_tau_branch = TauBranch::r1mod4;
        return {CongruenceVerdict::Status::Congruent, w, std::nullopt};
      }
    }
  }
  if (any_candidate && all_degenerate)
    return {CongruenceVerdict::Status::Inconclusive, std::nullopt,
            "degenerate-witness: delta denominator vanishes for every candidate"};
  return {CongruenceVerdict::Status::NotCongruent, std::nullopt,
          any_candidate ? "tau-not-square" : "no-rational-beta"};
}

CongruenceVerdict test_3_2(const WeierstrassCurve& e, const WeierstrassCurve& ep) {
  auto [J, Jp, c6c6] = prepare(e, ep, true);
  Rat P = J * Jp, M = (J - 1) * (Jp - 1);
  auto alpha = is_cube(P);
  if (!alpha)
    return {CongruenceVerdict::Status::NotCongruent, std::nullopt, "no-rational-alpha"};
  UniPoly quartic{-3 * (*alpha - 1) * (*alpha - 1) * M * M, -8 * M * M,
                  -6 * (*alpha + 1) * M, Rat(0), Rat(1)};
  auto betas = roots_of(quartic);
  if (betas.empty())
    return {CongruenceVerdict::Status::NotCongruent, std::nullopt, "no-rational-beta"};
  for (const Rat& beta : betas) {
    Rat val = is_zero(beta) ? Rat(Rat(-2) * c6c6) : Rat(3 * c6c6 * beta);
    if (is_square(val)) {
      CongruenceWitness w;
      w.alpha = *alpha;
      w.beta = beta;
      w.tau_square_class_checked = true;
      w.which_tau_branch = is_zero(beta) ? TauBranch::beta_zero : TauBranch::beta_nonzero;
      return {CongruenceVerdict::Status::Congruent, w, std::nullopt};
    }
  }
  return {CongruenceVerdict::Status::NotCongruent, std::nullopt, "tau-not-square"};
}

CongruenceVerdict test_12_r(const WeierstrassCurve& e, const WeierstrassCurve& ep,
                            int r) {
  if (r != 1 && r != 5 && r != 7 && r != 11)
    throw std::invalid_argument("r must be a unit mod 12");
  CongruenceVerdict three = (r % 3 == 1) ? test_3_1(e, ep) : test_3_2(e, ep);
  CongruenceVerdict four = test_4_r(e, ep, r % 4);
  if (three.status == CongruenceVerdict::Status::Inconclusive)
    return three;
  if (three.congruent() && four.congruent()) {
    CongruenceVerdict out = four;
    return out;
  }
  const CongruenceVerdict& blame = three.congruent() ? four : three;
  return {CongruenceVerdict::Status::NotCongruent, std::nullopt, blame.obstruction};
}

ScanReport ap_scan(const WeierstrassCurve& e, const WeierstrassCurve& ep, int n,
                   long bound) {
  if (n < 2 || bound < 5) throw std::invalid_argument("ap_scan: N >= 2, bound >= 5");
  WeierstrassCurve a = integralize(e), b = integralize(ep);
  ScanReport rep;
  for (long p : primes_up_to(bound)) {
    if (6 % p == 0 || n % p == 0) continue;
    if (!has_good_reduction(a, p) || !has_good_reduction(b, p)) continue;
    ++rep.primes_checked;
    long d = trace_of_frobenius(a, p) - trace_of_frobenius(b, p);
    if (((d % n) + n) % n != 0) {
      rep.pass = false;
      rep.first_failure = p;
      return rep;
    }
  }
  return rep;
}

namespace {

WeierstrassCurve model_from_j(const Rat& j, const Rat& d) {
  // y^2 = x^3 - 27 d^2 j/(j-1728) x - 54 d^3 j/(j-1728)
  Rat f = j / (j - 1728);
  return WeierstrassCurve::short_form(-27 * d * d * f, -54 * d * d * d * f);
}

}  // namespace

std::pair<WeierstrassCurve, WeierstrassCurve> resolve_twist(const Rat& j,
                                                            const Rat& jp,
                                                            int n, int r) {
  if (is_zero(j) || j == 1728 || is_zero(jp) || jp == 1728)
    throw Unsupported("j-invariant in {0, 1728}");
  if (j == jp && n != 2) throw Unsupported("J = J'");
  Rat J = j / 1728, Jp = jp / 1728;
  Rat P = J * Jp, M = (J - 1) * (Jp - 1), S = J + Jp;
  Rat denom = (j - 1728) * (jp - 1728);
  auto make_pair = [&](const Rat& d) {
    if (is_zero(d)) throw DegenerateTwist("twist parameter vanishes");
    return std::pair{model_from_j(j, Rat(1)), model_from_j(jp, d)};
  };
  auto tester = [&](const WeierstrassCurve& a, const WeierstrassCurve& b) {
    if (n == 2) return test_2_1(a, b);
    if (n == 3 && r == 1) return test_3_1(a, b);
    if (n == 3) return test_3_2(a, b);
    return test_4_r(a, b, r);
  };

  bool any_chain = false;
  std::optional<std::string> degenerate;
  auto try_candidate = [&](const Rat& d) -> std::optional<std::pair<WeierstrassCurve, WeierstrassCurve>> {
    any_chain = true;
    try {
      auto pr = make_pair(d);
      if (tester(pr.first, pr.second).congruent()) return pr;
    } catch (const DegenerateTwist& ex) {
      degenerate = ex.what();
    } catch (const SingularCurve& ex) {
      degenerate = ex.what();
    }
    return std::nullopt;
  };

  if (n == 2) {
    for (const Rat& alpha : alpha_candidates(J, Jp)) {
      UniPoly cubic{-2 * P * (alpha + 1), -3 * P, Rat(0), Rat(1)};
      if (!rational_roots(cubic).empty())
        if (auto pr = try_candidate(Rat(1))) return *pr;
    }
  } else if (n == 4) {
    for (const Rat& alpha : alpha_candidates(J, Jp)) {
      UniPoly cubic{-2 * P * (alpha + 1), -3 * P, Rat(0), Rat(1)};
      for (const auto& [beta, m1] : rational_roots(cubic)) {
        UniPoly quartic{3 * P * P * (4 * P - beta * beta), -16 * P * P,
                        -6 * P * beta, Rat(0), Rat(1)};
        for (const auto& [gamma, m2] : rational_roots(quartic)) {
          Rat delta = 3 * (P - (alpha + 1) * (alpha + 1));
          Rat d = (r == 1) ? Rat(3 * delta * alpha * j * jp / denom)
                           : Rat(3 * alpha * j * jp / denom);
          if (auto pr = try_candidate(d)) return *pr;
        }
      }
    }
  } else if (n == 3 && r == 1) {
    UniPoly acubic{-P * S, -3 * P, Rat(0), Rat(1)};
    for (const auto& [alpha, m0] : rational_roots(acubic)) {
      UniPoly quartic{-3 * (4 * alpha + 1) * M * M, -8 * M * M, -6 * M, Rat(0), Rat(1)};
      for (const auto& [beta, m1] : rational_roots(quartic)) {
        Rat den = beta * beta * beta - 3 * M * beta - 2 * M * M;
        if (is_zero(den)) {
          degenerate = "delta denominator vanishes";
          continue;
        }
        Rat num = 2 * beta * beta * beta - (5 * alpha + 2) * beta * beta -
                  10 * M * beta + 3 * M * (13 * alpha - 2 + 6 * S);
        Rat delta = Rat(-6) * num / den;
        Rat d = 3 * delta * j * jp / denom;
        if (auto pr = try_candidate(d)) return *pr;
      }
    }
  } else if (n == 3 && r == 2) {
    if (auto alpha = is_cube(P)) {
      UniPoly quartic{-3 * (*alpha - 1) * (*alpha - 1) * M * M, -8 * M * M,
                      -6 * (*alpha + 1) * M, Rat(0), Rat(1)};
      for (const auto& [beta, m1] : rational_roots(quartic)) {
        Rat d = is_zero(beta) ? Rat(Rat(-2) * j * jp / denom)
                              : Rat(3 * beta * j * jp / denom);
        if (auto pr = try_candidate(d)) return *pr;
      }
    }
  } else {
    throw std::invalid_argument("resolve_twist: unsupported (N, r)");
  }
  if (!any_chain) throw NoWitness("no rational witness chain for the j-pair");
  if (degenerate) throw DegenerateTwist(*degenerate);
  throw NoWitness("witness chains exist but none yields a congruent twist");
}

}  // namespace conglab
