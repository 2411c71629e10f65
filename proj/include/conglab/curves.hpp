#pragma once

#include <map>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "conglab/rational.hpp"

namespace conglab {

struct SingularCurve : std::runtime_error {
  explicit SingularCurve(const std::string& w) : std::runtime_error(w) {}
};

// Long Weierstrass model y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over Q.
// Construction rejects singular models.
struct WeierstrassCurve {
  Rat a1, a2, a3, a4, a6;

  WeierstrassCurve(Rat a1_, Rat a2_, Rat a3_, Rat a4_, Rat a6_);
  static WeierstrassCurve short_form(const Rat& A, const Rat& B);  // y^2 = x^3 + Ax + B

  bool operator==(const WeierstrassCurve&) const = default;
};

struct CurveInvariants {
  Rat b2, b4, b6, b8, c4, c6, disc, j, J;  // J = j/1728
};

CurveInvariants invariants(const WeierstrassCurve& e);

// c4 scales by d^2, c6 by d^3, disc by d^6; j is unchanged.
WeierstrassCurve quadratic_twist(const WeierstrassCurve& e, const Rat& d);

// (x, y) -> (u^2 x, u^3 y) with the least positive integer u clearing all
// denominators; same j.
WeierstrassCurve integralize(const WeierstrassCurve& e);

// Good reduction of the naive integralized model (p does not divide its
// discriminant).  Conservative: no minimal-model computation.
bool has_good_reduction(const WeierstrassCurve& e, long p);

// Trace of Frobenius a_p = p + 1 - #E(F_p) by exhaustive point count on the
// reduced short model; p coprime to 6 and of good reduction required.
// Results are memoised in a cache safe for concurrent readers.
long trace_of_frobenius(const WeierstrassCurve& e, long p);

// The 13 rational CM j-invariants (class number one).
bool is_cm_j(const Rat& j);

// Least good prime p <= bound with a_p(E)^2 != a_p(E')^2; such a prime
// certifies that E and E' are not geometrically isogenous (non-CM inputs).
std::optional<long> non_isogeny_witness(const WeierstrassCurve& e,
                                        const WeierstrassCurve& ep, long bound);

std::vector<long> primes_up_to(long n);

// Curve input format: JSON array of 5 rational strings [a1,a2,a3,a4,a6],
// or 2 strings [A,B] meaning y^2 = x^3 + Ax + B.
WeierstrassCurve curve_from_json(const std::string& text);
std::string curve_to_json(const WeierstrassCurve& e);

}  // namespace conglab
