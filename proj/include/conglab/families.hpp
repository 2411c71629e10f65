#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "conglab/curves.hpp"
#include "conglab/unipoly.hpp"

namespace conglab {

struct BadParameter : std::runtime_error {
  explicit BadParameter(const std::string& w) : std::runtime_error(w) {}
};

// A one-parameter congruent family: both curves are y^2 = x^3 + A(t)x + B(t)
// with A, B rational functions of t stored as numerator/denominator pairs.
struct FamilySpec {
  std::string name;
  int n = 12, r = 1;             // congruence tag
  UniPoly a_num, a_den;          // A(t) of the first curve
  UniPoly b_num, b_den;
  UniPoly ap_num, ap_den;        // A(t) of the second curve
  UniPoly bp_num, bp_den;
};

// names: ex121, ex127, ex1211
const FamilySpec& family_spec(const std::string& name);
const std::vector<std::string>& family_names();

// Specialises the family at t, integralized; throws BadParameter on a pole
// or a singular fibre.
std::pair<WeierstrassCurve, WeierstrassCurve> family_pair(
    const std::string& name, const Rat& t);

// the conductor-4976690 (12,11)-congruent pair
std::pair<WeierstrassCurve, WeierstrassCurve> intro_pair();

// The K3 genus-1 fibration attached to the r = 1 surface: true iff the
// distinguished section specialises to a rational point at t.
bool k3_section_check(const Rat& t);

// ---- the rank-1 auxiliary curve eta^2 = xi^3 - xi^2 - 16 xi + 16 ----
struct CurveCPoint {
  std::optional<std::pair<Rat, Rat>> coords;  // nullopt = point at infinity
  static CurveCPoint infinity() { return {}; }
  static CurveCPoint affine(const Rat& xi, const Rat& eta);
  bool is_infinity() const { return !coords.has_value(); }
  bool operator==(const CurveCPoint&) const = default;
};

bool curve_c_contains(const CurveCPoint& p);
CurveCPoint curve_c_add(const CurveCPoint& p, const CurveCPoint& q);
CurveCPoint curve_c_double(const CurveCPoint& p);
std::vector<CurveCPoint> curve_c_small_multiples(const CurveCPoint& p, int k);

}  // namespace conglab
