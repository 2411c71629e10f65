#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "conglab/curves.hpp"

namespace conglab {

// Thrown when a tester's hypotheses fail (j in {0,1728}, J = J', xi = 0):
// the criteria say nothing there, so this is distinct from a false verdict.
struct Unsupported : std::runtime_error {
  explicit Unsupported(const std::string& w) : std::runtime_error(w) {}
};

enum class TauBranch { r1mod4, r3mod4, beta_nonzero, beta_zero, none };

struct CongruenceWitness {
  Rat alpha, beta;
  std::optional<Rat> gamma, delta;
  bool tau_square_class_checked = false;
  TauBranch which_tau_branch = TauBranch::none;
};

struct CongruenceVerdict {
  enum class Status { Congruent, NotCongruent, Inconclusive } status;
  std::optional<CongruenceWitness> witness;
  std::optional<std::string> obstruction;

  bool congruent() const { return status == Status::Congruent; }
};

// xi from the (3,1) hypothesis: nonzero iff (cbrt(J)+1)(cbrt(J')+1) != 1
// for every choice of cube roots.
Rat xi_value(const Rat& J, const Rat& Jp);

CongruenceVerdict test_2_1(const WeierstrassCurve& e, const WeierstrassCurve& ep);
CongruenceVerdict test_3_1(const WeierstrassCurve& e, const WeierstrassCurve& ep);
CongruenceVerdict test_3_2(const WeierstrassCurve& e, const WeierstrassCurve& ep);
CongruenceVerdict test_4_r(const WeierstrassCurve& e, const WeierstrassCurve& ep, int r);
// r in {1,5,7,11}: conjunction of the (3, r mod 3)- and (4, r mod 4)-testers
CongruenceVerdict test_12_r(const WeierstrassCurve& e, const WeierstrassCurve& ep, int r);

struct ScanReport {
  bool pass = true;
  long first_failure = 0;   // 0 when pass
  long primes_checked = 0;
};

// Checks a_p(E) = a_p(E') mod N at all good primes p <= bound, p coprime to
// 6N.  A failure certifies non-congruence; a pass is only evidence.
ScanReport ap_scan(const WeierstrassCurve& e, const WeierstrassCurve& ep, int n,
                   long bound);

struct NoWitness : std::runtime_error {
  explicit NoWitness(const std::string& w) : std::runtime_error(w) {}
};
struct DegenerateTwist : std::runtime_error {
  explicit DegenerateTwist(const std::string& w) : std::runtime_error(w) {}
};

// Builds concrete congruent curves from a pair of j-invariants for
// (N, r) in {(2,1),(3,1),(3,2),(4,1),(4,3)}: E from j, E' from j' twisted by
// the witness-determined d; the pair passes the corresponding tester.
std::pair<WeierstrassCurve, WeierstrassCurve> resolve_twist(const Rat& j,
                                                            const Rat& jp,
                                                            int n, int r);

}  // namespace conglab
