#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "conglab/multipoly.hpp"
#include "conglab/rational.hpp"
#include "conglab/unipoly.hpp"

namespace conglab {

struct ChainPole : std::runtime_error {
  explicit ChainPole(const std::string& denom)
      : std::runtime_error("chain pole: " + denom), denominator(denom) {}
  std::string denominator;
};
struct NotASquare : std::runtime_error {
  explicit NotASquare(const std::string& w) : std::runtime_error(w) {}
};
struct DegenerateJ : std::runtime_error {
  explicit DegenerateJ(const std::string& w) : std::runtime_error(w) {}
};

// z^2 = F_r(u, v), r a unit mod 12.
const QPoly& surface_polynomial(int r);  // in vars (u, v)
Rat surface_value(int r, const Rat& u, const Rat& v);
bool on_surface(int r, const Rat& u, const Rat& v, const Rat& z);

// Ledger of the substitution chain from (u, v) down to the symmetric
// coordinates JJ' and (J-1)(J'-1), with every intermediate named.  The
// defining relations can be replayed exactly with verify_chain.
struct ChainState {
  int r = 0;
  Rat u, v;
  std::vector<std::pair<std::string, Rat>> ledger;
  Rat jj;   // J J'
  Rat jm;   // (J-1)(J'-1)

  const Rat& at(const std::string& name) const;
  bool has(const std::string& name) const;
};

ChainState chain(int r, const Rat& u, const Rat& v);
// replays every printed defining relation; returns the first failing name
std::optional<std::string> chain_defect(const ChainState& st);

struct JPair {
  Rat j1, j2;  // canonical order: j1 <= j2 (numerator, then denominator)
};

JPair jpair(int r, const Rat& u, const Rat& v, const Rat& z);

// all table rows m whose defining polynomial (either sign) vanishes at (u,v)
std::vector<int> hecke_membership(int r, const Rat& u, const Rat& v);

// Expands F along the printed blow-down substitution as a series in eps
// truncated at order 5; checks the eps^0..eps^3 coefficients vanish and the
// eps^4 coefficient equals the printed polynomial, which is returned.
// r in {5, 7}; sign +1 or -1.
UniPoly blowdown_coefficient(int r, int sign);

struct SearchOptions {
  int workers = 1;
  bool hecke = true;
  bool annotate = true;      // jpair + non-isogeny witness
  long noniso_bound = 100;
};

struct SearchHit {
  Rat u, v, z;               // canonical orbit representative: v >= 0, z >= 0
  long height = 0;           // max of the coordinate heights of (u, v)
  std::vector<int> hecke;
  std::optional<JPair> jp;
  std::optional<long> noniso_prime;
  std::string note;          // why annotation stopped, when it did
};

// Deterministic bounded-height point search on z^2 = F_r(u, v), one
// representative per (v, z)-sign orbit, sorted by (height, u, v).
std::vector<SearchHit> search(int r, long height_bound,
                              const SearchOptions& opt = {});

std::string search_hit_jsonl(int r, const SearchHit& h);

}  // namespace conglab
