#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace conglab {

// All verdict-path arithmetic is exact: arbitrary-precision integers and
// canonical rationals (reduced, positive denominator, zero = 0/1).  These
// invariants are maintained by mpq canonicalisation.
using Int = mpz_class;
using Rat = mpq_class;

Rat make_rat(const Int& num, const Int& den);
Rat make_rat(long num, long den = 1);

// Parses "p/q" or "p"; throws std::invalid_argument on malformed input.
Rat parse_rat(std::string_view s);
std::string rat_str(const Rat& x);

// height of p/q in lowest terms = max(|p|, q)
Int height(const Rat& x);

// Exact perfect-power detection.  is_square returns the nonnegative root,
// is_cube/is_fourth_power behave analogously (cube roots keep the sign).
std::optional<Rat> is_square(const Rat& x);
std::optional<Rat> is_cube(const Rat& x);
std::optional<Rat> is_fourth_power(const Rat& x);

inline bool is_zero(const Rat& x) { return sgn(x) == 0; }
inline bool is_integer(const Rat& x) { return x.get_den() == 1; }

}  // namespace conglab
