#pragma once

#include <map>

#include "conglab/rational.hpp"

namespace conglab {

bool is_probable_prime(const Int& n);

// prime -> exponent, n > 0.  Trial division then Pollard-Brent rho.
std::map<Int, unsigned> factorize(const Int& n);

// least positive t with n | t^k (n > 0)
Int least_kth_root_multiple(const Int& n, unsigned k);

}  // namespace conglab
