#pragma once

#include <gmpxx.h>

namespace sigmaval {

// Arbitrary-precision nonnegative integer. GMP is the backing store; all
// arithmetic on it is exact at any size.
using BigNat = mpz_class;

}  // namespace sigmaval
