#pragma once

#include <gmpxx.h>

#include <string>

namespace lw {

// Unbounded natural number. Invariant: value >= 0 everywhere in this
// library; monus (truncated subtraction) is the only subtraction used.
using Nat = mpz_class;

inline Nat monus(const Nat& a, const Nat& b) { return a >= b ? Nat(a - b) : Nat(0); }

inline Nat pow2(unsigned long bits) {
  Nat r = 1;
  mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(), bits);
  return r;
}

}  // namespace lw
