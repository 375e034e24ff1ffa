#pragma once

// Exact arithmetic base types.  Everything downstream (Stirling numbers,
// boundary matrices, Smith forms, characters) works over these; no fixed-width
// arithmetic is used where values can grow with n.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mchom {

using Int = mpz_class;
using Rat = mpq_class;

inline Int factorial(long n) {
  if (n < 0) throw std::invalid_argument("factorial: negative argument");
  Int r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

inline Int binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  return r;
}

// b^e for e >= 0.
inline Int pow_int(const Int& b, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

inline Rat pow_rat(const Rat& b, unsigned long e) {
  Rat r = 1;
  Rat base = b;
  while (e) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

inline std::string to_string(const Int& v) { return v.get_str(); }
inline std::string to_string(const Rat& v) {
  Rat c = v;
  c.canonicalize();
  return c.get_str();
}

}  // namespace mchom
