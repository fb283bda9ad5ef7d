#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace orthocount {

using Int = mpz_class;
using Rat = mpq_class;

/// Raised for malformed input (CLI exit code 1).
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised when an asserted mathematical invariant fails (CLI exit code 2).
struct VerificationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using IntMatrix = std::vector<std::vector<Int>>;
using RatMatrix = std::vector<std::vector<Rat>>;

inline Rat make_rat(const Int& n, const Int& d = 1) {
  Rat r(n, d);
  r.canonicalize();
  return r;
}

/// "num/den", or "num" when the denominator is 1.
std::string rat_str(const Rat& r);
Rat parse_rat(const std::string& s);

Int ipow(const Int& base, unsigned long e);
Rat rpow(const Rat& base, long e);
int64_t ipow64(int64_t base, int e);

/// Exponent of the prime p in n (n != 0).
int valuation(const Int& n, long p);
int valuation(const Rat& r, long p);

bool is_prime(long n);
std::vector<long> prime_factors(Int n);
std::vector<long> divisors(long n);
int mobius(long n);

/// Floor of the square root of a nonnegative integer.
Int isqrt(const Int& n);
bool is_square(const Int& n);

Int floor_div(const Int& a, const Int& b);
Int ceil_div(const Int& a, const Int& b);
Int floor_rat(const Rat& r);
Int ceil_rat(const Rat& r);

/// Squarefree part of a nonzero rational (sign kept), as an integer.
Int squarefree_part(const Rat& r);

Int mat_det(const IntMatrix& m);
RatMatrix to_rat(const IntMatrix& m);
RatMatrix rat_inverse(const RatMatrix& m);
RatMatrix rat_mul(const RatMatrix& a, const RatMatrix& b);
IntMatrix int_mul(const IntMatrix& a, const IntMatrix& b);
IntMatrix transpose(const IntMatrix& m);
IntMatrix identity_matrix(size_t n);

}  // namespace orthocount
