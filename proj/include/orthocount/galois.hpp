#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "orthocount/numeric.hpp"

namespace orthocount {

constexpr int kMaxGaloisDegree = 12;

/// Element of GR(p^R, N) = (Z/p^R)[X]/(f), coordinates in 1, X, ..., X^{N-1}.
struct GR {
  std::array<int64_t, kMaxGaloisDegree> c{};
  bool operator==(const GR& o) const { return c == o.c; }
};

/// p-adic number p^v * u known modulo p^prec. v == kZeroVal means the value
/// is 0 modulo p^prec; prec == kExact (with v == kZeroVal) is an exact zero.
struct Coeff {
  static constexpr int kZeroVal = 1 << 29;
  static constexpr int kExact = 1 << 29;
  GR u;
  int v = kZeroVal;
  int prec = kExact;
  bool is_zero() const { return v == kZeroVal; }
  bool is_exact_zero() const { return v == kZeroVal && prec == kExact; }
};

/// Unramified extension of Z_p of degree N, truncated to relative precision R.
class GaloisRing {
 public:
  /// Finds a monic modulus irreducible mod p (smallest in a fixed order).
  static GaloisRing make(long p, int N, int R);
  /// coefficients f_0..f_{N-1} of a monic f = X^N + ...; must be irreducible mod p.
  static GaloisRing with_modulus(long p, const std::vector<long>& f_low, int R);

  long p() const { return p_; }
  int degree() const { return N_; }
  int precision() const { return R_; }
  int64_t modulus() const { return mod_; }
  const std::vector<int64_t>& poly() const { return f_; }

  // ring elements mod p^R
  GR from_int(long x) const;
  GR gen() const;  // X
  GR add(const GR& a, const GR& b) const;
  GR sub(const GR& a, const GR& b) const;
  GR neg(const GR& a) const;
  GR mul(const GR& a, const GR& b) const;
  GR pow(GR a, uint64_t e) const;
  GR inv(const GR& a) const;  // a must be a unit
  GR sigma(const GR& a, int k = 1) const;
  int val(const GR& a) const;  // R if zero
  bool is_unit(const GR& a) const { return val(a) == 0; }
  GR reduce(const GR& a, int k) const;  // mod p^k
  std::string str(const GR& a) const;

  // p-adic coefficients
  Coeff zero() const { return Coeff{}; }
  Coeff one() const { return make(from_int(1), 0); }
  Coeff make(const GR& u, int v) const;  // exact to relative precision R
  Coeff from_rat(const Rat& r) const;
  Coeff cadd(const Coeff& a, const Coeff& b) const;
  Coeff csub(const Coeff& a, const Coeff& b) const { return cadd(a, cneg(b)); }
  Coeff cneg(const Coeff& a) const;
  Coeff cmul(const Coeff& a, const Coeff& b) const;
  Coeff cinv(const Coeff& a) const;
  Coeff csigma(const Coeff& a, int k = 1) const;
  /// p-adic valuation when determined; nullopt-style: returns kZeroVal for
  /// values that are zero modulo their precision.
  int cval(const Coeff& a) const { return a.v; }
  /// Residue mod p of an integral coefficient (v >= 0 and known mod p).
  GR residue(const Coeff& a) const;
  bool ceq(const Coeff& a, const Coeff& b) const;  // equal within joint precision
  std::string cstr(const Coeff& a) const;

 private:
  GaloisRing() = default;
  void finish_setup();
  GR normalize_mod(GR a, int64_t m) const;

  long p_ = 0;
  int N_ = 1;
  int R_ = 1;
  int64_t mod_ = 1;
  std::vector<int64_t> pw_;  // p^0..p^R
  std::vector<int64_t> f_;   // f_0..f_{N-1}
  std::vector<std::vector<GR>> sigmaPow_;  // sigmaPow_[k][i] = sigma^k(X^i)
};

/// Polynomials over F_p (low to high), used to find moduli.
bool irreducible_mod_p(const std::vector<int64_t>& f_monic_full, long p);

/// Dense matrices over the coefficient ring (constant in t).
using CMatrix = std::vector<std::vector<Coeff>>;
CMatrix cmat_identity(const GaloisRing& R, int n);
CMatrix cmat_mul(const GaloisRing& R, const CMatrix& a, const CMatrix& b);
CMatrix cmat_sigma(const GaloisRing& R, const CMatrix& a, int k = 1);
/// Inverse of a matrix in GL_n(W)[1/p]; pivots by least valuation.
CMatrix cmat_inverse(const GaloisRing& R, const CMatrix& a);
bool cmat_eq(const GaloisRing& R, const CMatrix& a, const CMatrix& b);

}  // namespace orthocount
