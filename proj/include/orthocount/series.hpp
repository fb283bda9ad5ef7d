#pragma once

#include <vector>

#include "orthocount/galois.hpp"

namespace orthocount {

/// Power series in t over the Galois ring, known modulo t^{T+1}.
struct Series {
  std::vector<Coeff> c;  // size T+1
};
using SMatrix = std::vector<std::vector<Series>>;

class SeriesRing {
 public:
  SeriesRing(const GaloisRing& R, int T);

  const GaloisRing& ring() const { return R_; }
  int T() const { return T_; }

  Series zero() const;
  Series constant(const Coeff& a) const;
  Series monomial(const Coeff& a, int e) const;
  Series add(const Series& a, const Series& b) const;
  Series sub(const Series& a, const Series& b) const;
  Series neg(const Series& a) const;
  Series scale(const Coeff& s, const Series& a) const;
  Series mul(const Series& a, const Series& b) const;
  Series pow(const Series& a, unsigned e) const;
  /// sigma^k: t -> t^{p^k} together with sigma^k on coefficients.
  Series twist(const Series& a, int k = 1) const;
  /// Smallest exponent with a coefficient known to be nonzero; -1 if none.
  int val_t(const Series& a) const;
  bool is_zero(const Series& a) const { return val_t(a) < 0; }
  bool eq(const Series& a, const Series& b) const { return is_zero(sub(a, b)); }

  SMatrix mzero(int rows, int cols) const;
  SMatrix identity(int n) const;
  SMatrix from_const(const CMatrix& m) const;
  SMatrix madd(const SMatrix& a, const SMatrix& b) const;
  SMatrix msub(const SMatrix& a, const SMatrix& b) const;
  SMatrix mmul(const SMatrix& a, const SMatrix& b) const;
  SMatrix mtwist(const SMatrix& a, int k = 1) const;
  SMatrix mscale(const Coeff& s, const SMatrix& a) const;
  SMatrix transpose(const SMatrix& a) const;
  bool mis_zero(const SMatrix& a) const;
  bool meq(const SMatrix& a, const SMatrix& b) const;
  /// Minimum of val_t over all entries; -1 when all entries vanish.
  int mval_t(const SMatrix& a) const;

 private:
  const GaloisRing& R_;
  int T_;
};

}  // namespace orthocount
