#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "orthocount/lattice.hpp"

namespace orthocount {

/// Kronecker symbol (D/a).
int kronecker(const Int& D, const Int& a);

/// Fundamental discriminant D0 and c with D = D0 c^2 (D = 0,1 mod 4, D != 0).
std::pair<Int, Int> fundamental_part(const Int& D);
void require_discriminant(const Int& D);

struct SigmaValue {
  bool exact = false;
  Rat value;  // valid when exact
  double approx = 0;
};
/// sum_{d | m} chi_D(d) d^s; D = 1 gives the trivial character.
SigmaValue sigma_s_chi(long m, const Rat& s, const Int& D = 1);

/// Dirichlet L(s, chi_D) by partial summation with a rigorous tail bound.
/// s must be > 1 and an integer or half-integer.
double dirichlet_L(const Rat& s, const Int& D, double eps = 1e-12);

Rat bernoulli(int n);
Rat bernoulli_poly(int n, const Rat& x);
/// Exact value r with L(k, chi_D) = r * pi^k * sqrt(f), f the conductor,
/// when chi_D(-1) = (-1)^k; nullopt otherwise.
std::optional<Rat> exact_L_value(int k, const Int& D);

// ------------------------------------------------------------ local densities

/// l^{a(1-r)} #{v mod l^a : Q(v) = m mod l^a} by enumeration (guard 1e8).
Rat local_density_naive(long ell, const QuadLattice& L, const Int& m, int a);
/// Same quantity via an l-adic Jordan splitting and convolution of block
/// value distributions; works for l = 2.
Rat local_density_split(long ell, const QuadLattice& L, const Int& m, int a);
/// Depth at which local_density_split is taken as stable, and the value.
struct StableDensity {
  Rat value;
  int depth;
};
StableDensity local_density(long ell, const QuadLattice& L, const Int& m);
/// Reduction mod p of the unit part, p odd, p not dividing m.
Rat local_density_recursive(long p, const QuadLattice& L, const Int& m);
/// Number of unit diagonal entries of a p-adic diagonalization.
int unit_rank(long p, const QuadLattice& L);

// ------------------------------------------------------- Eisenstein coefficients

struct EisensteinContext {
  int b = 0;
  long p = 0;
  Int detL;
  Int discOrder;
  std::vector<long> badPrimes;
  static EisensteinContext make(int b, long p, const Int& detL, const Int& discOrder);
};

/// coeff * sqrt(rad) * (L(l_s, chi_{l_D}) / pi^{l_s})^{l_exp}.
struct StructuredValue {
  Rat coeff = 0;
  Int rad = 1;  // squarefree, positive
  int l_exp = 0;
  Int l_D = 1;
  int l_s = 0;
  double approx = 0;

  bool exact() const { return l_exp == 0; }
  /// Exact rational value; requires exact() and rad == 1 (or coeff == 0).
  std::optional<Rat> rational() const;
  void mul_sqrt(const Int& n);
  void div_sqrt(const Int& n);
  StructuredValue abs_value() const;
  std::string str() const;
};

StructuredValue eis_coeff_global(const EisensteinContext& ctx, const std::map<long, Rat>& localDensities,
                                 long m);
StructuredValue eis_coeff_theta(const EisensteinContext& ctxAmbient, const QuadLattice& Lprime, long m);

/// Densities at every prime dividing 2 det(L), at stabilized depth.
std::map<long, Rat> bad_prime_densities(const QuadLattice& L, const std::vector<long>& primes, long m);

struct CuspRow {
  long m;
  Int rep;
  StructuredValue q;
  std::optional<Rat> residual;  // exact when q is rational
  double residual_approx;
};
struct CuspReport {
  std::vector<CuspRow> rows;
  bool cusp_free = false;
  double slope = 0;  // least squares slope of log|g| vs log m (if !cusp_free)
  int nonzero = 0;
};
CuspReport cusp_part(const QuadLattice& Lprime, const EisensteinContext& ctx, long M);

struct DensmReport {
  Rat delta;             // delta(p, L'_n, m)
  Int disc_p;            // p-part of |L'^v / L'|
  Rat reduced_ratio;     // ratio * sqrt(disc_p)
  Rat reduced_bound;     // general bound * sqrt(disc_p)
  std::optional<Rat> superspecial_bound;  // (1 + 1/p) / (1 - p^-[(b+2)/2]) when disc_p = p^2
  double ratio = 0, bound = 0;
  bool ok = true;
};
DensmReport densm_ratio(const EisensteinContext& ctx, const QuadLattice& Lprime_n, long m);

/// Surrogate for membership in the density set: p does not divide m and every
/// listed prime has positive local density.
bool locally_representable(const QuadLattice& L, const std::vector<long>& primes, long m);

}  // namespace orthocount
