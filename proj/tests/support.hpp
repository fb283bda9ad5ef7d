#pragma once

#include <random>

#include "orthocount/lattice.hpp"

namespace testsupport {

using namespace orthocount;

inline std::mt19937_64& rng(uint64_t seed = 0) {
  static std::mt19937_64 g(20240611);
  if (seed) g.seed(seed);
  return g;
}

inline long uniform(long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng());
}

/// Product of random elementary matrices.
inline IntMatrix random_unimodular(int n, int steps = 12) {
  IntMatrix U = identity_matrix(n);
  for (int s = 0; s < steps && n > 1; ++s) {
    int i = uniform(0, n - 1), j = uniform(0, n - 2);
    if (j >= i) ++j;
    long q = uniform(-2, 2);
    for (int r = 0; r < n; ++r) U[r][i] += q * U[r][j];
    if (uniform(0, 3) == 0)
      for (int r = 0; r < n; ++r) std::swap(U[r][i], U[r][j]);
  }
  return U;
}

inline QuadLattice conjugate(const QuadLattice& L, const IntMatrix& U) {
  return QuadLattice::make(int_mul(int_mul(transpose(U), L.gram), U), L.positive_definite);
}

/// Random positive definite even lattice: diagonal-dominant Gram.
inline QuadLattice random_pd_lattice(int n, long maxdiag = 6) {
  for (;;) {
    IntMatrix g(n, std::vector<Int>(n, 0));
    for (int i = 0; i < n; ++i) {
      g[i][i] = 2 * uniform(1, maxdiag);
      for (int j = 0; j < i; ++j) g[i][j] = g[j][i] = uniform(-1, 1);
    }
    try {
      return QuadLattice::make(g, true);
    } catch (const InputError&) {
    }
  }
}

/// Independent counting oracle: box search using x_i^2 <= 2M (G^{-1})_ii.
inline std::vector<Int> box_theta(const QuadLattice& L, long M) {
  int n = L.rank;
  RatMatrix inv = rat_inverse(to_rat(L.gram));
  std::vector<long> B(n);
  for (int i = 0; i < n; ++i) B[i] = isqrt(floor_rat(inv[i][i] * 2 * M)).get_si();
  std::vector<Int> theta(M + 1, 0);
  std::vector<Int> x(n);
  std::vector<long> c(n);
  for (int i = 0; i < n; ++i) c[i] = -B[i];
  for (;;) {
    for (int i = 0; i < n; ++i) x[i] = c[i];
    Int q = L.Q(x);
    if (q <= M) theta[q.get_si()] += 1;
    int i = 0;
    while (i < n && c[i] == B[i]) c[i] = -B[i], ++i;
    if (i == n) break;
    ++c[i];
  }
  return theta;
}

}  // namespace testsupport
