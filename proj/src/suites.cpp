#include "orthocount/suites.hpp"

#include <cmath>
#include <random>

namespace orthocount {

int DensityReport::mismatches() const {
  int k = 0;
  for (const auto& c : cases) k += !c.match;
  return k;
}

int DensityReport::bound_violations() const {
  int k = 0;
  for (const auto& c : cases) k += !c.bounded;
  return k;
}

DensityReport density_cross_check(uint64_t seed, int trials) {
  std::mt19937_64 gen(seed);
  auto uniform = [&](long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(gen); };
  static const long primes[] = {3, 5, 7};
  DensityReport rep;
  while (static_cast<int>(rep.cases.size()) < trials) {
    const long p = primes[uniform(0, 2)];
    const int n = static_cast<int>(uniform(1, 6));
    IntMatrix g(n, std::vector<Int>(n, 0));
    for (int i = 0; i < n; ++i) {
      g[i][i] = 2 * uniform(-9, 9);
      for (int j = 0; j < i; ++j) g[i][j] = g[j][i] = uniform(-9, 9);
    }
    const long m = uniform(1, 60);
    if (mat_det(g) == 0 || m % p == 0) continue;
    QuadLattice L = QuadLattice::make(g, false);

    DensityCase c;
    c.p = p;
    c.rank = n;
    c.m = m;
    try {
      c.depth = local_density(p, L, m).depth;
    } catch (const InputError&) {
      ++rep.skipped;
      continue;
    }
    if (std::pow(static_cast<double>(p), c.depth * n) > 1e8) {
      ++rep.skipped;
      continue;
    }
    c.recursive = local_density_recursive(p, L, m);
    c.naive = local_density_naive(p, L, m, c.depth);
    c.unit_rank = unit_rank(p, L);
    c.match = c.recursive == c.naive;
    c.bounded = c.recursive <= 2 && (c.unit_rank < 3 || c.recursive <= 1 + make_rat(1, p));
    rep.cases.push_back(c);
  }
  return rep;
}

MinvalSuite minval_suite(uint64_t seed, int trials, int r_max, int n_max) {
  std::mt19937_64 gen(seed);
  MinvalSuite s;
  for (int t = 0; t < trials; ++t) {
    ValuationProfile prof = random_valuation_profile(gen, n_max);
    auto rep = verify_minval(prof, r_max);
    ++s.profiles;
    for (const auto& v : rep.violations) {
      std::string a;
      for (const auto& x : prof.a) a += (a.empty() ? "" : ",") + x.get_str();
      s.violations.push_back("p=" + std::to_string(prof.p) + " a=(" + a + ") r=" + std::to_string(v.r) +
                             " property " + std::to_string(v.property) + ": " + v.witness);
    }
  }
  return s;
}

}  // namespace orthocount
