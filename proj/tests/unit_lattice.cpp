#include <chrono>

#include "doctest.h"
#include "support.hpp"

using namespace orthocount;
using namespace testsupport;

namespace {

QuadLattice lattice_L0(int n, long p, long lambda_sq) {
  // e_1, ..., e_n, f_1, ..., f_n with <e1,e1> = 2p, <f1,f1> = -2 lambda^2 p,
  // <e_i,f_i> = p for i > 1.
  IntMatrix g(2 * n, std::vector<Int>(2 * n, 0));
  g[0][0] = 2 * p;
  g[n][n] = -2 * lambda_sq * p;
  for (int i = 1; i < n; ++i) g[i][n + i] = g[n + i][i] = p;
  return QuadLattice::make(g, false);
}

}  // namespace

TEST_CASE("det and discriminant group") {
  auto d = det_and_disc_group(diagonal_lattice({2, 2}));
  CHECK(d.det == 4);
  CHECK(d.disc_order == 4);
  CHECK(d.elementary_divisors == std::vector<Int>{2, 2});

  auto e = det_and_disc_group(e8_lattice());
  CHECK(e.det == 1);
  CHECK(e.disc_order == 1);

  auto h = det_and_disc_group(QuadLattice::make({{0, 1}, {1, 0}}, false));
  CHECK(h.det == -1);
  CHECK(h.disc_order == 1);
}

TEST_CASE("lattice validation") {
  CHECK_THROWS_AS(QuadLattice::make({{1, 0}, {0, 2}}, true), InputError);
  CHECK_THROWS_AS(QuadLattice::make({{2, 1}, {0, 2}}, true), InputError);
  CHECK_THROWS_AS(QuadLattice::make({{2, 2}, {2, 2}}, false), InputError);
  CHECK_THROWS_AS(QuadLattice::make({{-2}}, true), InputError);
}

TEST_CASE("rep_count small cases") {
  auto L = diagonal_lattice({2, 2});
  CHECK(rep_count(L, 1) == 4);
  CHECK(rep_count(L, 0) == 1);
  CHECK(rep_count(L, 5) == 8);
  CHECK(rep_count(e8_lattice(), 0) == 1);
  CHECK(rep_count(e8_lattice(), 1) == 240);
}

TEST_CASE("E8 theta series against 240 sigma_3") {
  auto t0 = std::chrono::steady_clock::now();
  auto theta = theta_series(e8_lattice(), 20);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  MESSAGE("E8 theta to m=20: " << secs << " s");
  for (long m = 1; m <= 20; ++m) {
    Int s3 = 0;
    for (long d : divisors(m)) s3 += Int(d) * d * d;
    CHECK(theta[m] == 240 * s3);
  }
}

TEST_CASE("enumerator agrees with box oracle and is basis invariant") {
  rng(101);
  for (int trial = 0; trial < 25; ++trial) {
    int n = uniform(1, 4);
    auto L = random_pd_lattice(n);
    auto ref = box_theta(L, 12);
    CHECK(theta_series(L, 12) == ref);
    auto L2 = conjugate(L, random_unimodular(n));
    CHECK(theta_series(L2, 12) == ref);
  }
}

TEST_CASE("cumulative counts match a single enumeration pass") {
  rng(102);
  for (int trial = 0; trial < 10; ++trial) {
    auto L = random_pd_lattice(uniform(2, 5));
    auto theta = theta_series(L, 30);
    Int acc = 0;
    for (long M = 0; M <= 30; ++M) {
      acc += theta[M];
      if (M % 5 == 0) CHECK(count_up_to(L, M) == acc);
    }
  }
}

TEST_CASE("successive minima") {
  auto m1 = successive_minima(diagonal_lattice({2, 2}));
  CHECK(m1.mu_sq == std::vector<Int>{1, 1});
  CHECK(m1.a_sq.back() == 1);
  auto m2 = successive_minima(diagonal_lattice({2, 8}));
  CHECK(m2.mu_sq == std::vector<Int>{1, 4});
  CHECK(m2.a_sq.back() == 4);
  CHECK(successive_minima(diagonal_lattice({2})).mu_sq == std::vector<Int>{1});
  auto e = successive_minima(e8_lattice());
  CHECK(e.mu_sq == std::vector<Int>(8, 1));

  rng(103);
  for (int trial = 0; trial < 30; ++trial) {
    int n = uniform(1, 6);
    auto L = random_pd_lattice(n);
    auto mins = successive_minima(L);
    auto L2 = conjugate(L, random_unimodular(n));
    CHECK(successive_minima(L2).mu_sq == mins.mu_sq);
    // mu_1^2 is the minimum of Q on nonzero vectors.
    auto theta = theta_series(L, mins.mu_sq[0].get_si());
    for (long m = 1; m < mins.mu_sq[0]; ++m) CHECK(theta[m] == 0);
    CHECK(theta[mins.mu_sq[0].get_si()] > 0);
    // Hermite-type bound with the rank-dependent (4/3) constant; Q = x^T G x / 2
    // so the determinant of Q's matrix is det(G) / 2^n.
    Rat lhs = rpow(Rat(mins.mu_sq[0]), n);
    Rat rhs = rpow(Rat(4, 3), n * (n - 1) / 2) * Rat(L.det()) / rpow(Rat(2), n);
    CHECK(lhs <= rhs);
  }
}

TEST_CASE("p-adic diagonalization") {
  auto d1 = p_diagonalize(diagonal_lattice({2, 2}), 5, 4);
  CHECK(d1[0].valuation == 0);
  CHECK(d1[1].valuation == 0);

  auto hyp = QuadLattice::make({{0, 5}, {5, 0}}, false);
  auto d2 = p_diagonalize(hyp, 5, 4);
  CHECK(d2[0].valuation == 1);
  CHECK(d2[1].valuation == 1);
  // The discriminant class of a scaled hyperbolic plane is -1 times a square;
  // -1 is a square mod 5, so the two unit parts lie in the same class.
  auto legendre = [](const Int& a, long p) { return mpz_legendre(a.get_mpz_t(), Int(p).get_mpz_t()); };
  CHECK(legendre(d2[0].unit * d2[1].unit, 5) == legendre(Int(-1), 5));
  auto d3 = p_diagonalize(hyp, 7, 3);
  CHECK(legendre(d3[0].unit, 7) != legendre(d3[1].unit, 7));

  auto d4 = p_diagonalize(lattice_L0(1, 5, 2), 5, 3);
  CHECK(d4[0].valuation == 1);
  CHECK(d4[1].valuation == 1);
  CHECK_THROWS_AS(p_diagonalize(hyp, 2, 3), InputError);

  rng(104);
  for (int trial = 0; trial < 100; ++trial) {
    int n = uniform(1, 6);
    long p = std::vector<long>{3, 5, 7}[uniform(0, 2)];
    IntMatrix g(n, std::vector<Int>(n, 0));
    for (int i = 0; i < n; ++i) {
      g[i][i] = 2 * uniform(1, 30);
      for (int j = 0; j < i; ++j) g[i][j] = g[j][i] = uniform(-20, 20);
    }
    if (mat_det(g) == 0) continue;
    auto L = QuadLattice::make(g, false);
    auto vals = [&](const QuadLattice& M) {
      std::vector<int> v;
      for (auto& e : p_diagonalize(M, p, 2)) v.push_back(e.valuation);
      std::sort(v.begin(), v.end());
      return v;
    };
    CHECK(vals(L) == vals(conjugate(L, random_unimodular(n))));
  }
}

TEST_CASE("maximality") {
  CHECK(is_maximal_at(e8_lattice(), 3));
  auto E = e8_lattice();
  IntMatrix g9 = E.gram;
  for (auto& row : g9)
    for (auto& x : row) x *= 9;
  CHECK_FALSE(is_maximal_at(QuadLattice::make(g9, true), 3));
  CHECK_FALSE(is_maximal_at(diagonal_lattice({18, 2}), 3));
  // The t_P = 2 lattice is anisotropic mod p on its discriminant, hence maximal.
  CHECK(is_maximal_at(lattice_L0(1, 5, 2), 5));
  CHECK_FALSE(is_maximal_at(lattice_L0(2, 5, 2), 5));
  CHECK(is_maximal_at(diagonal_lattice({2, 6}), 3));
}

TEST_CASE("intersections and indices") {
  auto Z2 = diagonal_lattice({2, 2});
  SublatticeBasis amb{Z2, identity_matrix(2)};
  auto [m0, i0] = intersect_and_index(amb, amb);
  CHECK(i0 == 1);
  CHECK(same_lattice(m0, amb));

  SublatticeBasis B{Z2, {{5, 0}, {0, 1}}};
  auto [m1, i1] = intersect_and_index(amb, B);
  CHECK(i1 == 5);
  CHECK(same_lattice(m1, B));

  SublatticeBasis C{Z2, {{1, 0}, {0, 5}}};
  auto [m2, i2] = intersect_and_index(B, C);
  CHECK(i2 == 5);
  CHECK(same_lattice(m2, SublatticeBasis{Z2, {{5, 0}, {0, 5}}}));

  SublatticeBasis other{diagonal_lattice({2, 4}), identity_matrix(2)};
  CHECK_THROWS_AS(intersect_and_index(amb, other), InputError);

  rng(105);
  for (int trial = 0; trial < 50; ++trial) {
    int n = uniform(1, 4);
    auto L = diagonal_lattice(std::vector<Int>(n, 2));
    auto randsub = [&] {
      IntMatrix m;
      do {
        m.assign(n, std::vector<Int>(n, 0));
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) m[i][j] = uniform(-4, 4);
      } while (mat_det(m) == 0);
      return SublatticeBasis{L, m};
    };
    auto A = randsub(), Bs = randsub();
    auto [M, idx] = intersect_and_index(A, Bs);
    CHECK(idx * A.index() == M.index());
    CHECK(Bs.index() % idx == 0);
    for (int j = 0; j < n; ++j) {
      std::vector<Int> col(n);
      for (int i = 0; i < n; ++i) col[i] = M.cols[i][j];
      CHECK(A.contains(col));
      CHECK(Bs.contains(col));
    }
  }
}
