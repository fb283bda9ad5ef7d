#include <doctest.h>

#include <cmath>
#include <random>

#include "orthocount/budget.hpp"

using namespace orthocount;

namespace {

SublatticeBasis basis(const QuadLattice& L, IntMatrix cols) { return SublatticeBasis{L, std::move(cols)}; }

// Z^2 with x^2 + y^2; L_2 = <(0,1),(5,0)>, L_n = 5 Z^2 for n >= 3
NestedLatticeSequence worked_sequence() {
  NestedLatticeSequence s;
  s.ambient = QuadLattice::make({{2, 0}, {0, 2}}, true);
  s.p = 5;
  s.b = 2;
  s.mode = ModelMode::NonSupersingular;
  s.levels.push_back({1, basis(s.ambient, {{1, 0}, {0, 1}})});
  s.levels.push_back({2, basis(s.ambient, {{0, 5}, {1, 0}})});
  s.levels.push_back({3, basis(s.ambient, {{0, 5}, {5, 0}})});
  return s;
}

NestedLatticeSequence constant_sequence() {
  NestedLatticeSequence s = worked_sequence();
  s.levels.resize(1);
  return s;
}

}  // namespace

TEST_CASE("local intersection on the worked sequence") {
  auto s = worked_sequence();
  CHECK(local_intersection(s, 1, 10) == 6);
  CHECK(local_intersection(s, 3, 10) == 0);
  CHECK(local_intersection(constant_sequence(), 1, 7) == 28);
  CHECK(local_intersection(s, 25, 4) == 12 + 4 + 2 * 4);  // r_2(25) = 12, only (+-5, 0), (0, +-5) survive
}

TEST_CASE("local intersection never grows when a level shrinks") {
  auto s = worked_sequence();
  auto t = s;
  t.levels[1].basis = basis(s.ambient, {{0, 5}, {5, 0}});
  for (long m = 1; m <= 60; ++m) CHECK(local_intersection(t, m, 12) <= local_intersection(s, m, 12));
}

TEST_CASE("sequence validation") {
  auto s = worked_sequence();
  s.levels[2].basis = basis(s.ambient, {{0, 3}, {3, 0}});
  CHECK_THROWS_AS(s.validate(), InputError);  // not nested, index not a 5-power
  auto t = worked_sequence();
  t.levels[1].n_start = 1;
  CHECK_THROWS_AS(t.validate(), InputError);
  auto u = worked_sequence();
  u.mode = ModelMode::Supersingular;
  CHECK_THROWS_AS(u.validate(), InputError);  // rank 2 != b + 2
  u.b = 0;
  CHECK_NOTHROW(u.validate());
}

TEST_CASE("truncation cap") {
  CHECK(truncation_cap(1, 4, 100) == 40000);
  CHECK(truncation_cap(1, 4, 200) == 160000);
  CHECK(truncation_cap(1, 3, 200) == 8000);  // 400^{3/2}
  CHECK(truncation_cap(1, 3, 100) == 2828);  // floor(200^{3/2})
  CHECK(truncation_cap(make_rat(1, 2), 2, 10) == 10);
  auto chk = truncation_check(worked_sequence(), make_rat(1, 2), 5);
  CHECK(chk.cap == 5);
  CHECK(chk.ok());  // 5Z^2 has no vectors with Q <= 10
  auto bad = truncation_check(worked_sequence(), make_rat(1, 2), 13);
  CHECK_FALSE(bad.ok());
}

TEST_CASE("counting bound") {
  // rank one: majorant sqrt(2X)/mu_1 + 1 against 2 floor(sqrt(2X)/mu_1) + 1
  NestedLatticeSequence r1;
  r1.ambient = QuadLattice::make({{6}}, true);
  r1.p = 5;
  r1.b = 1;
  r1.mode = ModelMode::NonSupersingular;
  r1.levels.push_back({1, basis(r1.ambient, {{1}})});
  for (long X : {0L, 1L, 3L, 10L, 50L, 1000L}) {
    auto cb = counting_bound(r1, X, 1);
    double ratio = std::sqrt(2.0 * X) / std::sqrt(6.0);
    CHECK(cb.majorant == doctest::Approx(ratio + 1));
    CHECK(cb.empirical == 2 * static_cast<long>(std::floor(ratio + 1e-12)) + 1);
    CHECK(cb.empirical.get_d() <= 3 * cb.majorant);
  }
  auto cb0 = counting_bound(worked_sequence(), 0, 10);
  CHECK(cb0.majorant == doctest::Approx(10));
  CHECK(cb0.empirical == 10);
  auto cb = counting_bound(worked_sequence(), 25, 10);
  CHECK(cb.K > 0);
  CHECK(cb.K <= 4);
}

TEST_CASE("firstmin implied constant") {
  auto w = firstmin_check(worked_sequence());
  CHECK_FALSE(w.exempt);
  CHECK(w.implied_constant > 0);
  CHECK(firstmin_check(constant_sequence()).exempt);
  auto f = formal_curve_sequence(5, 1, 1, 1, 1);
  auto r = firstmin_check(f.seq);
  CHECK(r.ok());
  CHECK(r.implied_constant > 0);
}

TEST_CASE("g_P and the ledger identity") {
  CHECK(g_P(4, 5, 100) == 100);
  CHECK(g_P(0, 7, 55) == 0);
  std::mt19937_64 g(42);
  for (int t = 0; t < 50; ++t) {
    long p = std::vector<long>{5, 7, 11, 13}[g() % 4];
    CurveBudget b;
    b.p = p;
    b.omegaC = make_rat(1 + g() % 20, 1 + g() % 3);
    // spread (p-1) omega.C over supersingular points, add ordinary noise
    Rat total = Rat(p - 1) * b.omegaC;
    if (total.get_den() != 1) continue;
    long left = total.get_num().get_si();
    int k = 0;
    while (left > 0) {
      long h = std::min<long>(left, 1 + g() % 5);
      b.points.push_back({"P" + std::to_string(k++), h, g() % 2 ? PointType::Superspecial : PointType::NonssSupersingular});
      left -= h;
    }
    b.points.push_back({"O", 3, PointType::Ordinary});
    REQUIRE(b.complete());
    Rat q = make_rat(1 + g() % 1000, 1 + g() % 7);
    CHECK(ledger_sum(b, q) == q * b.omegaC);
  }
}

TEST_CASE("ssmain constants") {
  auto nonss = ssmain_bound(5, 6, SsCase::Nonss);
  CHECK(nonss.closed_form == make_rat(7, 20));
  CHECK(nonss.series == make_rat(29, 60));
  auto s1 = ssmain_bound(5, 6, SsCase::Ssp1);
  CHECK(s1.closed_form == make_rat(61, 62));
  CHECK(s1.series == make_rat(61, 62));
  auto s2 = ssmain_bound(5, 6, SsCase::Ssp2);
  CHECK(s2.closed_form == make_rat(17, 20));
  CHECK(s2.series == make_rat(17, 20));
  CHECK(ssmain_bound(5, 3, SsCase::Ssp1).cited);

  for (SsCase c : {SsCase::Nonss, SsCase::Ssp1, SsCase::Ssp2}) {
    Rat prev = 2;
    for (long p = 5; p <= 97; ++p) {
      if (!is_prime(p)) continue;
      auto v = ssmain_bound(p, 4, c);
      CHECK(v.ok());
      CHECK(v.closed_form < prev);
      if (p > 5 && c != SsCase::Nonss) CHECK(v.closed_form < v.ceiling);
      prev = v.closed_form;
    }
  }
  CHECK_THROWS_AS(ssmain_bound(3, 4, SsCase::Nonss), InputError);
}

TEST_CASE("sserror bound and its inversion") {
  CHECK(sserror_bound(32, 4, 16, 1) == doctest::Approx(4096 / std::sqrt(32.0)).epsilon(1e-12));
  CHECK(sserror_bound(1e9, 4, 16, 1) < sserror_bound(1e6, 4, 16, 1) * 1e-1);
  for (double target : {1000.0, 10.0, 0.5}) {
    Int T = solve_T(target, 4, 16, 1);
    CHECK(sserror_bound(T.get_d(), 4, 16, 1) <= target);
    if (T > 1) CHECK(sserror_bound(Int(T - 1).get_d(), 4, 16, 1) > target);
  }
  auto shape = budget_shape(5, 4, 100, 1000, 3, 1);
  CHECK(shape.contradiction);
  CHECK(shape.alpha == make_rat(61, 62));
}

TEST_CASE("formal curve sequence") {
  auto f = formal_curve_sequence(5, 1, 1, 1, 1);
  REQUIRE(f.steps.size() == 2);
  CHECK(f.steps[0].n_next == 1);
  CHECK(f.steps[0].m == 2);
  CHECK(f.steps[0].levels_certified == 5);
  CHECK(f.steps[1].n_j == 1);
  CHECK(f.steps[1].n_next == 25);
  CHECK(f.steps[1].m == 37);
  CHECK(f.steps[1].explicit_levels);
  CHECK(f.steps[1].levels_certified == ipow(Int(5), 25));
  CHECK(f.steps[1].sharp);
  CHECK(f.seq.levels.size() == 26);

  auto f0 = formal_curve_sequence(5, 1, 1, 1, 0);
  CHECK(f0.steps[0].bound_exponent == 1);

  auto f2 = formal_curve_sequence(5, 2, 1, 2, 2);
  CHECK_FALSE(f2.steps[2].explicit_levels);
  CHECK(f2.steps[2].n_next == ipow(Int(5), 50));
  Int mu = 1 + 5 + ipow(Int(5), 25);
  CHECK(f2.steps[2].m == 1 + 2 * mu * mu);
  // log m_j ~ 2 n_j log p, while the bound exponent is p^{2 n_j}
  for (const auto& st : f2.steps) {
    double logm = std::log(st.m.get_d()) / std::log(5.0);
    CHECK(std::abs(logm - 2 * st.n_j.get_d()) < 2);
  }
  CHECK_THROWS_AS(formal_curve_sequence(5, 1, 1, 1, 3), InputError);
}
