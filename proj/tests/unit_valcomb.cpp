#include "doctest.h"
#include "orthocount/valcomb.hpp"
#include "support.hpp"

using namespace orthocount;
using namespace testsupport;

namespace {

ValuationProfile prof(int n, long p, std::vector<long> a) {
  ValuationProfile v;
  v.n = n;
  v.p = p;
  for (long x : a) v.a.push_back(x);
  return v;
}

// nu_r by the recursion nu_r = min_i a_i + p^i nu_{r-1}; no enumeration.
Int nu_by_recursion(int r, const ValuationProfile& pr) {
  Int prev = 0;
  for (int k = 0; k < r; ++k) {
    Int best = -1;
    for (int i = 1; i <= pr.n + 1; ++i) {
      Int v = pr.a[i - 1] + ipow(Int(pr.p), i) * prev;
      if (best < 0 || v < best) best = v;
    }
    prev = best;
  }
  return prev;
}

ValuationProfile random_profile() {
  int n = uniform(1, 4);
  long ps[] = {5, 7, 11, 13};
  ValuationProfile v;
  v.n = n;
  v.p = ps[uniform(0, 3)];
  long top = uniform(0, 2) == 0 ? 400 : 12;
  for (int i = 0; i <= n; ++i) v.a.push_back(uniform(1, top));
  return v;
}

}  // namespace

TEST_CASE("nu examples") {
  auto pr = prof(1, 5, {10, 1});
  CHECK(nu({1, 2}, pr) == 15);
  CHECK(nu({2, 1}, pr) == 251);
  auto pr2 = prof(2, 7, {3, 5, 9});
  CHECK(nu({1, 1, 1}, pr2) == 3 * (1 + 7 + 49));
  CHECK_THROWS_AS(nu({4}, pr2), InputError);
}

TEST_CASE("min_set examples") {
  auto pr = prof(1, 5, {10, 1});
  auto s = min_set(2, pr);
  CHECK(s.value == 15);
  REQUIRE(s.argmin.size() == 1);
  CHECK(s.argmin[0] == IndexTuple{1, 2});

  auto ties = prof(2, 5, {4, 7, 4});
  auto s1 = min_set(1, ties);
  CHECK(s1.value == 4);
  CHECK(s1.argmin.size() == 2);

  auto flat = prof(3, 7, {5, 5, 5, 5});
  for (const auto& I : min_set(2, flat).argmin) CHECK(I[0] == 1);

  CHECK_THROWS_AS(min_set(11, prof(4, 5, {1, 1, 1, 1, 1})), InputError);
}

TEST_CASE("nu_r agrees with the recursion and the (1,...,1) bound") {
  rng(771);
  for (int t = 0; t < 100; ++t) {
    auto pr = random_profile();
    for (int r = 1; r <= 5; ++r) {
      Int v = min_set(r, pr).value;
      CHECK(v == nu_by_recursion(r, pr));
      if (r >= 3) {
        IndexTuple ones(r - 2 + 2, 1);
        CHECK(v <= nu(ones, pr));
      }
    }
  }
}

TEST_CASE("nu monotone in a_i and under extension") {
  rng(772);
  for (int t = 0; t < 100; ++t) {
    auto pr = random_profile();
    IndexTuple I;
    int r = uniform(1, 5);
    for (int k = 0; k < r; ++k) I.push_back(uniform(1, pr.n + 1));
    Int v = nu(I, pr);
    auto J = I;
    J.push_back(uniform(1, pr.n + 1));
    CHECK(nu(J, pr) > v);
    auto bumped = pr;
    bumped.a[I[0] - 1] += 1;
    CHECK(nu(I, bumped) > v);
  }
}

TEST_CASE("minval properties on 200 seeded profiles") {
  rng(20250101);
  int violations = 0;
  for (int t = 0; t < 200; ++t) {
    auto pr = random_profile();
    auto rep = verify_minval(pr, 6);
    for (const auto& v : rep.violations) {
      MESSAGE("r=" << v.r << " property " << v.property << ": " << v.witness);
      ++violations;
    }
  }
  CHECK(violations == 0);

  // large a_1, tiny a_{n+1}
  auto adv = prof(3, 5, {1000, 900, 400, 1});
  CHECK(verify_minval(adv, 6).ok());
  for (const auto& s : verify_minval(prof(1, 5, {3, 2}), 6).sets)
    for (const auto& I : s.argmin)
      for (const auto& J : s.argmin) CHECK(std::abs(weight(I) - weight(J)) < 2);
}

TEST_CASE("superspecial candidate valuations") {
  SuperspecialProfile sp{5, 2, 13, 1};
  for (int r = 0; r <= 3; ++r) {
    auto m = ssp_min_valuation(SspKind::S1, r, sp);
    REQUIRE(m.argmin.size() == 1);
    CHECK(m.argmin[0] == std::make_pair(r + 1, 0));
    Int expect = sp.a;
    for (int i = 1; i <= r + 1; ++i) expect += sp.h * ipow(Int(5), i);
    CHECK(m.value == expect);
  }
  auto s2 = ssp_min_valuation(SspKind::S2, 0, sp);
  CHECK(s2.value == sp.a + 5 * sp.a);

  // Case 3: h'(1 + p^{2e-1}) = h(1 + p). p = 5, e = 1: h'*6 = h*6, h = h'.
  // Need 2a <= h and 6a <= h'; h = h' = 12, a = 2.
  SuperspecialProfile c3{5, 12, 12, 2};
  for (int r = 0; r <= 3; ++r) {
    auto m = ssp_min_valuation(SspKind::S1, r, c3);
    REQUIRE(m.argmin.size() == 2);
    CHECK(m.argmin[0] == std::make_pair(r + 1, 0));  // (r-e+2, e-1)
    CHECK(m.argmin[1] == std::make_pair(r, 1));      // (r-e+1, e)
    CHECK(ssp_min_valuation(SspKind::S2, r + 1, c3).argmin.size() == 1);
  }
  // e = 2: h'(1 + 125) = 6h -> h = 21k, h' = k; but need 6a <= h', so k >= 6.
  SuperspecialProfile c3b{5, 126, 6, 1};
  for (int r = 1; r <= 3; ++r) {
    auto m = ssp_min_valuation(SspKind::S1, r, c3b);
    REQUIRE(m.argmin.size() == 2);
    CHECK(m.argmin[0] == std::make_pair(r, 1));
    CHECK(m.argmin[1] == std::make_pair(r - 1, 2));
  }
  CHECK_THROWS_AS((SuperspecialProfile{5, 2, 5, 1}.validate()), InputError);
}

TEST_CASE("schedules") {
  auto h = schedule_h(2, 5, 2);
  CHECK(h == std::vector<Int>{2, 12, 62});
  auto hp = schedule_hprime(2, 1, 5, 1);
  CHECK(hp == std::vector<Int>{0, 2, 12});

  auto g = predicted_index(13, DecayCase::Generic, 2, 0, 5);
  CHECK(g.status == IndexPrediction::Covered);
  CHECK(g.e == 4);
  CHECK(g.r == 1);
  CHECK(predicted_index(2, DecayCase::Generic, 2, 0, 5).status == IndexPrediction::Trivial);
  CHECK(predicted_index(3, DecayCase::Generic, 2, 0, 5).e == 2);

  // ssp1, h=2, a=1, p=5: (1,2] e=1, (2,7] e=2, (7,12] e=3, (12,37] e=4, ...
  CHECK(predicted_index(2, DecayCase::SspCase1, 2, 1, 5).e == 1);
  CHECK(predicted_index(7, DecayCase::SspCase1, 2, 1, 5).e == 2);
  CHECK(predicted_index(8, DecayCase::SspCase1, 2, 1, 5).e == 3);
  CHECK(predicted_index(13, DecayCase::SspCase1, 2, 1, 5).e == 4);
  CHECK(predicted_index(1, DecayCase::SspCase1, 2, 1, 5).status == IndexPrediction::Trivial);
  // ssp2: (1,2] e=1, (2,12] e=3, (12,62] e=5
  CHECK(predicted_index(2, DecayCase::SspCase2, 2, 1, 5).e == 1);
  CHECK(predicted_index(3, DecayCase::SspCase2, 2, 1, 5).e == 3);
  CHECK(predicted_index(62, DecayCase::SspCase2, 2, 1, 5).e == 5);
}

TEST_CASE("predicted_index nondecreasing and gap-free under 2a <= h") {
  rng(773);
  for (int t = 0; t < 60; ++t) {
    long p = uniform(0, 1) ? 5 : 7;
    Int h = uniform(2, 30);
    Int a = uniform(1, h.get_si() / 2);
    for (auto c : {DecayCase::Generic, DecayCase::SspCase1, DecayCase::SspCase2}) {
      auto s = decay_schedule(c, h, a, p, 3);
      for (size_t k = 1; k < s.buckets.size(); ++k) {
        CHECK(s.buckets[k].lo == s.buckets[k - 1].hi);
        CHECK(s.buckets[k].e >= s.buckets[k - 1].e);
      }
      int last = 0;
      for (long n = 1; n <= 400; ++n) {
        auto pi = predicted_index(n, c, h, a, p);
        CHECK(pi.status != IndexPrediction::Uncovered);
        CHECK(pi.e >= last);
        last = pi.e;
      }
    }
  }
}
