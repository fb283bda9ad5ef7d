// Acceptance run: one line per criterion, nonzero exit if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "orthocount/arith.hpp"
#include "orthocount/budget.hpp"
#include "orthocount/crystal.hpp"
#include "orthocount/lattice.hpp"
#include "orthocount/suites.hpp"
#include "orthocount/valcomb.hpp"

using namespace orthocount;

namespace {

struct Result {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void run(const char* id, double limit_s, const std::function<Result()>& fn) {
  auto t0 = std::chrono::steady_clock::now();
  Result r;
  try {
    r = fn();
  } catch (const std::exception& e) {
    r = {false, std::string("exception: ") + e.what()};
  }
  double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool in_time = limit_s <= 0 || dt < limit_s;
  bool ok = r.pass && in_time;
  if (!ok) ++failures;
  std::printf("%s %s  %s  [%.2f s%s]\n", id, ok ? "PASS" : "FAIL", r.detail.c_str(), dt,
              in_time ? "" : ", over time limit");
  std::fflush(stdout);
}

const std::vector<int>& cfactors(int n) {
  static const std::vector<std::vector<int>> f{{}, {}, {0}, {0, 1}, {0, 1, -1}};
  return f[n];
}

}  // namespace

int main() {
  run("AC1", 5, [] {
    auto E8 = e8_lattice();
    auto ctx = EisensteinContext::make(6, 5, 1, 1);
    auto th = theta_series(E8, 20);
    int bad = 0;
    for (long m = 1; m <= 20; ++m) {
      auto q = eis_coeff_theta(ctx, E8, m);
      if (!q.rational() || *q.rational() != Rat(th[m])) ++bad;
    }
    return Result{bad == 0, "E8 q_L(m) = r(m) exactly for m=1..20, mismatches=" + std::to_string(bad)};
  });

  run("AC2", 60, [] {
    auto rep = density_cross_check(20240601, 200);
    int mm = rep.mismatches(), bv = rep.bound_violations();
    return Result{mm == 0 && bv == 0 && rep.cases.size() >= 200,
                  std::to_string(rep.cases.size()) + " lattices (redrawn " + std::to_string(rep.skipped) +
                      "), mismatches=" + std::to_string(mm) + ", bound violations=" + std::to_string(bv)};
  });

  run("AC3", 60, [] {
    auto s = minval_suite(20250101, 200, 6);
    return Result{s.violations.empty(), std::to_string(s.profiles) + " profiles, r<=6, violations=" +
                                            std::to_string(s.violations.size()) +
                                            (s.violations.empty() ? "" : " first: " + s.violations.front())};
  });

  run("AC4", 1, [] {
    auto nonss = ssmain_bound(5, 6, SsCase::Nonss);
    auto ssp1 = ssmain_bound(5, 6, SsCase::Ssp1);
    auto ssp2 = ssmain_bound(5, 6, SsCase::Ssp2);
    bool values = nonss.closed_form == make_rat(7, 20) && ssp1.closed_form == make_rat(61, 62) &&
                  ssp2.closed_form == make_rat(17, 20);
    bool attained = ssp1.closed_form == ssp1.ceiling && ssp2.closed_form == ssp2.ceiling;
    int above = 0;
    for (long p = 5; p <= 97; ++p) {
      if (!is_prime(p)) continue;
      for (int b = 4; b <= 8; ++b)
        for (auto c : {SsCase::Nonss, SsCase::Ssp1, SsCase::Ssp2}) above += !ssmain_bound(p, b, c).ok();
    }
    return Result{values && attained && above == 0,
                  "p=5: nonss " + rat_str(nonss.closed_form) + " (series " + rat_str(nonss.series) + " <= " +
                      rat_str(nonss.ceiling) + "), ssp1 " + rat_str(ssp1.closed_form) + ", ssp2 " +
                      rat_str(ssp2.closed_form) + "; above ceiling for p<=97, b=4..8: " + std::to_string(above)};
  });

  run("AC5", 0, [] {
    int bad = 0, total = 0;
    for (int n = 1; n <= 4; ++n)
      for (int m = 0; m <= 3; ++m) {
        auto r = nonordinary_equation(n, m, 5);
        bool want = r.equation.str() == (n == 1 ? r.expected.str() : std::string("y1"));
        bool ok = want && r.matches && r.filtration_ok && nonordinary_matrix_check(n, m, 5, 97 * n + m);
        bad += !ok;
        ++total;
      }
    return Result{bad == 0, std::to_string(total) + " (n, m) pairs, symbolic and matrix routes, failures=" +
                                std::to_string(bad)};
  });

  run("AC6", 300, [] {
    auto tr = superspecial_case1_trace(700, 1);
    bool ok = tr.h == 2 && tr.a == 1 && tr.hprime >= 13 && tr.rows.size() == 4;
    std::string d = "h=" + std::to_string(tr.h) + " h'=" + std::to_string(tr.hprime) + " a=" + std::to_string(tr.a) +
                    " T=700:";
    for (const auto& row : tr.rows) {
      ok = ok && row.ok();
      d += " " + row.vector + "/r" + std::to_string(row.r) + " nu=" + std::to_string(row.tracked.nu) + "(exp " +
           std::to_string(row.expected) + ", bound " + std::to_string(row.tracked.decay_bound) + "<=" +
           std::to_string(row.cap) + ")";
    }
    return Result{ok, d};
  });

  run("AC7", 0, [] {
    int bad = 0, total = 0;
    for (int n = 2; n <= 3; ++n)
      for (uint64_t s = 1; s <= 10; ++s) {
        auto row = generic_decay_check(n, 1000 * n + s, 3);
        bad += !row.ok();
        ++total;
      }
    return Result{bad == 0, std::to_string(total) + " profiles, n in {2,3}, r<=3, disagreements=" + std::to_string(bad)};
  });

  run("AC8", 10, [] {
    auto f = formal_curve_sequence(5, 1, 1, 1, 1);
    const auto& s = f.steps.at(1);
    bool ok = s.m == 37 && s.n_next == 25 && s.explicit_levels && s.levels_certified == ipow(Int(5), 25);
    return Result{ok, "m_1=" + s.m.get_str() + ", levels certified=" + s.levels_certified.get_str() +
                          " (5^25), sharp=" + (s.sharp ? "yes" : "no")};
  });

  run("AC9", 120, [] {
    auto Z8 = diagonal_lattice(std::vector<Int>(8, 2));
    auto rz = cusp_part(Z8, EisensteinContext::make(6, 5, 256, 256), 200);
    std::vector<Int> d(8, 2);
    d[7] = 6;
    auto rl = cusp_part(diagonal_lattice(d), EisensteinContext::make(6, 5, 768, 768), 200);
    bool ok = rz.cusp_free && !rl.cusp_free && rl.slope <= 2.25;
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "Z^8: residual identically 0 for m<=200 (exponent bound holds vacuously); "
                  "x1^2+..+x7^2+3x8^2: slope %.3f <= 2.25",
                  rl.slope);
    return Result{ok, buf};
  });

  run("AC10", 0, [] {
    int bad = 0, maxdim = 0;
    for (long p : {5L, 7L})
      for (int n = 1; n <= 3; ++n) {
        auto r = moore_checks(p, n, cfactors(n), 31 * p + n, 50);
        bad += !r.ok();
        maxdim = std::max(maxdim, r.max_kernel_dim - n);
      }
    return Result{bad == 0, "n<=3, p in {5,7}, 50 vectors each, violations=" + std::to_string(bad) +
                                ", max(dim ker - n)=" + std::to_string(maxdim)};
  });

  std::printf("%s\n", failures == 0 ? "ALL PASS" : (std::to_string(failures) + " FAILED").c_str());
  return failures == 0 ? 0 : 1;
}
