#include "orthocount/budget.hpp"

#include <algorithm>
#include <cmath>

#include "orthocount/parallel.hpp"

namespace orthocount {

// ------------------------------------------------------------ nested sequences

void NestedLatticeSequence::validate() const {
  if (!is_prime(p)) throw InputError("sequence: p must be prime");
  if (levels.empty()) throw InputError("sequence: no levels");
  if (!ambient.positive_definite) throw InputError("sequence: ambient lattice must be positive definite");
  const int r = ambient.rank;
  if (mode == ModelMode::Supersingular && r != b + 2)
    throw InputError("sequence: supersingular models need rank b + 2");
  if (mode == ModelMode::NonSupersingular && r > b) throw InputError("sequence: non-supersingular models need rank <= b");
  if (levels[0].n_start != 1) throw InputError("sequence: first level must start at n = 1");
  for (size_t k = 0; k < levels.size(); ++k) {
    const auto& cols = levels[k].basis.cols;
    if (static_cast<int>(cols.size()) != r) throw InputError("sequence: basis has wrong size");
    for (const auto& row : cols)
      if (static_cast<int>(row.size()) != r) throw InputError("sequence: levels must have full rank");
    if (levels[k].basis.index() == 0) throw InputError("sequence: levels must have full rank");
    if (k == 0) {
      if (levels[0].basis.index() != 1) throw InputError("sequence: level 1 must be the ambient lattice");
      continue;
    }
    if (levels[k].n_start <= levels[k - 1].n_start) throw InputError("sequence: n_start must increase");
    for (int j = 0; j < r; ++j) {
      std::vector<Int> v(r);
      for (int i = 0; i < r; ++i) v[i] = cols[i][j];
      if (!levels[k - 1].basis.contains(v)) throw InputError("sequence: levels must be nested");
    }
    Int ratio = levels[k].basis.index() / levels[k - 1].basis.index();
    while (ratio % p == 0) ratio /= p;
    if (ratio != 1) throw InputError("sequence: indices between levels must be powers of p");
  }
}

QuadLattice NestedLatticeSequence::lattice(size_t k) const { return sublattice(ambient, levels.at(k).basis.cols); }

Int NestedLatticeSequence::multiplicity(size_t k, const Int& n_cap) const {
  Int lo = levels.at(k).n_start;
  Int hi = k + 1 < levels.size() ? Int(levels[k + 1].n_start - 1) : n_cap;
  if (hi > n_cap) hi = n_cap;
  return hi >= lo ? Int(hi - lo + 1) : Int(0);
}

Int local_intersection(const NestedLatticeSequence& seq, long m, const Int& n_cap) {
  seq.validate();
  if (m < 1) throw InputError("local_intersection: m must be positive");
  std::vector<Int> part(seq.levels.size());
  parallel_for(seq.levels.size(), [&](size_t k) {
    Int mult = seq.multiplicity(k, n_cap);
    if (mult > 0) part[k] = mult * rep_count(seq.lattice(k), m);
  });
  Int total = 0;
  for (const auto& x : part) total += x;
  return total;
}

// ------------------------------------------------------------ truncation and counting

Int truncation_cap(const Rat& c1, int b, long X) {
  if (c1 <= 0 || X < 1 || b < 0) throw InputError("truncation_cap: need c1 > 0, X >= 1, b >= 0");
  const Rat base(2 * X);
  if (b % 2 == 0) return floor_rat(c1 * rpow(base, b / 2));
  // floor(sqrt(r)) = isqrt(floor(r))
  return isqrt(floor_rat(c1 * c1 * rpow(base, b)));
}

TruncationCheck truncation_check(const NestedLatticeSequence& seq, const Rat& c1, long X) {
  seq.validate();
  TruncationCheck out;
  out.cap = truncation_cap(c1, seq.b, X);
  for (size_t k = 0; k < seq.levels.size(); ++k) {
    bool beyond = k + 1 == seq.levels.size() || seq.levels[k + 1].n_start - 1 > out.cap;
    if (!beyond) continue;
    // count_up_to includes the zero vector
    if (count_up_to(seq.lattice(k), 2 * X) > 1) out.offending_levels.push_back(k);
  }
  return out;
}

CountingBound counting_bound(const NestedLatticeSequence& seq, long X, const Int& n_cap) {
  seq.validate();
  if (X < 0) throw InputError("counting_bound: X must be nonnegative");
  const size_t L = seq.levels.size();
  std::vector<double> maj(L, 0);
  std::vector<Int> emp(L);
  parallel_for(L, [&](size_t k) {
    Int mult = seq.multiplicity(k, n_cap);
    if (mult == 0) return;
    QuadLattice lat = seq.lattice(k);
    Minima mins = successive_minima(lat);
    double a = 1, s = 1;
    for (size_t i = 0; i < mins.mu_sq.size(); ++i) {
      a *= std::sqrt(2.0 * mins.mu_sq[i].get_d());
      s += std::pow(2.0 * X, (i + 1) / 2.0) / a;
    }
    maj[k] = mult.get_d() * s;
    emp[k] = mult * count_up_to(lat, X);
  });
  CountingBound out;
  out.empirical = 0;
  for (size_t k = 0; k < L; ++k) {
    out.majorant += maj[k];
    out.empirical += emp[k];
  }
  out.K = out.majorant > 0 ? out.empirical.get_d() / out.majorant : 0;
  return out;
}

FirstMinReport firstmin_check(const NestedLatticeSequence& seq) {
  seq.validate();
  if (seq.b < 1) throw InputError("firstmin_check: b must be positive");
  FirstMinReport out;
  out.exempt = seq.levels.back().basis.index() == 1;
  double best = INFINITY;
  for (size_t k = 0; k < seq.levels.size(); ++k) {
    Minima mins = successive_minima(seq.lattice(k));
    std::vector<double> ns{seq.levels[k].n_start.get_d()};
    if (k + 1 < seq.levels.size()) ns.push_back(Int(seq.levels[k + 1].n_start - 1).get_d());
    for (double n : ns)
      for (size_t i = 0; i < mins.a_sq.size(); ++i) {
        double ai = std::sqrt(mins.a_sq[i].get_d());
        best = std::min(best, ai / std::pow(n, static_cast<double>(i + 1) / seq.b));
      }
  }
  out.implied_constant = best;
  return out;
}

// ------------------------------------------------------------ ledger

std::string to_string(PointType t) {
  switch (t) {
    case PointType::Ordinary: return "ordinary";
    case PointType::NonssSupersingular: return "nonss-supersingular";
    case PointType::Superspecial: return "superspecial";
  }
  return "?";
}

PointType parse_point_type(const std::string& s) {
  if (s == "ordinary") return PointType::Ordinary;
  if (s == "nonss-supersingular") return PointType::NonssSupersingular;
  if (s == "superspecial") return PointType::Superspecial;
  throw InputError("unknown point type: " + s);
}

void CurveBudget::validate() const {
  if (p < 5 || !is_prime(p)) throw InputError("budget: p must be a prime >= 5");
  if (omegaC <= 0) throw InputError("budget: omegaC must be positive");
  for (const auto& pt : points)
    if (pt.h < 0) throw InputError("budget: h_P must be nonnegative");
}

bool CurveBudget::complete() const {
  Int total = 0;
  for (const auto& pt : points)
    if (pt.type != PointType::Ordinary) total += pt.h;
  return Rat(total) == Rat(p - 1) * omegaC;
}

Rat g_P(long h, long p, const Rat& qL_abs) {
  if (p < 2 || !is_prime(p)) throw InputError("g_P: p must be prime");
  if (h < 0 || qL_abs < 0) throw InputError("g_P: h and |q_L| must be nonnegative");
  return Rat(h) * qL_abs / Rat(p - 1);
}

Rat ledger_sum(const CurveBudget& budget, const Rat& qL_abs) {
  budget.validate();
  Rat s = 0;
  for (const auto& pt : budget.points)
    if (pt.type != PointType::Ordinary) s += g_P(pt.h, budget.p, qL_abs);
  return s;
}

// ------------------------------------------------------------ ssmain constants

std::string to_string(SsCase c) {
  switch (c) {
    case SsCase::Nonss: return "nonss";
    case SsCase::Ssp1: return "ssp1";
    case SsCase::Ssp2: return "ssp2";
  }
  return "?";
}

SsCase parse_ss_case(const std::string& s) {
  if (s == "nonss") return SsCase::Nonss;
  if (s == "ssp1") return SsCase::Ssp1;
  if (s == "ssp2") return SsCase::Ssp2;
  throw InputError("unknown case: " + s);
}

SsmainValue ssmain_bound(long p, int b, SsCase c) {
  if (p < 5 || !is_prime(p)) throw InputError("ssmain_bound: p must be a prime >= 5");
  if (b < 3) throw InputError("ssmain_bound: b must be at least 3");
  const Rat P(p), ip = make_rat(1, p), half = make_rat(1, 2);
  SsmainValue v;
  switch (c) {
    case SsCase::Nonss:
      v.ceiling = make_rat(11, 12);
      v.closed_form = 2 * (P * P - P + 1) / (P * (P * P - 1));
      v.series = (2 / (1 - ip * ip)) * ((1 + ip) / (P * P) + 1 / (P * P * (P - 1))) * (P - 1);
      break;
    case SsCase::Ssp1:
      if (b == 3) {
        v.ceiling = v.closed_form = v.series = make_rat(11, 12);
        v.cited = true;
        break;
      }
      v.ceiling = make_rat(61, 62);
      v.closed_form = (P + 1) * (P + 1) / (2 * (P * P + P + 1)) + (2 * P / (P * P + P + 1)) / (1 - ip);
      // a = h/2
      v.series = ((1 + ip) * (1 + ip) * half / P + 2 / (P * (P - 1))) / (1 - ip * ip * ip) * (P - 1);
      break;
    case SsCase::Ssp2:
      v.ceiling = make_rat(17, 20);
      v.closed_form = (1 + ip) / 2 + 1 / (P + 1) + (2 / (P + 1)) / (P - 1);
      // a <= h/2; the sum increases with a
      v.series = ((1 + ip) * (1 + ip) * half / P + 1 / (P * P) + 2 / (P * P * (P - 1))) / (1 - ip * ip) * (P - 1);
      break;
  }
  return v;
}

double sserror_bound(double T, int b, long X, double c3) {
  if (b < 1 || T <= 0 || X < 0 || c3 <= 0) throw InputError("sserror_bound: need b >= 1, T > 0, c3 > 0");
  return c3 * std::pow(static_cast<double>(X), (b + 2) / 2.0) / std::pow(T, 2.0 / b);
}

double sserror_lower_order(int b, long X) { return std::pow(static_cast<double>(X), (b + 1) / 2.0); }

Int solve_T(double target, int b, long X, double c3) {
  if (target <= 0) throw InputError("solve_T: target must be positive");
  Int lo = 0, hi = 1;
  while (sserror_bound(hi.get_d(), b, X, c3) > target) {
    lo = hi;
    hi *= 2;
  }
  while (hi - lo > 1) {
    Int mid = (lo + hi) / 2;
    if (sserror_bound(mid.get_d(), b, X, c3) <= target) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

BudgetShape budget_shape(long p, int b, long X, const Rat& qL_abs, const Rat& omegaC, double c3) {
  BudgetShape out;
  out.alpha = 0;
  for (SsCase c : {SsCase::Nonss, SsCase::Ssp1, SsCase::Ssp2}) {
    SsmainValue v = ssmain_bound(p, b, c);
    out.alpha = std::max({out.alpha, v.closed_form, v.series});
  }
  out.sum_g = Rat(qL_abs * omegaC).get_d();
  if (out.sum_g <= 0) throw InputError("budget_shape: |q_L| omega.C must be positive");
  const double gap = (1 - out.alpha.get_d()) * out.sum_g;
  out.T = solve_T(gap / 2, b, X, c3);
  out.error = sserror_bound(out.T.get_d(), b, X, c3);
  out.contradiction = out.alpha.get_d() * out.sum_g + out.error < out.sum_g;
  return out;
}

// ------------------------------------------------------------ formal curve

FormalCurve formal_curve_sequence(long p, int c, long q_e, long q_f, int j_max) {
  if (!is_prime(p)) throw InputError("formal curve: p must be prime");
  if (c < 1 || q_e < 1 || q_f < 1) throw InputError("formal curve: need c, q_e, q_f >= 1");
  if (j_max < 0) throw InputError("formal curve: j_max must be nonnegative");
  if (j_max > 2) throw InputError("formal curve: j_max > 2 exceeds the big-integer budget (n_4 = p^(2 p^50))");
  const Int P(p);
  std::vector<Int> n{0};
  for (int j = 0; j <= j_max; ++j) n.push_back(ipow(P, 2 * n.back().get_ui()));

  auto mu_mod = [&](const Int& k) {  // mu mod p^k
    Int s = 0;
    for (const auto& nj : n)
      if (nj < k) s += ipow(P, nj.get_ui());
    return s;
  };

  const int r = 2 * c;
  IntMatrix gram(r, std::vector<Int>(r, 0));
  for (int i = 0; i < c; ++i) {
    gram[2 * i][2 * i] = 2 * q_e;
    gram[2 * i + 1][2 * i + 1] = 2 * q_f;
  }
  FormalCurve out;
  auto& seq = out.seq;
  seq.ambient = QuadLattice::make(gram, true);
  seq.p = p;
  seq.b = r;
  seq.mode = ModelMode::NonSupersingular;

  auto level_basis = [&](long k) {
    SublatticeBasis s{seq.ambient, identity_matrix(r)};
    if (k == 0) return s;
    // L_1 cap Span{p^k e, e + mu f} = {x e + y f : x = y mu^{-1} mod p^k}
    Int pk = ipow(P, k), mk = mu_mod(k), inv;
    mpz_invert(inv.get_mpz_t(), mk.get_mpz_t(), pk.get_mpz_t());
    for (int i = 0; i < c; ++i) {
      s.cols[2 * i][2 * i] = pk;
      s.cols[2 * i][2 * i + 1] = inv;
    }
    return s;
  };

  long K = 0;
  for (int j = 0; j <= j_max; ++j)
    if (n[j + 1] <= 64) K = n[j + 1].get_si();
  for (long k = 0; k <= K; ++k)
    seq.levels.push_back({k == 0 ? Int(1) : Int(ipow(P, k - 1) + 1), level_basis(k)});
  seq.validate();

  for (int j = 0; j <= j_max; ++j) {
    FormalStep st;
    st.j = j;
    st.n_j = n[j];
    st.n_next = n[j + 1];
    Int mu = mu_mod(st.n_next);
    st.m = q_e + q_f * mu * mu;
    st.bound_exponent = st.n_next;
    st.levels_certified = 0;
    if (st.n_next <= K) {
      st.explicit_levels = true;
      std::vector<Int> v(r, 0);
      v[0] = 1;
      v[1] = mu;
      const Int cap = ipow(P, st.n_next.get_ui());
      bool all = true;
      for (size_t k = 0; k < seq.levels.size(); ++k) {
        if (seq.levels[k].n_start > cap) break;
        if (seq.levels[k].basis.contains(v)) {
          st.levels_certified += seq.multiplicity(k, cap);
        } else {
          all = false;
        }
      }
      if (!all) st.levels_certified = 0;
      st.sharp = !level_basis(st.n_next.get_si() + 1).contains(v);
    }
    out.steps.push_back(st);
  }
  return out;
}

}  // namespace orthocount
