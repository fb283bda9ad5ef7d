#include "orthocount/valcomb.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "orthocount/parallel.hpp"

namespace orthocount {

void ValuationProfile::validate() const {
  if (n < 1) throw InputError("profile: n must be positive");
  if (p < 5 || !is_prime(p)) throw InputError("profile: p must be a prime >= 5");
  if (a.size() != static_cast<size_t>(n + 1))
    throw InputError("profile: need n+1 valuations a_1..a_{n+1}");
  for (const auto& x : a)
    if (x < 1) throw InputError("profile: valuations must be >= 1");
}

void SuperspecialProfile::validate() const {
  if (p < 5 || !is_prime(p)) throw InputError("superspecial profile: p must be a prime >= 5");
  if (h < 1 || hprime < 1 || a < 1) throw InputError("superspecial profile: h, h', a must be positive");
  if (2 * a > h) throw InputError("superspecial profile: need 2a <= h");
  if ((p + 1) * a > hprime) throw InputError("superspecial profile: need (p+1)a <= h'");
}

int weight(const IndexTuple& I) {
  int w = 0;
  for (int i : I) w += i;
  return w;
}

std::string tuple_str(const IndexTuple& I) {
  std::ostringstream os;
  os << '(';
  for (size_t k = 0; k < I.size(); ++k) os << (k ? "," : "") << I[k];
  os << ')';
  return os.str();
}

Int nu(const IndexTuple& I, const ValuationProfile& prof) {
  Int acc = 0;
  for (size_t k = I.size(); k-- > 0;) {
    int i = I[k];
    if (i < 1 || i > prof.n + 1) throw InputError("index tuple entry out of range");
    acc = prof.a[i - 1] + ipow(Int(prof.p), i) * acc;
  }
  return acc;
}

MinSet min_set(int r, const ValuationProfile& prof) {
  prof.validate();
  if (r < 1) throw InputError("min_set: r must be positive");
  const int m = prof.n + 1;
  double total = 1;
  for (int k = 0; k < r; ++k) total *= m;
  if (total > 1e7) throw InputError("min_set: (n+1)^r exceeds 1e7");

  std::vector<Int> ppow(m + 1);
  for (int i = 0; i <= m; ++i) ppow[i] = ipow(Int(prof.p), i);

  std::vector<MinSet> part(m);
  parallel_for(m, [&](size_t lead) {
    MinSet best;
    bool have = false;
    IndexTuple I(r, 1);
    I[0] = static_cast<int>(lead) + 1;
    for (;;) {
      Int acc = 0;
      for (int k = r; k-- > 0;) acc = prof.a[I[k] - 1] + ppow[I[k]] * acc;
      if (!have || acc < best.value) {
        best.value = acc;
        best.argmin.assign(1, I);
        have = true;
      } else if (acc == best.value) {
        best.argmin.push_back(I);
      }
      int k = r - 1;
      while (k >= 1 && I[k] == m) I[k--] = 1;
      if (k < 1) break;
      ++I[k];
    }
    part[lead] = std::move(best);
  });

  MinSet out = part[0];
  for (int i = 1; i < m; ++i) {
    if (part[i].value < out.value) {
      out = part[i];
    } else if (part[i].value == out.value) {
      out.argmin.insert(out.argmin.end(), part[i].argmin.begin(), part[i].argmin.end());
    }
  }
  return out;
}

MinvalReport verify_minval(const ValuationProfile& prof, int r_max) {
  MinvalReport rep;
  for (int r = 1; r <= r_max; ++r) rep.sets.push_back(min_set(r, prof));
  auto fail = [&](int r, int prop, std::string w) {
    rep.violations.push_back({r, prop, std::move(w)});
  };

  for (int r = 1; r <= r_max; ++r) {
    const auto& S = rep.sets[r - 1].argmin;
    std::set<IndexTuple> inS(S.begin(), S.end());

    if (r >= 2) {
      const auto& prev = rep.sets[r - 2].argmin;
      std::set<IndexTuple> inPrev(prev.begin(), prev.end());
      for (const auto& I : S) {
        IndexTuple tail(I.begin() + 1, I.end());
        if (!inPrev.count(tail)) fail(r, 1, "tail of " + tuple_str(I) + " not minimal");
      }
      for (const auto& J : prev) {
        bool found = false;
        for (int j1 = 1; j1 <= prof.n + 1 && !found; ++j1) {
          IndexTuple ext{j1};
          ext.insert(ext.end(), J.begin(), J.end());
          found = inS.count(ext) > 0;
        }
        if (!found) fail(r, 1, "no minimal extension of " + tuple_str(J));
      }
    }

    for (const auto& I : S) {
      for (int k = 0; k + 1 < r; ++k) {
        if (I[k] > I[k + 1] || prof.a[I[k] - 1] < prof.a[I[k + 1] - 1]) {
          fail(r, 2, tuple_str(I));
          break;
        }
      }
    }

    for (size_t x = 0; x < S.size(); ++x) {
      for (size_t y = x + 1; y < S.size(); ++y) {
        const auto& I = S[x];
        const auto& J = S[y];
        if (std::abs(weight(I) - weight(J)) >= prof.n + 1)
          fail(r, 4, tuple_str(I) + " vs " + tuple_str(J));
        if (r <= 16) {
          for (unsigned mask = 0; mask < (1u << r); ++mask) {
            IndexTuple L(r);
            for (int k = 0; k < r; ++k) L[k] = (mask >> k & 1) ? J[k] : I[k];
            if (!inS.count(L)) {
              fail(r, 3, tuple_str(L) + " from " + tuple_str(I) + "," + tuple_str(J));
              break;
            }
          }
        }
      }
    }

    if (S.size() > 1) {
      std::map<int, int> byWeight;
      for (const auto& I : S) ++byWeight[weight(I)];
      if (byWeight.size() < 2) fail(r, 5, "all minimizers share weight " + std::to_string(byWeight.begin()->first));
      if (byWeight.begin()->second != 1) fail(r, 5, "minimal weight not unique");
      if (byWeight.rbegin()->second != 1) fail(r, 5, "maximal weight not unique");
    }
  }
  return rep;
}

Int ssp_term_valuation(SspKind kind, int alpha, int beta, const SuperspecialProfile& prof,
                       std::optional<Int> a_s) {
  const Int P(prof.p);
  Int v = prof.a;
  for (int i = 1; i <= alpha; ++i) v += prof.h * ipow(P, i);
  for (int j = 1; j <= beta; ++j) v += prof.hprime * ipow(P, alpha + 2 * j - 1);
  if (kind == SspKind::S2) v += a_s.value_or(prof.a) * ipow(P, alpha + 2 * beta + 1);
  return v;
}

SspMin ssp_min_valuation(SspKind kind, int r, const SuperspecialProfile& prof, std::optional<Int> a_s) {
  prof.validate();
  if (r < 0) throw InputError("ssp_min_valuation: r must be >= 0");
  int total = kind == SspKind::S1 ? r + 1 : r;
  SspMin out;
  for (int alpha = total; alpha >= 0; --alpha) {
    int beta = total - alpha;
    Int v = ssp_term_valuation(kind, alpha, beta, prof, a_s);
    if (out.argmin.empty() || v < out.value) {
      out.value = v;
      out.argmin.assign(1, {alpha, beta});
    } else if (v == out.value) {
      out.argmin.push_back({alpha, beta});
    }
  }
  return out;
}

std::vector<Int> schedule_h(const Int& h, long p, int r_max) {
  std::vector<Int> out;
  Int geo = 0;
  for (int r = 0; r <= r_max; ++r) {
    geo += ipow(Int(p), r);
    out.push_back(floor_rat(Rat(h * geo) + make_rat(h, p)));
  }
  return out;
}

std::vector<Int> schedule_hprime(const Int& h, const Int& a, long p, int r_max) {
  std::vector<Int> out{floor_div(a, Int(p))};
  Int geo = 0;
  for (int r = 0; r <= r_max; ++r) {
    geo += ipow(Int(p), r);
    out.push_back(floor_rat(Rat(h * geo) + make_rat(a, p)));
  }
  return out;
}

std::string to_string(DecayCase c) {
  switch (c) {
    case DecayCase::Generic: return "generic";
    case DecayCase::SspCase1: return "ssp1";
    case DecayCase::SspCase2: return "ssp2";
  }
  return "?";
}

DecayCase parse_decay_case(const std::string& s) {
  if (s == "generic") return DecayCase::Generic;
  if (s == "ssp1") return DecayCase::SspCase1;
  if (s == "ssp2") return DecayCase::SspCase2;
  throw InputError("unknown decay case '" + s + "' (generic|ssp1|ssp2)");
}

DecaySchedule decay_schedule(DecayCase c, const Int& h, const Int& a, long p, int r_max) {
  if (h < 1) throw InputError("schedule: h must be positive");
  if (c != DecayCase::Generic && (a < 1 || 2 * a > h))
    throw InputError("schedule: superspecial case needs 1 <= a <= h/2");
  DecaySchedule s{c, {}};
  auto push = [&](Int lo, Int hi, int e) {
    if (lo < hi) s.buckets.push_back({std::move(lo), std::move(hi), e});
  };
  const Int P(p);
  if (c == DecayCase::Generic) {
    auto hr = schedule_h(h, p, r_max + 1);
    for (int r = 0; r <= r_max; ++r) push(hr[r], hr[r + 1], 2 + 2 * r);
  } else {
    auto hp = schedule_hprime(h, a, p, r_max + 1);  // hp[r+1] = h'_r
    if (c == DecayCase::SspCase1) {
      for (int r = 0; r <= r_max; ++r) {
        push(hp[r] + a * ipow(P, r), hp[r + 1], 1 + 2 * r);
        push(hp[r + 1], hp[r + 1] + a * ipow(P, r + 1), 2 + 2 * r);
      }
    } else {
      push(hp[0] + a, hp[1], 1);
      for (int r = 0; r <= r_max; ++r) push(hp[r + 1], hp[r + 2], 3 + 2 * r);
    }
  }
  return s;
}

IndexPrediction predicted_index(const Int& n, DecayCase c, const Int& h, const Int& a, long p) {
  if (n < 1) throw InputError("predicted_index: n must be positive");
  int r_max = 4;
  DecaySchedule s = decay_schedule(c, h, a, p, r_max);
  while (s.buckets.back().hi < n) {
    r_max *= 2;
    s = decay_schedule(c, h, a, p, r_max);
  }
  if (n <= s.buckets.front().lo) return {IndexPrediction::Trivial, 0, -1};
  std::optional<IndexPrediction> hit;
  for (const auto& b : s.buckets) {
    if (b.lo < n && n <= b.hi) {
      // bucket exponent back to its r; ssp2's first bucket (e = 1) maps to -1
      int r = c == DecayCase::Generic ? (b.e - 2) / 2
              : c == DecayCase::SspCase1 ? (b.e - 1) / 2
                                         : (b.e - 3) / 2;
      if (!hit || b.e > hit->e) hit = IndexPrediction{IndexPrediction::Covered, b.e, r};
    }
  }
  if (hit) return *hit;
  return {IndexPrediction::Uncovered, 0, -1};
}

}  // namespace orthocount

namespace orthocount {

ValuationProfile random_valuation_profile(std::mt19937_64& gen, int n_max) {
  if (n_max < 1) throw InputError("random profile: n_max must be positive");
  auto uniform = [&](long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(gen); };
  static const long primes[] = {5, 7, 11, 13};
  ValuationProfile v;
  v.n = static_cast<int>(uniform(1, n_max));
  v.p = primes[uniform(0, 3)];
  const long top = uniform(0, 2) == 0 ? 400 : 12;
  for (int i = 0; i <= v.n; ++i) v.a.push_back(uniform(1, top));
  return v;
}

}  // namespace orthocount
