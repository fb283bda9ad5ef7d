#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "orthocount/numeric.hpp"

namespace orthocount {

using IndexTuple = std::vector<int>;  // entries in 1..n+1

struct ValuationProfile {
  int n = 1;
  long p = 5;
  std::vector<Int> a;  // a_1..a_{n+1}, all >= 1
  void validate() const;
};

int weight(const IndexTuple& I);
Int nu(const IndexTuple& I, const ValuationProfile& prof);

struct MinSet {
  Int value;
  std::vector<IndexTuple> argmin;  // lexicographic order
};
/// Exhaustive over {1..n+1}^r; guard (n+1)^r <= 1e7.
MinSet min_set(int r, const ValuationProfile& prof);
/// n in 1..n_max, p in {5, 7, 11, 13}, a_i in 1..12 (or 1..400 one time in three).
ValuationProfile random_valuation_profile(std::mt19937_64& gen, int n_max = 4);

struct MinvalViolation {
  int r;
  int property;  // 1..5
  std::string witness;
};
struct MinvalReport {
  std::vector<MinSet> sets;  // index r-1
  std::vector<MinvalViolation> violations;
  bool ok() const { return violations.empty(); }
};
MinvalReport verify_minval(const ValuationProfile& prof, int r_max);

struct SuperspecialProfile {
  long p = 5;
  Int h, hprime, a;
  void validate() const;
};
enum class SspKind { S1, S2 };
struct SspMin {
  Int value;
  std::vector<std::pair<int, int>> argmin;  // (alpha, beta)
};
/// v(alpha, beta) = a + h sum_{i=1}^alpha p^i + h' sum_{j=1}^beta p^{alpha+2j-1}
/// over alpha+beta = r+1 (S1), or v + a_s p^{alpha+2beta+1} over alpha+beta = r (S2).
/// a_s defaults to a (s = 1).
SspMin ssp_min_valuation(SspKind kind, int r, const SuperspecialProfile& prof,
                         std::optional<Int> a_s = std::nullopt);
Int ssp_term_valuation(SspKind kind, int alpha, int beta, const SuperspecialProfile& prof,
                       std::optional<Int> a_s = std::nullopt);

/// h_r = floor(h (p^r + ... + 1 + 1/p)) for r = 0..r_max.
std::vector<Int> schedule_h(const Int& h, long p, int r_max);
/// h'_r = floor(h (p^r + ... + 1) + a/p) for r = -1..r_max (index 0 is r = -1).
std::vector<Int> schedule_hprime(const Int& h, const Int& a, long p, int r_max);

enum class DecayCase { Generic, SspCase1, SspCase2 };
std::string to_string(DecayCase c);
DecayCase parse_decay_case(const std::string& s);

struct Bucket {
  Int lo, hi;  // (lo, hi]
  int e;
};
struct DecaySchedule {
  DecayCase kind;
  std::vector<Bucket> buckets;
};
/// Buckets for r = 0..r_max; a is ignored for the generic case.
DecaySchedule decay_schedule(DecayCase c, const Int& h, const Int& a, long p, int r_max);

struct IndexPrediction {
  enum Status { Trivial, Covered, Uncovered } status;
  int e = 0;  // exponent when Covered; 0 when Trivial
  int r = -1;
};
/// Trivial below the first bucket, Uncovered in gaps between buckets.
IndexPrediction predicted_index(const Int& n, DecayCase c, const Int& h, const Int& a, long p);

std::string tuple_str(const IndexTuple& I);

}  // namespace orthocount
