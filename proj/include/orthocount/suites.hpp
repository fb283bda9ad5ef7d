#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "orthocount/arith.hpp"
#include "orthocount/valcomb.hpp"

namespace orthocount {

/// Recursive density against naive counting at the stabilized depth, on random
/// lattices of rank <= 6 with p in {3, 5, 7} and p not dividing m. Lattices whose
/// naive count at that depth exceeds 1e8 points are redrawn and counted as skipped.
struct DensityCase {
  long p = 0;
  int rank = 0;
  long m = 0;
  int depth = 0;
  int unit_rank = 0;
  Rat recursive, naive;
  bool match = false;
  bool bounded = false;  // delta <= 2, and <= 1 + 1/p when unit rank >= 3
};
struct DensityReport {
  std::vector<DensityCase> cases;
  int skipped = 0;
  int mismatches() const;
  int bound_violations() const;
};
DensityReport density_cross_check(uint64_t seed, int trials);

struct MinvalSuite {
  int profiles = 0;
  std::vector<std::string> violations;
};
MinvalSuite minval_suite(uint64_t seed, int trials, int r_max, int n_max = 4);

}  // namespace orthocount
