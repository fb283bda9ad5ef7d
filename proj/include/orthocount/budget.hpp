#pragma once

#include <string>
#include <vector>

#include "orthocount/lattice.hpp"

namespace orthocount {

// ------------------------------------------------------------ nested sequences

enum class ModelMode { Supersingular, NonSupersingular };

struct LatticeLevel {
  Int n_start;
  SublatticeBasis basis;
};

/// L_n stored by change points: level k holds for n_start(k) <= n < n_start(k+1);
/// the last level is held constant.
struct NestedLatticeSequence {
  QuadLattice ambient;
  long p = 5;
  int b = 0;
  ModelMode mode = ModelMode::Supersingular;
  std::vector<LatticeLevel> levels;

  /// Level 1 is the ambient lattice; each level contains the next with p-power
  /// index; all levels have full rank; rank matches the mode.
  void validate() const;
  QuadLattice lattice(size_t k) const;
  /// Number of n in [1, n_cap] covered by level k.
  Int multiplicity(size_t k, const Int& n_cap) const;
};

/// sum_{n=1}^{n_cap} rep_count(L_n, m)
Int local_intersection(const NestedLatticeSequence& seq, long m, const Int& n_cap);

// ------------------------------------------------------------ truncation and counting

/// floor(c1 (2X)^{b/2}) = floor(c2 X^{b/2}) with c2 = c1 2^{b/2}.
Int truncation_cap(const Rat& c1, int b, long X);

struct TruncationCheck {
  Int cap;
  std::vector<size_t> offending_levels;  // levels beyond the cap representing some m <= 2X
  bool ok() const { return offending_levels.empty(); }
};
TruncationCheck truncation_check(const NestedLatticeSequence& seq, const Rat& c1, long X);

struct CountingBound {
  double majorant = 0;   // sum_n sum_i (2X)^{i/2} / a_i(n)
  Int empirical;         // sum_n #{v in L_n : Q(v) <= X}
  double K = 0;          // empirical / majorant
};
/// a_i are products of Euclidean successive minima |v| = <v,v>^{1/2}.
CountingBound counting_bound(const NestedLatticeSequence& seq, long X, const Int& n_cap);

struct FirstMinReport {
  double implied_constant = 0;  // min over levels of a_i(n)/n^{i/b}, Q-normalized a_1 = Q(v)^{1/2}
  bool exempt = false;          // the sequence never shrinks, so the intersection is not {0}
  bool ok() const { return exempt || implied_constant > 0; }
};
FirstMinReport firstmin_check(const NestedLatticeSequence& seq);

// ------------------------------------------------------------ ledger

enum class PointType { Ordinary, NonssSupersingular, Superspecial };
std::string to_string(PointType t);
PointType parse_point_type(const std::string& s);

struct BudgetPoint {
  std::string label;
  long h = 0;
  PointType type = PointType::Ordinary;
};
struct CurveBudget {
  long p = 5;
  Rat omegaC;
  std::vector<BudgetPoint> points;
  void validate() const;
  /// sum of h_P over supersingular points equals (p - 1) omega.C
  bool complete() const;
};

/// h qL / (p - 1); zero for ordinary points.
Rat g_P(long h, long p, const Rat& qL_abs);
Rat ledger_sum(const CurveBudget& budget, const Rat& qL_abs);

// ------------------------------------------------------------ ssmain constants

enum class SsCase { Nonss, Ssp1, Ssp2 };
std::string to_string(SsCase c);
SsCase parse_ss_case(const std::string& s);

/// Multiples of h/(p-1).
struct SsmainValue {
  Rat closed_form;  // the printed closed form
  Rat series;       // the printed series summed exactly
  Rat ceiling;
  bool cited = false;  // ssp1 with b = 3: the ceiling is quoted, not derived here
  bool ok() const { return closed_form <= ceiling && series <= ceiling; }
};
SsmainValue ssmain_bound(long p, int b, SsCase c);

/// c3 X^{(b+2)/2} / T^{2/b}
double sserror_bound(double T, int b, long X, double c3);
/// X^{(b+1)/2}, the scale of the lower order term.
double sserror_lower_order(int b, long X);
/// Smallest T with sserror_bound(T) <= target.
Int solve_T(double target, int b, long X, double c3);

struct BudgetShape {
  Rat alpha;
  double sum_g = 0, error = 0;
  Int T;
  bool contradiction = false;  // alpha * sum_g + error < sum_g
};
/// Instantiates alpha sum g_P + error < |q_L| omega.C with alpha the largest
/// ssmain value at p and T chosen so the error stays below half the gap.
BudgetShape budget_shape(long p, int b, long X, const Rat& qL_abs, const Rat& omegaC, double c3);

// ------------------------------------------------------------ formal curve

struct FormalStep {
  int j = 0;
  Int n_j, n_next;  // n_{j+1} = p^{2 n_j}
  Int m;            // Q(v_{1, n_{j+1} - 1})
  Int bound_exponent;  // i_P(Z(m_j)) >= p^{bound_exponent}
  bool explicit_levels = false;  // membership checked level by level
  Int levels_certified;          // number of n with v in L_n (explicit steps)
  bool sharp = false;            // v not in the level after p^{n_{j+1}}
};
struct FormalCurve {
  NestedLatticeSequence seq;  // levels up to the last explicit step
  std::vector<FormalStep> steps;
};
/// j_max <= 2; levels are built while n_{j+1} <= 64.
FormalCurve formal_curve_sequence(long p, int c, long q_e, long q_f, int j_max);

}  // namespace orthocount
