#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "orthocount/galois.hpp"
#include "orthocount/series.hpp"

namespace orthocount {

// ------------------------------------------------------------ constant frames

/// The 2n x 2n matrix of the Frobenius on L_0 in the basis {v_i, w_i}.
CMatrix build_B0(const GaloisRing& R, int n, const std::vector<Coeff>& b);
/// diag(p^{-1} I, I) B0 diag(p I, I); integral.
CMatrix build_B0_prime(const GaloisRing& R, int n, const std::vector<Coeff>& b);
/// [[0, I_n], [I_n, 0]] (+) [[0, I_m], [I_m, 0]].
CMatrix split_gram(const GaloisRing& R, int n, int m);

/// Change of basis S'_0 from {e_i, f_i} to {p v_i, w_i}, together with the
/// ring it lives over and the b_i of B0.
struct Frame {
  std::shared_ptr<GaloisRing> ring;
  int n = 1;
  std::vector<Coeff> b;
  CMatrix S0p, S0p_inv;
  /// Integral coordinates: S^{-1} = diag(p I_n, I_n) S'_0^{-1}.
  CMatrix S0_inv;
  std::vector<int> cfactors;  // generic frames: quadratic factors X^2 + cX + 1
  Coeff lambda;               // superspecial frames
};

/// Synthetic frame for the generic case. The characteristic polynomial of
/// sigma on the columns is (X^2 - 1) prod_c (X^2 + cX + 1) with distinct c in
/// {0, 1, -1} (n - 1 of them); b_i are read off from it. The coefficient ring
/// is GR(p^R, N) with N the order of the roots.
Frame synthetic_frame(long p, int n, const std::vector<int>& cfactors, int R);
/// Frame of the superspecial case: Z_p[lambda], lambda^2 = d a non-residue,
/// v_1 = (e_1 + f_1/lambda)/(2p), w_1 = (e_1 - f_1/lambda)/2.
Frame superspecial_frame(long p, long d, int R);

/// sigma(S'_0) == S'_0 B'_0.
bool frame_consistent(const Frame& fr);
/// Which printed version of the row relations for S'_0^{-1} holds:
/// +1 for sigma(R_i) = R_{i+1} + b_i R_1, sigma(R_n) = R_{n+1} - sum b_i R_{n+i+1};
/// -1 for the opposite signs; 0 when both hold (all b_i vanish); 2 when neither.
int frobactionrows_sign(const Frame& fr);

// ------------------------------------------------------------ curve data

struct GenericCoords {
  std::vector<Series> X, Y;    // n - 1 each
  std::vector<Series> Xp, Yp;  // m each
};

struct Unipotents {
  SMatrix u, uprime;
  Series Q;
};
Unipotents build_unipotents(const SeriesRing& S, int n, int m, const GenericCoords& c);

/// Y_1..Y_{n+1}: coordinates y_i, then Y_n = Q and
/// Y_{n+1} = -sum (X'_j sigma(Y'_j) + sigma(X'_j) Y'_j).
std::vector<Series> derived_Y(const SeriesRing& S, int n, const GenericCoords& c);

/// F = S'(u' - I)S'^{-1}, S' = diag(S'_0, I).
SMatrix build_F_generic(const SeriesRing& S, const Frame& fr, const GenericCoords& c);

/// K_1..K_{n+1}; also B(x) = F(1) - sum_{i<=n} K_i.
struct KiData {
  std::vector<SMatrix> K;  // index i-1
  SMatrix Bx;
};
KiData build_Ki(const SeriesRing& S, const Frame& fr, const GenericCoords& c);

/// Product K_{i_1} K_{i_2}^{(i_1)} ... for the index tuple.
SMatrix ki_product(const SeriesRing& S, const KiData& k, const std::vector<int>& I);

struct SuperspecialF {
  SMatrix F;  // (2 + 2m) square, basis {e_1, f_1, e'_j, f'_j}
  Series Q, R;
  CMatrix M, N;
  int m = 0;
};
/// The printed F of the superspecial case; X, Y are the coordinates of the
/// e'/f' block (m each). Requires a superspecial frame.
SuperspecialF superspecial_F(const SeriesRing& S, const Frame& fr, const std::vector<Series>& X,
                             const std::vector<Series>& Y);

// ------------------------------------------------------------ horizontal sections

/// Smallest N with v_t(F^{(N)}) > T; 0 when F vanishes.
int f_infinity_depth(const SeriesRing& S, const SMatrix& F);
/// prod_{i=0}^{N-1} (I + F^{(i)}); InputError unless v_t(F^{(N)}) > T.
SMatrix f_infinity_partial(const SeriesRing& S, const SMatrix& F, int N);

struct NonIntegrality {
  enum Status { Found, IntegralWithinWindow, Inconclusive } status = IntegralWithinWindow;
  int nu = -1;
  int coord = -1;
  int pval = 0;
  long decay_bound = 0;  // smallest integer s with s > nu/p
  std::string str() const;
};
/// First t-exponent at which p^r Finf w, in integral coordinates (Sinv applied
/// to the e/f block), has a negative p-adic valuation. coords restricts the
/// coordinates inspected (empty = all).
NonIntegrality first_nonintegral_order(const SeriesRing& S, const SMatrix& Finf, const std::vector<long>& w,
                                       int r, const CMatrix& S0_inv, const std::vector<int>& coords = {});

// ------------------------------------------------------------ Moore checks

struct MooreReport {
  long p = 0;
  int n = 0;
  int field_degree = 0;
  bool row_injective = false;       // R_{n+1} v != 0 for all nonzero v in F_p^{2n}
  int trials = 0;
  int max_kernel_dim = 0;           // over random alpha
  bool kernel_ok = false;           // max_kernel_dim <= n
  bool unit_alpha_ok = false;       // alpha = (1, 0, ..., 0)
  int moore_trials = 0;
  bool moore_nonzero = false;       // independent z: det != 0
  bool moore_dependent_zero = false;  // dependent z: det == 0
  bool ok() const { return row_injective && kernel_ok && unit_alpha_ok && moore_nonzero && moore_dependent_zero; }
};
MooreReport moore_checks(long p, int n, const std::vector<int>& cfactors, uint64_t seed, int trials = 50);

// ------------------------------------------------------------ symbolic equation

/// Polynomial with rational coefficients in named variables.
struct MPoly {
  std::vector<std::string> vars;
  std::map<std::vector<int>, Rat> terms;
  std::string str() const;
};
struct NonordinaryResult {
  MPoly equation;        // coefficient of v_n in pFrob(v_n), reduced mod p
  MPoly expected;        // Q for n = 1, y_1 for n > 1
  bool matches = false;
  bool filtration_ok = false;  // pFrob(Fil^0) lands in Fil^0 mod p
};
NonordinaryResult nonordinary_equation(int n, int m, long p);
/// Evaluates a polynomial at series (vars in the order of MPoly::vars);
/// coefficients must be p-integral.
Series eval_mpoly(const SeriesRing& S, const MPoly& f, const std::vector<Series>& values);

/// Evaluates p*(u B)[n][n] on random series coordinates and compares it mod p with the
/// symbolic equation evaluated on the same coordinates.
bool nonordinary_matrix_check(int n, int m, long p, uint64_t seed);

// ------------------------------------------------------------ scenario helpers

/// Series from (exponent, unit coordinates, p-valuation) triples.
struct SeriesTerm {
  int exp;
  std::vector<long> unit;
  int pval = 0;
};
Series make_series(const SeriesRing& S, const std::vector<SeriesTerm>& terms);

/// Case-1 superspecial curve at p = 5, lambda^2 = 2, m = 2:
/// X_1 = t, Y_1 = t + t^8, X_2 = t, Y_2 = (lambda - 1) t, so h = 2, h' = 13, a = 1.
struct SspTraceRow {
  std::string vector;  // "e1" or "e'1"
  int r = 0;
  long expected = 0;   // from ssp_min_valuation
  long cap = 0;        // h'_r + 1 (e1) or h'_{r-1} + a p^r + 1 (e'1)
  NonIntegrality tracked, any;
  bool ok() const {
    return tracked.status == NonIntegrality::Found && tracked.nu == expected && tracked.decay_bound <= cap;
  }
};
struct SspTrace {
  long h = 0, hprime = 0, a = 0;
  int T = 0, depth = 0;
  std::vector<SspTraceRow> rows;
};
using TermSpec = std::vector<SeriesTerm>;
/// Decay trace of an arbitrary superspecial curve; X, Y are the e'/f' coordinates.
SspTrace superspecial_trace(long p, long d, int T, int R, const std::vector<TermSpec>& X,
                            const std::vector<TermSpec>& Y, int r_max);
SspTrace superspecial_case1_trace(int T, int r_max = 1);

/// Random generic-case curve: compares the first t-degree at which the top-left
/// 2n block of F_infinity reaches p-valuation <= -r with nu_r of the measured profile.
struct GenericDecayRow {
  int n = 0, m = 0;
  std::vector<long> a;  // measured t-valuations of Y_1..Y_{n+1}
  std::vector<long> predicted, observed;  // r = 1..r_max
  bool ok() const { return predicted == observed; }
};
struct GenericCurve {
  long p = 5;
  int n = 2;
  std::vector<int> cfactors;
  std::vector<TermSpec> X, Y, Xp, Yp;
};
/// T = 0 picks nu_{r_max} + 2; R = 0 picks r_max + 2.
GenericDecayRow generic_trace(const GenericCurve& c, int r_max, int T = 0, int R = 0);
GenericDecayRow generic_decay_check(int n, uint64_t seed, int r_max = 3);

}  // namespace orthocount
