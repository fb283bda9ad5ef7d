#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "orthocount/numeric.hpp"

namespace orthocount {

/// Integral quadratic lattice. The Gram matrix holds the bilinear form
/// [e_i, e_j]; Q(v) = v^T G v / 2.
struct QuadLattice {
  int rank = 0;
  IntMatrix gram;
  bool positive_definite = false;

  /// Validates symmetry, even diagonal, det != 0 and (if flagged) positive
  /// leading minors. Throws InputError.
  static QuadLattice make(IntMatrix gram, bool positive_definite);

  Int det() const { return mat_det(gram); }
  Rat Q(const std::vector<Rat>& v) const;
  Int Q(const std::vector<Int>& v) const;
  Rat bilinear(const std::vector<Rat>& x, const std::vector<Rat>& y) const;
};

QuadLattice diagonal_lattice(const std::vector<Int>& gram_diag);
QuadLattice e8_lattice();
QuadLattice orthogonal_sum(const QuadLattice& a, const QuadLattice& b);
/// Lattice spanned by the columns of `cols` inside `L`.
QuadLattice sublattice(const QuadLattice& L, const IntMatrix& cols);

struct SmithForm {
  std::vector<Int> diag;  // d_1 | d_2 | ... (all positive)
  IntMatrix U, V;         // U * A * V = diag(d)
};
SmithForm smith_normal_form(const IntMatrix& A);

/// Column Hermite normal form of an r x c integer matrix: returns (H, T) with
/// A * T = H, T unimodular, H lower-echelon with positive pivots and entries
/// left of a pivot reduced modulo it.
std::pair<IntMatrix, IntMatrix> column_hnf(const IntMatrix& A);

struct DiscInfo {
  Int det;
  Int disc_order;
  std::vector<Int> elementary_divisors;  // entries > 1 only
};
DiscInfo det_and_disc_group(const QuadLattice& L);

/// LLL on a positive definite Gram matrix (delta = 3/4). Returns T
/// unimodular with reduced Gram T^T G T.
IntMatrix lll_reduce(const IntMatrix& gram);

/// Calls visit(x, Q(x)) for every x with Q(x) <= bound, in coordinates of the
/// supplied Gram matrix. Exact integer pruning.
void enumerate_short(const IntMatrix& gram, const Int& bound,
                     const std::function<void(const std::vector<Int>&, const Int&)>& visit);

/// theta[m] = #{v : Q(v) = m} for 0 <= m <= M.
std::vector<Int> theta_series(const QuadLattice& L, long M);
Int rep_count(const QuadLattice& L, long m);
/// Number of vectors with Q(v) <= M, counted by a single enumeration pass.
Int count_up_to(const QuadLattice& L, long M);

struct Minima {
  std::vector<Int> mu_sq;  // mu_i^2
  std::vector<Int> a_sq;   // a_i^2 = prod_{j<=i} mu_j^2
};
Minima successive_minima(const QuadLattice& L);

struct PadicEntry {
  int valuation;
  Int unit;  // unit part mod p^precision, in [1, p^precision)
};
/// Diagonal entries of a Z_p-diagonalization of the Gram matrix (bilinear
/// form), p odd.
std::vector<PadicEntry> p_diagonalize(const QuadLattice& L, long p, int precision);
/// Same elimination returning exact rational diagonal entries.
std::vector<Rat> p_diagonal_rationals(const QuadLattice& L, long p);

bool is_maximal_at(const QuadLattice& L, long ell);

struct SublatticeBasis {
  QuadLattice ambient;
  IntMatrix cols;  // columns are basis vectors in ambient coordinates
  Int index() const { return abs(mat_det(cols)); }
  bool contains(const std::vector<Int>& v) const;
};

/// Basis in column-HNF form (canonical for equality tests).
SublatticeBasis canonical(const SublatticeBasis& s);
bool same_lattice(const SublatticeBasis& a, const SublatticeBasis& b);

std::pair<SublatticeBasis, Int> intersect_and_index(const SublatticeBasis& A,
                                                    const SublatticeBasis& B);

}  // namespace orthocount
