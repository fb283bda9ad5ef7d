#include "orthocount/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace orthocount {

QuadLattice QuadLattice::make(IntMatrix gram, bool positive_definite) {
  int r = static_cast<int>(gram.size());
  if (r == 0) throw InputError("lattice rank must be positive");
  for (const auto& row : gram)
    if (static_cast<int>(row.size()) != r) throw InputError("gram matrix is not square");
  for (int i = 0; i < r; ++i) {
    if (gram[i][i] % 2 != 0)
      throw InputError("gram diagonal must be even (pre-double odd forms)");
    for (int j = 0; j < i; ++j)
      if (gram[i][j] != gram[j][i]) throw InputError("gram matrix is not symmetric");
  }
  if (positive_definite) {
    for (int k = 1; k <= r; ++k) {
      IntMatrix minor(k, std::vector<Int>(k));
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) minor[i][j] = gram[i][j];
      if (mat_det(minor) <= 0) throw InputError("gram flagged positive definite but is not");
    }
  }
  QuadLattice L;
  L.rank = r;
  L.gram = std::move(gram);
  L.positive_definite = positive_definite;
  if (L.det() == 0) throw InputError("degenerate gram matrix");
  return L;
}

Rat QuadLattice::bilinear(const std::vector<Rat>& x, const std::vector<Rat>& y) const {
  Rat s = 0;
  for (int i = 0; i < rank; ++i) {
    if (x[i] == 0) continue;
    for (int j = 0; j < rank; ++j) s += x[i] * gram[i][j] * y[j];
  }
  return s;
}

Rat QuadLattice::Q(const std::vector<Rat>& v) const { return bilinear(v, v) / 2; }

Int QuadLattice::Q(const std::vector<Int>& v) const {
  Int s = 0;
  for (int i = 0; i < rank; ++i) {
    s += gram[i][i] * v[i] * v[i] / 2;
    for (int j = i + 1; j < rank; ++j) s += gram[i][j] * v[i] * v[j];
  }
  return s;
}

QuadLattice diagonal_lattice(const std::vector<Int>& d) {
  IntMatrix g(d.size(), std::vector<Int>(d.size(), 0));
  bool pd = true;
  for (size_t i = 0; i < d.size(); ++i) {
    g[i][i] = d[i];
    if (d[i] <= 0) pd = false;
  }
  return QuadLattice::make(g, pd);
}

QuadLattice e8_lattice() {
  // Cartan matrix of E8 (Bourbaki labelling, node 2 attached to node 4).
  int adj[][2] = {{0, 2}, {1, 3}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}};
  IntMatrix g(8, std::vector<Int>(8, 0));
  for (int i = 0; i < 8; ++i) g[i][i] = 2;
  for (auto& e : adj) g[e[0]][e[1]] = g[e[1]][e[0]] = -1;
  return QuadLattice::make(g, true);
}

QuadLattice orthogonal_sum(const QuadLattice& a, const QuadLattice& b) {
  int r = a.rank + b.rank;
  IntMatrix g(r, std::vector<Int>(r, 0));
  for (int i = 0; i < a.rank; ++i)
    for (int j = 0; j < a.rank; ++j) g[i][j] = a.gram[i][j];
  for (int i = 0; i < b.rank; ++i)
    for (int j = 0; j < b.rank; ++j) g[a.rank + i][a.rank + j] = b.gram[i][j];
  return QuadLattice::make(g, a.positive_definite && b.positive_definite);
}

QuadLattice sublattice(const QuadLattice& L, const IntMatrix& cols) {
  return QuadLattice::make(int_mul(int_mul(transpose(cols), L.gram), cols), L.positive_definite);
}

// ---------------------------------------------------------------- normal forms

SmithForm smith_normal_form(const IntMatrix& A) {
  size_t n = A.size(), m = n ? A[0].size() : 0;
  IntMatrix S = A, U = identity_matrix(n), V = identity_matrix(m);
  auto row_axpy = [&](size_t dst, size_t src, const Int& q) {  // row dst -= q row src
    for (size_t j = 0; j < m; ++j) S[dst][j] -= q * S[src][j];
    for (size_t j = 0; j < n; ++j) U[dst][j] -= q * U[src][j];
  };
  auto col_axpy = [&](size_t dst, size_t src, const Int& q) {
    for (size_t i = 0; i < n; ++i) S[i][dst] -= q * S[i][src];
    for (size_t i = 0; i < m; ++i) V[i][dst] -= q * V[i][src];
  };
  std::vector<Int> diag;
  for (size_t t = 0; t < std::min(n, m); ++t) {
    for (;;) {
      size_t pi = n, pj = m;
      for (size_t i = t; i < n; ++i)
        for (size_t j = t; j < m; ++j)
          if (S[i][j] != 0 && (pi == n || abs(S[i][j]) < abs(S[pi][pj]))) pi = i, pj = j;
      if (pi == n) return {diag, U, V};
      std::swap(S[t], S[pi]);
      std::swap(U[t], U[pi]);
      for (size_t i = 0; i < n; ++i) std::swap(S[i][t], S[i][pj]);
      for (size_t i = 0; i < m; ++i) std::swap(V[i][t], V[i][pj]);
      bool clean = true;
      for (size_t i = t + 1; i < n; ++i) {
        if (S[i][t] == 0) continue;
        Int q = S[i][t] / S[t][t];
        row_axpy(i, t, q);
        if (S[i][t] != 0) clean = false;
      }
      for (size_t j = t + 1; j < m; ++j) {
        if (S[t][j] == 0) continue;
        Int q = S[t][j] / S[t][t];
        col_axpy(j, t, q);
        if (S[t][j] != 0) clean = false;
      }
      if (clean) {
        for (size_t i = t + 1; i < n && clean; ++i)
          for (size_t j = t + 1; j < m; ++j)
            if (S[i][j] % S[t][t] != 0) {
              row_axpy(t, i, -1);
              clean = false;
              break;
            }
      }
      if (clean) break;
    }
    if (S[t][t] < 0) {
      for (size_t j = 0; j < m; ++j) S[t][j] = -S[t][j];
      for (size_t j = 0; j < n; ++j) U[t][j] = -U[t][j];
    }
    diag.push_back(S[t][t]);
  }
  return {diag, U, V};
}

std::pair<IntMatrix, IntMatrix> column_hnf(const IntMatrix& A0) {
  IntMatrix A = A0;
  size_t r = A.size(), c = r ? A[0].size() : 0;
  IntMatrix T = identity_matrix(c);
  auto colop = [&](size_t k, size_t j, const Int& s, const Int& t, const Int& u, const Int& v) {
    // (col_k, col_j) <- (s col_k + t col_j, u col_k + v col_j)
    for (size_t i = 0; i < r; ++i) {
      Int a = A[i][k], b = A[i][j];
      A[i][k] = s * a + t * b;
      A[i][j] = u * a + v * b;
    }
    for (size_t i = 0; i < c; ++i) {
      Int a = T[i][k], b = T[i][j];
      T[i][k] = s * a + t * b;
      T[i][j] = u * a + v * b;
    }
  };
  size_t k = 0;
  for (size_t i = 0; i < r && k < c; ++i) {
    for (size_t j = k + 1; j < c; ++j) {
      if (A[i][j] == 0) continue;
      Int a = A[i][k], b = A[i][j], g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      colop(k, j, s, t, -b / g, a / g);
    }
    if (A[i][k] == 0) continue;
    if (A[i][k] < 0) colop(k, k, -1, 0, -1, 0);
    for (size_t j = 0; j < k; ++j) {
      Int q = floor_div(A[i][j], A[i][k]);
      if (q == 0) continue;
      for (size_t l = 0; l < r; ++l) A[l][j] -= q * A[l][k];
      for (size_t l = 0; l < c; ++l) T[l][j] -= q * T[l][k];
    }
    ++k;
  }
  return {A, T};
}

DiscInfo det_and_disc_group(const QuadLattice& L) {
  DiscInfo out;
  out.det = L.det();
  auto snf = smith_normal_form(L.gram);
  out.disc_order = 1;
  for (const auto& d : snf.diag) {
    out.disc_order *= d;
    if (d > 1) out.elementary_divisors.push_back(d);
  }
  if (out.disc_order != abs(out.det))
    throw VerificationError("Smith form disagrees with determinant");
  return out;
}

// ------------------------------------------------------------------------ LLL

namespace {

void gso(const IntMatrix& G, RatMatrix& mu, std::vector<Rat>& B) {
  size_t n = G.size();
  mu.assign(n, std::vector<Rat>(n, 0));
  B.assign(n, 0);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < i; ++j) {
      Rat s = G[i][j];
      for (size_t l = 0; l < j; ++l) s -= mu[j][l] * mu[i][l] * B[l];
      mu[i][j] = s / B[j];
    }
    Rat s = G[i][i];
    for (size_t l = 0; l < i; ++l) s -= mu[i][l] * mu[i][l] * B[l];
    B[i] = s;
  }
}

Int round_rat(const Rat& x) { return floor_rat(x + Rat(1, 2)); }

}  // namespace

IntMatrix lll_reduce(const IntMatrix& gram) {
  size_t n = gram.size();
  IntMatrix G = gram, T = identity_matrix(n);
  if (n < 2) return T;
  RatMatrix mu;
  std::vector<Rat> B;
  gso(G, mu, B);
  auto reduce = [&](size_t k, size_t j, const Int& q) {  // b_k -= q b_j
    for (size_t l = 0; l < n; ++l) G[k][l] -= q * G[j][l];
    for (size_t l = 0; l < n; ++l) G[l][k] -= q * G[l][j];
    for (size_t l = 0; l < n; ++l) T[l][k] -= q * T[l][j];
  };
  size_t k = 1;
  while (k < n) {
    for (size_t jj = k; jj-- > 0;) {
      Int q = round_rat(mu[k][jj]);
      if (q != 0) {
        reduce(k, jj, q);
        for (size_t l = 0; l < jj; ++l) mu[k][l] -= q * mu[jj][l];
        mu[k][jj] -= q;
      }
    }
    if (B[k] < (Rat(3, 4) - mu[k][k - 1] * mu[k][k - 1]) * B[k - 1]) {
      std::swap(G[k], G[k - 1]);
      for (size_t l = 0; l < n; ++l) std::swap(G[l][k], G[l][k - 1]);
      for (size_t l = 0; l < n; ++l) std::swap(T[l][k], T[l][k - 1]);
      gso(G, mu, B);
      k = std::max<size_t>(k - 1, 1);
    } else {
      ++k;
    }
  }
  return T;
}

// ----------------------------------------------------------- successive minima

namespace {

// Incremental rank test over Q: returns true and absorbs v if independent.
bool extend_independent(RatMatrix& echelon, std::vector<size_t>& pivots, std::vector<Rat> v) {
  for (size_t r = 0; r < echelon.size(); ++r) {
    if (v[pivots[r]] == 0) continue;
    Rat f = v[pivots[r]] / echelon[r][pivots[r]];
    for (size_t j = 0; j < v.size(); ++j) v[j] -= f * echelon[r][j];
  }
  for (size_t j = 0; j < v.size(); ++j)
    if (v[j] != 0) {
      echelon.push_back(v);
      pivots.push_back(j);
      return true;
    }
  return false;
}

}  // namespace

Minima successive_minima(const QuadLattice& L) {
  if (!L.positive_definite) throw InputError("successive minima need a positive definite lattice");
  Minima out;
  int r = L.rank;
  if (r == 1) {
    out.mu_sq = {L.gram[0][0] / 2};
  } else if (r == 2) {
    Int a = L.gram[0][0], b = L.gram[0][1], c = L.gram[1][1];
    for (;;) {  // Lagrange reduction on (a, b, c) = ([b1,b1], [b1,b2], [b2,b2])
      Int q = round_rat(make_rat(b, a));
      c = c - 2 * q * b + q * q * a;
      b = b - q * a;
      if (c < a) {
        std::swap(a, c);
      } else {
        break;
      }
    }
    out.mu_sq = {a / 2, c / 2};
  } else {
    IntMatrix T = lll_reduce(L.gram);
    IntMatrix G = int_mul(int_mul(transpose(T), L.gram), T);
    Int cap = 0, lo = -1;
    for (int i = 0; i < r; ++i) {
      Int qi = G[i][i] / 2;
      if (qi > cap) cap = qi;
      if (lo < 0 || qi < lo) lo = qi;
    }
    Int bound = lo;
    for (;;) {
      std::vector<std::pair<Int, std::vector<Int>>> vecs;
      enumerate_short(G, bound, [&](const std::vector<Int>& x, const Int& q) {
        if (q > 0) vecs.emplace_back(q, x);
      });
      std::sort(vecs.begin(), vecs.end());
      RatMatrix ech;
      std::vector<size_t> piv;
      out.mu_sq.clear();
      for (auto& [q, x] : vecs) {
        std::vector<Rat> xr(x.begin(), x.end());
        if (extend_independent(ech, piv, xr)) {
          out.mu_sq.push_back(q);
          if (static_cast<int>(out.mu_sq.size()) == r) break;
        }
      }
      if (static_cast<int>(out.mu_sq.size()) == r) break;
      if (bound >= cap) throw VerificationError("successive minima: basis bound exceeded");
      bound = 2 * bound;
      if (bound > cap) bound = cap;
    }
  }
  Int acc = 1;
  for (const auto& m : out.mu_sq) {
    acc *= m;
    out.a_sq.push_back(acc);
  }
  return out;
}

// ---------------------------------------------------------------- p-adic forms

std::vector<Rat> p_diagonal_rationals(const QuadLattice& L, long p) {
  if (p == 2 || !is_prime(p)) throw InputError("p-adic diagonalization needs an odd prime");
  int n = L.rank;
  RatMatrix A = to_rat(L.gram);
  std::vector<Rat> diag;
  for (int k = 0; k < n; ++k) {
    int bi = -1, bj = -1, bv = 0;
    for (int i = k; i < n; ++i)
      for (int j = k; j < n; ++j) {
        if (A[i][j] == 0) continue;
        int v = valuation(A[i][j], p);
        if (bi < 0 || v < bv || (v == bv && i == j && bi != bj)) bi = i, bj = j, bv = v;
      }
    if (bi < 0) throw InputError("degenerate form in p-adic diagonalization");
    if (bi != bj) {  // e_i <- e_i + e_j makes the diagonal hit the minimal valuation
      for (int l = 0; l < n; ++l) A[bi][l] += A[bj][l];
      for (int l = 0; l < n; ++l) A[l][bi] += A[l][bj];
    }
    std::swap(A[k], A[bi]);
    for (int l = 0; l < n; ++l) std::swap(A[l][k], A[l][bi]);
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        if (A[i][k] != 0 && A[k][j] != 0) A[i][j] -= A[i][k] * A[k][j] / A[k][k];
    diag.push_back(A[k][k]);
  }
  return diag;
}

std::vector<PadicEntry> p_diagonalize(const QuadLattice& L, long p, int precision) {
  if (precision < 1) throw InputError("precision must be positive");
  Int mod = ipow(Int(p), precision);
  std::vector<PadicEntry> out;
  for (const auto& d : p_diagonal_rationals(L, p)) {
    int v = valuation(d, p);
    Rat u = d / rpow(Rat(p), v);
    Int den_inv;
    Int den = u.get_den();
    mpz_invert(den_inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t());
    Int unit = u.get_num() * den_inv;
    mpz_mod(unit.get_mpz_t(), unit.get_mpz_t(), mod.get_mpz_t());
    out.push_back({v, unit});
  }
  return out;
}

bool is_maximal_at(const QuadLattice& L, long ell) {
  if (ell == 2 || !is_prime(ell)) throw InputError("maximality test needs an odd prime");
  auto snf = smith_normal_form(L.gram);
  int r = L.rank;
  std::vector<std::vector<Rat>> gens;  // generators of the ell-torsion of L^v/L
  for (size_t i = 0; i < snf.diag.size(); ++i) {
    if (snf.diag[i] % ell != 0) continue;
    std::vector<Rat> y(r);
    for (int k = 0; k < r; ++k) y[k] = make_rat(snf.V[k][i], ell);
    gens.push_back(y);
  }
  size_t k = gens.size();
  if (k == 0) return true;
  double total = std::pow(static_cast<double>(ell), static_cast<double>(k));
  if (total > 1e7) throw InputError("maximality search space too large");
  std::vector<long> c(k, 0);
  for (;;) {
    size_t i = 0;
    while (i < k && ++c[i] == ell) c[i++] = 0;
    if (i == k) break;
    std::vector<Rat> x(r, 0);
    for (size_t g = 0; g < k; ++g)
      if (c[g])
        for (int j = 0; j < r; ++j) x[j] += c[g] * gens[g][j];
    Rat q = L.Q(x);
    if (q == 0 || valuation(q, ell) >= 0) return false;
  }
  return true;
}

// ----------------------------------------------------------------- sublattices

bool SublatticeBasis::contains(const std::vector<Int>& v) const {
  RatMatrix inv = rat_inverse(to_rat(cols));
  for (size_t i = 0; i < inv.size(); ++i) {
    Rat s = 0;
    for (size_t j = 0; j < v.size(); ++j) s += inv[i][j] * v[j];
    if (s.get_den() != 1) return false;
  }
  return true;
}

SublatticeBasis canonical(const SublatticeBasis& s) {
  auto [H, T] = column_hnf(s.cols);
  size_t r = s.cols.size();
  IntMatrix cols(r, std::vector<Int>(r));
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < r; ++j) cols[i][j] = H[i][j];
  return {s.ambient, cols};
}

bool same_lattice(const SublatticeBasis& a, const SublatticeBasis& b) {
  return canonical(a).cols == canonical(b).cols;
}

std::pair<SublatticeBasis, Int> intersect_and_index(const SublatticeBasis& A,
                                                    const SublatticeBasis& B) {
  if (A.ambient.gram != B.ambient.gram) throw InputError("sublattices have different ambients");
  size_t r = A.cols.size();
  IntMatrix M(r, std::vector<Int>(2 * r));
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < r; ++j) {
      M[i][j] = A.cols[i][j];
      M[i][r + j] = -B.cols[i][j];
    }
  auto [H, T] = column_hnf(M);
  IntMatrix X(r, std::vector<Int>(r));
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < r; ++j) X[i][j] = T[i][r + j];
  SublatticeBasis meet = canonical({A.ambient, int_mul(A.cols, X)});
  return {meet, abs(mat_det(X))};
}

}  // namespace orthocount
