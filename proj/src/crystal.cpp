#include "orthocount/crystal.hpp"
#include "orthocount/valcomb.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

namespace orthocount {

namespace {

Coeff C(const GaloisRing& R, const Rat& x) { return R.from_rat(x); }

CMatrix cmat_zero(int r, int c) { return CMatrix(r, std::vector<Coeff>(c)); }

CMatrix block_diag(const GaloisRing& R, const CMatrix& a, int extra) {
  const int n = static_cast<int>(a.size());
  CMatrix m = cmat_zero(n + extra, n + extra);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i][j] = a[i][j];
  for (int i = 0; i < extra; ++i) m[n + i][n + i] = R.one();
  return m;
}

// rank over F_p of a small integer matrix
int rank_mod_p(std::vector<std::vector<int64_t>> a, long p) {
  int rank = 0;
  const int rows = static_cast<int>(a.size()), cols = rows ? static_cast<int>(a[0].size()) : 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int piv = -1;
    for (int r = rank; r < rows; ++r)
      if (a[r][c] % p) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(a[piv], a[rank]);
    int64_t inv = 1;
    for (int64_t e = p - 2, b = ((a[rank][c] % p) + p) % p; e; e >>= 1, b = b * b % p)
      if (e & 1) inv = inv * b % p;
    for (int r = 0; r < rows; ++r) {
      if (r == rank) continue;
      int64_t f = ((a[r][c] % p) + p) % p * inv % p;
      if (!f) continue;
      for (int k = 0; k < cols; ++k) a[r][k] = ((a[r][k] - f * a[rank][k]) % p + p) % p;
    }
    ++rank;
  }
  return rank;
}

int root_order(int c) {
  switch (c) {
    case 0: return 4;
    case 1: return 3;
    case -1: return 6;
  }
  throw InputError("frame factor c must be in {-1, 0, 1}");
}

}  // namespace

// ------------------------------------------------------------ constant frames

CMatrix build_B0(const GaloisRing& R, int n, const std::vector<Coeff>& b) {
  if (n < 1) throw InputError("B0: n must be positive");
  if (static_cast<int>(b.size()) != n - 1) throw InputError("B0: need n-1 coefficients b_i");
  const Coeff P = C(R, R.p()), Pinv = C(R, make_rat(1, R.p()));
  CMatrix B = cmat_zero(2 * n, 2 * n);
  for (int i = 1; i < n; ++i) B[i][i - 1] = R.one();
  B[0][2 * n - 1] = P;
  for (int i = 1; i < n; ++i) B[i][2 * n - 1] = R.cmul(P, b[i - 1]);
  B[n][n - 1] = Pinv;
  for (int i = 1; i < n; ++i) B[n][n + i - 1] = R.cneg(b[i - 1]);
  for (int j = 1; j < n; ++j) B[n + j][n + j - 1] = R.one();
  return B;
}

CMatrix build_B0_prime(const GaloisRing& R, int n, const std::vector<Coeff>& b) {
  CMatrix D1 = cmat_identity(R, 2 * n), D2 = cmat_identity(R, 2 * n);
  for (int i = 0; i < n; ++i) {
    D1[i][i] = C(R, make_rat(1, R.p()));
    D2[i][i] = C(R, R.p());
  }
  return cmat_mul(R, cmat_mul(R, D1, build_B0(R, n, b)), D2);
}

CMatrix split_gram(const GaloisRing& R, int n, int m) {
  CMatrix G = cmat_zero(2 * n + 2 * m, 2 * n + 2 * m);
  for (int i = 0; i < n; ++i) G[i][n + i] = G[n + i][i] = R.one();
  for (int j = 0; j < m; ++j) G[2 * n + j][2 * n + m + j] = G[2 * n + m + j][2 * n + j] = R.one();
  return G;
}

Frame synthetic_frame(long p, int n, const std::vector<int>& cfactors, int R) {
  if (n < 1) throw InputError("frame: n must be positive");
  if (p < 5 || !is_prime(p)) throw InputError("frame: p must be a prime >= 5");
  if (static_cast<int>(cfactors.size()) != n - 1) throw InputError("frame: need n-1 quadratic factors");
  std::vector<int> sorted = cfactors;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw InputError("frame: quadratic factors must be distinct");

  std::vector<long> P{-1, 0, 1};
  int N = 2;
  for (int c : cfactors) {
    N = std::lcm(N, root_order(c));
    std::vector<long> q(P.size() + 2, 0);
    for (size_t i = 0; i < P.size(); ++i) {
      q[i] += P[i];
      q[i + 1] += c * P[i];
      q[i + 2] += P[i];
    }
    P = q;
  }
  std::vector<long> bval(n - 1);
  for (int j = 1; j < n; ++j) {
    bval[j - 1] = P[2 * n - j];
    if (P[j] != -bval[j - 1]) throw VerificationError("frame polynomial is not of the required shape");
  }
  if (P[n] != 0 || P[0] != -1) throw VerificationError("frame polynomial is not of the required shape");

  Frame fr;
  fr.ring = std::make_shared<GaloisRing>(GaloisRing::make(p, N, R));
  const GaloisRing& G = *fr.ring;
  fr.n = n;
  fr.cfactors = cfactors;
  for (long x : bval) fr.b.push_back(C(G, x));

  // Q = (X^N - 1) / P
  std::vector<long> rem(N + 1, 0), Q(N - 2 * n + 1, 0);
  rem[0] = -1;
  rem[N] = 1;
  for (int k = N - 2 * n; k >= 0; --k) {
    long q = rem[k + 2 * n];
    Q[k] = q;
    for (int i = 0; i <= 2 * n; ++i) rem[k + i] -= q * P[i];
  }
  for (long x : rem)
    if (x) throw VerificationError("frame polynomial does not divide X^N - 1");

  // a normal element of the residue field
  GR theta;
  bool found = false;
  std::mt19937_64 gen(p * 1000003 + N);
  for (int attempt = 0; attempt < 2000 && !found; ++attempt) {
    theta = GR{};
    if (attempt < N) {
      theta = G.add(G.gen(), G.from_int(attempt));
    } else {
      for (int i = 0; i < N; ++i) theta.c[i] = static_cast<int64_t>(gen() % p);
    }
    std::vector<std::vector<int64_t>> m(N, std::vector<int64_t>(N));
    for (int k = 0; k < N; ++k) {
      GR s = G.sigma(theta, k);
      for (int i = 0; i < N; ++i) m[k][i] = s.c[i] % p;
    }
    found = rank_mod_p(m, p) == N;
  }
  if (!found) throw VerificationError("no normal element found");

  GR gamma{};
  for (size_t k = 0; k < Q.size(); ++k) {
    if (!Q[k]) continue;
    gamma = G.add(gamma, G.mul(G.from_int(Q[k]), G.sigma(theta, static_cast<int>(k))));
  }

  // columns: col_j = sigma^j(s) for j <= n; col_{n+i} = sum_{l<=i} b_l sigma^{n+i-l}(s)
  const int d = 2 * n;
  CMatrix S = cmat_zero(d, d);
  for (int k = 0; k < d; ++k) {
    for (int j = 0; j <= n; ++j) S[k][j] = G.make(G.sigma(gamma, j + k), 0);
    for (int i = 1; i < n; ++i) {
      GR acc = G.sigma(gamma, n + i + k);
      for (int l = 1; l <= i; ++l)
        acc = G.add(acc, G.mul(G.from_int(bval[l - 1]), G.sigma(gamma, n + i - l + k)));
      S[k][n + i] = G.make(acc, 0);
    }
  }
  fr.S0p = S;
  fr.S0p_inv = cmat_inverse(G, S);
  for (const auto& row : fr.S0p_inv)
    for (const auto& x : row)
      if (!x.is_zero() && x.v < 0) throw VerificationError("synthetic S'_0 is not in GL(W)");
  fr.S0_inv = fr.S0p_inv;
  for (int i = 0; i < n; ++i)
    for (auto& x : fr.S0_inv[i]) x = G.cmul(C(G, p), x);
  return fr;
}

Frame superspecial_frame(long p, long d, int R) {
  if (p < 5 || !is_prime(p)) throw InputError("superspecial frame: p must be a prime >= 5");
  long e = 1, b = ((d % p) + p) % p;
  for (long k = (p - 1) / 2; k; k >>= 1, b = b * b % p)
    if (k & 1) e = e * b % p;
  if (e != p - 1) throw InputError("superspecial frame: lambda^2 must be a quadratic non-residue mod p");
  Frame fr;
  fr.ring = std::make_shared<GaloisRing>(GaloisRing::with_modulus(p, {-d, 0}, R));
  const GaloisRing& G = *fr.ring;
  fr.n = 1;
  fr.lambda = G.make(G.gen(), 0);
  Coeff half = C(G, make_rat(1, 2));
  Coeff hl = G.cmul(half, G.cinv(fr.lambda));
  fr.S0p = {{half, half}, {hl, G.cneg(hl)}};
  fr.S0p_inv = cmat_inverse(G, fr.S0p);
  fr.S0_inv = fr.S0p_inv;
  for (auto& x : fr.S0_inv[0]) x = G.cmul(C(G, p), x);
  return fr;
}

bool frame_consistent(const Frame& fr) {
  const GaloisRing& G = *fr.ring;
  return cmat_eq(G, cmat_sigma(G, fr.S0p), cmat_mul(G, fr.S0p, build_B0_prime(G, fr.n, fr.b)));
}

int frobactionrows_sign(const Frame& fr) {
  const GaloisRing& G = *fr.ring;
  const int n = fr.n;
  auto row = [&](int i) { return fr.S0p_inv[i - 1]; };  // 1-based
  auto sig = [&](std::vector<Coeff> r) {
    for (auto& x : r) x = G.csigma(x);
    return r;
  };
  auto comb = [&](std::vector<Coeff> a, const Coeff& s, const std::vector<Coeff>& b) {
    for (size_t k = 0; k < a.size(); ++k) a[k] = G.cadd(a[k], G.cmul(s, b[k]));
    return a;
  };
  auto same = [&](const std::vector<Coeff>& a, const std::vector<Coeff>& b) {
    for (size_t k = 0; k < a.size(); ++k)
      if (!G.ceq(a[k], b[k])) return false;
    return true;
  };
  auto holds = [&](int sign) {
    const Coeff s = C(G, sign);
    for (int i = n + 1; i <= 2 * n - 1; ++i)
      if (!same(sig(row(i)), row(i + 1))) return false;
    if (!same(sig(row(2 * n)), row(1))) return false;
    for (int i = 1; i <= n - 1; ++i)
      if (!same(sig(row(i)), comb(row(i + 1), G.cmul(s, fr.b[i - 1]), row(1)))) return false;
    auto rhs = row(n + 1);
    for (int i = 1; i <= n - 1; ++i) rhs = comb(rhs, G.cneg(G.cmul(s, fr.b[i - 1])), row(n + i + 1));
    return same(sig(row(n)), rhs);
  };
  bool plus = holds(1), minus = holds(-1);
  if (plus && minus) return 0;
  if (plus) return 1;
  if (minus) return -1;
  return 2;
}

// ------------------------------------------------------------ curve data

Unipotents build_unipotents(const SeriesRing& S, int n, int m, const GenericCoords& c) {
  if (n < 1 || m < 0) throw InputError("unipotents: need n >= 1, m >= 0");
  if (static_cast<int>(c.X.size()) != n - 1 || static_cast<int>(c.Y.size()) != n - 1 ||
      static_cast<int>(c.Xp.size()) != m || static_cast<int>(c.Yp.size()) != m)
    throw InputError("unipotents: coordinate count does not match n, m");
  const GaloisRing& G = S.ring();
  const Coeff pinv = C(G, make_rat(1, G.p()));
  const int d = 2 * n + 2 * m, row = n - 1, col = 2 * n - 1;

  Series Q = S.zero();
  for (int i = 0; i < n - 1; ++i) Q = S.sub(Q, S.mul(c.X[i], c.Y[i]));
  for (int j = 0; j < m; ++j) Q = S.sub(Q, S.mul(c.Xp[j], c.Yp[j]));

  Unipotents out{S.identity(d), S.identity(d), Q};
  auto set = [&](int i, int j, const Series& v, bool scaled) {
    out.u[i][j] = S.add(out.u[i][j], v);
    out.uprime[i][j] = S.add(out.uprime[i][j], scaled ? S.scale(pinv, v) : v);
  };
  for (int i = 0; i < n - 1; ++i) {
    set(row, i, c.X[i], false);
    set(row, n + i, c.Y[i], true);
    set(i, col, S.neg(c.Y[i]), true);
    set(n + i, col, S.neg(c.X[i]), false);
  }
  set(row, col, Q, true);
  for (int j = 0; j < m; ++j) {
    set(row, 2 * n + j, c.Xp[j], true);
    set(row, 2 * n + m + j, c.Yp[j], true);
    set(2 * n + j, col, S.neg(c.Yp[j]), false);
    set(2 * n + m + j, col, S.neg(c.Xp[j]), false);
  }
  return out;
}

std::vector<Series> derived_Y(const SeriesRing& S, int n, const GenericCoords& c) {
  std::vector<Series> Y(c.Y.begin(), c.Y.end());
  Series Q = S.zero(), Yn1 = S.zero();
  for (int i = 0; i < n - 1; ++i) Q = S.sub(Q, S.mul(c.X[i], c.Y[i]));
  for (size_t j = 0; j < c.Xp.size(); ++j) {
    Q = S.sub(Q, S.mul(c.Xp[j], c.Yp[j]));
    Yn1 = S.sub(Yn1, S.add(S.mul(c.Xp[j], S.twist(c.Yp[j])), S.mul(S.twist(c.Xp[j]), c.Yp[j])));
  }
  Y.push_back(Q);
  Y.push_back(Yn1);
  return Y;
}

SMatrix build_F_generic(const SeriesRing& S, const Frame& fr, const GenericCoords& c) {
  const GaloisRing& G = S.ring();
  const int n = fr.n, m = static_cast<int>(c.Xp.size());
  Unipotents U = build_unipotents(S, n, m, c);
  SMatrix Sp = S.from_const(block_diag(G, fr.S0p, 2 * m));
  SMatrix Spi = S.from_const(block_diag(G, fr.S0p_inv, 2 * m));
  return S.mmul(S.mmul(Sp, S.msub(U.uprime, S.identity(2 * n + 2 * m))), Spi);
}

KiData build_Ki(const SeriesRing& S, const Frame& fr, const GenericCoords& c) {
  const GaloisRing& G = S.ring();
  const int n = fr.n, m = static_cast<int>(c.Xp.size()), d = 2 * n;
  const Coeff pinv = C(G, make_rat(1, G.p()));
  auto Y = derived_Y(S, n, c);
  SMatrix S0 = S.from_const(fr.S0p), S0i = S.from_const(fr.S0p_inv);

  KiData out;
  for (int i = 1; i <= n; ++i) {
    SMatrix A = S.mzero(d, d);
    Series y = S.scale(pinv, Y[i - 1]);
    if (i < n) {
      A[n - 1][n + i - 1] = y;
      A[i - 1][d - 1] = S.neg(y);
    } else {
      A[n - 1][d - 1] = y;
    }
    out.K.push_back(S.mmul(S.mmul(S0, A), S0i));
  }
  Unipotents U = build_unipotents(S, n, m, c);
  SMatrix Cm = S.mzero(d, 2 * m), Dm = S.mzero(2 * m, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < 2 * m; ++j) {
      Cm[i][j] = U.uprime[i][d + j];
      Dm[j][i] = U.uprime[d + j][i];
    }
  SMatrix An1 = S.mmul(Cm, S.mtwist(Dm));
  out.K.push_back(S.mmul(S.mmul(S0, An1), S.mtwist(S0i)));

  SMatrix F = build_F_generic(S, fr, c);
  SMatrix F1 = S.mzero(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) F1[i][j] = F[i][j];
  for (int i = 0; i < n; ++i) F1 = S.msub(F1, out.K[i]);
  out.Bx = F1;
  return out;
}

SMatrix ki_product(const SeriesRing& S, const KiData& k, const std::vector<int>& I) {
  if (I.empty()) throw InputError("ki_product: empty index tuple");
  SMatrix acc = k.K.at(I[0] - 1);
  int shift = I[0];
  for (size_t j = 1; j < I.size(); ++j) {
    acc = S.mmul(acc, S.mtwist(k.K.at(I[j] - 1), shift));
    shift += I[j];
  }
  return acc;
}

SuperspecialF superspecial_F(const SeriesRing& S, const Frame& fr, const std::vector<Series>& X,
                             const std::vector<Series>& Y) {
  if (fr.n != 1 || fr.lambda.is_zero()) throw InputError("superspecial_F needs a superspecial frame");
  if (X.size() != Y.size() || X.empty()) throw InputError("superspecial_F: need m >= 1 pairs of coordinates");
  const GaloisRing& G = S.ring();
  const int m = static_cast<int>(X.size()), d = 2 + 2 * m;
  const Coeff lam = fr.lambda, laminv = G.cinv(lam);
  const Coeff c2p = C(G, make_rat(1, 2 * G.p())), c2pl = G.cmul(c2p, laminv);

  SuperspecialF out;
  out.m = m;
  out.Q = S.zero();
  out.R = S.zero();
  for (int i = 0; i < m; ++i) {
    out.Q = S.sub(out.Q, S.mul(X[i], Y[i]));
    out.R = S.sub(out.R, S.add(S.mul(X[i], S.twist(Y[i])), S.mul(S.twist(X[i]), Y[i])));
  }
  SMatrix F = S.mzero(d, d);
  F[0][0] = S.scale(c2p, out.Q);
  F[0][1] = S.scale(G.cneg(G.cmul(lam, c2p)), out.Q);
  F[1][0] = S.scale(c2pl, out.Q);
  F[1][1] = S.scale(G.cneg(c2p), out.Q);
  for (int i = 0; i < m; ++i) {
    F[0][2 + i] = S.scale(c2p, X[i]);
    F[0][2 + m + i] = S.scale(c2p, Y[i]);
    F[1][2 + i] = S.scale(c2pl, X[i]);
    F[1][2 + m + i] = S.scale(c2pl, Y[i]);
    F[2 + i][0] = S.neg(Y[i]);
    F[2 + i][1] = S.scale(lam, Y[i]);
    F[2 + m + i][0] = S.neg(X[i]);
    F[2 + m + i][1] = S.scale(lam, X[i]);
  }
  out.F = F;
  const Coeff half = C(G, make_rat(1, 2));
  const Coeff hl = G.cmul(half, lam), hli = G.cmul(half, laminv);
  out.M = {{half, G.cneg(hl)}, {hli, G.cneg(half)}};
  out.N = {{half, hl}, {hli, half}};
  return out;
}

// ------------------------------------------------------------ horizontal sections

int f_infinity_depth(const SeriesRing& S, const SMatrix& F) {
  int v = S.mval_t(F);
  if (v < 0) return 0;
  if (v == 0) throw InputError("F has constant terms; the product over twists does not converge t-adically");
  int N = 0;
  long reach = v;
  while (reach <= S.T()) {
    reach *= S.ring().p();
    ++N;
  }
  return N;
}

SMatrix f_infinity_partial(const SeriesRing& S, const SMatrix& F, int N) {
  const int d = static_cast<int>(F.size());
  if (N < 1) throw InputError("f_infinity_partial: N must be positive");
  if (f_infinity_depth(S, F) > N) throw InputError("increase N or lower T_max");
  SMatrix I = S.identity(d);
  SMatrix acc = S.madd(I, F);
  for (int i = 1; i < N; ++i) acc = S.mmul(acc, S.madd(I, S.mtwist(F, i)));
  return acc;
}

std::string NonIntegrality::str() const {
  switch (status) {
    case Found:
      return "nu=" + std::to_string(nu) + " coord=" + std::to_string(coord) + " pval=" + std::to_string(pval) +
             " decay_bound=" + std::to_string(decay_bound);
    case IntegralWithinWindow: return "integral within window";
    case Inconclusive: return "inconclusive at t^" + std::to_string(nu) + " (precision exhausted)";
  }
  return "?";
}

NonIntegrality first_nonintegral_order(const SeriesRing& S, const SMatrix& Finf, const std::vector<long>& w,
                                       int r, const CMatrix& S0_inv, const std::vector<int>& coords) {
  const GaloisRing& G = S.ring();
  const int d = static_cast<int>(Finf.size()), k = static_cast<int>(S0_inv.size());
  if (static_cast<int>(w.size()) != d) throw InputError("first_nonintegral_order: vector size mismatch");
  bool primitive = false;
  for (long x : w) primitive = primitive || (x % G.p() != 0);
  if (!primitive) throw InputError("first_nonintegral_order: w must be primitive");

  std::vector<Series> x(d, S.zero());
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (w[j]) x[i] = S.add(x[i], S.scale(C(G, w[j]), Finf[i][j]));
  std::vector<Series> y = x;
  for (int i = 0; i < k; ++i) {
    y[i] = S.zero();
    for (int j = 0; j < k; ++j) y[i] = S.add(y[i], S.scale(S0_inv[i][j], x[j]));
  }
  std::vector<int> idx = coords;
  if (idx.empty())
    for (int i = 0; i < d; ++i) idx.push_back(i);

  NonIntegrality out;
  for (int t = 0; t <= S.T(); ++t) {
    for (int i : idx) {
      const Coeff& c = y[i].c[t];
      if (!c.is_zero() && c.v + r < 0) {
        out.status = NonIntegrality::Found;
        out.nu = t;
        out.coord = i;
        out.pval = c.v;
        out.decay_bound = t / G.p() + 1;
        return out;
      }
      if (c.is_zero() && c.prec + r < 0) {
        out.status = NonIntegrality::Inconclusive;
        out.nu = t;
        out.coord = i;
        return out;
      }
    }
  }
  return out;
}

// ------------------------------------------------------------ Moore checks

namespace {

GR field_det(const GaloisRing& F, std::vector<std::vector<GR>> m) {
  const size_t n = m.size();
  GR det = F.from_int(1);
  for (size_t c = 0; c < n; ++c) {
    size_t piv = n;
    for (size_t r = c; r < n; ++r)
      if (F.val(m[r][c]) == 0) {
        piv = r;
        break;
      }
    if (piv == n) return GR{};
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = F.neg(det);
    }
    det = F.mul(det, m[c][c]);
    GR inv = F.inv(m[c][c]);
    for (size_t r = c + 1; r < n; ++r) {
      GR f = F.mul(m[r][c], inv);
      for (size_t k = c; k < n; ++k) m[r][k] = F.sub(m[r][k], F.mul(f, m[c][k]));
    }
  }
  return det;
}

}  // namespace

MooreReport moore_checks(long p, int n, const std::vector<int>& cfactors, uint64_t seed, int trials) {
  Frame fr = synthetic_frame(p, n, cfactors, 3);
  const GaloisRing& G = *fr.ring;
  std::vector<long> flow;
  for (auto x : G.poly()) flow.push_back(static_cast<long>(x % p));
  GaloisRing F = GaloisRing::with_modulus(p, flow, 1);
  const int N = G.degree(), d = 2 * n;

  MooreReport rep;
  rep.p = p;
  rep.n = n;
  rep.field_degree = N;
  std::vector<GR> Rbar(d);
  for (int k = 0; k < d; ++k) Rbar[k] = G.residue(fr.S0p_inv[n][k]);

  auto dot = [&](const std::vector<GR>& row, const std::vector<long>& v) {
    GR acc{};
    for (int k = 0; k < d; ++k)
      if (v[k]) acc = F.add(acc, F.mul(F.from_int(v[k]), row[k]));
    return acc;
  };
  auto for_each_vector = [&](auto&& fn) {
    std::vector<long> v(d, 0);
    for (;;) {
      int k = 0;
      while (k < d && v[k] == p - 1) v[k++] = 0;
      if (k == d) break;
      ++v[k];
      fn(v);
    }
  };
  auto is_zero = [&](const GR& a) { return F.val(a) >= 1; };

  rep.row_injective = true;
  for_each_vector([&](const std::vector<long>& v) {
    if (is_zero(dot(Rbar, v))) rep.row_injective = false;
  });

  std::mt19937_64 gen(seed);
  auto kernel_dim = [&](const std::vector<GR>& alpha) {
    std::vector<GR> rho(d, GR{});
    for (int i = 0; i <= n; ++i)
      for (int k = 0; k < d; ++k) rho[k] = F.add(rho[k], F.mul(alpha[i], F.sigma(Rbar[k], i)));
    long count = 1;  // v = 0
    for_each_vector([&](const std::vector<long>& v) {
      if (is_zero(dot(rho, v))) ++count;
    });
    int dim = 0;
    while (count > 1) {
      count /= p;
      ++dim;
    }
    return dim;
  };
  auto random_elem = [&]() {
    GR a{};
    for (int i = 0; i < N; ++i) a.c[i] = static_cast<int64_t>(gen() % p);
    return a;
  };

  std::vector<GR> unit(n + 1, GR{});
  unit[0] = F.from_int(1);
  rep.unit_alpha_ok = kernel_dim(unit) <= n;
  rep.trials = trials;
  for (int t = 0; t < trials; ++t) {
    std::vector<GR> alpha(n + 1);
    bool nz = false;
    while (!nz) {
      for (auto& a : alpha) {
        a = random_elem();
        nz = nz || !is_zero(a);
      }
    }
    rep.max_kernel_dim = std::max(rep.max_kernel_dim, kernel_dim(alpha));
  }
  rep.kernel_ok = rep.max_kernel_dim <= n;

  auto moore = [&](const std::vector<std::vector<long>>& vs) {
    std::vector<std::vector<GR>> M(n + 1, std::vector<GR>(n + 1));
    for (int j = 0; j <= n; ++j) {
      GR z = dot(Rbar, vs[j]);
      for (int i = 0; i <= n; ++i) M[i][j] = F.sigma(z, i);
    }
    return field_det(F, M);
  };
  rep.moore_trials = trials;
  rep.moore_nonzero = true;
  rep.moore_dependent_zero = true;
  for (int t = 0; t < trials; ++t) {
    std::vector<std::vector<long>> vs;
    for (;;) {
      vs.assign(n + 1, std::vector<long>(d));
      for (auto& v : vs)
        for (auto& x : v) x = static_cast<long>(gen() % p);
      std::vector<std::vector<int64_t>> m(vs.size(), std::vector<int64_t>(d));
      for (size_t a = 0; a < vs.size(); ++a)
        for (int k = 0; k < d; ++k) m[a][k] = vs[a][k];
      if (rank_mod_p(m, p) == n + 1) break;
    }
    if (is_zero(moore(vs))) rep.moore_nonzero = false;
    auto dep = vs;
    for (int k = 0; k < d; ++k) dep[n][k] = (vs[0][k] + 2 * vs[n - 1][k]) % p;
    if (!is_zero(moore(dep))) rep.moore_dependent_zero = false;
  }
  return rep;
}

// ------------------------------------------------------------ symbolic equation

namespace {

struct Sym {
  const std::vector<std::string>* vars;
  std::map<std::vector<int>, Rat> t;
};

Sym sym_const(const std::vector<std::string>& vars, const Rat& c) {
  Sym s{&vars, {}};
  if (c != 0) s.t[std::vector<int>(vars.size(), 0)] = c;
  return s;
}

Sym sym_var(const std::vector<std::string>& vars, size_t i, const Rat& c = 1) {
  Sym s{&vars, {}};
  std::vector<int> e(vars.size(), 0);
  e[i] = 1;
  s.t[e] = c;
  return s;
}

Sym sym_add(const Sym& a, const Sym& b) {
  Sym s = a;
  for (const auto& [e, c] : b.t) {
    Rat v = s.t[e] + c;
    if (v == 0) {
      s.t.erase(e);
    } else {
      s.t[e] = v;
    }
  }
  return s;
}

Sym sym_mul(const Sym& a, const Sym& b) {
  Sym s{a.vars, {}};
  for (const auto& [ea, ca] : a.t)
    for (const auto& [eb, cb] : b.t) {
      std::vector<int> e(ea.size());
      for (size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
      Rat v = s.t[e] + ca * cb;
      if (v == 0) {
        s.t.erase(e);
      } else {
        s.t[e] = v;
      }
    }
  return s;
}

MPoly reduce_mod_p(const Sym& s, long p, bool& integral) {
  MPoly out;
  out.vars = *s.vars;
  integral = true;
  for (const auto& [e, c] : s.t) {
    if (valuation(c, p) < 0) {
      integral = false;
      continue;
    }
    Int num = c.get_num(), den = c.get_den(), P(p), inv;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), P.get_mpz_t());
    Int r = (num * inv) % P;
    if (r < 0) r += P;
    if (r > P / 2) r -= P;
    if (r != 0) out.terms[e] = Rat(r);
  }
  return out;
}

}  // namespace

std::string MPoly::str() const {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
    Rat c = it->second;
    bool neg = c < 0;
    if (neg) c = -c;
    os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
    first = false;
    std::string mono;
    for (size_t k = 0; k < vars.size(); ++k) {
      if (!it->first[k]) continue;
      if (!mono.empty()) mono += "*";
      mono += vars[k];
      if (it->first[k] > 1) mono += "^" + std::to_string(it->first[k]);
    }
    if (c != 1 || mono.empty()) os << rat_str(c) << (mono.empty() ? "" : "*");
    os << mono;
  }
  return os.str();
}

NonordinaryResult nonordinary_equation(int n, int m, long p) {
  if (n < 1 || m < 0) throw InputError("nonordinary_equation: need n >= 1, m >= 0");
  if (p < 5 || !is_prime(p)) throw InputError("nonordinary_equation: p must be a prime >= 5");
  auto vars = std::make_shared<std::vector<std::string>>();
  for (int i = 1; i < n; ++i) vars->push_back("x" + std::to_string(i));
  for (int i = 1; i < n; ++i) vars->push_back("y" + std::to_string(i));
  for (int j = 1; j <= m; ++j) vars->push_back("x'" + std::to_string(j));
  for (int j = 1; j <= m; ++j) vars->push_back("y'" + std::to_string(j));
  for (int i = 1; i < n; ++i) vars->push_back("b" + std::to_string(i));
  const auto& V = *vars;
  auto xi = [&](int i) { return sym_var(V, i - 1); };
  auto yi = [&](int i) { return sym_var(V, n - 1 + i - 1); };
  auto xp = [&](int j) { return sym_var(V, 2 * (n - 1) + j - 1); };
  auto yp = [&](int j) { return sym_var(V, 2 * (n - 1) + m + j - 1); };
  auto bi = [&](int i) { return sym_var(V, 2 * (n - 1) + 2 * m + i - 1); };
  auto neg = [&](const Sym& s) { return sym_mul(sym_const(V, -1), s); };

  const int d = 2 * n + 2 * m, row = n - 1, col = 2 * n - 1;
  std::vector<std::vector<Sym>> u(d, std::vector<Sym>(d, sym_const(V, 0)));
  for (int i = 0; i < d; ++i) u[i][i] = sym_const(V, 1);
  Sym Q = sym_const(V, 0);
  for (int i = 1; i < n; ++i) Q = sym_add(Q, neg(sym_mul(xi(i), yi(i))));
  for (int j = 1; j <= m; ++j) Q = sym_add(Q, neg(sym_mul(xp(j), yp(j))));
  for (int i = 1; i < n; ++i) {
    u[row][i - 1] = xi(i);
    u[row][n + i - 1] = yi(i);
    u[i - 1][col] = neg(yi(i));
    u[n + i - 1][col] = neg(xi(i));
  }
  u[row][col] = Q;
  for (int j = 1; j <= m; ++j) {
    u[row][2 * n + j - 1] = xp(j);
    u[row][2 * n + m + j - 1] = yp(j);
    u[2 * n + j - 1][col] = neg(yp(j));
    u[2 * n + m + j - 1][col] = neg(xp(j));
  }

  std::vector<std::vector<Sym>> B(d, std::vector<Sym>(d, sym_const(V, 0)));
  const Rat P(p), Pinv = make_rat(1, p);
  for (int i = 1; i < n; ++i) B[i][i - 1] = sym_const(V, 1);
  B[0][2 * n - 1] = sym_const(V, P);
  for (int i = 1; i < n; ++i) B[i][2 * n - 1] = sym_mul(sym_const(V, P), bi(i));
  B[n][n - 1] = sym_const(V, Pinv);
  for (int i = 1; i < n; ++i) B[n][n + i - 1] = neg(bi(i));
  for (int j = 1; j < n; ++j) B[n + j][n + j - 1] = sym_const(V, 1);
  for (int k = 2 * n; k < d; ++k) B[k][k] = sym_const(V, 1);

  // entry (row, j) of p u B: coefficient of v_n in pFrob(basis vector j)
  auto entry = [&](int j) {
    Sym acc = sym_const(V, 0);
    for (int k = 0; k < d; ++k) {
      if (u[row][k].t.empty() || B[k][j].t.empty()) continue;
      acc = sym_add(acc, sym_mul(u[row][k], B[k][j]));
    }
    return sym_mul(sym_const(V, P), acc);
  };

  NonordinaryResult out;
  bool integral = true;
  out.equation = reduce_mod_p(entry(row), p, integral);
  bool filt = integral;
  for (int j = 0; j < d; ++j) {
    if (j == row) continue;
    bool ok = true;
    MPoly r = reduce_mod_p(entry(j), p, ok);
    filt = filt && ok && r.terms.empty();
  }
  out.filtration_ok = filt;
  bool dummy = true;
  out.expected = reduce_mod_p(n == 1 ? Q : yi(1), p, dummy);
  out.matches = out.equation.terms == out.expected.terms;
  return out;
}

Series eval_mpoly(const SeriesRing& S, const MPoly& f, const std::vector<Series>& values) {
  if (values.size() != f.vars.size()) throw InputError("eval_mpoly: value count mismatch");
  const GaloisRing& G = S.ring();
  Series acc = S.zero();
  for (const auto& [e, c] : f.terms) {
    Series term = S.constant(G.from_rat(c));
    for (size_t k = 0; k < e.size(); ++k)
      if (e[k]) term = S.mul(term, S.pow(values[k], e[k]));
    acc = S.add(acc, term);
  }
  return acc;
}

Series make_series(const SeriesRing& S, const std::vector<SeriesTerm>& terms) {
  const GaloisRing& G = S.ring();
  Series s = S.zero();
  for (const auto& t : terms) {
    if (t.exp < 0) throw InputError("series term with negative exponent");
    if (t.exp > S.T()) continue;
    if (static_cast<int>(t.unit.size()) > G.degree()) throw InputError("series coefficient has too many coordinates");
    GR u{};
    for (size_t i = 0; i < t.unit.size(); ++i) u = G.add(u, G.mul(G.from_int(t.unit[i]), G.pow(G.gen(), i)));
    s.c[t.exp] = G.cadd(s.c[t.exp], G.make(u, t.pval));
  }
  return s;
}

}  // namespace orthocount

namespace orthocount {

bool nonordinary_matrix_check(int n, int m, long p, uint64_t seed) {
  NonordinaryResult sym = nonordinary_equation(n, m, p);
  GaloisRing G = GaloisRing::make(p, 2, 3);
  SeriesRing S(G, 24);
  std::mt19937_64 gen(seed);
  auto rnd = [&]() {
    std::vector<SeriesTerm> ts;
    for (int e = 1; e <= 4; ++e) ts.push_back({e, {static_cast<long>(gen() % p), static_cast<long>(gen() % p)}, 0});
    return make_series(S, ts);
  };
  GenericCoords c;
  std::vector<Coeff> b;
  for (int i = 1; i < n; ++i) c.X.push_back(rnd());
  for (int i = 1; i < n; ++i) c.Y.push_back(rnd());
  for (int j = 0; j < m; ++j) c.Xp.push_back(rnd());
  for (int j = 0; j < m; ++j) c.Yp.push_back(rnd());
  for (int i = 1; i < n; ++i) b.push_back(G.from_rat(static_cast<long>(gen() % p)));

  Unipotents U = build_unipotents(S, n, m, c);
  SMatrix B = S.from_const(block_diag(G, build_B0(G, n, b), 2 * m));
  const int d = 2 * n + 2 * m;
  Series lhs = S.zero();
  for (int k = 0; k < d; ++k) lhs = S.add(lhs, S.mul(U.u[n - 1][k], B[k][n - 1]));
  lhs = S.scale(G.from_rat(p), lhs);

  std::vector<Series> vals;
  for (auto* v : {&c.X, &c.Y, &c.Xp, &c.Yp})
    for (const auto& x : *v) vals.push_back(x);
  for (const auto& x : b) vals.push_back(S.constant(x));
  Series diff = S.sub(lhs, eval_mpoly(S, sym.equation, vals));
  for (const auto& x : diff.c)
    if (!x.is_zero() && x.v < 1) return false;
  return sym.matches;
}

}  // namespace orthocount


namespace orthocount {

SspTrace superspecial_trace(long p, long d, int T, int R, const std::vector<TermSpec>& Xs,
                            const std::vector<TermSpec>& Ys, int r_max) {
  if (r_max < 0) throw InputError("superspecial trace: r_max must be nonnegative");
  Frame fr = superspecial_frame(p, d, R);
  SeriesRing S(*fr.ring, T);
  std::vector<Series> X, Y;
  for (const auto& t : Xs) X.push_back(make_series(S, t));
  for (const auto& t : Ys) Y.push_back(make_series(S, t));
  SuperspecialF sf = superspecial_F(S, fr, X, Y);

  SspTrace out;
  out.T = T;
  out.h = S.val_t(sf.Q);
  out.hprime = S.val_t(sf.R);
  out.a = S.val_t(X[0]);
  if (out.h <= 0 || out.hprime <= 0 || out.a <= 0)
    throw InputError("superspecial trace: Q, R and X_1 must vanish at t = 0 but not within the window");
  SuperspecialProfile prof{p, out.h, out.hprime, out.a};
  prof.validate();
  auto hp = schedule_hprime(out.h, out.a, p, r_max);

  out.depth = f_infinity_depth(S, sf.F);
  SMatrix Finf = f_infinity_partial(S, sf.F, out.depth);
  const int m = sf.m, dim = 2 + 2 * m, fcoord = 2 + m;  // f'_1
  for (int which = 0; which < 2; ++which) {
    std::vector<long> w(dim, 0);
    w[which == 0 ? 0 : 2] = 1;
    for (int r = 0; r <= r_max; ++r) {
      SspTraceRow row;
      row.vector = which == 0 ? "e1" : "e'1";
      row.r = r;
      row.expected = ssp_min_valuation(which == 0 ? SspKind::S1 : SspKind::S2, r, prof).value.get_si();
      row.cap = which == 0 ? hp[r + 1].get_si() + 1 : hp[r].get_si() + out.a * ipow(Int(p), r).get_si() + 1;
      row.tracked = first_nonintegral_order(S, Finf, w, r, fr.S0_inv, {fcoord});
      row.any = first_nonintegral_order(S, Finf, w, r, fr.S0_inv);
      out.rows.push_back(row);
    }
  }
  return out;
}

SspTrace superspecial_case1_trace(int T, int r_max) {
  std::vector<TermSpec> X{{{1, {1}}}, {{1, {1}}}};
  std::vector<TermSpec> Y{{{1, {1}}, {8, {1}}}, {{1, {-1, 1}}}};
  return superspecial_trace(5, 2, T, r_max + 2, X, Y, r_max);
}

GenericDecayRow generic_trace(const GenericCurve& cv, int r_max, int T, int R) {
  const int n = cv.n;
  if (r_max < 1) throw InputError("generic trace: r_max must be positive");
  if (static_cast<int>(cv.X.size()) != n - 1 || cv.Y.size() != cv.X.size() || cv.Xp.size() != cv.Yp.size())
    throw InputError("generic trace: coordinate count does not match n, m");
  Frame fr = synthetic_frame(cv.p, n, cv.cfactors, R > 0 ? R : r_max + 2);
  const GaloisRing& G = *fr.ring;
  auto coords_at = [&](const SeriesRing& S) {
    GenericCoords c;
    for (const auto& t : cv.X) c.X.push_back(make_series(S, t));
    for (const auto& t : cv.Y) c.Y.push_back(make_series(S, t));
    for (const auto& t : cv.Xp) c.Xp.push_back(make_series(S, t));
    for (const auto& t : cv.Yp) c.Yp.push_back(make_series(S, t));
    return c;
  };

  GenericDecayRow out;
  out.n = n;
  out.m = static_cast<int>(cv.Xp.size());
  ValuationProfile prof{n, cv.p, {}};
  {
    SeriesRing S0(G, T > 0 ? T : 256);
    for (const auto& y : derived_Y(S0, n, coords_at(S0))) {
      int v = S0.val_t(y);
      if (v <= 0) throw InputError("generic trace: every Y_i must vanish at t = 0 but not within the window");
      prof.a.push_back(v);
      out.a.push_back(v);
    }
  }
  for (int r = 1; r <= r_max; ++r) out.predicted.push_back(min_set(r, prof).value.get_si());

  SeriesRing S(G, T > 0 ? T : static_cast<int>(out.predicted.back()) + 2);
  SMatrix F = build_F_generic(S, fr, coords_at(S));
  SMatrix Finf = f_infinity_partial(S, F, f_infinity_depth(S, F));
  for (int r = 1; r <= r_max; ++r) {
    long found = -1;
    for (int t = 0; t <= S.T() && found < 0; ++t)
      for (int i = 0; i < 2 * n && found < 0; ++i)
        for (int j = 0; j < 2 * n && found < 0; ++j) {
          const Coeff& x = Finf[i][j].c[t];
          if (!x.is_zero() && x.v <= -r) found = t;
        }
    out.observed.push_back(found);
  }
  return out;
}

GenericDecayRow generic_decay_check(int n, uint64_t seed, int r_max) {
  if (n < 2 || n > 3) throw InputError("generic_decay_check: n must be 2 or 3");
  static const std::vector<std::vector<int>> frames3{{1, -1}, {0, 1}, {0, -1}};
  std::mt19937_64 gen(seed);
  GenericCurve cv;
  cv.n = n;
  cv.cfactors = n == 2 ? std::vector<int>{0} : frames3[gen() % frames3.size()];
  const int m = 1 + static_cast<int>(gen() % 2);
  int degree = 2;
  for (int c : cv.cfactors) degree = std::lcm(degree, root_order(c));
  for (int attempt = 0; attempt < 100; ++attempt) {
    auto draw = [&]() {
      const int lead = 1 + static_cast<int>(gen() % 5);
      TermSpec ts;
      for (int e = lead; e < lead + 4; ++e) {
        std::vector<long> u(degree);
        for (auto& x : u) x = static_cast<long>(gen() % 5);
        if (e == lead) u[0] = 1 + static_cast<long>(gen() % 4);
        ts.push_back({e, u, 0});
      }
      return ts;
    };
    cv.X.clear();
    cv.Y.clear();
    cv.Xp.clear();
    cv.Yp.clear();
    for (int i = 1; i < n; ++i) cv.X.push_back(draw());
    for (int i = 1; i < n; ++i) cv.Y.push_back(draw());
    for (int j = 0; j < m; ++j) cv.Xp.push_back(draw());
    for (int j = 0; j < m; ++j) cv.Yp.push_back(draw());
    try {
      return generic_trace(cv, r_max);
    } catch (const InputError&) {
      // a derived Y_i cancelled within the window; redraw
    }
  }
  throw VerificationError("generic_decay_check: could not draw a usable curve");
}

}  // namespace orthocount
