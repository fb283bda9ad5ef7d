// Short-vector enumeration with exact integer pruning.
//
// With G = U^T diag(d) U (U unit upper triangular), x^T G x is a sum of
// d_k (x_k + sum_{j>k} U_kj x_j)^2. Clearing denominators level by level gives
// B * x^T G x = sum_k A_k z_k^2 with z_k = delta_k x_k + sum_j N_kj x_j and all
// of A_k, B, delta_k, N_kj integers, so every pruning bound is an integer
// square root.

#include <algorithm>
#include <cmath>
#include <map>

#include "orthocount/lattice.hpp"
#include "orthocount/parallel.hpp"

namespace orthocount {

namespace {

using i128 = __int128;

struct ScaledForm {
  int n = 0;
  std::vector<Int> delta, A;
  IntMatrix N;  // N[k][j], j > k
  Int B;
};

ScaledForm scale_form(const IntMatrix& G) {
  int n = static_cast<int>(G.size());
  RatMatrix a = to_rat(G), U(n, std::vector<Rat>(n, 0));
  std::vector<Rat> d(n);
  for (int k = 0; k < n; ++k) {
    d[k] = a[k][k];
    if (d[k] <= 0) throw InputError("enumeration needs a positive definite form");
    for (int j = k + 1; j < n; ++j) U[k][j] = a[k][j] / d[k];
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) a[i][j] -= U[k][i] * U[k][j] * d[k];
  }
  ScaledForm f;
  f.n = n;
  f.delta.resize(n);
  f.N.assign(n, std::vector<Int>(n, 0));
  std::vector<Rat> c(n);
  Int B = 1;
  for (int k = 0; k < n; ++k) {
    Int den = 1;
    for (int j = k + 1; j < n; ++j) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), U[k][j].get_den_mpz_t());
    f.delta[k] = den;
    for (int j = k + 1; j < n; ++j) f.N[k][j] = Rat(U[k][j] * den).get_num();
    c[k] = d[k] / (den * den);
    mpz_lcm(B.get_mpz_t(), B.get_mpz_t(), c[k].get_den_mpz_t());
  }
  f.B = B;
  f.A.resize(n);
  for (int k = 0; k < n; ++k) f.A[k] = Rat(c[k] * B).get_num();
  return f;
}

// Integer helpers shared by the __int128 and mpz instantiations.
inline i128 fdiv(i128 a, i128 b) {
  i128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}
inline i128 cdiv(i128 a, i128 b) { return -fdiv(-a, b); }
inline i128 isqrt_i(i128 n) {
  i128 r = static_cast<i128>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}
inline Int fdiv(const Int& a, const Int& b) { return floor_div(a, b); }
inline Int cdiv(const Int& a, const Int& b) { return ceil_div(a, b); }
inline Int isqrt_i(const Int& n) { return isqrt(n); }

inline i128 to_i128(const Int& v) {
  // Only called after the magnitude check in fits_i128.
  Int a = abs(v);
  i128 r = 0;
  size_t words = mpz_size(a.get_mpz_t());
  for (size_t w = words; w-- > 0;) r = (r << 64) | static_cast<i128>(mpz_getlimbn(a.get_mpz_t(), w));
  return v < 0 ? -r : r;
}
inline long as_long(i128 v) { return static_cast<long>(v); }
inline long as_long(const Int& v) { return v.get_si(); }
inline i128 convert(const Int& v, i128*) { return to_i128(v); }
inline Int convert(const Int& v, Int*) { return v; }

template <class T>
struct Enumerator {
  int n;
  std::vector<T> delta, A;
  std::vector<std::vector<T>> N;
  T R;

  Enumerator(const ScaledForm& f, const Int& R0) : n(f.n) {
    T* tag = nullptr;
    for (int k = 0; k < n; ++k) {
      delta.push_back(convert(f.delta[k], tag));
      A.push_back(convert(f.A[k], tag));
      std::vector<T> row;
      for (int j = 0; j < n; ++j) row.push_back(convert(f.N[k][j], tag));
      N.push_back(row);
    }
    R = convert(R0, tag);
  }

  T shift(int k, const std::vector<T>& x) const {
    T s = 0;
    for (int j = k + 1; j < n; ++j) s += N[k][j] * x[j];
    return s;
  }

  // Range of x_k given the remaining budget.
  void range(int k, const T& rem, const T& s, T& lo, T& hi) const {
    T t = isqrt_i(T(rem / A[k]));
    lo = cdiv(T(-t - s), delta[k]);
    hi = fdiv(T(t - s), delta[k]);
  }

  // Depth-first walk of levels k-1..0 below a fixed prefix; visit(x, rem).
  template <class Visit>
  void walk(int k, std::vector<T>& x, const T& rem, Visit&& visit) const {
    if (k < 0) {
      visit(x, rem);
      return;
    }
    T s = shift(k, x), lo, hi;
    range(k, rem, s, lo, hi);
    for (T v = lo; v <= hi; ++v) {
      x[k] = v;
      T z = delta[k] * v + s;
      walk(k - 1, x, T(rem - A[k] * z * z), visit);
    }
    x[k] = 0;
  }
};

// Conservative magnitude check for the __int128 path.
bool fits_i128(const ScaledForm& f, const IntMatrix& G, const Int& R) {
  const Int limit = ipow(Int(2), 120);
  if (R >= limit) return false;
  RatMatrix inv = rat_inverse(to_rat(G));
  int n = f.n;
  std::vector<Int> X(n);
  for (int j = 0; j < n; ++j) X[j] = isqrt(ceil_rat(inv[j][j] * R / f.B)) + 1;
  for (int k = 0; k < n; ++k) {
    Int s = f.delta[k] * X[k] + isqrt(R) + 1;
    for (int j = k + 1; j < n; ++j) s += abs(f.N[k][j]) * X[j];
    if (s >= limit || f.A[k] * s * s >= ipow(Int(2), 126)) return false;
  }
  return true;
}

template <class T>
void count_into(const ScaledForm& f, const Int& R0, long M, std::vector<Int>& theta) {
  Enumerator<T> e(f, R0);
  int n = f.n;
  T twoB = convert(Int(2 * f.B), static_cast<T*>(nullptr));
  std::vector<T> x(n, 0);
  int top = n - 1;
  T s0 = 0, lo, hi;
  e.range(top, e.R, s0, lo, hi);
  std::vector<T> tops;
  for (T v = lo; v <= hi; ++v) tops.push_back(v);
  std::vector<std::vector<uint64_t>> partial(tops.size(), std::vector<uint64_t>(M + 1, 0));
  parallel_for(tops.size(), [&](size_t idx) {
    std::vector<T> xl(n, 0);
    xl[top] = tops[idx];
    T z = e.delta[top] * tops[idx];
    T rem = e.R - e.A[top] * z * z;
    auto& bucket = partial[idx];
    e.walk(top - 1, xl, rem, [&](const std::vector<T>&, const T& r) {
      T q = (e.R - r) / twoB;
      bucket[as_long(q)] += 1;
    });
  });
  theta.assign(M + 1, 0);
  for (const auto& b : partial)
    for (long m = 0; m <= M; ++m) theta[m] += static_cast<unsigned long>(b[m]);
}

std::vector<Int> theta_connected(const IntMatrix& gram, long M) {
  IntMatrix T = lll_reduce(gram);
  IntMatrix G = int_mul(int_mul(transpose(T), gram), T);
  ScaledForm f = scale_form(G);
  Int R = 2 * f.B * M;
  std::vector<Int> theta;
  if (fits_i128(f, G, R))
    count_into<i128>(f, R, M, theta);
  else
    count_into<Int>(f, R, M, theta);
  return theta;
}

std::vector<std::vector<int>> components(const IntMatrix& G) {
  int n = static_cast<int>(G.size());
  std::vector<int> comp(n, -1);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<int> stack{s}, members;
    comp[s] = static_cast<int>(out.size());
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      members.push_back(v);
      for (int w = 0; w < n; ++w)
        if (comp[w] < 0 && G[v][w] != 0) {
          comp[w] = comp[s];
          stack.push_back(w);
        }
    }
    std::sort(members.begin(), members.end());
    out.push_back(members);
  }
  return out;
}

}  // namespace

void enumerate_short(const IntMatrix& gram, const Int& bound,
                     const std::function<void(const std::vector<Int>&, const Int&)>& visit) {
  ScaledForm f = scale_form(gram);
  Int R = 2 * f.B * bound;
  Enumerator<Int> e(f, R);
  std::vector<Int> x(f.n, 0);
  e.walk(f.n - 1, x, e.R, [&](const std::vector<Int>& xv, const Int& rem) {
    visit(xv, Int((e.R - rem) / (2 * f.B)));
  });
}

std::vector<Int> theta_series(const QuadLattice& L, long M) {
  if (!L.positive_definite) throw InputError("theta series needs a positive definite lattice");
  if (M < 0) throw InputError("theta series bound must be nonnegative");
  std::vector<Int> theta(M + 1, 0);
  theta[0] = 1;
  // Orthogonal pieces multiply; memoize repeated blocks such as Z^8.
  std::map<IntMatrix, std::vector<Int>> memo;
  for (const auto& comp : components(L.gram)) {
    IntMatrix sub(comp.size(), std::vector<Int>(comp.size()));
    for (size_t i = 0; i < comp.size(); ++i)
      for (size_t j = 0; j < comp.size(); ++j) sub[i][j] = L.gram[comp[i]][comp[j]];
    auto it = memo.find(sub);
    if (it == memo.end()) it = memo.emplace(sub, theta_connected(sub, M)).first;
    const auto& piece = it->second;
    std::vector<Int> next(M + 1, 0);
    for (long a = 0; a <= M; ++a) {
      if (theta[a] == 0) continue;
      for (long b = 0; a + b <= M; ++b)
        if (piece[b] != 0) next[a + b] += theta[a] * piece[b];
    }
    theta.swap(next);
  }
  return theta;
}

Int rep_count(const QuadLattice& L, long m) {
  if (m < 0) throw InputError("rep_count needs m >= 0");
  return theta_series(L, m)[m];
}

Int count_up_to(const QuadLattice& L, long M) {
  if (!L.positive_definite) throw InputError("enumeration needs a positive definite lattice");
  Int total = 0;
  enumerate_short(L.gram, M, [&](const std::vector<Int>&, const Int&) { ++total; });
  return total;
}

}  // namespace orthocount
