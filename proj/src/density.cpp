#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include "orthocount/arith.hpp"

namespace orthocount {

namespace {

int64_t mod_rat(const Rat& q, int64_t M) {
  Int num = q.get_num(), den = q.get_den(), inv, Mz(static_cast<long>(M));
  if (!mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), Mz.get_mpz_t()))
    throw VerificationError("denominator not invertible in local computation");
  Int r = num * inv;
  mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), Mz.get_mpz_t());
  return r.get_si();
}

int64_t checked_power(long ell, int a, double cap, const char* what) {
  if (a < 1) throw InputError("depth must be positive");
  if (std::pow(static_cast<double>(ell), a) > cap) throw InputError(std::string(what) + ": too large");
  return ipow64(ell, a);
}

// Q-coefficients of an l-adic Jordan splitting: blocks of size 1 (q x^2) or 2
// (A x^2 + B xy + C y^2), together with the bilinear scale valuation.
struct Block {
  std::vector<Rat> coef;
  int scale;
};

std::vector<Block> jordan_blocks(long ell, const QuadLattice& L) {
  int n = L.rank;
  RatMatrix A = to_rat(L.gram);
  std::vector<int> live(n);
  for (int i = 0; i < n; ++i) live[i] = i;
  std::vector<Block> out;
  while (!live.empty()) {
    int bi = -1, bj = -1, bv = 0;
    for (int i : live)
      for (int j : live) {
        if (A[i][j] == 0) continue;
        int v = valuation(A[i][j], ell);
        if (bi < 0 || v < bv || (v == bv && i == j && bi != bj)) bi = i, bj = j, bv = v;
      }
    if (bi < 0) throw InputError("degenerate form in Jordan splitting");
    if (bi != bj && ell != 2) {
      for (int l = 0; l < n; ++l) A[bi][l] += A[bj][l];
      for (int l = 0; l < n; ++l) A[l][bi] += A[l][bj];
      bj = bi;
    }
    std::vector<int> rest;
    for (int k : live)
      if (k != bi && k != bj) rest.push_back(k);
    if (bi == bj) {
      for (int k : rest)
        for (int l : rest)
          if (A[k][bi] != 0 && A[bi][l] != 0) A[k][l] -= A[k][bi] * A[bi][l] / A[bi][bi];
      out.push_back({{A[bi][bi] / 2}, valuation(A[bi][bi], ell)});
    } else {
      Rat a = A[bi][bi], b = A[bi][bj], c = A[bj][bj];
      Rat det = a * c - b * b;
      for (int k : rest)
        for (int l : rest) {
          Rat x = A[k][bi], y = A[k][bj], u = A[bi][l], w = A[bj][l];
          if (x == 0 && y == 0) continue;
          // [x y] P^{-1} [u w]^T with P^{-1} = [[c, -b], [-b, a]] / det
          A[k][l] -= (x * (c * u - b * w) + y * (a * w - b * u)) / det;
        }
      out.push_back({{a / 2, b, c / 2}, bv});
    }
    live = rest;
  }
  return out;
}

std::vector<Int> block_distribution(const Block& blk, int64_t M) {
  std::vector<Int> dist(M, 0);
  if (blk.coef.size() == 1) {
    int64_t q = mod_rat(blk.coef[0], M);
    std::vector<int64_t> cnt(M, 0);
    for (int64_t x = 0; x < M; ++x) cnt[static_cast<int64_t>((static_cast<__int128>(q) * x % M) * x % M)]++;
    for (int64_t v = 0; v < M; ++v) dist[v] = static_cast<long>(cnt[v]);
  } else {
    int64_t A = mod_rat(blk.coef[0], M), B = mod_rat(blk.coef[1], M), C = mod_rat(blk.coef[2], M);
    std::vector<int64_t> cnt(M, 0);
    for (int64_t x = 0; x < M; ++x) {
      int64_t ax2 = A * x % M * x % M, bx = B * x % M;
      for (int64_t y = 0; y < M; ++y) {
        int64_t v = (ax2 + (bx + C * y) % M * y) % M;
        cnt[v]++;
      }
    }
    for (int64_t v = 0; v < M; ++v) dist[v] = static_cast<long>(cnt[v]);
  }
  return dist;
}

}  // namespace

Rat local_density_naive(long ell, const QuadLattice& L, const Int& m, int a) {
  if (!is_prime(ell)) throw InputError("local density needs a prime");
  int r = L.rank;
  if (std::pow(static_cast<double>(ell), static_cast<double>(a) * r) > 1e8)
    throw InputError("local_density_naive: l^(a*rank) too large (guard 1e8)");
  int64_t M = checked_power(ell, a, 1e8, "local_density_naive");
  std::vector<std::vector<int64_t>> g(r, std::vector<int64_t>(r));
  std::vector<int64_t> diag(r);
  for (int i = 0; i < r; ++i) {
    diag[i] = mod_rat(make_rat(L.gram[i][i], 2), M);
    for (int j = 0; j < r; ++j) g[i][j] = mod_rat(Rat(L.gram[i][j]), M);
  }
  int64_t target = mod_rat(Rat(m), M);
  int last = r - 1;
  // Solutions of diag[last] t^2 + lin t = rhs, tabulated when small enough.
  std::vector<std::vector<uint32_t>> table;
  bool use_table = M * M <= 4000000;
  if (use_table) {
    table.assign(M, std::vector<uint32_t>(M, 0));
    for (int64_t lin = 0; lin < M; ++lin)
      for (int64_t t = 0; t < M; ++t) table[lin][(diag[last] * t % M * t + lin * t) % M]++;
  }
  uint64_t count = 0;
  std::vector<int64_t> lin(r, 0);
  std::vector<std::vector<int64_t>> lin_stack(r + 1, std::vector<int64_t>(r, 0));
  std::function<void(int, int64_t)> rec = [&](int k, int64_t val) {
    const auto& cur = lin_stack[k];
    if (k == last) {
      int64_t rhs = ((target - val) % M + M) % M;
      if (use_table) {
        count += table[cur[last]][rhs];
      } else {
        for (int64_t t = 0; t < M; ++t)
          if ((diag[last] * t % M * t + cur[last] * t) % M == rhs) ++count;
      }
      return;
    }
    auto& next = lin_stack[k + 1];
    for (int64_t x = 0; x < M; ++x) {
      int64_t v = (val + diag[k] * x % M * x + cur[k] * x) % M;
      for (int j = k + 1; j < r; ++j) next[j] = (cur[j] + g[k][j] * x) % M;
      rec(k + 1, v);
    }
  };
  rec(0, 0);
  return Rat(Int(static_cast<unsigned long>(count))) / rpow(Rat(ell), static_cast<long>(a) * (r - 1));
}

namespace {

using U128 = unsigned __int128;

template <class T>
std::vector<T> convolve_blocks(const std::vector<Block>& blocks, int64_t M) {
  std::map<std::vector<int64_t>, std::vector<Int>> dists;
  std::vector<T> acc(M, 0), next(M);
  acc[0] = 1;
  for (const auto& blk : blocks) {
    std::vector<int64_t> key;
    for (const auto& c : blk.coef) key.push_back(mod_rat(c, M));
    auto it = dists.find(key);
    if (it == dists.end()) it = dists.emplace(key, block_distribution(blk, M)).first;
    std::vector<std::pair<int64_t, T>> support;
    for (int64_t v = 0; v < M; ++v)
      if (it->second[v] != 0) {
        if constexpr (std::is_same_v<T, Int>) support.emplace_back(v, it->second[v]);
        else support.emplace_back(v, static_cast<T>(it->second[v].get_ui()));
      }
    std::fill(next.begin(), next.end(), T(0));
    for (int64_t u = 0; u < M; ++u) {
      if (acc[u] == 0) continue;
      for (const auto& [v, c] : support) {
        int64_t w = u + v;
        if (w >= M) w -= M;
        next[w] += acc[u] * c;
      }
    }
    acc.swap(next);
  }
  return acc;
}

Int to_int(U128 x) {
  Int hi(static_cast<unsigned long>(x >> 64)), lo(static_cast<unsigned long>(static_cast<uint64_t>(x)));
  return (hi << 64) + lo;
}

// Number of x in L / l^a L with Q(x) = t mod l^a, for every t. Independent of
// the target, so cached per (l, Gram, a).
const std::vector<Int>& value_counts(long ell, const QuadLattice& L, int a) {
  static std::mutex mu;
  static std::map<std::tuple<long, IntMatrix, int>, std::shared_ptr<std::vector<Int>>> cache;
  auto key = std::make_tuple(ell, L.gram, a);
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;
  }
  int64_t M = checked_power(ell, a, 8192, "local_density_split depth");
  auto blocks = jordan_blocks(ell, L);
  auto out = std::make_shared<std::vector<Int>>(M);
  // Total count is M^rank; exact in 128 bits while that fits.
  if (std::log2(static_cast<double>(M)) * L.rank < 126) {
    auto acc = convolve_blocks<U128>(blocks, M);
    for (int64_t t = 0; t < M; ++t) (*out)[t] = to_int(acc[t]);
  } else {
    *out = convolve_blocks<Int>(blocks, M);
  }
  std::lock_guard<std::mutex> lock(mu);
  return *cache.emplace(key, out).first->second;
}

}  // namespace

Rat local_density_split(long ell, const QuadLattice& L, const Int& m, int a) {
  if (!is_prime(ell)) throw InputError("local density needs a prime");
  int64_t M = checked_power(ell, a, 8192, "local_density_split depth");
  const auto& counts = value_counts(ell, L, a);
  return Rat(counts[mod_rat(Rat(m), M)]) / rpow(Rat(ell), static_cast<long>(a) * (L.rank - 1));
}

StableDensity local_density(long ell, const QuadLattice& L, const Int& m) {
  if (m == 0) throw InputError("stabilized local density needs m != 0");
  int kmax = 0;
  for (const auto& b : jordan_blocks(ell, L)) kmax = std::max(kmax, b.scale);
  int a = valuation(m, ell) + kmax + 1 + (ell == 2 ? 2 : 0);
  std::vector<Rat> seen;
  for (;; ++a) {
    seen.push_back(local_density_split(ell, L, m, a));
    size_t s = seen.size();
    if (s >= 3 && seen[s - 1] == seen[s - 2] && seen[s - 2] == seen[s - 3]) return {seen[s - 1], a - 2};
  }
}

int unit_rank(long p, const QuadLattice& L) {
  int k = 0;
  for (const auto& d : p_diagonal_rationals(L, p))
    if (valuation(d, p) == 0) ++k;
  return k;
}

namespace {

int legendre(const Int& a, long p) {
  Int pz(p);
  return mpz_legendre(a.get_mpz_t(), pz.get_mpz_t());
}

// Density p^{1-r} #{x in F_p^r : sum u_i x_i^2 = m} for units u_i, p odd, p not dividing m.
Rat unit_density(long p, std::vector<Int> units, const Int& m) {
  size_t r = units.size();
  if (r == 0) return 0;
  if (r == 1) return 1 + legendre(m * units[0], p);
  if (r == 2) return Rat(p - legendre(-units[0] * units[1], p), p);
  // Split off a hyperbolic plane; the complement has discriminant -disc.
  Int disc = -1;
  for (const auto& u : units) disc *= u;
  std::vector<Int> rest(r - 2, 1);
  rest.back() = disc;
  mpz_fdiv_r_ui(rest.back().get_mpz_t(), rest.back().get_mpz_t(), p);
  return Rat(p - 1, p) + unit_density(p, rest, m) / p;
}

}  // namespace

Rat local_density_recursive(long p, const QuadLattice& L, const Int& m) {
  if (p == 2 || !is_prime(p)) throw InputError("recursive density needs an odd prime");
  if (m % p == 0) throw InputError("recursive density requires p not dividing m");
  std::vector<Int> units;
  Int pz(p);
  for (const auto& d : p_diagonal_rationals(L, p)) {
    if (valuation(d, p) != 0) continue;
    Rat q = d / 2;
    Int inv, u;
    Int den = q.get_den();
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), pz.get_mpz_t());
    u = q.get_num() * inv;
    mpz_fdiv_r(u.get_mpz_t(), u.get_mpz_t(), pz.get_mpz_t());
    units.push_back(u);
  }
  return unit_density(p, units, m);
}

}  // namespace orthocount
