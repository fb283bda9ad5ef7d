#include "orthocount/galois.hpp"

#include <algorithm>
#include <sstream>

namespace orthocount {

namespace {

using i128 = __int128;

int64_t md(i128 x, int64_t m) {
  int64_t r = static_cast<int64_t>(x % m);
  return r < 0 ? r + m : r;
}

// ---- polynomials over F_p, low to high, trimmed

using Poly = std::vector<int64_t>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly pmod(Poly a, const Poly& f, long p) {
  trim(a);
  const size_t n = f.size() - 1;
  int64_t lead_inv = 1;
  for (int64_t e = p - 2, b = f.back() % p; e; e >>= 1, b = b * b % p)
    if (e & 1) lead_inv = lead_inv * b % p;
  while (a.size() > n) {
    int64_t q = a.back() * lead_inv % p;
    size_t sh = a.size() - 1 - n;
    for (size_t i = 0; i <= n; ++i) a[sh + i] = ((a[sh + i] - q * f[i]) % p + p) % p;
    trim(a);
  }
  return a;
}

Poly pmul(const Poly& a, const Poly& b, long p) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  trim(c);
  return c;
}

Poly pgcd(Poly a, Poly b, long p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = pmod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

}  // namespace

bool irreducible_mod_p(const std::vector<int64_t>& f, long p) {
  Poly F(f.begin(), f.end());
  for (auto& x : F) x = ((x % p) + p) % p;
  trim(F);
  const int N = static_cast<int>(F.size()) - 1;
  if (N <= 0) return false;
  if (N == 1) return true;
  Poly g{0, 1};
  for (int i = 1; i <= N / 2; ++i) {
    // g <- g^p mod F
    Poly acc{1}, base = g;
    for (long e = p; e; e >>= 1) {
      if (e & 1) acc = pmod(pmul(acc, base, p), F, p);
      base = pmod(pmul(base, base, p), F, p);
    }
    g = acc;
    Poly h = g;
    if (h.size() < 2) h.resize(2, 0);
    h[1] = ((h[1] - 1) % p + p) % p;
    trim(h);
    Poly d = pgcd(F, h, p);
    if (d.size() != 1) return false;
  }
  return true;
}

GaloisRing GaloisRing::make(long p, int N, int R) {
  if (N < 1 || N > kMaxGaloisDegree) throw InputError("Galois ring degree out of range");
  std::vector<long> digits(N, 0);
  for (;;) {
    std::vector<int64_t> full(digits.begin(), digits.end());
    full.push_back(1);
    if (digits[0] != 0 || N == 1) {
      if (irreducible_mod_p(full, p)) return with_modulus(p, digits, R);
    }
    int k = 0;
    while (k < N && digits[k] == p - 1) digits[k++] = 0;
    if (k == N) break;
    ++digits[k];
  }
  throw VerificationError("no irreducible polynomial found");
}

GaloisRing GaloisRing::with_modulus(long p, const std::vector<long>& f_low, int R) {
  if (!is_prime(p)) throw InputError("Galois ring: p must be prime");
  const int N = static_cast<int>(f_low.size());
  if (N < 1 || N > kMaxGaloisDegree) throw InputError("Galois ring degree out of range");
  if (R < 1) throw InputError("Galois ring: precision must be positive");
  std::vector<int64_t> full(f_low.begin(), f_low.end());
  full.push_back(1);
  if (!irreducible_mod_p(full, p)) throw InputError("Galois ring modulus is reducible mod p");
  GaloisRing g;
  g.p_ = p;
  g.N_ = N;
  g.R_ = R;
  g.pw_.assign(R + 1, 1);
  for (int i = 1; i <= R; ++i) {
    if (g.pw_[i - 1] > (int64_t(1) << 31) / p) throw InputError("Galois ring: p^R must stay below 2^31");
    g.pw_[i] = g.pw_[i - 1] * p;
  }
  g.mod_ = g.pw_[R];
  for (long c : f_low) g.f_.push_back(md(c, g.mod_));
  g.finish_setup();
  return g;
}

void GaloisRing::finish_setup() {
  // Frobenius: the root of f congruent to X^p, by Newton iteration.
  GR X = gen();
  GR y = pow(X, static_cast<uint64_t>(p_));
  auto horner = [&](const GR& z, bool deriv) {
    GR acc = from_int(0);
    for (int i = N_; i >= (deriv ? 1 : 0); --i) {
      int64_t ci = i == N_ ? 1 : f_[i];
      if (deriv) ci = md(i128(ci) * i, mod_);
      acc = add(mul(acc, z), from_int(static_cast<long>(ci)));
    }
    return acc;
  };
  for (int it = 0; it < 2 * R_ + 4; ++it) {
    GR fy = horner(y, false);
    if (val(fy) >= R_) break;
    y = sub(y, mul(fy, inv(horner(y, true))));
  }
  sigmaPow_.assign(N_, std::vector<GR>(N_));
  for (int i = 0; i < N_; ++i) sigmaPow_[0][i] = pow(X, i);
  if (N_ > 1) {
    for (int i = 0; i < N_; ++i) sigmaPow_[1][i] = pow(y, i);
    for (int k = 2; k < N_; ++k)
      for (int i = 0; i < N_; ++i) {
        GR acc = from_int(0);
        const GR& prev = sigmaPow_[k - 1][i];
        for (int j = 0; j < N_; ++j) {
          if (!prev.c[j]) continue;
          GR t = sigmaPow_[1][j];
          for (int q = 0; q < N_; ++q) t.c[q] = md(i128(t.c[q]) * prev.c[j], mod_);
          acc = add(acc, t);
        }
        sigmaPow_[k][i] = acc;
      }
  }
}

GR GaloisRing::from_int(long x) const {
  GR a;
  a.c[0] = md(x, mod_);
  return a;
}

GR GaloisRing::gen() const {
  GR a;
  if (N_ == 1) {
    a.c[0] = md(-f_[0], mod_);
  } else {
    a.c[1] = 1;
  }
  return a;
}

GR GaloisRing::add(const GR& a, const GR& b) const {
  GR r;
  for (int i = 0; i < N_; ++i) {
    int64_t s = a.c[i] + b.c[i];
    r.c[i] = s >= mod_ ? s - mod_ : s;
  }
  return r;
}

GR GaloisRing::sub(const GR& a, const GR& b) const {
  GR r;
  for (int i = 0; i < N_; ++i) {
    int64_t s = a.c[i] - b.c[i];
    r.c[i] = s < 0 ? s + mod_ : s;
  }
  return r;
}

GR GaloisRing::neg(const GR& a) const {
  GR r;
  for (int i = 0; i < N_; ++i) r.c[i] = a.c[i] ? mod_ - a.c[i] : 0;
  return r;
}

GR GaloisRing::mul(const GR& a, const GR& b) const {
  if (N_ == 1) {
    GR r;
    r.c[0] = md(i128(a.c[0]) * b.c[0], mod_);
    return r;
  }
  i128 d[2 * kMaxGaloisDegree] = {};
  for (int i = 0; i < N_; ++i) {
    if (!a.c[i]) continue;
    for (int j = 0; j < N_; ++j) d[i + j] += i128(a.c[i]) * b.c[j];
  }
  for (int k = 2 * N_ - 2; k >= N_; --k) {
    int64_t top = md(d[k], mod_);
    if (!top) continue;
    for (int i = 0; i < N_; ++i) d[k - N_ + i] -= i128(top) * f_[i];
  }
  GR r;
  for (int i = 0; i < N_; ++i) r.c[i] = md(d[i], mod_);
  return r;
}

GR GaloisRing::pow(GR a, uint64_t e) const {
  GR r = from_int(1);
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

GR GaloisRing::inv(const GR& a) const {
  if (val(a) != 0) throw VerificationError("Galois ring: inverse of a non-unit");
  uint64_t q = 1;
  for (int i = 0; i < N_; ++i) q *= static_cast<uint64_t>(p_);
  GR x = pow(a, q - 2);
  GR two = from_int(2);
  for (int prec = 1; prec < R_; prec *= 2) x = mul(x, sub(two, mul(a, x)));
  return x;
}

GR GaloisRing::sigma(const GR& a, int k) const {
  k %= N_;
  if (k < 0) k += N_;
  if (k == 0) return a;
  GR acc;
  i128 d[kMaxGaloisDegree] = {};
  for (int i = 0; i < N_; ++i) {
    if (!a.c[i]) continue;
    const GR& s = sigmaPow_[k][i];
    for (int q = 0; q < N_; ++q) d[q] += i128(a.c[i]) * s.c[q];
  }
  for (int q = 0; q < N_; ++q) acc.c[q] = md(d[q], mod_);
  return acc;
}

int GaloisRing::val(const GR& a) const {
  int best = R_;
  for (int i = 0; i < N_; ++i) {
    int64_t x = a.c[i];
    if (!x) continue;
    int v = 0;
    while (x % p_ == 0) {
      x /= p_;
      ++v;
    }
    best = std::min(best, v);
  }
  return best;
}

GR GaloisRing::reduce(const GR& a, int k) const {
  if (k >= R_) return a;
  GR r;
  if (k <= 0) return r;
  for (int i = 0; i < N_; ++i) r.c[i] = a.c[i] % pw_[k];
  return r;
}

std::string GaloisRing::str(const GR& a) const {
  auto centered = [&](int64_t x) { return x > mod_ / 2 ? x - mod_ : x; };
  bool scalar = true;
  for (int i = 1; i < N_; ++i) scalar = scalar && a.c[i] == 0;
  if (scalar) return std::to_string(centered(a.c[0]));
  std::ostringstream os;
  os << '[';
  for (int i = 0; i < N_; ++i) os << (i ? "," : "") << centered(a.c[i]);
  os << ']';
  return os.str();
}

// ---------------------------------------------------------------- Coeff

Coeff GaloisRing::make(const GR& u, int v) const {
  int k = val(u);
  if (k >= R_) return Coeff{};
  Coeff c;
  c.v = v + k;
  c.prec = v + R_;
  GR w;
  for (int i = 0; i < N_; ++i) w.c[i] = u.c[i] / pw_[k];
  c.u = reduce(w, R_ - k);
  return c;
}

Coeff GaloisRing::from_rat(const Rat& r) const {
  if (r == 0) return Coeff{};
  int v = valuation(r, p_);
  Rat unit = r * rpow(Rat(p_), -v);
  Int M(mod_);
  Int num = unit.get_num() % M, den = unit.get_den() % M;
  Int dinv;
  mpz_invert(dinv.get_mpz_t(), den.get_mpz_t(), M.get_mpz_t());
  Int x = (num * dinv) % M;
  if (x < 0) x += M;
  Coeff c;
  c.u.c[0] = x.get_si();
  c.v = v;
  c.prec = v + R_;
  return c;
}

Coeff GaloisRing::cneg(const Coeff& a) const {
  if (a.is_zero()) return a;
  Coeff r = a;
  r.u = reduce(neg(a.u), a.prec - a.v);
  return r;
}

Coeff GaloisRing::cadd(const Coeff& a, const Coeff& b) const {
  const int prec = std::min(a.prec, b.prec);
  Coeff z;
  z.prec = prec;
  if (a.is_zero() && b.is_zero()) return z;
  if (a.is_zero() || b.is_zero()) {
    const Coeff& x = a.is_zero() ? b : a;
    if (x.v >= prec) return z;
    Coeff r = x;
    r.prec = prec;
    r.u = reduce(r.u, prec - r.v);
    return r;
  }
  const int v0 = std::min(a.v, b.v);
  if (v0 >= prec) return z;
  const int rel = std::min(prec - v0, R_);
  auto lift = [&](const GR& u, int sh) {
    if (sh >= R_) return GR{};
    GR r;
    for (int i = 0; i < N_; ++i) r.c[i] = md(i128(u.c[i]) * pw_[sh], mod_);
    return r;
  };
  GR s = reduce(add(lift(a.u, a.v - v0), lift(b.u, b.v - v0)), rel);
  int k = val(s);
  if (k >= rel) {
    z.prec = v0 + rel;
    return z;
  }
  Coeff r;
  r.v = v0 + k;
  r.prec = v0 + rel;
  for (int i = 0; i < N_; ++i) r.u.c[i] = s.c[i] / pw_[k];
  return r;
}

Coeff GaloisRing::cmul(const Coeff& a, const Coeff& b) const {
  if (a.is_exact_zero() || b.is_exact_zero()) return Coeff{};
  Coeff z;
  if (a.is_zero() && b.is_zero()) {
    z.prec = a.prec + b.prec;
    return z;
  }
  if (a.is_zero()) {
    z.prec = a.prec + b.v;
    return z;
  }
  if (b.is_zero()) {
    z.prec = b.prec + a.v;
    return z;
  }
  const int rel = std::min(a.prec - a.v, b.prec - b.v);
  Coeff r;
  r.v = a.v + b.v;
  r.prec = r.v + rel;
  r.u = reduce(mul(a.u, b.u), rel);
  return r;
}

Coeff GaloisRing::cinv(const Coeff& a) const {
  if (a.is_zero()) throw VerificationError("inverse of a coefficient that is zero to working precision");
  const int rel = a.prec - a.v;
  Coeff r;
  r.v = -a.v;
  r.prec = r.v + rel;
  r.u = reduce(inv(a.u), rel);
  return r;
}

Coeff GaloisRing::csigma(const Coeff& a, int k) const {
  if (a.is_zero()) return a;
  Coeff r = a;
  r.u = reduce(sigma(a.u, k), a.prec - a.v);
  return r;
}

GR GaloisRing::residue(const Coeff& a) const {
  if (a.is_zero()) {
    if (a.prec < 1) throw VerificationError("residue of a coefficient known only below p^1");
    return GR{};
  }
  if (a.v < 0) throw VerificationError("residue of a non-integral coefficient");
  if (a.v > 0) return GR{};
  return reduce(a.u, 1);
}

bool GaloisRing::ceq(const Coeff& a, const Coeff& b) const { return csub(a, b).is_zero(); }

std::string GaloisRing::cstr(const Coeff& a) const {
  if (a.is_exact_zero()) return "0";
  if (a.is_zero()) return "O(p^" + std::to_string(a.prec) + ")";
  std::string s = str(a.u);
  if (a.v != 0) s += "*p^" + std::to_string(a.v);
  return s;
}

// ---------------------------------------------------------------- matrices

CMatrix cmat_identity(const GaloisRing& R, int n) {
  CMatrix m(n, std::vector<Coeff>(n));
  for (int i = 0; i < n; ++i) m[i][i] = R.one();
  return m;
}

CMatrix cmat_mul(const GaloisRing& R, const CMatrix& a, const CMatrix& b) {
  const size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  CMatrix c(n, std::vector<Coeff>(m));
  for (size_t i = 0; i < n; ++i)
    for (size_t l = 0; l < k; ++l) {
      if (a[i][l].is_exact_zero()) continue;
      for (size_t j = 0; j < m; ++j) c[i][j] = R.cadd(c[i][j], R.cmul(a[i][l], b[l][j]));
    }
  return c;
}

CMatrix cmat_sigma(const GaloisRing& R, const CMatrix& a, int k) {
  CMatrix c = a;
  for (auto& row : c)
    for (auto& x : row) x = R.csigma(x, k);
  return c;
}

CMatrix cmat_inverse(const GaloisRing& R, const CMatrix& a) {
  const size_t n = a.size();
  CMatrix m = a, inv = cmat_identity(R, static_cast<int>(n));
  for (size_t col = 0; col < n; ++col) {
    size_t piv = n;
    for (size_t r = col; r < n; ++r)
      if (!m[r][col].is_zero() && (piv == n || m[r][col].v < m[piv][col].v)) piv = r;
    if (piv == n) throw VerificationError("matrix is singular to working precision");
    std::swap(m[piv], m[col]);
    std::swap(inv[piv], inv[col]);
    Coeff s = R.cinv(m[col][col]);
    for (size_t j = 0; j < n; ++j) {
      m[col][j] = R.cmul(m[col][j], s);
      inv[col][j] = R.cmul(inv[col][j], s);
    }
    for (size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col].is_exact_zero()) continue;
      Coeff f = m[r][col];
      for (size_t j = 0; j < n; ++j) {
        m[r][j] = R.csub(m[r][j], R.cmul(f, m[col][j]));
        inv[r][j] = R.csub(inv[r][j], R.cmul(f, inv[col][j]));
      }
    }
  }
  return inv;
}

bool cmat_eq(const GaloisRing& R, const CMatrix& a, const CMatrix& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != b[i].size()) return false;
    for (size_t j = 0; j < a[i].size(); ++j)
      if (!R.ceq(a[i][j], b[i][j])) return false;
  }
  return true;
}

}  // namespace orthocount
