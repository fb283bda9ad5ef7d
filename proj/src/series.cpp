#include "orthocount/series.hpp"

#include "orthocount/parallel.hpp"

namespace orthocount {

namespace {

bool structurally_zero(const Series& s) {
  for (const auto& x : s.c)
    if (!x.is_exact_zero()) return false;
  return true;
}

}  // namespace

SeriesRing::SeriesRing(const GaloisRing& R, int T) : R_(R), T_(T) {
  if (T < 0) throw InputError("series truncation must be >= 0");
}

Series SeriesRing::zero() const { return Series{std::vector<Coeff>(T_ + 1)}; }

Series SeriesRing::constant(const Coeff& a) const { return monomial(a, 0); }

Series SeriesRing::monomial(const Coeff& a, int e) const {
  Series s = zero();
  if (e >= 0 && e <= T_) s.c[e] = a;
  return s;
}

Series SeriesRing::add(const Series& a, const Series& b) const {
  Series s = zero();
  for (int i = 0; i <= T_; ++i) s.c[i] = R_.cadd(a.c[i], b.c[i]);
  return s;
}

Series SeriesRing::sub(const Series& a, const Series& b) const {
  Series s = zero();
  for (int i = 0; i <= T_; ++i) s.c[i] = R_.csub(a.c[i], b.c[i]);
  return s;
}

Series SeriesRing::neg(const Series& a) const {
  Series s = zero();
  for (int i = 0; i <= T_; ++i) s.c[i] = R_.cneg(a.c[i]);
  return s;
}

Series SeriesRing::scale(const Coeff& k, const Series& a) const {
  Series s = zero();
  if (k.is_exact_zero()) return s;
  for (int i = 0; i <= T_; ++i) s.c[i] = R_.cmul(k, a.c[i]);
  return s;
}

Series SeriesRing::mul(const Series& a, const Series& b) const {
  std::vector<int> ia, ib;
  for (int i = 0; i <= T_; ++i) {
    if (!a.c[i].is_exact_zero()) ia.push_back(i);
    if (!b.c[i].is_exact_zero()) ib.push_back(i);
  }
  Series s = zero();
  for (int i : ia) {
    for (int j : ib) {
      if (i + j > T_) break;
      s.c[i + j] = R_.cadd(s.c[i + j], R_.cmul(a.c[i], b.c[j]));
    }
  }
  return s;
}

Series SeriesRing::pow(const Series& a, unsigned e) const {
  Series r = constant(R_.one()), b = a;
  while (e) {
    if (e & 1) r = mul(r, b);
    e >>= 1;
    if (e) b = mul(b, b);
  }
  return r;
}

Series SeriesRing::twist(const Series& a, int k) const {
  if (k == 0) return a;
  long step = 1;
  for (int i = 0; i < k && step <= T_; ++i) step *= R_.p();
  Series s = zero();
  s.c[0] = R_.csigma(a.c[0], k);
  for (long e = 1; e * step <= T_; ++e) s.c[e * step] = R_.csigma(a.c[e], k);
  return s;
}

int SeriesRing::val_t(const Series& a) const {
  for (int i = 0; i <= T_; ++i)
    if (!a.c[i].is_zero()) return i;
  return -1;
}

SMatrix SeriesRing::mzero(int rows, int cols) const {
  return SMatrix(rows, std::vector<Series>(cols, zero()));
}

SMatrix SeriesRing::identity(int n) const {
  SMatrix m = mzero(n, n);
  for (int i = 0; i < n; ++i) m[i][i] = constant(R_.one());
  return m;
}

SMatrix SeriesRing::from_const(const CMatrix& c) const {
  SMatrix m = mzero(static_cast<int>(c.size()), c.empty() ? 0 : static_cast<int>(c[0].size()));
  for (size_t i = 0; i < c.size(); ++i)
    for (size_t j = 0; j < c[i].size(); ++j) m[i][j] = constant(c[i][j]);
  return m;
}

SMatrix SeriesRing::madd(const SMatrix& a, const SMatrix& b) const {
  SMatrix m = a;
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a[i].size(); ++j) m[i][j] = add(a[i][j], b[i][j]);
  return m;
}

SMatrix SeriesRing::msub(const SMatrix& a, const SMatrix& b) const {
  SMatrix m = a;
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a[i].size(); ++j) m[i][j] = sub(a[i][j], b[i][j]);
  return m;
}

SMatrix SeriesRing::mmul(const SMatrix& a, const SMatrix& b) const {
  const size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  SMatrix c = mzero(static_cast<int>(n), static_cast<int>(m));
  parallel_for(n * m, [&](size_t idx) {
    size_t i = idx / m, j = idx % m;
    Series acc = zero();
    for (size_t l = 0; l < k; ++l) {
      if (structurally_zero(a[i][l]) || structurally_zero(b[l][j])) continue;
      acc = add(acc, mul(a[i][l], b[l][j]));
    }
    c[i][j] = std::move(acc);
  });
  return c;
}

SMatrix SeriesRing::mtwist(const SMatrix& a, int k) const {
  SMatrix m = a;
  for (auto& row : m)
    for (auto& x : row) x = twist(x, k);
  return m;
}

SMatrix SeriesRing::mscale(const Coeff& s, const SMatrix& a) const {
  SMatrix m = a;
  for (auto& row : m)
    for (auto& x : row) x = scale(s, x);
  return m;
}

SMatrix SeriesRing::transpose(const SMatrix& a) const {
  if (a.empty()) return a;
  SMatrix m = mzero(static_cast<int>(a[0].size()), static_cast<int>(a.size()));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a[i].size(); ++j) m[j][i] = a[i][j];
  return m;
}

bool SeriesRing::mis_zero(const SMatrix& a) const {
  for (const auto& row : a)
    for (const auto& x : row)
      if (!is_zero(x)) return false;
  return true;
}

bool SeriesRing::meq(const SMatrix& a, const SMatrix& b) const { return mis_zero(msub(a, b)); }

int SeriesRing::mval_t(const SMatrix& a) const {
  int best = -1;
  for (const auto& row : a)
    for (const auto& x : row) {
      int v = val_t(x);
      if (v >= 0 && (best < 0 || v < best)) best = v;
    }
  return best;
}

}  // namespace orthocount
