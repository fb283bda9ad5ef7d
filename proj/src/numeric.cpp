#include "orthocount/numeric.hpp"

#include <algorithm>

namespace orthocount {

std::string rat_str(const Rat& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rat parse_rat(const std::string& s) {
  Rat r;
  try {
    auto slash = s.find('/');
    if (slash == std::string::npos) {
      r = Rat(Int(s));
    } else {
      Int n(s.substr(0, slash)), d(s.substr(slash + 1));
      if (d == 0) throw InputError("zero denominator in '" + s + "'");
      r = make_rat(n, d);
    }
  } catch (const std::invalid_argument&) {
    throw InputError("not a rational number: '" + s + "'");
  }
  return r;
}

Int ipow(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

Rat rpow(const Rat& base, long e) {
  if (e >= 0) return Rat(ipow(base.get_num(), e), ipow(base.get_den(), e));
  if (base == 0) throw std::domain_error("rpow: zero to a negative power");
  return make_rat(ipow(base.get_den(), -e), ipow(base.get_num(), -e));
}

int64_t ipow64(int64_t base, int e) {
  int64_t r = 1;
  while (e-- > 0) r *= base;
  return r;
}

int valuation(const Int& n, long p) {
  if (n == 0) throw std::domain_error("valuation of zero");
  Int q = n;
  int v = 0;
  while (mpz_divisible_ui_p(q.get_mpz_t(), p)) {
    mpz_divexact_ui(q.get_mpz_t(), q.get_mpz_t(), p);
    ++v;
  }
  return v;
}

int valuation(const Rat& r, long p) {
  return valuation(r.get_num(), p) - valuation(r.get_den(), p);
}

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<long> prime_factors(Int n) {
  std::vector<long> out;
  n = abs(n);
  for (long d = 2; Int(d) * d <= n; ++d) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), d)) {
      out.push_back(d);
      while (mpz_divisible_ui_p(n.get_mpz_t(), d)) n /= d;
    }
  }
  if (n > 1) {
    if (!n.fits_slong_p()) throw InputError("prime factor too large");
    out.push_back(n.get_si());
  }
  return out;
}

std::vector<long> divisors(long n) {
  std::vector<long> lo, hi;
  for (long d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    lo.push_back(d);
    if (d != n / d) hi.push_back(n / d);
  }
  lo.insert(lo.end(), hi.rbegin(), hi.rend());
  return lo;
}

int mobius(long n) {
  int mu = 1;
  for (long d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    n /= d;
    if (n % d == 0) return 0;
    mu = -mu;
  }
  if (n > 1) mu = -mu;
  return mu;
}

Int isqrt(const Int& n) {
  if (n < 0) throw std::domain_error("isqrt of negative");
  Int r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

bool is_square(const Int& n) { return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()); }

Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Int ceil_div(const Int& a, const Int& b) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Int floor_rat(const Rat& r) { return floor_div(r.get_num(), r.get_den()); }
Int ceil_rat(const Rat& r) { return ceil_div(r.get_num(), r.get_den()); }

Int squarefree_part(const Rat& r) {
  if (r == 0) throw std::domain_error("squarefree part of zero");
  Int n = r.get_num() * r.get_den();  // same square class
  Int sign = n < 0 ? -1 : 1;
  n = abs(n);
  Int out = 1;
  for (long d = 2; Int(d) * d <= n; ++d) {
    int e = 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), d)) {
      n /= d;
      ++e;
    }
    if (e & 1) out *= d;
  }
  out *= n;
  return sign * out;
}

Int mat_det(const IntMatrix& m) {
  // Bareiss fraction-free elimination.
  size_t n = m.size();
  if (n == 0) return 1;
  IntMatrix a = m;
  Int prev = 1;
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      size_t s = k + 1;
      while (s < n && a[s][k] == 0) ++s;
      if (s == n) return 0;
      std::swap(a[k], a[s]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]);
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

RatMatrix to_rat(const IntMatrix& m) {
  RatMatrix r(m.size());
  for (size_t i = 0; i < m.size(); ++i)
    for (const auto& x : m[i]) r[i].push_back(Rat(x));
  return r;
}

RatMatrix rat_inverse(const RatMatrix& m) {
  size_t n = m.size();
  RatMatrix a = m, inv(n, std::vector<Rat>(n, 0));
  for (size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) throw std::domain_error("singular matrix");
    std::swap(a[c], a[piv]);
    std::swap(inv[c], inv[piv]);
    Rat s = 1 / a[c][c];
    for (size_t j = 0; j < n; ++j) {
      a[c][j] *= s;
      inv[c][j] *= s;
    }
    for (size_t i = 0; i < n; ++i) {
      if (i == c || a[i][c] == 0) continue;
      Rat f = a[i][c];
      for (size_t j = 0; j < n; ++j) {
        a[i][j] -= f * a[c][j];
        inv[i][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

RatMatrix rat_mul(const RatMatrix& a, const RatMatrix& b) {
  size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  RatMatrix c(n, std::vector<Rat>(m, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
    }
  return c;
}

IntMatrix int_mul(const IntMatrix& a, const IntMatrix& b) {
  size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  IntMatrix c(n, std::vector<Int>(m, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
    }
  return c;
}

IntMatrix transpose(const IntMatrix& m) {
  if (m.empty()) return {};
  IntMatrix t(m[0].size(), std::vector<Int>(m.size()));
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  return t;
}

IntMatrix identity_matrix(size_t n) {
  IntMatrix m(n, std::vector<Int>(n, 0));
  for (size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

}  // namespace orthocount
