#include <cmath>
#include <mutex>

#include "orthocount/arith.hpp"

namespace orthocount {

int kronecker(const Int& D, const Int& a) {
  if (D == 0 && a == 0) throw InputError("kronecker(0, 0) is undefined");
  return mpz_kronecker(D.get_mpz_t(), a.get_mpz_t());
}

void require_discriminant(const Int& D) {
  Int r;
  mpz_fdiv_r_ui(r.get_mpz_t(), D.get_mpz_t(), 4);
  if (D == 0 || r == 2 || r == 3)
    throw InputError("character discriminant " + D.get_str() + " is not 0 or 1 mod 4");
}

std::pair<Int, Int> fundamental_part(const Int& D) {
  require_discriminant(D);
  Int s = squarefree_part(Rat(D));
  Int r;
  mpz_fdiv_r_ui(r.get_mpz_t(), s.get_mpz_t(), 4);
  Int D0 = (r == 1) ? s : 4 * s;
  Int c2 = D / D0;
  Int c = isqrt(c2);
  if (c * c != c2) throw VerificationError("discriminant does not split as D0 c^2");
  return {D0, c};
}

SigmaValue sigma_s_chi(long m, const Rat& s, const Int& D) {
  if (m < 1) throw InputError("sigma needs m >= 1");
  if (D != 1) require_discriminant(D);
  SigmaValue out;
  bool integral = s.get_den() == 1;
  double sd = s.get_d();
  out.exact = integral;
  out.value = 0;
  for (long d : divisors(m)) {
    int chi = (D == 1) ? 1 : kronecker(D, Int(d));
    if (chi == 0) continue;
    if (integral) out.value += chi * rpow(Rat(d), s.get_num().get_si());
    out.approx += chi * std::pow(static_cast<double>(d), sd);
  }
  if (integral) out.approx = out.value.get_d();
  return out;
}

namespace {

long double zeta_tail_mid(long N, long double s) {
  // sum_{n>N} n^-s lies in [(N+1)^{1-s}, N^{1-s}] / (s-1); take the midpoint.
  long double hi = std::pow(static_cast<long double>(N), 1 - s) / (s - 1);
  long double lo = std::pow(static_cast<long double>(N + 1), 1 - s) / (s - 1);
  return (hi + lo) / 2;
}

}  // namespace

double dirichlet_L(const Rat& s, const Int& D, double eps) {
  if (s <= 1) throw InputError("dirichlet_L needs s > 1");
  if (Rat(2 * s).get_den() != 1) throw InputError("dirichlet_L needs integer or half-integer s");
  if (!(eps > 0)) throw InputError("eps must be positive");
  long double sd = s.get_d();
  auto [D0, c] = D == 1 ? std::pair<Int, Int>{1, 1} : fundamental_part(D);
  long double euler = 1;  // removes primes dividing c
  for (long ell : prime_factors(c))
    euler *= 1 - kronecker(D0, Int(ell)) * std::pow(static_cast<long double>(ell), -sd);
  long N;
  long double tail = 0;
  if (D0 == 1) {
    // Sandwich error is at most N^{-s} / 2.
    N = static_cast<long>(std::ceil(std::pow(2 * eps, -1.0L / sd))) + 1;
    tail = zeta_tail_mid(N, sd);
  } else {
    // Abel summation: partial sums of chi are bounded by the conductor, so the
    // tail is at most |D0| (N+1)^{-s}.
    long double f = std::fabs(D0.get_d());
    N = static_cast<long>(std::ceil(std::pow(f / eps, 1.0L / sd))) + 1;
  }
  if (N > 400000000L) throw InputError("dirichlet_L: requested precision needs too many terms");
  long double acc = 0;
  long f = std::abs(D0.get_si());
  std::vector<int> table(f == 1 ? 1 : f);
  for (long a = 0; a < static_cast<long>(table.size()); ++a) table[a] = (f == 1) ? 1 : kronecker(D0, Int(a));
  for (long n = N; n >= 1; --n) {
    int chi = table[n % table.size()];
    if (chi) acc += chi * std::pow(static_cast<long double>(n), -sd);
  }
  return static_cast<double>((acc + tail) * euler);
}

Rat bernoulli(int n) {
  static std::mutex mu;
  static std::vector<Rat> cache{Rat(1)};
  std::lock_guard<std::mutex> lock(mu);
  while (static_cast<int>(cache.size()) <= n) {
    int k = static_cast<int>(cache.size());
    // sum_{j<k} C(k+1, j) B_j + (k+1) B_k = 0
    Rat s = 0;
    Int binom = 1;
    for (int j = 0; j < k; ++j) {
      s += binom * cache[j];
      binom = binom * (k + 1 - j) / (j + 1);
    }
    cache.push_back(-s / (k + 1));
  }
  return cache[n];
}

Rat bernoulli_poly(int n, const Rat& x) {
  Rat s = 0;
  Int binom = 1;
  for (int k = 0; k <= n; ++k) {
    s += binom * bernoulli(k) * rpow(x, n - k);
    binom = binom * (n - k) / (k + 1);
  }
  return s;
}

std::optional<Rat> exact_L_value(int k, const Int& D) {
  if (k < 2) return std::nullopt;
  auto [D0, c] = D == 1 ? std::pair<Int, Int>{1, 1} : fundamental_part(D);
  int delta = D0 < 0 ? 1 : 0;
  if ((k - delta) % 2 != 0) return std::nullopt;
  Int f = abs(D0);
  Rat Bk = 0;
  for (Int a = 1; a <= f; ++a) {
    int chi = (f == 1) ? 1 : kronecker(D0, a);
    if (chi) Bk += chi * bernoulli_poly(k, Rat(a, f));
  }
  Bk *= ipow(f, k - 1);
  Int kfact = 1;
  for (int i = 2; i <= k; ++i) kfact *= i;
  int sign = ((1 + (k - delta) / 2) % 2 == 0) ? 1 : -1;
  Rat r = sign * make_rat(ipow(Int(2), k), 2 * ipow(f, k)) * Bk / kfact;
  for (long ell : prime_factors(c)) r *= 1 - kronecker(D0, Int(ell)) * rpow(Rat(ell), -k);
  return r;
}

}  // namespace orthocount
