#include <algorithm>
#include <cmath>
#include <sstream>

#include "orthocount/arith.hpp"
#include "orthocount/parallel.hpp"

namespace orthocount {

EisensteinContext EisensteinContext::make(int b, long p, const Int& detL, const Int& discOrder) {
  if (b < 3) throw InputError("b must be at least 3");
  if (p < 5 || !is_prime(p)) throw InputError("p must be a prime >= 5");
  if (detL == 0) throw InputError("det L must be nonzero");
  if (discOrder != abs(detL)) throw InputError("disc order must equal |det L|");
  EisensteinContext c;
  c.b = b;
  c.p = p;
  c.detL = detL;
  c.discOrder = discOrder;
  c.badPrimes = prime_factors(2 * detL);
  for (long l : c.badPrimes)
    if (l == p) throw InputError("p divides 2 det L; the lattice must be self-dual at p");
  return c;
}

// ------------------------------------------------------------ StructuredValue

std::optional<Rat> StructuredValue::rational() const {
  if (!exact()) return std::nullopt;
  if (coeff == 0) return Rat(0);
  if (rad != 1) return std::nullopt;
  return coeff;
}

void StructuredValue::mul_sqrt(const Int& n) {
  if (n <= 0) throw std::domain_error("sqrt of nonpositive");
  Int sq = 1, rest = 1;
  for (long l : prime_factors(n)) {
    int e = valuation(n, l);
    sq *= ipow(Int(l), e / 2);
    if (e % 2) rest *= l;
  }
  coeff *= sq;
  Int common;
  mpz_gcd(common.get_mpz_t(), rad.get_mpz_t(), rest.get_mpz_t());
  coeff *= common;
  rad = rad / common * (rest / common);
}

void StructuredValue::div_sqrt(const Int& n) {
  mul_sqrt(n);
  coeff /= n;
}

StructuredValue StructuredValue::abs_value() const {
  StructuredValue v = *this;
  bool neg = v.coeff < 0;
  if (v.l_exp != 0 && v.approx != 0) neg = v.approx < 0;
  if (neg) {
    v.coeff = -v.coeff;
    v.approx = -v.approx;
  }
  return v;
}

std::string StructuredValue::str() const {
  std::ostringstream os;
  os << rat_str(coeff);
  if (rad != 1) os << "*sqrt(" << rad << ")";
  if (l_exp != 0)
    os << "*(L(" << l_s << ",chi_" << l_D << ")/pi^" << l_s << ")^" << l_exp;
  return os.str();
}

namespace {

Int factorial(long n) {
  Int f = 1;
  for (long i = 2; i <= n; ++i) f *= i;
  return f;
}

// Gamma(k + 1/2) / sqrt(pi)
Rat gamma_half(long k) { return make_rat(factorial(2 * k), ipow(Int(4), k) * factorial(k)); }

// zeta(2k) / pi^{2k}
Rat zeta_even(long k) {
  Rat b = bernoulli(static_cast<int>(2 * k));
  Rat v = b * ipow(Int(2), 2 * k) / (2 * factorial(2 * k));
  return ((k + 1) % 2 == 0) ? v : -v;
}

double sqrt_d(const Int& n) { return std::sqrt(n.get_d()); }

struct Recipe {
  // value = sign * rat * sqrt(rad_num) / sqrt(rad_den) * L-part, and the L-part is
  // either L(s,chi)^{+-1} / pi^{+-s} (symbolic) or folded exactly.
  Rat rat;
  Int sqrt_mul = 1, sqrt_div = 1;
  int l_exp = 0;
  Int l_D = 1;
  int l_s = 0;
};

StructuredValue finish(const Recipe& r) {
  StructuredValue v;
  v.coeff = r.rat;
  v.mul_sqrt(r.sqrt_mul);
  v.div_sqrt(r.sqrt_div);
  double approx = r.rat.get_d() * sqrt_d(r.sqrt_mul) / sqrt_d(r.sqrt_div);
  if (r.l_exp != 0 && r.rat != 0) {
    auto ex = exact_L_value(r.l_s, r.l_D);
    if (ex) {
      // L = ex * pi^s * sqrt(f)
      Int f = abs(fundamental_part(r.l_D).first);
      if (*ex == 0) throw VerificationError("vanishing L-value");
      if (r.l_exp > 0) {
        v.coeff *= *ex;
        v.mul_sqrt(f);
      } else {
        v.coeff /= *ex;
        v.div_sqrt(f);
      }
    } else {
      v.l_exp = r.l_exp;
      v.l_D = r.l_D;
      v.l_s = r.l_s;
    }
    double part;
    if (ex) {
      part = ex->get_d() * std::sqrt(std::fabs(fundamental_part(r.l_D).first.get_d()));
    } else {
      // Keep the summation under about 2e7 terms.
      double f = std::fabs(fundamental_part(r.l_D).first.get_d());
      double eps = std::max(1e-15, f * std::pow(2e7, -r.l_s));
      part = dirichlet_L(Rat(r.l_s), r.l_D, eps) / std::pow(M_PI, r.l_s);
    }
    approx *= (r.l_exp > 0) ? part : 1 / part;
  }
  v.approx = approx;
  return v;
}

// Core of both coefficient formulas; `sign` is -1 for q_L and +1 for q_L'.
// For odd b the character of a positive definite lattice of rank b+2 is
// (-1)^{(b+1)/2} 2 m0 det, one sign away from the signature (b,2) case.
StructuredValue eis_formula(int b, const Int& det_char, const Int& disc, const std::map<long, Rat>& dens,
                            const std::vector<long>& bad, long m, int sign, bool definite) {
  if (m < 1) throw InputError("Eisenstein coefficient needs m >= 1");
  Rat dprod = 1;
  for (long l : bad) {
    auto it = dens.find(l);
    if (it == dens.end()) throw InputError("missing local density at " + std::to_string(l));
    dprod *= it->second;
  }
  Recipe r;
  if (b % 2 == 0) {
    long k = 1 + b / 2;
    Int D = ((k % 2 == 0) ? 1 : -1) * 4 * det_char;
    SigmaValue sig = sigma_s_chi(m, Rat(-b / 2), D);
    // 2^k pi^k m^{b/2} sigma / (sqrt(disc) Gamma(k) L(k,chi))
    r.rat = sign * Rat(ipow(Int(2), k)) * ipow(Int(m), b / 2) * sig.value / factorial(k - 1) * dprod;
    r.sqrt_div = disc;
    r.l_exp = -1;
    r.l_D = D;
    r.l_s = static_cast<int>(k);
  } else {
    long kp = (b + 1) / 2;
    // m = m0 f^2 with gcd(f, 2 det) = 1 and m0 squarefree away from 2 det.
    Int f = 1;
    for (long l : prime_factors(Int(m))) {
      bool badl = std::find(bad.begin(), bad.end(), l) != bad.end();
      int e = valuation(Int(m), l);
      if (!badl) f *= ipow(Int(l), e / 2);
    }
    Int m0 = Int(m) / (f * f);
    long e = definite ? kp : kp - 1;
    Int D = ((e % 2 == 0) ? 1 : -1) * 2 * m0 * det_char;
    require_discriminant(D);
    Rat msum = 0;
    long fl = f.get_si();
    for (long d : divisors(fl)) {
      int mu = mobius(d);
      if (!mu) continue;
      int chi = kronecker(D, Int(d));
      if (!chi) continue;
      msum += mu * chi * rpow(Rat(d), -kp) * sigma_s_chi(fl / d, Rat(-b), 1).value;
    }
    Rat corr = 1;
    for (long l : bad) corr /= 1 - rpow(Rat(l), -1 - b);
    // 2^{k'} sqrt2 pi^{k'} sqrt(pi) m^{(b-1)/2} sqrt(m) L / (Gamma(k'+1/2) sqrt(disc) zeta(2k'))
    r.rat = sign * Rat(ipow(Int(2), kp)) * ipow(Int(m), (b - 1) / 2) / (gamma_half(kp) * zeta_even(kp)) *
            msum * dprod * corr;
    r.sqrt_mul = 2 * m;
    r.sqrt_div = disc;
    r.l_exp = 1;
    r.l_D = D;
    r.l_s = static_cast<int>(kp);
  }
  return finish(r);
}

}  // namespace

StructuredValue eis_coeff_global(const EisensteinContext& ctx, const std::map<long, Rat>& localDensities,
                                 long m) {
  return eis_formula(ctx.b, ctx.detL, ctx.discOrder, localDensities, ctx.badPrimes, m, -1, false);
}

std::map<long, Rat> bad_prime_densities(const QuadLattice& L, const std::vector<long>& primes, long m) {
  std::map<long, Rat> out;
  for (long l : primes) out[l] = local_density(l, L, Int(m)).value;
  return out;
}

StructuredValue eis_coeff_theta(const EisensteinContext& ctx, const QuadLattice& Lp, long m) {
  if (!Lp.positive_definite) throw InputError("eis_coeff_theta needs a positive definite lattice");
  if (Lp.rank != ctx.b + 2) throw InputError("lattice rank must be b + 2");
  Int disc = abs(Lp.det());
  // Off p the lattice must agree with L'_1: compare determinant valuations.
  for (long l : prime_factors(disc * 2 * ctx.detL))
    if (l != ctx.p && valuation(disc, l) != valuation(Int(abs(ctx.detL)), l))
      throw InputError("lattice does not match the ambient determinant away from p");
  auto dens = bad_prime_densities(Lp, ctx.badPrimes, m);
  return eis_formula(ctx.b, ctx.detL, disc, dens, ctx.badPrimes, m, +1, true);
}

CuspReport cusp_part(const QuadLattice& Lp, const EisensteinContext& ctx, long M) {
  if (Lp.rank != ctx.b + 2) throw InputError("cusp_part: rank must equal b + 2");
  auto theta = theta_series(Lp, M);
  CuspReport rep;
  rep.rows.resize(M);
  parallel_for(static_cast<size_t>(M), [&](size_t i) {
    long m = static_cast<long>(i) + 1;
    CuspRow row;
    row.m = m;
    row.rep = theta[m];
    row.q = eis_coeff_theta(ctx, Lp, m);
    auto qr = row.q.rational();
    if (qr) {
      row.residual = Rat(row.rep) - *qr;
      row.residual_approx = row.residual->get_d();
    } else {
      row.residual_approx = row.rep.get_d() - row.q.approx;
    }
    rep.rows[i] = row;
  });
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& row : rep.rows) {
    bool nz = row.residual ? (*row.residual != 0)
                           : std::fabs(row.residual_approx) > 1e-6 * std::max(1.0, std::fabs(row.q.approx));
    if (!nz) continue;
    double x = std::log(static_cast<double>(row.m)), y = std::log(std::fabs(row.residual_approx));
    sx += x, sy += y, sxx += x * x, sxy += x * y;
    ++rep.nonzero;
  }
  rep.cusp_free = rep.nonzero == 0;
  if (rep.nonzero >= 2) {
    double n = rep.nonzero;
    rep.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  }
  return rep;
}

DensmReport densm_ratio(const EisensteinContext& ctx, const QuadLattice& Lp, long m) {
  long p = ctx.p;
  if (m % p == 0) throw InputError("densm_ratio requires p not dividing m");
  DensmReport rep;
  Int disc = abs(Lp.det());
  rep.disc_p = ipow(Int(p), valuation(disc, p));
  rep.delta = local_density_recursive(p, Lp, Int(m));
  int b = ctx.b;
  long top = (b + 2) / 2;
  Rat denom_bound = 1 - rpow(Rat(p), -top);
  rep.reduced_bound = 2 / denom_bound;
  if (b % 2 == 0) {
    long k = 1 + b / 2;
    Int D = ((k % 2 == 0) ? 1 : -1) * 4 * ctx.detL;
    rep.reduced_ratio = rep.delta / (1 - kronecker(D, Int(p)) * rpow(Rat(p), -k));
  } else {
    Int f = 1;
    for (long l : prime_factors(Int(m)))
      if (std::find(ctx.badPrimes.begin(), ctx.badPrimes.end(), l) == ctx.badPrimes.end())
        f *= ipow(Int(l), valuation(Int(m), l) / 2);
    Int m0 = Int(m) / (f * f);
    long kp = (b + 1) / 2;
    Int D = (((kp - 1) % 2 == 0) ? 1 : -1) * 2 * m0 * ctx.detL;
    require_discriminant(D);
    rep.reduced_ratio = rep.delta * (1 - kronecker(D, Int(p)) * rpow(Rat(p), -kp)) / (1 - rpow(Rat(p), -1 - b));
  }
  double s = std::sqrt(rep.disc_p.get_d());
  rep.ratio = rep.reduced_ratio.get_d() / s;
  rep.bound = rep.reduced_bound.get_d() / s;
  rep.ok = rep.reduced_ratio <= rep.reduced_bound;
  if (rep.disc_p == Int(p) * p) {
    rep.superspecial_bound = (1 + Rat(1, p)) / denom_bound;
    rep.ok = rep.ok && rep.reduced_ratio <= *rep.superspecial_bound;
  }
  return rep;
}

bool locally_representable(const QuadLattice& L, const std::vector<long>& primes, long m) {
  for (long l : primes)
    if (local_density(l, L, Int(m)).value == 0) return false;
  return true;
}

}  // namespace orthocount
