// orthocount command-line driver.
#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "orthocount/arith.hpp"
#include "orthocount/budget.hpp"
#include "orthocount/crystal.hpp"
#include "orthocount/io.hpp"
#include "orthocount/lattice.hpp"
#include "orthocount/suites.hpp"
#include "orthocount/valcomb.hpp"

using namespace orthocount;

namespace {

struct Globals {
  long p = 5;
  int b = 6;
  long mmax = 20;
  int tmax = 0;
  int rmax = 3;
  uint64_t seed = 1;
  std::string out = "-";
  std::string in;
};

// failures found while producing a table; raised after the table is written
struct Outcome {
  std::vector<std::string> failures;
  void fail(const std::string& s) { failures.push_back(s); }
};

std::vector<std::string> preamble(const std::string& cmd, const Globals& g, std::vector<std::string> extra = {}) {
  std::vector<std::string> pre{"orthocount " + cmd, "seed=" + std::to_string(g.seed)};
  for (auto& e : extra) pre.push_back(std::move(e));
  return pre;
}

void finish(const Table& t, const std::vector<std::string>& pre, const Globals& g, const Outcome& o) {
  std::vector<std::string> lines = pre;
  lines.push_back(o.failures.empty() ? "status=ok" : "status=FAIL (" + std::to_string(o.failures.size()) + ")");
  emit_text(render_csv(t, lines), g.out);
  if (!o.failures.empty()) {
    for (const auto& f : o.failures) std::cerr << "verification failure: " << f << "\n";
    throw VerificationError(o.failures.front());
  }
}

std::vector<long> parse_list(const std::string& s) {
  std::vector<long> v;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      v.push_back(std::stol(tok));
    } catch (const std::exception&) {
      throw InputError("not an integer list: " + s);
    }
  }
  if (v.empty()) throw InputError("empty list");
  return v;
}

const std::vector<int>& default_cfactors(int n) {
  static const std::vector<std::vector<int>> f{{}, {}, {0}, {0, 1}, {0, 1, -1}};
  if (n < 1 || n > 4) throw InputError("n must be in 1..4");
  return f[n];
}

std::string join_tuples(const std::vector<IndexTuple>& ts) {
  std::string s;
  for (const auto& t : ts) s += (s.empty() ? "" : ";") + tuple_str(t);
  return s;
}

QuadLattice input_lattice(const Globals& g, bool e8, const std::string& diag) {
  if (e8) return e8_lattice();
  if (!diag.empty()) {
    std::vector<Int> d;
    for (long x : parse_list(diag)) d.push_back(x);
    return diagonal_lattice(d);
  }
  if (g.in.empty()) throw InputError("give --in FILE, --diag or --e8");
  return parse_lattice(read_file(g.in));
}

// ------------------------------------------------------------ lattice

void cmd_lattice(const Globals& g, bool e8, const std::string& diag) {
  QuadLattice L = input_lattice(g, e8, diag);
  auto info = det_and_disc_group(L);
  std::string ed;
  for (const auto& d : info.elementary_divisors) ed += (ed.empty() ? "" : ";") + d.get_str();
  std::vector<std::string> extra{"rank=" + std::to_string(L.rank), "det=" + info.det.get_str(),
                                 "disc_order=" + info.disc_order.get_str(), "elementary_divisors=" + ed};
  if (L.positive_definite) {
    auto mins = successive_minima(L);
    std::string ms;
    for (const auto& x : mins.mu_sq) ms += (ms.empty() ? "" : ";") + x.get_str();
    extra.push_back("successive_minima_Q=" + ms);
  }
  Table t{{"m", "rep_count"}, {}};
  if (L.positive_definite) {
    auto th = theta_series(L, g.mmax);
    for (long m = 0; m <= g.mmax; ++m) t.add({cell(m), cell(th[m])});
  }
  finish(t, preamble("lattice", g, extra), g, {});
}

// ------------------------------------------------------------ density

void cmd_density(const Globals& g, int trials, long m) {
  Outcome o;
  if (!g.in.empty()) {
    QuadLattice L = parse_lattice(read_file(g.in));
    if (m < 1) throw InputError("--m must be positive");
    auto st = local_density(g.p, L, m);
    Table t{{"p", "m", "depth", "stable", "naive", "recursive", "unit_rank", "match"}, {}};
    Rat naive = local_density_naive(g.p, L, m, st.depth);
    std::string rec = "n/a", match = "n/a";
    if (g.p != 2 && m % g.p != 0) {
      Rat r = local_density_recursive(g.p, L, m);
      rec = cell(r);
      match = cell(r == naive);
      if (r != naive) o.fail("recursive density differs from naive count");
    }
    if (naive != st.value) o.fail("split density differs from naive count");
    t.add({cell(g.p), cell(m), cell(long(st.depth)), cell(st.value), cell(naive), rec, cell(long(unit_rank(g.p, L))),
           match});
    finish(t, preamble("density", g), g, o);
    return;
  }
  auto rep = density_cross_check(g.seed, trials);
  Table t{{"case", "p", "rank", "m", "depth", "unit_rank", "recursive", "naive", "match", "bounded"}, {}};
  for (size_t i = 0; i < rep.cases.size(); ++i) {
    const auto& c = rep.cases[i];
    t.add({cell(long(i)), cell(c.p), cell(long(c.rank)), cell(c.m), cell(long(c.depth)), cell(long(c.unit_rank)),
           cell(c.recursive), cell(c.naive), cell(c.match), cell(c.bounded)});
    if (!c.match) o.fail("case " + std::to_string(i) + ": recursive != naive");
    if (!c.bounded) o.fail("case " + std::to_string(i) + ": density bound violated");
  }
  finish(t, preamble("density", g, {"trials=" + std::to_string(trials), "skipped=" + std::to_string(rep.skipped)}), g, o);
}

// ------------------------------------------------------------ eis

void cmd_eis(Globals g, bool e8check, bool e8, const std::string& diag) {
  Outcome o;
  if (e8check) {
    auto E8 = e8_lattice();
    auto ctx = EisensteinContext::make(6, 5, 1, 1);
    auto th = theta_series(E8, 20);
    Table t{{"m", "coeff", "rep_count", "equal"}, {}};
    for (long m = 1; m <= 20; ++m) {
      auto q = eis_coeff_theta(ctx, E8, m);
      bool eq = q.rational() && *q.rational() == Rat(th[m]);
      t.add({cell(m), q.rational() ? cell(*q.rational()) : q.str(), cell(th[m]), cell(eq)});
      if (!eq) o.fail("E8 coefficient mismatch at m=" + std::to_string(m));
    }
    finish(t, preamble("eis --e8-check", g), g, o);
    return;
  }
  QuadLattice L = input_lattice(g, e8, diag);
  if (!L.positive_definite) throw InputError("eis needs a positive definite lattice");
  auto info = det_and_disc_group(L);
  int b = L.rank - 2;
  auto ctx = EisensteinContext::make(b, g.p, info.det, info.disc_order);
  auto rep = cusp_part(L, ctx, g.mmax);
  Table t{{"m", "q_Lprime", "q_Lprime_approx", "rep_count", "residual", "residual_approx"}, {}};
  for (const auto& r : rep.rows)
    t.add({cell(r.m), r.q.str(), cell_approx(r.q.approx), cell(r.rep), r.residual ? cell(*r.residual) : "n/a",
           cell_approx(r.residual_approx)});
  std::vector<std::string> extra{"b=" + std::to_string(b), "cusp_free=" + cell(rep.cusp_free),
                                 "nonzero_residuals=" + std::to_string(rep.nonzero)};
  if (!rep.cusp_free) {
    extra.push_back("slope_approx=" + cell_approx(rep.slope));
    double ceiling = (b + 2) / 4.0 + 0.25;
    if (rep.slope > ceiling) o.fail("cusp slope " + cell_approx(rep.slope) + " above " + cell_approx(ceiling));
  }
  finish(t, preamble("eis", g, extra), g, o);
}

// ------------------------------------------------------------ crystal

void cmd_crystal_trace(const Globals& g) {
  if (g.in.empty()) throw InputError("crystal trace needs --in profile.json");
  CurveProfile c = parse_curve_profile(read_file(g.in));
  auto get = [&](const std::string& prefix, int count) {
    std::vector<TermSpec> v;
    for (int i = 1; i <= count; ++i) {
      auto it = c.series.find(prefix + std::to_string(i));
      v.push_back(it == c.series.end() ? TermSpec{} : it->second);
    }
    return v;
  };
  Outcome o;
  int T = g.tmax > 0 ? g.tmax : c.T;
  if (c.kind == "superspecial") {
    long d = c.lambda2 ? c.lambda2 : 2;
    int r_max = std::min(g.rmax, 1);
    auto tr = superspecial_trace(c.p, d, T, c.R, get("x", c.m), get("y", c.m), r_max);
    Table t{{"vector", "r", "nu", "expected", "decay_bound", "schedule_bound", "nu_any", "pass"}, {}};
    for (const auto& row : tr.rows) {
      t.add({row.vector, cell(long(row.r)), cell(long(row.tracked.nu)), cell(row.expected),
             cell(row.tracked.decay_bound), cell(row.cap), cell(long(row.any.nu)), cell(row.ok())});
      if (!row.ok()) o.fail(row.vector + " r=" + std::to_string(row.r) + ": " + row.tracked.str());
    }
    finish(t,
           preamble("crystal trace", g,
                    {"case=superspecial", "p=" + std::to_string(c.p), "h=" + std::to_string(tr.h),
                     "hprime=" + std::to_string(tr.hprime), "a=" + std::to_string(tr.a), "T=" + std::to_string(T),
                     "depth=" + std::to_string(tr.depth)}),
           g, o);
    return;
  }
  GenericCurve cv;
  cv.p = c.p;
  cv.n = c.n;
  cv.cfactors = c.frame.empty() ? default_cfactors(c.n) : c.frame;
  cv.X = get("x", c.n - 1);
  cv.Y = get("y", c.n - 1);
  cv.Xp = get("xp", c.m);
  cv.Yp = get("yp", c.m);
  auto row = generic_trace(cv, g.rmax, g.tmax, c.R);
  Table t{{"r", "nu_predicted", "nu_observed", "pass"}, {}};
  for (size_t k = 0; k < row.predicted.size(); ++k) {
    bool ok = k < row.observed.size() && row.observed[k] == row.predicted[k];
    t.add({cell(long(k + 1)), cell(row.predicted[k]), k < row.observed.size() ? cell(row.observed[k]) : "n/a",
           cell(ok)});
    if (!ok) o.fail("generic trace r=" + std::to_string(k + 1));
  }
  std::string a;
  for (long x : row.a) a += (a.empty() ? "" : ";") + std::to_string(x);
  finish(t, preamble("crystal trace", g, {"case=generic", "n=" + std::to_string(c.n), "a=" + a}), g, o);
}

void cmd_crystal_case1(const Globals& g) {
  Outcome o;
  auto tr = superspecial_case1_trace(g.tmax > 0 ? g.tmax : 700, std::min(g.rmax, 1));
  Table t{{"vector", "r", "nu", "expected", "decay_bound", "schedule_bound", "nu_any", "pass"}, {}};
  for (const auto& row : tr.rows) {
    t.add({row.vector, cell(long(row.r)), cell(long(row.tracked.nu)), cell(row.expected), cell(row.tracked.decay_bound),
           cell(row.cap), cell(long(row.any.nu)), cell(row.ok())});
    if (!row.ok()) o.fail(row.vector + " r=" + std::to_string(row.r));
  }
  finish(t,
         preamble("crystal case1", g,
                  {"h=" + std::to_string(tr.h), "hprime=" + std::to_string(tr.hprime), "a=" + std::to_string(tr.a),
                   "T=" + std::to_string(tr.T), "depth=" + std::to_string(tr.depth)}),
         g, o);
}

void cmd_crystal_frame(const Globals& g, int n) {
  Outcome o;
  Frame fr = synthetic_frame(g.p, n, default_cfactors(n), std::max(g.rmax, 2));
  Table t{{"i", "b_i"}, {}};
  for (size_t i = 0; i < fr.b.size(); ++i) t.add({cell(long(i + 1)), fr.ring->cstr(fr.b[i])});
  bool cons = frame_consistent(fr);
  int sign = frobactionrows_sign(fr);
  if (!cons) o.fail("sigma(S'_0) != S'_0 B'_0");
  if (sign == 2) o.fail("neither row relation holds");
  finish(t,
         preamble("crystal frame", g,
                  {"p=" + std::to_string(g.p), "n=" + std::to_string(n), "consistent=" + cell(cons),
                   "row_relation_sign=" + std::to_string(sign)}),
         g, o);
}

void cmd_crystal_moore(const Globals& g, int n, int trials) {
  Outcome o;
  Table t{{"p", "n", "row_injective", "max_kernel_dim", "kernel_ok", "unit_alpha_ok", "moore_nonzero",
           "moore_dependent_zero", "pass"},
          {}};
  for (int k = 1; k <= n; ++k) {
    auto r = moore_checks(g.p, k, default_cfactors(k), g.seed + k, trials);
    t.add({cell(g.p), cell(long(k)), cell(r.row_injective), cell(long(r.max_kernel_dim)), cell(r.kernel_ok),
           cell(r.unit_alpha_ok), cell(r.moore_nonzero), cell(r.moore_dependent_zero), cell(r.ok())});
    if (!r.ok()) o.fail("moore checks n=" + std::to_string(k));
  }
  finish(t, preamble("crystal moore", g, {"trials=" + std::to_string(trials)}), g, o);
}

void cmd_crystal_nonord(const Globals& g, int nmax, int mmax) {
  Outcome o;
  Table t{{"n", "m", "equation", "expected", "symbolic_match", "filtration_ok", "matrix_check"}, {}};
  for (int n = 1; n <= nmax; ++n)
    for (int m = 0; m <= mmax; ++m) {
      auto r = nonordinary_equation(n, m, g.p);
      bool mc = nonordinary_matrix_check(n, m, g.p, g.seed + 31 * n + m);
      t.add({cell(long(n)), cell(long(m)), r.equation.str(), r.expected.str(), cell(r.matches), cell(r.filtration_ok),
             cell(mc)});
      if (!r.matches || !r.filtration_ok || !mc) o.fail("non-ordinary equation n=" + std::to_string(n));
    }
  finish(t, preamble("crystal nonord", g), g, o);
}

// ------------------------------------------------------------ valcomb

ValuationProfile profile_from(const Globals& g, const std::string& a) {
  ValuationProfile v;
  v.p = g.p;
  for (long x : parse_list(a)) v.a.push_back(x);
  v.n = static_cast<int>(v.a.size()) - 1;
  v.validate();
  return v;
}

void cmd_min_set(const Globals& g, const std::string& a) {
  auto prof = profile_from(g, a);
  Table t{{"r", "nu_r", "argmins"}, {}};
  for (int r = 1; r <= g.rmax; ++r) {
    auto s = min_set(r, prof);
    t.add({cell(long(r)), cell(s.value), join_tuples(s.argmin)});
  }
  finish(t, preamble("valcomb min-set", g, {"p=" + std::to_string(g.p), "a=" + a}), g, {});
}

void cmd_verify_minval(const Globals& g, int trials) {
  Outcome o;
  std::mt19937_64 gen(g.seed);
  Table t{{"trial", "p", "n", "a", "r_max", "violations"}, {}};
  for (int k = 0; k < trials; ++k) {
    auto prof = random_valuation_profile(gen);
    auto rep = verify_minval(prof, g.rmax);
    std::string a;
    for (const auto& x : prof.a) a += (a.empty() ? "" : ";") + x.get_str();
    t.add({cell(long(k)), cell(prof.p), cell(long(prof.n)), a, cell(long(g.rmax)), cell(long(rep.violations.size()))});
    for (const auto& v : rep.violations)
      o.fail("trial " + std::to_string(k) + " r=" + std::to_string(v.r) + " property " + std::to_string(v.property) +
             ": " + v.witness);
  }
  finish(t, preamble("valcomb verify-minval", g, {"trials=" + std::to_string(trials)}), g, o);
}

void cmd_schedule(const Globals& g, const std::string& kind, long h, long a) {
  DecayCase c = parse_decay_case(kind);
  auto s = decay_schedule(c, h, a, g.p, g.rmax);
  Table t{{"lo", "hi", "e"}, {}};
  for (const auto& bk : s.buckets) t.add({cell(bk.lo), cell(bk.hi), cell(long(bk.e))});
  std::string hs, hps;
  for (const auto& x : schedule_h(h, g.p, g.rmax)) hs += (hs.empty() ? "" : ";") + x.get_str();
  for (const auto& x : schedule_hprime(h, a, g.p, g.rmax)) hps += (hps.empty() ? "" : ";") + x.get_str();
  finish(t,
         preamble("valcomb schedule", g,
                  {"case=" + kind, "p=" + std::to_string(g.p), "h=" + std::to_string(h), "a=" + std::to_string(a),
                   "h_r=" + hs, "hprime_r(from -1)=" + hps}),
         g, {});
}

void cmd_ssp_min(const Globals& g, long h, long hprime, long a) {
  SuperspecialProfile sp{g.p, h, hprime, a};
  sp.validate();
  Table t{{"set", "r", "value", "argmins"}, {}};
  for (auto kind : {SspKind::S1, SspKind::S2})
    for (int r = 0; r <= g.rmax; ++r) {
      auto m = ssp_min_valuation(kind, r, sp);
      std::string am;
      for (auto [al, be] : m.argmin) am += (am.empty() ? "" : ";") + ("(" + std::to_string(al) + "," + std::to_string(be) + ")");
      t.add({kind == SspKind::S1 ? "S1" : "S2", cell(long(r)), cell(m.value), am});
    }
  finish(t, preamble("valcomb ssp-min", g), g, {});
}

// ------------------------------------------------------------ budget

void cmd_intersect(const Globals& g, long ncap) {
  if (g.in.empty()) throw InputError("budget intersect needs --in sequence.json");
  auto seq = parse_sequence(read_file(g.in));
  Table t{{"m", "local_intersection"}, {}};
  for (long m = 1; m <= g.mmax; ++m) t.add({cell(m), cell(local_intersection(seq, m, ncap))});
  auto fm = firstmin_check(seq);
  finish(t,
         preamble("budget intersect", g,
                  {"n_cap=" + std::to_string(ncap), "levels=" + std::to_string(seq.levels.size()),
                   "firstmin_exempt=" + cell(fm.exempt)}),
         g, {});
}

void cmd_ssmain(const Globals& g, long pmax) {
  Outcome o;
  Table t{{"p", "case", "closed_form", "series", "ceiling", "cited", "within_ceiling"}, {}};
  for (long p = 5; p <= pmax; ++p) {
    if (!is_prime(p)) continue;
    for (auto c : {SsCase::Nonss, SsCase::Ssp1, SsCase::Ssp2}) {
      auto v = ssmain_bound(p, g.b, c);
      t.add({cell(p), to_string(c), cell(v.closed_form), cell(v.series), cell(v.ceiling), cell(v.cited), cell(v.ok())});
      if (!v.ok()) o.fail("ssmain above ceiling at p=" + std::to_string(p) + " " + to_string(c));
    }
  }
  finish(t, preamble("budget ssmain", g, {"b=" + std::to_string(g.b), "unit=h/(p-1)"}), g, o);
}

void cmd_formal(const Globals& g, int c, int jmax) {
  auto f = formal_curve_sequence(g.p, c, 1, 1, jmax);
  Outcome o;
  Table t{{"j", "n_j", "n_next", "m_j", "index_exponent", "explicit", "levels_certified", "sharp"}, {}};
  for (const auto& s : f.steps) {
    t.add({cell(long(s.j)), cell(s.n_j), cell(s.n_next), cell(s.m), cell(s.bound_exponent), cell(s.explicit_levels),
           s.explicit_levels ? cell(s.levels_certified) : "symbolic", cell(s.sharp)});
    if (s.explicit_levels && s.levels_certified != ipow(Int(g.p), s.n_next.get_ui()))
      o.fail("level membership not certified at j=" + std::to_string(s.j));
  }
  finish(t, preamble("budget formal", g, {"p=" + std::to_string(g.p), "c=" + std::to_string(c)}), g, o);
}

void cmd_ledger(const Globals& g, const std::string& qL) {
  if (g.in.empty()) throw InputError("budget ledger needs --in budget.json");
  auto bud = parse_budget(read_file(g.in));
  Rat q = parse_rat(qL);
  Outcome o;
  Table t{{"label", "type", "h", "g_P"}, {}};
  for (const auto& pt : bud.points)
    t.add({pt.label, to_string(pt.type), cell(pt.h), cell(pt.type == PointType::Ordinary ? Rat(0) : g_P(pt.h, bud.p, q))});
  bool complete = bud.complete();
  if (!complete) o.fail("sum of h_P differs from (p-1) omega.C");
  finish(t,
         preamble("budget ledger", g,
                  {"p=" + std::to_string(bud.p), "omegaC=" + rat_str(bud.omegaC), "qL_abs=" + rat_str(q),
                   "sum_g=" + rat_str(ledger_sum(bud, q)), "complete=" + cell(complete)}),
         g, o);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"orthocount: lattice, density, crystal and intersection computations"};
  app.set_help_flag("--help", "print help");  // -h is not taken: --h is the Hasse valuation
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--p", g.p, "prime");
  app.add_option("--b", g.b, "b (rank of L minus 2)");
  app.add_option("--mmax", g.mmax, "largest m");
  app.add_option("--tmax", g.tmax, "t-adic window");
  app.add_option("--rmax", g.rmax, "largest r");
  app.add_option("--seed", g.seed, "seed for randomized suites");
  app.add_option("--out", g.out, "output path, - for stdout");
  app.add_option("--in", g.in, "input JSON file");

  bool e8 = false, e8check = false;
  std::string diag, a = "10,1", kind = "generic", qL = "1";
  int trials = 200, n = 3, nmax = 4, mm = 3, c = 1, jmax = 1;
  long m = 1, h = 2, hprime = 13, aa = 1, ncap = 10, pmax = 97;

  auto* lat = app.add_subcommand("lattice", "invariants and theta table");
  lat->add_flag("--e8", e8);
  lat->add_option("--diag", diag, "diagonal Gram entries, comma separated");

  auto* den = app.add_subcommand("density", "naive against recursive local densities");
  den->add_option("--trials", trials);
  den->add_option("--m", m);

  auto* eis = app.add_subcommand("eis", "Eisenstein coefficients against theta coefficients");
  eis->add_flag("--e8-check", e8check);
  eis->add_flag("--e8", e8);
  eis->add_option("--diag", diag);

  auto* cry = app.add_subcommand("crystal", "Frobenius calculus");
  cry->require_subcommand(1);
  auto* ctrace = cry->add_subcommand("trace", "decay trace from a curve profile");
  auto* ccase1 = cry->add_subcommand("case1", "built-in superspecial Case-1 trace");
  auto* cframe = cry->add_subcommand("frame", "synthetic frame and row relations");
  cframe->add_option("--n", n);
  auto* cmoore = cry->add_subcommand("moore", "Moore matrix kernel checks for n = 1..N");
  cmoore->add_option("--n", n);
  cmoore->add_option("--trials", trials);
  auto* cnon = cry->add_subcommand("nonord", "non-ordinary locus equation");
  cnon->add_option("--n", nmax);
  cnon->add_option("--m", mm);

  auto* val = app.add_subcommand("valcomb", "valuation combinatorics");
  val->require_subcommand(1);
  auto* vmin = val->add_subcommand("min-set", "nu_r and argmin sets");
  vmin->add_option("--a", a, "a_1,...,a_{n+1}");
  auto* vver = val->add_subcommand("verify-minval", "exhaustive check of the minimal-valuation properties");
  vver->add_option("--trials", trials);
  auto* vsch = val->add_subcommand("schedule", "decay schedule buckets");
  vsch->add_option("--case", kind, "generic, ssp1 or ssp2");
  vsch->add_option("--h", h);
  vsch->add_option("--a", aa);
  auto* vssp = val->add_subcommand("ssp-min", "superspecial candidate valuations");
  vssp->add_option("--h", h);
  vssp->add_option("--hprime", hprime);
  vssp->add_option("--a", aa);

  auto* bud = app.add_subcommand("budget", "intersection bookkeeping");
  bud->require_subcommand(1);
  auto* bint = bud->add_subcommand("intersect", "local intersections of a nested sequence");
  bint->add_option("--ncap", ncap);
  auto* bss = bud->add_subcommand("ssmain", "ssmain constants for primes 5..pmax");
  bss->add_option("--pmax", pmax);
  auto* bfor = bud->add_subcommand("formal", "formal-curve sequence");
  bfor->add_option("--c", c);
  bfor->add_option("--jmax", jmax);
  auto* bled = bud->add_subcommand("ledger", "g_P ledger and the h_P budget");
  bled->add_option("--qL", qL, "|q_L| as num/den");

  for (auto* s : {lat, den, eis, cry, val, bud}) s->fallthrough();
  for (auto* s : {ctrace, ccase1, cframe, cmoore, cnon, vmin, vver, vsch, vssp, bint, bss, bfor, bled}) s->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return 1;
  }

  try {
    if (*lat) cmd_lattice(g, e8, diag);
    else if (*den) cmd_density(g, trials, m);
    else if (*eis) cmd_eis(g, e8check, e8, diag);
    else if (*ctrace) cmd_crystal_trace(g);
    else if (*ccase1) cmd_crystal_case1(g);
    else if (*cframe) cmd_crystal_frame(g, n);
    else if (*cmoore) cmd_crystal_moore(g, n, trials);
    else if (*cnon) cmd_crystal_nonord(g, nmax, mm);
    else if (*vmin) cmd_min_set(g, a);
    else if (*vver) cmd_verify_minval(g, trials);
    else if (*vsch) cmd_schedule(g, kind, h, aa);
    else if (*vssp) cmd_ssp_min(g, h, hprime, aa);
    else if (*bint) cmd_intersect(g, ncap);
    else if (*bss) cmd_ssmain(g, pmax);
    else if (*bfor) cmd_formal(g, c, jmax);
    else if (*bled) cmd_ledger(g, qL);
  } catch (const VerificationError& e) {
    return 2;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: bad JSON: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
