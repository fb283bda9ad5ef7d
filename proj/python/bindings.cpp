#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "orthocount/arith.hpp"
#include "orthocount/budget.hpp"
#include "orthocount/crystal.hpp"
#include "orthocount/lattice.hpp"
#include "orthocount/valcomb.hpp"

namespace py = pybind11;
using namespace orthocount;

namespace {

py::object to_py(const Int& x) {
  return py::reinterpret_steal<py::object>(PyLong_FromString(x.get_str().c_str(), nullptr, 10));
}

py::object to_py(const Rat& x) {
  static py::object Fraction = py::module_::import("fractions").attr("Fraction");
  return Fraction(to_py(Int(x.get_num())), to_py(Int(x.get_den())));
}

IntMatrix to_matrix(const std::vector<std::vector<long>>& g) {
  IntMatrix m;
  for (const auto& row : g) {
    m.emplace_back();
    for (long x : row) m.back().push_back(x);
  }
  return m;
}

}  // namespace

PYBIND11_MODULE(_orthocount, m) {
  m.doc() = "Quadratic lattices, local densities, Frobenius decay and intersection bookkeeping";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<VerificationError>(m, "VerificationError", PyExc_ArithmeticError);

  m.def("theta_series", [](const std::vector<std::vector<long>>& gram, long mmax) {
    auto th = theta_series(QuadLattice::make(to_matrix(gram), true), mmax);
    py::list out;
    for (const auto& x : th) out.append(to_py(x));
    return out;
  }, py::arg("gram"), py::arg("mmax"));

  m.def("e8_check", [](long mmax) {
    auto E8 = e8_lattice();
    auto ctx = EisensteinContext::make(6, 5, 1, 1);
    auto th = theta_series(E8, mmax);
    py::list out;
    for (long k = 1; k <= mmax; ++k) {
      auto q = eis_coeff_theta(ctx, E8, k);
      if (!q.rational()) throw VerificationError("E8 coefficient is not rational");
      out.append(py::make_tuple(k, to_py(*q.rational()), to_py(th[k])));
    }
    return out;
  }, py::arg("mmax") = 20);

  m.def("local_density", [](long p, const std::vector<std::vector<long>>& gram, long n) {
    QuadLattice L = QuadLattice::make(to_matrix(gram), false);
    auto st = local_density(p, L, n);
    py::dict d;
    d["stable"] = to_py(st.value);
    d["depth"] = st.depth;
    d["naive"] = to_py(local_density_naive(p, L, n, st.depth));
    if (p != 2 && n % p != 0) d["recursive"] = to_py(local_density_recursive(p, L, n));
    return d;
  }, py::arg("p"), py::arg("gram"), py::arg("m"));

  m.def("min_set", [](long p, const std::vector<long>& a, int r) {
    ValuationProfile prof;
    prof.p = p;
    for (long x : a) prof.a.push_back(x);
    prof.n = static_cast<int>(a.size()) - 1;
    prof.validate();
    auto s = min_set(r, prof);
    return py::make_tuple(to_py(s.value), s.argmin);
  }, py::arg("p"), py::arg("a"), py::arg("r"));

  m.def("minval_violations", [](long p, const std::vector<long>& a, int r_max) {
    ValuationProfile prof;
    prof.p = p;
    for (long x : a) prof.a.push_back(x);
    prof.n = static_cast<int>(a.size()) - 1;
    prof.validate();
    py::list out;
    for (const auto& v : verify_minval(prof, r_max).violations) out.append(py::make_tuple(v.r, v.property, v.witness));
    return out;
  }, py::arg("p"), py::arg("a"), py::arg("r_max"));

  m.def("ssmain_bound", [](long p, int b, const std::string& c) {
    auto v = ssmain_bound(p, b, parse_ss_case(c));
    py::dict d;
    d["closed_form"] = to_py(v.closed_form);
    d["series"] = to_py(v.series);
    d["ceiling"] = to_py(v.ceiling);
    d["cited"] = v.cited;
    return d;
  }, py::arg("p"), py::arg("b"), py::arg("case"));

  m.def("superspecial_case1_trace", [](int T, int r_max) {
    auto tr = superspecial_case1_trace(T, r_max);
    py::list out;
    for (const auto& row : tr.rows) {
      py::dict d;
      d["vector"] = row.vector;
      d["r"] = row.r;
      d["nu"] = row.tracked.nu;
      d["expected"] = row.expected;
      d["decay_bound"] = row.tracked.decay_bound;
      d["cap"] = row.cap;
      d["ok"] = row.ok();
      out.append(d);
    }
    return out;
  }, py::arg("T") = 700, py::arg("r_max") = 1);

  m.def("nonordinary_equation", [](int n, int mm, long p) {
    auto r = nonordinary_equation(n, mm, p);
    return py::make_tuple(r.equation.str(), r.matches);
  }, py::arg("n"), py::arg("m"), py::arg("p") = 5);

  m.def("formal_curve", [](long p, int c, int j_max) {
    auto f = formal_curve_sequence(p, c, 1, 1, j_max);
    py::list out;
    for (const auto& s : f.steps) {
      py::dict d;
      d["j"] = s.j;
      d["n_next"] = to_py(s.n_next);
      d["m"] = to_py(s.m);
      d["levels_certified"] = to_py(s.levels_certified);
      d["explicit"] = s.explicit_levels;
      d["sharp"] = s.sharp;
      out.append(d);
    }
    return out;
  }, py::arg("p") = 5, py::arg("c") = 1, py::arg("j_max") = 1);
}
