#pragma once

#include <map>
#include <string>
#include <vector>

#include "orthocount/budget.hpp"
#include "orthocount/crystal.hpp"
#include "orthocount/lattice.hpp"

namespace orthocount {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  void add(std::vector<std::string> row);
};

/// Comment lines ("# ...") for the preamble, then the header and rows, LF endings.
std::string render_csv(const Table& t, const std::vector<std::string>& preamble = {});
/// path "" or "-" writes to stdout.
void emit_text(const std::string& text, const std::string& path);

std::string cell(const Int& x);
std::string cell(const Rat& x);
std::string cell(long x);
std::string cell(bool x);
std::string cell_approx(double x);

std::string read_file(const std::string& path);

/// {"rank": r, "gram": [[...]], "positive_definite": bool}
QuadLattice parse_lattice(const std::string& json_text);
std::string lattice_json(const QuadLattice& L);

/// {"p", "b", "mode": "supersingular"|"nonsupersingular", "ambient": lattice,
///  "levels": [{"n_start": n, "basis": [column, ...]}]}
NestedLatticeSequence parse_sequence(const std::string& json_text);

/// {"p", "omegaC": "num/den", "points": [{"label", "h", "type"}]}
CurveBudget parse_budget(const std::string& json_text);

/// {"p", "case": "generic"|"superspecial", "n", "m",
///  "series": {name: [[t_exp, coeff_unit, coeff_pval], ...]}, "T_max", "R_max"}
/// coeff_unit is an integer or a list of coordinates in the coefficient ring.
/// Generic names: x1.., y1.. (n-1 each), xp1.., yp1.. (m each); optional "frame": [c, ...].
/// Superspecial names: x1.., y1.. (m each); optional "lambda2" (default 2 at p = 5).
struct CurveProfile {
  long p = 5;
  std::string kind;
  int n = 1, m = 0;
  int T = 0, R = 0;
  long lambda2 = 0;
  std::vector<int> frame;
  std::map<std::string, TermSpec> series;
};
CurveProfile parse_curve_profile(const std::string& json_text);

}  // namespace orthocount
