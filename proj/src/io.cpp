#include "orthocount/io.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

namespace orthocount {

using nlohmann::json;

void Table::add(std::vector<std::string> row) {
  if (row.size() != header.size()) throw InputError("table row does not match the schema");
  rows.push_back(std::move(row));
}

std::string render_csv(const Table& t, const std::vector<std::string>& preamble) {
  std::string out;
  for (const auto& line : preamble) out += "# " + line + "\n";
  auto join = [&](const std::vector<std::string>& r) {
    for (size_t i = 0; i < r.size(); ++i) {
      if (i) out += ',';
      // fields never contain commas except argmin lists, which use ';'
      out += r[i];
    }
    out += '\n';
  };
  join(t.header);
  for (const auto& r : t.rows) join(r);
  return out;
}

void emit_text(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot open " + path + " for writing");
  f << text;
  if (!f) throw InputError("write failed: " + path);
}

std::string cell(const Int& x) { return x.get_str(); }
std::string cell(const Rat& x) { return rat_str(x); }
std::string cell(long x) { return std::to_string(x); }
std::string cell(bool x) { return x ? "true" : "false"; }
std::string cell_approx(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot read " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

namespace {

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

template <class T>
T field(const json& j, const char* key) {
  if (!j.contains(key)) throw InputError(std::string("missing field \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw InputError(std::string("field \"") + key + "\" has the wrong type");
  }
}

Int json_int(const json& v) {
  if (v.is_number_integer()) return Int(v.get<long>());
  if (v.is_string()) {
    Int x;
    if (x.set_str(v.get<std::string>(), 10) != 0) throw InputError("bad integer " + v.get<std::string>());
    return x;
  }
  throw InputError("expected an integer");
}

IntMatrix json_matrix(const json& j) {
  if (!j.is_array()) throw InputError("expected a matrix");
  IntMatrix m;
  for (const auto& row : j) {
    if (!row.is_array()) throw InputError("expected a matrix row");
    std::vector<Int> r;
    for (const auto& x : row) r.push_back(json_int(x));
    m.push_back(r);
  }
  return m;
}

QuadLattice lattice_from(const json& j) {
  const int rank = field<int>(j, "rank");
  IntMatrix g = json_matrix(j.at("gram"));
  if (static_cast<int>(g.size()) != rank) throw InputError("gram size does not match rank");
  for (const auto& row : g)
    if (static_cast<int>(row.size()) != rank) throw InputError("gram must be square");
  return QuadLattice::make(g, j.value("positive_definite", true));
}

}  // namespace

QuadLattice parse_lattice(const std::string& text) { return lattice_from(parse_json(text)); }

std::string lattice_json(const QuadLattice& L) {
  json j;
  j["rank"] = L.rank;
  j["positive_definite"] = L.positive_definite;
  json g = json::array();
  for (const auto& row : L.gram) {
    json r = json::array();
    for (const auto& x : row) {
      if (x.fits_slong_p()) {
        r.push_back(x.get_si());
      } else {
        r.push_back(x.get_str());
      }
    }
    g.push_back(r);
  }
  j["gram"] = g;
  return j.dump();
}

NestedLatticeSequence parse_sequence(const std::string& text) {
  json j = parse_json(text);
  NestedLatticeSequence s;
  s.p = field<long>(j, "p");
  s.b = field<int>(j, "b");
  std::string mode = j.value("mode", "supersingular");
  if (mode == "supersingular") {
    s.mode = ModelMode::Supersingular;
  } else if (mode == "nonsupersingular") {
    s.mode = ModelMode::NonSupersingular;
  } else {
    throw InputError("unknown mode " + mode);
  }
  if (!j.contains("ambient")) throw InputError("missing field \"ambient\"");
  s.ambient = lattice_from(j.at("ambient"));
  if (!j.contains("levels") || !j.at("levels").is_array()) throw InputError("missing levels");
  for (const auto& lv : j.at("levels")) {
    IntMatrix colsT = json_matrix(lv.at("basis"));  // list of columns
    IntMatrix cols(s.ambient.rank, std::vector<Int>(colsT.size()));
    for (size_t c = 0; c < colsT.size(); ++c) {
      if (static_cast<int>(colsT[c].size()) != s.ambient.rank) throw InputError("basis vector has wrong length");
      for (int r = 0; r < s.ambient.rank; ++r) cols[r][c] = colsT[c][r];
    }
    s.levels.push_back({json_int(lv.at("n_start")), SublatticeBasis{s.ambient, cols}});
  }
  s.validate();
  return s;
}

CurveBudget parse_budget(const std::string& text) {
  json j = parse_json(text);
  CurveBudget b;
  b.p = field<long>(j, "p");
  const json& om = j.at("omegaC");
  b.omegaC = om.is_string() ? parse_rat(om.get<std::string>()) : Rat(json_int(om));
  for (const auto& pt : j.value("points", json::array()))
    b.points.push_back({pt.value("label", ""), field<long>(pt, "h"), parse_point_type(field<std::string>(pt, "type"))});
  b.validate();
  return b;
}

CurveProfile parse_curve_profile(const std::string& text) {
  json j = parse_json(text);
  CurveProfile c;
  c.p = field<long>(j, "p");
  c.kind = field<std::string>(j, "case");
  if (c.kind != "generic" && c.kind != "superspecial") throw InputError("case must be generic or superspecial");
  c.n = j.value("n", c.kind == "superspecial" ? 1 : 2);
  c.m = field<int>(j, "m");
  c.T = field<int>(j, "T_max");
  c.R = field<int>(j, "R_max");
  c.lambda2 = j.value("lambda2", 0L);
  c.frame = j.value("frame", std::vector<int>{});
  if (c.T < 1 || c.R < 1) throw InputError("T_max and R_max must be positive");
  if (!j.contains("series") || !j.at("series").is_object()) throw InputError("missing series");
  for (const auto& [name, terms] : j.at("series").items()) {
    TermSpec ts;
    for (const auto& t : terms) {
      if (!t.is_array() || t.size() != 3) throw InputError("series term must be [t_exp, coeff_unit, coeff_pval]");
      SeriesTerm st;
      st.exp = t[0].get<int>();
      if (t[1].is_array()) {
        st.unit = t[1].get<std::vector<long>>();
      } else {
        st.unit = {t[1].get<long>()};
      }
      st.pval = t[2].get<int>();
      ts.push_back(st);
    }
    c.series[name] = ts;
  }
  return c;
}

}  // namespace orthocount
