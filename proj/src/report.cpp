#include "sublin/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "sublin/error.hpp"

namespace sublin::report {

using nlohmann::json;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t k = 0; k < header.size(); ++k)
    if (header[k] == name) return k;
  throw Error(ErrorCode::invalid_argument, "csv: no column named '" + name + "'");
}

std::vector<double> CsvTable::numeric(const std::string& name) const {
  const std::size_t k = column(name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) {
    if (k >= r.size() || r[k].empty()) {
      out.push_back(std::numeric_limits<double>::quiet_NaN());
      continue;
    }
    try {
      out.push_back(std::stod(r[k]));
    } catch (const std::exception&) {
      throw Error(ErrorCode::invalid_argument, "csv: column '" + name + "' holds non-numeric value '" + r[k] + "'");
    }
  }
  return out;
}

namespace {

std::string join(const std::vector<std::string>& cells) {
  std::string line;
  for (std::size_t k = 0; k < cells.size(); ++k) {
    if (k) line += ',';
    line += cells[k];
  }
  return line;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::string maybe(double v, bool present) { return present ? format_double(v) : std::string(); }

}  // namespace

void write_csv(const std::filesystem::path& path, const CsvTable& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::config_error, "cannot write " + path.string());
  out << join(table.header) << '\n';
  for (const auto& r : table.rows) out << join(r) << '\n';
  if (!out) throw Error(ErrorCode::config_error, "write failed for " + path.string());
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::config_error, "cannot read " + path.string());
  CsvTable t;
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::invalid_argument, "csv: empty file " + path.string());
  t.header = split(line);
  while (std::getline(in, line))
    if (!line.empty()) t.rows.push_back(split(line));
  return t;
}

CsvTable solution_table(const Weight& w, const Field& u) {
  const Grid& g = *w.grid();
  require_on_grid(g, u, "solution_table");
  CsvTable t{{"x", "u", "a"}, {}};
  for (std::size_t i = 0; i < g.size(); ++i)
    t.rows.push_back({format_double(g.node(i)), format_double(u[i]), format_double(w.values()[i])});
  return t;
}

CsvTable curve_table(const SolutionCurve& curve, const EigenPair* ep, double t_star, const Field* s_of_a) {
  CsvTable t{{"q", "sup_norm", "residual", "classification", "g_rescaled", "gap_q0"}, {}};
  for (const CurveSample& s : curve.samples) {
    const double g = ep ? rescaled_gap(*ep, t_star, s.q, s.u) : 0.0;
    const double gap = s_of_a ? sup_distance(s.u, *s_of_a) : 0.0;
    t.rows.push_back({format_double(s.q), format_double(s.sup_norm), format_double(s.residual),
                      std::string(to_string(s.classification)), maybe(g, ep != nullptr), maybe(gap, s_of_a != nullptr)});
  }
  return t;
}

CsvTable singular_table(const SolutionCurve& curve, const Field& s_of_a) {
  CsvTable t{{"gamma", "sup_norm", "residual", "classification", "gap_s"}, {}};
  for (const CurveSample& s : curve.samples)
    t.rows.push_back({format_double(-s.q + 0.0), format_double(s.sup_norm), format_double(s.residual),
                      std::string(to_string(s.classification)), format_double(sup_distance(s.u, s_of_a))});
  return t;
}

json grid_json(const Grid& g) {
  json j = {{"kind", g.kind() == GridKind::interval ? "interval" : "radial"},
            {"n_interior", g.size()},
            {"h", g.h()}};
  if (g.kind() == GridKind::interval) {
    j["x0"] = g.lower();
    j["x1"] = g.upper();
  } else {
    j["R"] = g.upper();
    j["dim"] = g.dim();
  }
  return j;
}

json to_json(const Classification& c) {
  json runs = json::array();
  for (const ZeroRun& r : c.zero_runs) runs.push_back({{"begin", r.begin}, {"end", r.end}, {"x_first", r.x_first}, {"x_last", r.x_last}});
  return {{"kind", to_string(c.kind)}, {"zero_runs", runs}, {"flux", c.flux}, {"atol", c.atol}, {"ftol", c.ftol}};
}

json to_json(const BoundsCheck& b) {
  return {{"upper_checked", b.upper_checked}, {"upper_ok", b.upper_ok},     {"h1_norm", b.h1_norm},
          {"upper_ceiling", b.upper_ceiling}, {"lower_checked", b.lower_checked}, {"lower_ok", b.lower_ok},
          {"lower_margin", b.lower_checked ? json(b.lower_margin) : json(nullptr)}};
}

json to_json(const SolveReport& r) {
  return {{"status", to_string(r.status)},
          {"iterations", r.iterations},
          {"residual", r.residual},
          {"sup_norm", r.solution.values.empty() ? 0.0 : r.solution.sup_norm()},
          {"classification", to_json(r.classification)},
          {"bounds_checked", to_json(r.bounds)}};
}

json to_json(const GroundState& gs) {
  json starts = json::array();
  for (const StartRecord& s : gs.starts) {
    starts.push_back({{"kind", s.kind},
                      {"seed", s.seed},
                      {"descent_iterations", s.descent_iterations},
                      {"constrained_energy", s.constrained_energy},
                      {"status", to_string(s.status)},
                      {"residual", s.residual},
                      {"energy", s.energy},
                      {"sup_distance_to_best", s.u.values.empty() ? json(nullptr) : json(sup_distance(s.u, gs.u))}});
  }
  return {{"q", gs.q},
          {"energy", gs.energy},
          {"multiplier_scale", gs.multiplier_scale},
          {"best_start", gs.best_start},
          {"polish", to_json(gs.polish)},
          {"starts", starts}};
}

json to_json(const SolutionCurve& c) {
  json samples = json::array();
  for (const CurveSample& s : c.samples)
    samples.push_back({{"q", s.q},
                       {"sup_norm", s.sup_norm},
                       {"residual", s.residual},
                       {"classification", to_string(s.classification)},
                       {"iterations", s.iterations},
                       {"bounds", to_json(s.bounds)}});
  json runs = json::array();
  for (const auto& [lo, hi] : c.interior_runs) runs.push_back({lo, hi});
  return {{"samples", samples},
          {"truncated", c.truncated},
          {"last_good_q", c.last_good_q},
          {"failure", c.failure},
          {"interior_runs", runs}};
}

json to_json(const Q1Limit& l) {
  return {{"lambda1", l.lambda1}, {"t_star", l.t_star}, {"profile_sup", l.profile_sup}, {"q", l.q},
          {"g", l.g},           {"sup_norm", l.sup_norm}, {"regime", l.regime}};
}

json to_json(const Q0Limit& l) {
  return {{"q", l.q}, {"gap", l.gap}, {"bracket_ok", l.bracket_ok}, {"bracket_margin", l.bracket_margin}};
}

void AssertionTally::add(const BoundsCheck& b) {
  if (b.upper_checked) {
    ++upper_checked;
    upper_passed += b.upper_ok ? 1 : 0;
  }
  if (b.lower_checked) {
    ++lower_checked;
    lower_passed += b.lower_ok ? 1 : 0;
  }
}

json AssertionTally::to_json() const {
  return {{"apriori_upper", {{"checked", upper_checked}, {"passed", upper_passed}}},
          {"component_floor", {{"checked", lower_checked}, {"passed", lower_passed}}}};
}

}  // namespace sublin::report
