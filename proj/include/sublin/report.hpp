#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sublin/continuation.hpp"
#include "sublin/ground_state.hpp"
#include "sublin/solver.hpp"
#include "sublin/spectrum.hpp"

namespace sublin::report {

/// %.17g, the round-trip format used for every float in CSV output.
std::string format_double(double v);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Index of a header column; throws ErrorCode::invalid_argument if absent.
  std::size_t column(const std::string& name) const;
  std::vector<double> numeric(const std::string& name) const;
};

void write_csv(const std::filesystem::path& path, const CsvTable& table);
CsvTable read_csv(const std::filesystem::path& path);

/// Columns x, u, a.
CsvTable solution_table(const Weight& w, const Field& u);

/// Columns q, sup_norm, residual, classification, g_rescaled, gap_q0. The
/// gap columns are empty where not applicable.
CsvTable curve_table(const SolutionCurve& curve, const EigenPair* ep, double t_star, const Field* s_of_a);

/// Columns gamma, sup_norm, residual, classification, gap_s.
CsvTable singular_table(const SolutionCurve& curve, const Field& s_of_a);

nlohmann::json grid_json(const Grid& g);
nlohmann::json to_json(const Classification& c);
nlohmann::json to_json(const BoundsCheck& b);
nlohmann::json to_json(const SolveReport& r);
nlohmann::json to_json(const GroundState& gs);
nlohmann::json to_json(const SolutionCurve& c);
nlohmann::json to_json(const Q1Limit& l);
nlohmann::json to_json(const Q0Limit& l);

/// Tallies of the a-priori assertions over a set of reports.
struct AssertionTally {
  int upper_checked = 0;
  int upper_passed = 0;
  int lower_checked = 0;
  int lower_passed = 0;

  void add(const BoundsCheck& b);
  nlohmann::json to_json() const;
};

}  // namespace sublin::report
