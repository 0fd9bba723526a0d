#pragma once

#include <string>
#include <vector>

#include "otto/cycle.hpp"
#include "otto/opt_result.hpp"

namespace otto::reports {

// Tabular output for sweeps and figure regeneration. CSV is the interchange
// format: comma separated, header row, LF line endings, decimal point,
// 17 significant digits so emitted values re-parse bit-identically.

enum class Format { Csv, Json };

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

std::string to_csv(const Table& table);
std::string to_json(const Table& table);  // array of flat objects
std::string render(const Table& table, Format format);

// Reader for the tool's own CSV dialect; round-trips every emitted value.
Table parse_csv(const std::string& text);

// One decimal literal, 17 significant digits (shared by CSV and JSON paths).
std::string format_value(double value);

// A named sweep: one axis column plus one column per requested quantity.
// Valid quantity/axis pairs are listed by quantity_catalog().
struct SweepSpec {
  std::vector<std::string> quantities;
  std::string axis;  // eta_c | zeta_c | tau
  double start = 0.0;
  double stop = 0.0;
  int count = 200;
  double beta_hot = 1.0;
};

struct QuantityInfo {
  std::string name;
  std::string axis;
  double domain_lo = 0.0;
  double domain_hi = 1.0;
};

const std::vector<QuantityInfo>& quantity_catalog();

// Throws std::invalid_argument naming valid pairs on a mismatched axis and
// std::domain_error when the range leaves the quantity's domain.
Table sweep(const SweepSpec& spec);

// Ready-made specs reproducing the trade-off figures: "fig2" (engine
// efficiencies vs eta_c), "fig4" (COPs vs zeta_c), "fig6" (cooling power
// vs tau).
SweepSpec figure_preset(const std::string& name);

// Parametric efficiency/work loop samples plus two flagged extremum rows
// (flag column: 0 = sample, 1 = max work, 2 = max efficiency).
Table loop_table(double tau, double beta_hot, int n_points);

// --- analytic-vs-numeric verification ---

struct VerificationRecord {
  std::string case_id;
  double analytic = 0.0;
  double numeric = 0.0;
  double abs_err = 0.0;
  double rel_err = 0.0;
  double tol_abs = 0.0;
  double tol_rel = 0.0;
  bool pass = false;
};

enum class Suite { Engine, Fridge, Taylor, All };

// Engine/Fridge: every closed-form optimum against its derivative-free
// twin on a 50-point grid. Taylor: near-equilibrium and large-COP expansion
// coefficients against the known universal values.
std::vector<VerificationRecord> run_suite(Suite suite, double tol_rel = 1e-8);

std::string to_json(const std::vector<VerificationRecord>& records);
std::string to_text(const std::vector<VerificationRecord>& records);

// JSON rendering used by the CLI (flat objects, snake_case keys).
std::string to_json(const CycleReport& report);
std::string to_json(const OptResult& result);

}  // namespace otto::reports
