#include "otto/reports.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "otto/engine.hpp"
#include "otto/fridge.hpp"
#include "otto/optimize.hpp"

namespace otto::reports {

namespace {

using nlohmann::json;

void check_finite_cell(double value, const std::string& column,
                       double axis_value) {
  if (!std::isfinite(value)) {
    throw opt::NumericError("non-finite value for '" + column +
                            "' at axis value " + format_value(axis_value));
  }
}

}  // namespace

std::string format_value(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

std::string to_csv(const Table& table) {
  std::string out;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out += ',';
    out += table.columns[c];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += format_value(row[c]);
    }
    out += '\n';
  }
  return out;
}

Table parse_csv(const std::string& text) {
  Table table;
  std::istringstream stream(text);
  std::string line;
  bool header = true;
  while (std::getline(stream, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::size_t pos = 0;
    while (true) {
      const std::size_t comma = line.find(',', pos);
      cells.push_back(line.substr(pos, comma - pos));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (header) {
      table.columns = cells;
      header = false;
      continue;
    }
    if (cells.size() != table.columns.size()) {
      throw std::invalid_argument("csv row width does not match header");
    }
    std::vector<double> row(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
      char* end = nullptr;
      row[c] = std::strtod(cells[c].c_str(), &end);
      if (end == cells[c].c_str() || *end != '\0') {
        throw std::invalid_argument("csv cell is not a number: " + cells[c]);
      }
    }
    table.rows.push_back(std::move(row));
  }
  if (header) throw std::invalid_argument("csv input has no header row");
  return table;
}

std::string to_json(const Table& table) {
  json rows = json::array();
  for (const auto& row : table.rows) {
    json obj = json::object();
    for (std::size_t c = 0; c < row.size(); ++c) {
      obj[table.columns[c]] = row[c];
    }
    rows.push_back(std::move(obj));
  }
  return rows.dump(2) + "\n";
}

std::string render(const Table& table, Format format) {
  return format == Format::Csv ? to_csv(table) : to_json(table);
}

// ---------------------------------------------------------------------------
// sweeps
// ---------------------------------------------------------------------------

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Quantity {
  QuantityInfo info;
  double (*eval)(double axis_value, double beta_hot);
};

const std::vector<Quantity>& full_catalog() {
  static const std::vector<Quantity> catalog = {
      {{"emof_ad_highT", "eta_c", 0.0, 1.0},
       [](double ec, double) { return engine::eta_at_max_omega_high(ec); }},
      {{"emof_ad_lowT", "eta_c", 0.0, 1.0},
       [](double ec, double) { return engine::eta_at_max_omega_low(ec); }},
      {{"emof_ss", "eta_c", 0.0, 1.0},
       [](double ec, double) { return engine::eta_at_max_omega_ss(ec); }},
      {{"emw_highT", "eta_c", 0.0, 1.0},
       [](double ec, double) { return engine::reference_efficiencies(ec).eta_ca; }},
      {{"emw_lowT", "eta_c", 0.0, 1.0},
       [](double ec, double) { return engine::eta_at_max_work_low(ec); }},
      {{"emw_ss", "eta_c", 0.0, 1.0},
       [](double ec, double) { return engine::reference_efficiencies(ec).eta_w_ss; }},
      {{"delta", "eta_c", 0.0, 1.0},
       [](double ec, double) {
         return engine::eta_at_max_omega_ss(ec) -
                engine::reference_efficiencies(ec).eta_w_ss;
       }},
      {{"eta_max_ss", "eta_c", 0.0, 1.0},
       [](double ec, double) { return engine::eta_max_ss(ec); }},
      {{"cop_mof_highT", "zeta_c", 0.0, kInf},
       [](double zc, double) { return fridge::cop_at_max_omega_high(zc); }},
      {{"cop_mof_lowT", "zeta_c", 0.0, kInf},
       [](double zc, double) { return fridge::cop_at_max_omega_low(zc); }},
      {{"cop_mof_ss", "zeta_c", 1.0, kInf},
       [](double zc, double) { return fridge::cop_at_max_omega_ss(zc); }},
      {{"cop_chi_highT", "zeta_c", 0.0, kInf},
       [](double zc, double) { return fridge::cop_chi_high(zc); }},
      {{"cop_max_ss", "zeta_c", 0.0, kInf},
       [](double zc, double) { return fridge::cop_max_ss(zc); }},
      {{"cp_ad_highT", "tau", 0.0, 1.0},
       [](double tau, double b2) {
         return fridge::cooling_power_at_mof(fridge::CpRegime::AdiabaticHigh,
                                             tau, b2);
       }},
      {{"cp_ad_lowT", "tau", 0.0, 1.0},
       [](double tau, double b2) {
         return fridge::cooling_power_at_mof(fridge::CpRegime::AdiabaticLow,
                                             tau, b2);
       }},
      {{"cp_ss", "tau", 0.5, 1.0},
       [](double tau, double b2) {
         return fridge::cooling_power_at_mof(fridge::CpRegime::SuddenSwitch,
                                             tau, b2);
       }},
  };
  return catalog;
}

std::string valid_pairs_message() {
  std::string msg = "valid quantity/axis pairs:";
  for (const auto& q : full_catalog()) {
    msg += ' ' + q.info.name + '(' + q.info.axis + ')';
  }
  return msg;
}

const Quantity& find_quantity(const std::string& name) {
  for (const auto& q : full_catalog()) {
    if (q.info.name == name) return q;
  }
  throw std::invalid_argument("unknown quantity '" + name + "'; " +
                              valid_pairs_message());
}

}  // namespace

const std::vector<QuantityInfo>& quantity_catalog() {
  static const std::vector<QuantityInfo> infos = [] {
    std::vector<QuantityInfo> out;
    for (const auto& q : full_catalog()) out.push_back(q.info);
    return out;
  }();
  return infos;
}

Table sweep(const SweepSpec& spec) {
  if (spec.quantities.empty()) {
    throw std::invalid_argument("sweep needs at least one quantity");
  }
  if (spec.count < 2) throw std::invalid_argument("sweep count must be >= 2");
  if (!(spec.start < spec.stop)) {
    throw std::invalid_argument("sweep range must satisfy start < stop");
  }
  if (!(spec.beta_hot > 0.0)) {
    throw std::invalid_argument("beta_hot must be positive");
  }

  std::vector<const Quantity*> picked;
  for (const auto& name : spec.quantities) {
    const Quantity& q = find_quantity(name);
    if (q.info.axis != spec.axis) {
      throw std::invalid_argument("quantity '" + name + "' sweeps over " +
                                  q.info.axis + ", not " + spec.axis + "; " +
                                  valid_pairs_message());
    }
    if (!(spec.start > q.info.domain_lo && spec.stop < q.info.domain_hi)) {
      throw std::domain_error(
          "sweep range leaves the domain of '" + name + "' (" +
          format_value(q.info.domain_lo) + ", " +
          format_value(q.info.domain_hi) + ")");
    }
    picked.push_back(&q);
  }

  Table table;
  table.columns.push_back(spec.axis);
  for (const auto* q : picked) table.columns.push_back(q->info.name);
  table.rows.reserve(static_cast<std::size_t>(spec.count));
  for (int i = 0; i < spec.count; ++i) {
    const double x = spec.start + (spec.stop - spec.start) *
                                      static_cast<double>(i) /
                                      (spec.count - 1);
    std::vector<double> row;
    row.reserve(picked.size() + 1);
    row.push_back(x);
    for (const auto* q : picked) {
      const double value = q->eval(x, spec.beta_hot);
      check_finite_cell(value, q->info.name, x);
      row.push_back(value);
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

SweepSpec figure_preset(const std::string& name) {
  SweepSpec spec;
  if (name == "fig2") {
    spec.quantities = {"emof_ad_highT", "emof_ad_lowT", "emof_ss", "emw_ss",
                       "delta"};
    spec.axis = "eta_c";
    spec.start = 0.01;
    spec.stop = 0.99;
  } else if (name == "fig4") {
    spec.quantities = {"cop_mof_highT", "cop_mof_lowT", "cop_mof_ss",
                       "cop_chi_highT"};
    spec.axis = "zeta_c";
    spec.start = 1.05;
    spec.stop = 20.0;
  } else if (name == "fig6") {
    spec.quantities = {"cp_ad_highT", "cp_ad_lowT", "cp_ss"};
    spec.axis = "tau";
    spec.start = 0.51;
    spec.stop = 0.99;
  } else {
    throw std::invalid_argument("unknown figure preset '" + name +
                                "' (try fig2, fig4 or fig6)");
  }
  return spec;
}

Table loop_table(double tau, double beta_hot, int n_points) {
  const engine::LoopCurve curve = engine::loop_curve(tau, beta_hot, n_points);
  Table table;
  table.columns = {"z", "eta", "work", "flag"};
  table.rows.reserve(curve.samples.size() + 2);
  for (const auto& p : curve.samples) {
    table.rows.push_back({p.z, p.eta, p.work, 0.0});
  }
  table.rows.push_back(
      {curve.max_work.z, curve.max_work.eta, curve.max_work.work, 1.0});
  table.rows.push_back(
      {curve.max_eta.z, curve.max_eta.eta, curve.max_eta.work, 2.0});
  return table;
}

// ---------------------------------------------------------------------------
// verification suites
// ---------------------------------------------------------------------------

namespace {

constexpr int kGridPoints = 50;

// Near-zero escape hatch: two orders below the relative tolerance, which
// puts the default pair at (1e-8 relative, 1e-10 absolute).
double abs_tol_for(double tol_rel) { return tol_rel * 1e-2; }

VerificationRecord make_record(std::string case_id, double analytic,
                               double numeric, double tol_abs,
                               double tol_rel) {
  VerificationRecord r;
  r.case_id = std::move(case_id);
  r.analytic = analytic;
  r.numeric = numeric;
  r.abs_err = std::abs(analytic - numeric);
  const double scale = std::max(std::abs(analytic), std::abs(numeric));
  r.rel_err = scale > 0.0 ? r.abs_err / scale : 0.0;
  r.tol_abs = tol_abs;
  r.tol_rel = tol_rel;
  r.pass = r.abs_err <= tol_abs || r.rel_err <= tol_rel;
  return r;
}

std::string grid_label(const char* axis, double value) {
  char buffer[48];
  std::snprintf(buffer, sizeof(buffer), "%s=%.4f", axis, value);
  return buffer;
}

// Emits merit/objective/control records for one analytic-vs-numeric pair.
void add_pair(std::vector<VerificationRecord>& out, const std::string& prefix,
              const OptResult& analytic, const OptResult& numeric,
              double tol_rel, bool compare_controls = true) {
  const double tol_abs = abs_tol_for(tol_rel);
  out.push_back(make_record(prefix + "/merit", analytic.merit, numeric.merit,
                            tol_abs, tol_rel));
  out.push_back(make_record(prefix + "/objective", analytic.objective,
                            numeric.objective, tol_abs, tol_rel));
  if (compare_controls) {
    for (std::size_t i = 0; i < analytic.controls.size(); ++i) {
      out.push_back(make_record(prefix + "/control" + std::to_string(i + 1),
                                analytic.controls[i], numeric.controls[i],
                                tol_abs, tol_rel));
    }
  }
}

std::vector<VerificationRecord> engine_suite(double tol_rel) {
  std::vector<VerificationRecord> out;
  for (int i = 0; i < kGridPoints; ++i) {
    const double eta_c = 0.02 + 0.96 * static_cast<double>(i) /
                                    (kGridPoints - 1);
    const BathPair baths = BathPair::from_eta_carnot(eta_c);
    const std::string tag = grid_label("eta_c", eta_c);
    add_pair(out, "engine/omega_high/" + tag, engine::max_omega_high(baths),
             engine::max_omega_high_numeric(baths), tol_rel);
    add_pair(out, "engine/work_high/" + tag, engine::max_work_high(baths),
             engine::max_work_high_numeric(baths), tol_rel);
    add_pair(out, "engine/omega_low/" + tag, engine::max_omega_low(baths),
             engine::max_omega_low_numeric(baths), tol_rel);
    add_pair(out, "engine/work_low/" + tag, engine::max_work_low(baths),
             engine::max_work_low_numeric(baths), tol_rel);
    add_pair(out, "engine/work_ss/" + tag, engine::max_work_ss(baths),
             engine::max_work_ss_numeric(baths), tol_rel);
    // No closed-form z* exists for the quench trade-off, so only the merit
    // closed form is independent of the numeric route.
    const OptResult ss = engine::max_omega_ss(baths);
    const OptResult ss_numeric = engine::max_omega_ss_numeric(baths);
    out.push_back(make_record("engine/omega_ss/" + tag + "/merit", ss.merit,
                              ss_numeric.merit, abs_tol_for(tol_rel),
                              tol_rel));
  }
  return out;
}

std::vector<VerificationRecord> fridge_suite(double tol_rel) {
  std::vector<VerificationRecord> out;
  for (int i = 0; i < kGridPoints; ++i) {
    const double tau = 0.02 + 0.96 * static_cast<double>(i) / (kGridPoints - 1);
    const BathPair baths = BathPair::from_tau(tau);
    const std::string tag = grid_label("zeta_c", baths.zeta_carnot());
    add_pair(out, "fridge/omega_high/" + tag, fridge::max_omega_high(baths),
             fridge::max_omega_high_numeric(baths), tol_rel);
    add_pair(out, "fridge/omega_low/" + tag, fridge::max_omega_low(baths),
             fridge::max_omega_low_numeric(baths), tol_rel);
  }
  for (int i = 0; i < kGridPoints; ++i) {
    const double tau = 0.52 + 0.46 * static_cast<double>(i) / (kGridPoints - 1);
    const BathPair baths = BathPair::from_tau(tau);
    const std::string tag = grid_label("zeta_c", baths.zeta_carnot());
    add_pair(out, "fridge/omega_ss/" + tag, fridge::max_omega_ss(baths),
             fridge::max_omega_ss_numeric(baths), tol_rel);
  }
  return out;
}

void add_series_records(std::vector<VerificationRecord>& out,
                        const std::string& family,
                        const std::function<double(double)>& f,
                        const std::vector<double>& targets) {
  const opt::SeriesFit fit = opt::fit_series(f, 4, 0.05, 0.0);
  for (std::size_t k = 0; k < targets.size(); ++k) {
    out.push_back(make_record(
        "taylor/" + family + "/c" + std::to_string(k + 1), targets[k],
        fit.coefficients[k + 1], 1e-3, 0.0));
  }
}

std::vector<VerificationRecord> taylor_suite() {
  std::vector<VerificationRecord> out;
  const auto emw_high = [](double ec) { return 1.0 - std::sqrt(1.0 - ec); };
  const auto emw_low = [](double ec) {
    return engine::eta_at_max_work_low(ec);
  };
  const auto emof_high = [](double ec) {
    return engine::eta_at_max_omega_high(ec);
  };
  const auto emof_low = [](double ec) {
    return engine::eta_at_max_omega_low(ec);
  };
  add_series_records(out, "emw_high", emw_high, {0.5, 0.125, 6.0 / 96.0});
  add_series_records(out, "emw_low", emw_low, {0.5, 0.125, 7.0 / 96.0});
  add_series_records(out, "emof_high", emof_high,
                     {0.75, 1.0 / 32.0, 18.0 / 768.0});
  add_series_records(out, "emof_low", emof_low,
                     {0.75, 1.0 / 32.0, 19.0 / 768.0});

  // Model-dependent third coefficients keep their ordering.
  const auto fitted_c3 = [](const std::function<double(double)>& f) {
    return opt::fit_series(f, 4, 0.05, 0.0).coefficients[3];
  };
  out.push_back(make_record("taylor/order3_gap/emw",
                            fitted_c3(emw_low) - fitted_c3(emw_high),
                            1.0 / 96.0, 5e-4, 0.0));
  out.push_back(make_record("taylor/order3_gap/emof",
                            fitted_c3(emof_low) - fitted_c3(emof_high),
                            1.0 / 768.0, 5e-4, 0.0));

  // Large-COP behaviour of both adiabatic refrigerator families.
  const auto fridge_high = [](double zc) {
    return fridge::cop_at_max_omega_high(zc);
  };
  const auto fridge_low = [](double zc) {
    return fridge::cop_at_max_omega_low(zc);
  };
  for (const auto& [family, f] :
       {std::pair<const char*, std::function<double(double)>>{"fridge_high",
                                                              fridge_high},
        {"fridge_low", fridge_low}}) {
    const opt::AsymptoteFit fit = opt::fit_asymptote(f, 0.01);
    out.push_back(make_record(std::string("taylor/") + family + "/slope",
                              2.0 / 3.0, fit.slope, 1e-3, 0.0));
    out.push_back(make_record(std::string("taylor/") + family + "/intercept",
                              1.0 / 18.0, fit.intercept, 1e-3, 0.0));
  }
  const double inv_high = opt::fit_asymptote(fridge_high, 0.01).inv_coeff;
  const double inv_low = opt::fit_asymptote(fridge_low, 0.01).inv_coeff;
  out.push_back(make_record("taylor/fridge_high/inv_coeff", -17.0 / 216.0,
                            inv_high, 2e-3, 0.0));
  out.push_back(make_record("taylor/fridge_low/inv_coeff", -16.0 / 216.0,
                            inv_low, 2e-3, 0.0));
  out.push_back(make_record("taylor/inv_coeff_gap/fridge", inv_low - inv_high,
                            1.0 / 216.0, 2e-3, 0.0));
  return out;
}

}  // namespace

std::vector<VerificationRecord> run_suite(Suite suite, double tol_rel) {
  std::vector<VerificationRecord> out;
  if (suite == Suite::Engine || suite == Suite::All) {
    auto records = engine_suite(tol_rel);
    out.insert(out.end(), records.begin(), records.end());
  }
  if (suite == Suite::Fridge || suite == Suite::All) {
    auto records = fridge_suite(tol_rel);
    out.insert(out.end(), records.begin(), records.end());
  }
  if (suite == Suite::Taylor || suite == Suite::All) {
    auto records = taylor_suite();
    out.insert(out.end(), records.begin(), records.end());
  }
  return out;
}

std::string to_json(const std::vector<VerificationRecord>& records) {
  json arr = json::array();
  for (const auto& r : records) {
    arr.push_back(json{{"case_id", r.case_id},
                       {"analytic_value", r.analytic},
                       {"numeric_value", r.numeric},
                       {"abs_err", r.abs_err},
                       {"rel_err", r.rel_err},
                       {"tol_abs", r.tol_abs},
                       {"tol_rel", r.tol_rel},
                       {"pass", r.pass}});
  }
  return arr.dump(2) + "\n";
}

std::string to_text(const std::vector<VerificationRecord>& records) {
  std::string out;
  for (const auto& r : records) {
    out += r.pass ? "[PASS] " : "[FAIL] ";
    out += r.case_id;
    out += " analytic=" + format_value(r.analytic);
    out += " numeric=" + format_value(r.numeric);
    out += " rel_err=" + format_value(r.rel_err);
    out += '\n';
  }
  return out;
}

std::string to_json(const CycleReport& report) {
  json obj{{"q_hot", report.q_hot},
           {"q_cold", report.q_cold},
           {"work_out", report.work_out},
           {"work_in", report.work_in},
           {"engine_mode", report.engine_mode},
           {"fridge_mode", report.fridge_mode}};
  obj["efficiency"] =
      report.efficiency ? json(*report.efficiency) : json(nullptr);
  obj["cop"] = report.cop ? json(*report.cop) : json(nullptr);
  return obj.dump(2) + "\n";
}

std::string to_json(const OptResult& result) {
  json obj{{"controls", result.controls},
           {"objective_value", result.objective},
           {"figure_of_merit", result.merit},
           {"method", result.method == Method::Analytic ? "analytic"
                                                        : "numeric"}};
  if (result.convergence) {
    obj["convergence"] = json{{"iterations", result.convergence->iterations},
                              {"tolerance", result.convergence->tolerance}};
  } else {
    obj["convergence"] = nullptr;
  }
  return obj.dump(2) + "\n";
}

}  // namespace otto::reports
