// Command-line front end: cycle energetics, trade-off optimization, figure
// sweeps, loop curves, cooling-power peaks and the analytic-vs-numeric
// verification suite. Exit codes: 0 success, 1 invalid input, 2 verification
// failure, 3 internal numeric failure.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <unistd.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "otto/cycle.hpp"
#include "otto/engine.hpp"
#include "otto/fridge.hpp"
#include "otto/optimize.hpp"
#include "otto/reports.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInvalidInput = 1;
constexpr int kExitVerifyFailure = 2;
constexpr int kExitNumericFailure = 3;

void print_error(const std::string& message) {
  const bool color = std::getenv("NO_COLOR") == nullptr && isatty(2);
  if (color) {
    std::cerr << "\033[31merror:\033[0m " << message << '\n';
  } else {
    std::cerr << "error: " << message << '\n';
  }
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) throw std::invalid_argument("cannot open '" + out_path + "'");
  file << text;
}

// Accepts a flat JSON object of flag values, with nested objects selecting
// subcommands ({"optimize": {"eta-c": 0.5}}); flags given on the command
// line override the file.
class JsonConfig : public CLI::Config {
 public:
  std::string to_config(const CLI::App*, bool, bool,
                        std::string) const override {
    return "{}\n";
  }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    json j;
    input >> j;
    if (!j.is_object()) {
      throw CLI::FileError("config root must be a JSON object");
    }
    std::vector<CLI::ConfigItem> items;
    walk(j, {}, items);
    return items;
  }

 private:
  static void walk(const json& node, const std::vector<std::string>& parents,
                   std::vector<CLI::ConfigItem>& items) {
    for (auto it = node.begin(); it != node.end(); ++it) {
      if (it->is_object()) {
        auto path = parents;
        path.push_back(it.key());
        walk(*it, path, items);
        continue;
      }
      CLI::ConfigItem item;
      item.parents = parents;
      item.name = it.key();
      if (it->is_string()) {
        item.inputs = {it->get<std::string>()};
      } else if (it->is_boolean()) {
        item.inputs = {it->get<bool>() ? "true" : "false"};
      } else {
        item.inputs = {otto::reports::format_value(it->get<double>())};
      }
      items.push_back(std::move(item));
    }
  }
};

otto::Protocol parse_protocol(const std::string& name) {
  return name == "ss" ? otto::Protocol::SuddenSwitch
                      : otto::Protocol::Adiabatic;
}

otto::Regime parse_regime(const std::string& name) {
  if (name == "high") return otto::Regime::HighT;
  if (name == "low") return otto::Regime::LowT;
  return otto::Regime::Exact;
}

json opt_result_json(const otto::OptResult& result) {
  return json::parse(otto::reports::to_json(result));
}

// ---------------------------------------------------------------------------
// optimize dispatch
// ---------------------------------------------------------------------------

struct OptimizeRequest {
  std::string device;     // engine | fridge
  std::string protocol;   // adiabatic | ss
  std::string regime;     // high | low
  std::string objective;  // omega | work
  otto::BathPair baths{2.0, 1.0};
};

otto::OptResult solve(const OptimizeRequest& req, bool numeric) {
  using namespace otto;
  const bool ss = req.protocol == "ss";
  const bool low = req.regime == "low";
  if (req.device == "engine") {
    if (ss && low) {
      throw std::invalid_argument(
          "no low-temperature optimum exists for the sudden switch; "
          "use regime 'high'");
    }
    if (req.objective == "work") {
      if (ss) {
        return numeric ? engine::max_work_ss_numeric(req.baths)
                       : engine::max_work_ss(req.baths);
      }
      if (low) {
        return numeric ? engine::max_work_low_numeric(req.baths)
                       : engine::max_work_low(req.baths);
      }
      return numeric ? engine::max_work_high_numeric(req.baths)
                     : engine::max_work_high(req.baths);
    }
    if (ss) {
      return numeric ? engine::max_omega_ss_numeric(req.baths)
                     : engine::max_omega_ss(req.baths);
    }
    if (low) {
      return numeric ? engine::max_omega_low_numeric(req.baths)
                     : engine::max_omega_low(req.baths);
    }
    return numeric ? engine::max_omega_high_numeric(req.baths)
                   : engine::max_omega_high(req.baths);
  }
  // refrigerator
  if (req.objective == "work") {
    throw std::invalid_argument(
        "cooling power alone has no interior optimum; the refrigerator "
        "supports the 'omega' objective only");
  }
  if (ss) {
    if (low) {
      throw std::invalid_argument(
          "no low-temperature optimum exists for the sudden switch; "
          "use regime 'high'");
    }
    return numeric ? fridge::max_omega_ss_numeric(req.baths)
                   : fridge::max_omega_ss(req.baths);
  }
  if (low) {
    return numeric ? fridge::max_omega_low_numeric(req.baths)
                   : fridge::max_omega_low(req.baths);
  }
  return numeric ? fridge::max_omega_high_numeric(req.baths)
                 : fridge::max_omega_high(req.baths);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum harmonic Otto cycle trade-off toolkit"};
  app.require_subcommand(1);
  app.config_formatter(std::make_shared<JsonConfig>());
  app.set_config("--config", "",
                 "JSON file mirroring the flags; flags override the file");

  int exit_code = kExitOk;

  // --- cycle ---------------------------------------------------------------
  auto* cycle_cmd =
      app.add_subcommand("cycle", "energetics of one cycle configuration");
  struct {
    double beta1 = 0.0;
    double beta2 = 1.0;
    double omega1 = 0.0;
    double omega2 = 0.0;
    std::string protocol = "adiabatic";
    std::string regime = "exact";
    std::string out;
  } cycle_args;
  cycle_cmd->add_option("--beta1", cycle_args.beta1,
                        "cold-bath inverse temperature")->required();
  cycle_cmd->add_option("--beta2", cycle_args.beta2,
                        "hot-bath inverse temperature");
  cycle_cmd->add_option("--omega1", cycle_args.omega1,
                        "frequency before compression")->required();
  cycle_cmd->add_option("--omega2", cycle_args.omega2,
                        "frequency after compression")->required();
  cycle_cmd->add_option("--protocol", cycle_args.protocol, "drive protocol")
      ->check(CLI::IsMember({"adiabatic", "ss"}));
  cycle_cmd->add_option("--regime", cycle_args.regime, "evaluation regime")
      ->check(CLI::IsMember({"exact", "high", "low"}));
  cycle_cmd->add_option("--out", cycle_args.out, "write to file");
  cycle_cmd->callback([&] {
    const otto::BathPair baths(cycle_args.beta1, cycle_args.beta2);
    const otto::FrequencyPair freqs(cycle_args.omega1, cycle_args.omega2);
    const otto::CycleReport report =
        otto::cycle_report(baths, freqs, parse_protocol(cycle_args.protocol),
                           parse_regime(cycle_args.regime));
    emit(otto::reports::to_json(report), cycle_args.out);
  });

  // --- optimize --------------------------------------------------------------
  auto* opt_cmd = app.add_subcommand(
      "optimize", "closed-form and numeric trade-off optima");
  struct {
    std::string device;
    std::string protocol;
    std::string regime = "high";
    std::string objective = "omega";
    std::string method = "both";
    double eta_c = 0.0;
    double zeta_c = 0.0;
    double tau = 0.0;
    double beta2 = 1.0;
    double tol = 1e-8;
    std::string out;
  } opt_args;
  opt_cmd->add_option("device", opt_args.device, "engine or fridge")
      ->required()
      ->check(CLI::IsMember({"engine", "fridge"}));
  opt_cmd->add_option("protocol", opt_args.protocol, "adiabatic or ss")
      ->required()
      ->check(CLI::IsMember({"adiabatic", "ss"}));
  opt_cmd->add_option("regime", opt_args.regime, "high or low")
      ->check(CLI::IsMember({"high", "low"}));
  opt_cmd->add_option("--objective", opt_args.objective, "omega or work")
      ->check(CLI::IsMember({"omega", "work"}));
  opt_cmd->add_option("--method", opt_args.method, "analytic, numeric or both")
      ->check(CLI::IsMember({"analytic", "numeric", "both"}));
  auto* eta_opt = opt_cmd->add_option("--eta-c", opt_args.eta_c,
                                      "Carnot efficiency of the bath pair");
  auto* zeta_opt = opt_cmd->add_option("--zeta-c", opt_args.zeta_c,
                                       "Carnot COP of the bath pair");
  auto* tau_opt = opt_cmd->add_option("--tau", opt_args.tau,
                                      "temperature ratio T_cold/T_hot");
  opt_cmd->add_option("--beta2", opt_args.beta2,
                      "hot-bath inverse temperature");
  opt_cmd->add_option("--tol", opt_args.tol,
                      "relative discrepancy tolerance for --method both");
  opt_cmd->add_option("--out", opt_args.out, "write to file");
  opt_cmd->callback([&] {
    const int given = static_cast<int>(eta_opt->count() > 0) +
                      static_cast<int>(zeta_opt->count() > 0) +
                      static_cast<int>(tau_opt->count() > 0);
    if (given != 1) {
      throw std::invalid_argument(
          "give exactly one of --eta-c, --zeta-c or --tau");
    }
    OptimizeRequest req;
    req.device = opt_args.device;
    req.protocol = opt_args.protocol;
    req.regime = opt_args.regime;
    req.objective = opt_args.objective;
    if (eta_opt->count() > 0) {
      req.baths = otto::BathPair::from_eta_carnot(opt_args.eta_c,
                                                  opt_args.beta2);
    } else if (zeta_opt->count() > 0) {
      req.baths = otto::BathPair::from_zeta_carnot(opt_args.zeta_c,
                                                   opt_args.beta2);
    } else {
      req.baths = otto::BathPair::from_tau(opt_args.tau, opt_args.beta2);
    }

    json output;
    if (opt_args.method == "analytic") {
      output = opt_result_json(solve(req, false));
    } else if (opt_args.method == "numeric") {
      output = opt_result_json(solve(req, true));
    } else {
      const otto::OptResult analytic = solve(req, false);
      const otto::OptResult numeric = solve(req, true);
      const double abs_err = std::abs(analytic.merit - numeric.merit);
      const double scale =
          std::max(std::abs(analytic.merit), std::abs(numeric.merit));
      const double rel_err = scale > 0.0 ? abs_err / scale : 0.0;
      const bool ok = abs_err <= 1e-2 * opt_args.tol || rel_err <= opt_args.tol;
      output = json{{"analytic", opt_result_json(analytic)},
                    {"numeric", opt_result_json(numeric)},
                    {"merit_abs_err", abs_err},
                    {"merit_rel_err", rel_err},
                    {"within_tolerance", ok}};
      if (!ok) exit_code = kExitVerifyFailure;
    }
    emit(output.dump(2) + "\n", opt_args.out);
  });

  // --- sweep -----------------------------------------------------------------
  auto* sweep_cmd = app.add_subcommand(
      "sweep", "tabulate named quantities over a parameter grid");
  struct {
    std::vector<std::string> quantities;
    std::string axis;
    double start = 0.0;
    double stop = 0.0;
    int points = 200;
    double beta2 = 1.0;
    std::string out;
    std::string format = "csv";
  } sweep_args;
  sweep_cmd->add_option("--quantity", sweep_args.quantities,
                        "quantity names, or one of fig2/fig4/fig6")
      ->required();
  auto* axis_opt = sweep_cmd->add_option("--axis", sweep_args.axis,
                                         "eta_c, zeta_c or tau");
  auto* start_opt = sweep_cmd->add_option("--start", sweep_args.start);
  auto* stop_opt = sweep_cmd->add_option("--stop", sweep_args.stop);
  sweep_cmd->add_option("--points", sweep_args.points, "grid size");
  sweep_cmd->add_option("--beta2", sweep_args.beta2,
                        "hot-bath inverse temperature");
  sweep_cmd->add_option("--out", sweep_args.out, "write to file");
  sweep_cmd->add_option("--format", sweep_args.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  sweep_cmd->callback([&] {
    otto::reports::SweepSpec spec;
    if (sweep_args.quantities.size() == 1 &&
        (sweep_args.quantities[0] == "fig2" ||
         sweep_args.quantities[0] == "fig4" ||
         sweep_args.quantities[0] == "fig6")) {
      spec = otto::reports::figure_preset(sweep_args.quantities[0]);
    } else {
      spec.quantities = sweep_args.quantities;
      spec.axis = sweep_args.axis;
      if (spec.axis.empty()) {
        // default to the first quantity's natural axis
        for (const auto& info : otto::reports::quantity_catalog()) {
          if (info.name == spec.quantities.front()) {
            spec.axis = info.axis;
            break;
          }
        }
        if (spec.axis.empty()) spec.axis = "eta_c";
      }
      if (spec.axis == "zeta_c") {
        spec.start = 1.05;
        spec.stop = 20.0;
      } else if (spec.axis == "tau") {
        spec.start = 0.51;
        spec.stop = 0.99;
      } else {
        spec.start = 0.01;
        spec.stop = 0.99;
      }
    }
    if (axis_opt->count() > 0) spec.axis = sweep_args.axis;
    if (start_opt->count() > 0) spec.start = sweep_args.start;
    if (stop_opt->count() > 0) spec.stop = sweep_args.stop;
    spec.count = sweep_args.points;
    spec.beta_hot = sweep_args.beta2;
    const otto::reports::Table table = otto::reports::sweep(spec);
    const auto format = sweep_args.format == "csv"
                            ? otto::reports::Format::Csv
                            : otto::reports::Format::Json;
    emit(otto::reports::render(table, format), sweep_args.out);
  });

  // --- loop ------------------------------------------------------------------
  auto* loop_cmd = app.add_subcommand(
      "loop", "parametric efficiency/work loop for the sudden switch");
  struct {
    double tau = 0.5;
    double beta2 = 1.0;
    int points = 500;
    std::string out;
    std::string format = "csv";
  } loop_args;
  loop_cmd->add_option("--tau", loop_args.tau, "temperature ratio");
  loop_cmd->add_option("--beta2", loop_args.beta2,
                       "hot-bath inverse temperature");
  loop_cmd->add_option("--points", loop_args.points, "sample count");
  loop_cmd->add_option("--out", loop_args.out, "write to file");
  loop_cmd->add_option("--format", loop_args.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  loop_cmd->callback([&] {
    const otto::reports::Table table = otto::reports::loop_table(
        loop_args.tau, loop_args.beta2, loop_args.points);
    const auto format = loop_args.format == "csv"
                            ? otto::reports::Format::Csv
                            : otto::reports::Format::Json;
    emit(otto::reports::render(table, format), loop_args.out);
  });

  // --- cp-mof ----------------------------------------------------------------
  auto* cp_cmd = app.add_subcommand(
      "cp-mof", "cooling power at the trade-off optimum and its peak");
  struct {
    std::string regime = "all";
    double tau = -1.0;
    double beta2 = 1.0;
    std::string out;
  } cp_args;
  cp_cmd->add_option("--regime", cp_args.regime, "high, low, ss or all")
      ->check(CLI::IsMember({"high", "low", "ss", "all"}));
  auto* cp_tau_opt = cp_cmd->add_option(
      "--tau", cp_args.tau, "evaluate at this ratio instead of peak-finding");
  cp_cmd->add_option("--beta2", cp_args.beta2,
                     "hot-bath inverse temperature");
  cp_cmd->add_option("--out", cp_args.out, "write to file");
  cp_cmd->callback([&] {
    using otto::fridge::CpRegime;
    const std::vector<std::pair<std::string, CpRegime>> all = {
        {"ad_high", CpRegime::AdiabaticHigh},
        {"ad_low", CpRegime::AdiabaticLow},
        {"ss", CpRegime::SuddenSwitch}};
    json output = json::object();
    for (const auto& [name, regime] : all) {
      const bool selected = cp_args.regime == "all" ||
                            (cp_args.regime == "ss" && name == "ss") ||
                            (cp_args.regime == "high" && name == "ad_high") ||
                            (cp_args.regime == "low" && name == "ad_low");
      if (!selected) continue;
      if (cp_tau_opt->count() > 0) {
        const double value = otto::fridge::cooling_power_at_mof(
            regime, cp_args.tau, cp_args.beta2);
        const double composed = otto::fridge::cooling_power_at_mof_composed(
            regime, cp_args.tau, cp_args.beta2);
        output[name] = json{{"tau", cp_args.tau},
                            {"q_cold", value},
                            {"q_cold_composed", composed}};
      } else {
        const otto::fridge::CpPeak peak =
            otto::fridge::cp_mof_peak(regime, cp_args.beta2);
        output[name] =
            json{{"tau_star", peak.tau_star}, {"q_cold", peak.q_cold}};
      }
    }
    emit(output.dump(2) + "\n", cp_args.out);
  });

  // --- verify ----------------------------------------------------------------
  auto* verify_cmd = app.add_subcommand(
      "verify", "analytic-vs-numeric verification suite");
  struct {
    std::string suite = "all";
    double tol = 1e-8;
    std::string format = "text";
    std::string out;
  } verify_args;
  verify_cmd->add_option("suite", verify_args.suite,
                         "engine, fridge, taylor or all")
      ->check(CLI::IsMember({"engine", "fridge", "taylor", "all"}));
  verify_cmd->add_option("--tol", verify_args.tol, "relative tolerance");
  verify_cmd->add_option("--format", verify_args.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  verify_cmd->add_option("--out", verify_args.out, "write to file");
  verify_cmd->callback([&] {
    using otto::reports::Suite;
    Suite suite = Suite::All;
    if (verify_args.suite == "engine") suite = Suite::Engine;
    if (verify_args.suite == "fridge") suite = Suite::Fridge;
    if (verify_args.suite == "taylor") suite = Suite::Taylor;
    const auto records = otto::reports::run_suite(suite, verify_args.tol);
    int failures = 0;
    for (const auto& r : records) failures += r.pass ? 0 : 1;
    std::string text;
    if (verify_args.format == "json") {
      text = otto::reports::to_json(records);
    } else {
      text = otto::reports::to_text(records);
      text += std::to_string(records.size()) + " checks, " +
              std::to_string(failures) + " failures\n";
    }
    emit(text, verify_args.out);
    if (failures > 0) exit_code = kExitVerifyFailure;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalidInput;
  } catch (const otto::opt::NumericError& e) {
    print_error(e.what());
    return kExitNumericFailure;
  } catch (const std::logic_error& e) {
    // invalid_argument and domain_error: bad inputs or feasibility walls
    print_error(e.what());
    return kExitInvalidInput;
  } catch (const std::exception& e) {
    print_error(e.what());
    return kExitNumericFailure;
  }
  return exit_code;
}
