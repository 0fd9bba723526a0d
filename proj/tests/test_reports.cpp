#include <cmath>
#include <string>

#include <doctest.h>
#include <json.hpp>

#include "otto/reports.hpp"

using namespace otto;
using namespace otto::reports;

TEST_CASE("csv round-trips bit-identically") {
  Table table;
  table.columns = {"a", "b", "c"};
  table.rows = {
      {0.1, 1.0 / 3.0, 3.141592653589793},
      {-1e-300, 1e300, 5e-324},
      {0.0, -0.0, 123456789.12345679},
  };
  const std::string csv = to_csv(table);
  const Table parsed = parse_csv(csv);
  REQUIRE(parsed.columns == table.columns);
  REQUIRE(parsed.rows.size() == table.rows.size());
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      // Bit-identical, not merely close.
      CHECK(std::signbit(parsed.rows[r][c]) ==
            std::signbit(table.rows[r][c]));
      CHECK(parsed.rows[r][c] == table.rows[r][c]);
    }
  }
  // LF line endings, no CR anywhere.
  CHECK(csv.find('\r') == std::string::npos);
  CHECK(csv.back() == '\n');

  CHECK_THROWS_AS(parse_csv(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_csv("a,b\n1.0\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_csv("a\nnot_a_number\n"), std::invalid_argument);
}

TEST_CASE("sweep: shape, determinism and error paths") {
  SweepSpec spec;
  spec.quantities = {"emof_ad_highT", "emw_highT"};
  spec.axis = "eta_c";
  spec.start = 0.01;
  spec.stop = 0.99;
  spec.count = 37;
  const Table table = sweep(spec);
  REQUIRE(table.columns.size() == 3);
  CHECK(table.columns[0] == "eta_c");
  CHECK(table.rows.size() == 37);
  CHECK(table.rows.front()[0] == 0.01);
  CHECK(table.rows.back()[0] == 0.99);
  for (const auto& row : table.rows) {
    CHECK(row[1] > row[2]);  // trade-off beats plain work pointwise
  }

  CHECK(to_csv(sweep(spec)) == to_csv(table));

  SweepSpec bad_axis = spec;
  bad_axis.axis = "tau";
  CHECK_THROWS_AS(sweep(bad_axis), std::invalid_argument);
  CHECK_THROWS_WITH_AS(sweep(bad_axis),
                       doctest::Contains("valid quantity/axis pairs"),
                       std::invalid_argument);

  SweepSpec unknown = spec;
  unknown.quantities = {"emof_ad_highT", "no_such_thing"};
  CHECK_THROWS_AS(sweep(unknown), std::invalid_argument);

  SweepSpec out_of_domain;
  out_of_domain.quantities = {"cop_mof_ss"};
  out_of_domain.axis = "zeta_c";
  out_of_domain.start = 0.8;
  out_of_domain.stop = 2.0;
  CHECK_THROWS_AS(sweep(out_of_domain), std::domain_error);

  SweepSpec tiny = spec;
  tiny.count = 1;
  CHECK_THROWS_AS(sweep(tiny), std::invalid_argument);
}

TEST_CASE("figure presets") {
  const SweepSpec fig2 = figure_preset("fig2");
  CHECK(fig2.axis == "eta_c");
  CHECK(fig2.quantities.size() == 5);
  const SweepSpec fig4 = figure_preset("fig4");
  CHECK(fig4.axis == "zeta_c");
  const SweepSpec fig6 = figure_preset("fig6");
  CHECK(fig6.axis == "tau");
  CHECK_THROWS_AS(figure_preset("fig9"), std::invalid_argument);

  for (const char* name : {"fig2", "fig4", "fig6"}) {
    SweepSpec spec = figure_preset(name);
    spec.count = 9;  // keep the unit test quick
    const Table table = sweep(spec);
    CHECK(table.rows.size() == 9);
    for (const auto& row : table.rows) {
      for (const double v : row) CHECK(std::isfinite(v));
    }
  }

  // The delta column is the gap between the quench trade-off and work
  // efficiencies, positive throughout.
  SweepSpec fig2_small = figure_preset("fig2");
  fig2_small.count = 11;
  const Table t2 = sweep(fig2_small);
  const std::size_t delta_col = 5;
  REQUIRE(t2.columns[delta_col] == "delta");
  for (const auto& row : t2.rows) CHECK(row[delta_col] > 0.0);
}

TEST_CASE("loop table carries flagged extremum rows") {
  const Table table = loop_table(0.5, 1.0, 101);
  REQUIRE(table.columns ==
          std::vector<std::string>{"z", "eta", "work", "flag"});
  REQUIRE(table.rows.size() == 103);
  CHECK(table.rows[0][3] == 0.0);
  const auto& max_work_row = table.rows[101];
  const auto& max_eta_row = table.rows[102];
  CHECK(max_work_row[3] == 1.0);
  CHECK(max_eta_row[3] == 2.0);
  // The two flagged rows sit close in efficiency, work apart in z.
  CHECK(std::abs(max_work_row[1] - max_eta_row[1]) < 0.005);
  CHECK(max_work_row[0] > max_eta_row[0]);
}

TEST_CASE("taylor verification suite passes and carries the right targets") {
  const auto records = run_suite(Suite::Taylor);
  CHECK(records.size() >= 16);
  int failures = 0;
  bool saw_half = false;
  bool saw_eighth = false;
  bool saw_three_quarters = false;
  bool saw_slope = false;
  for (const auto& r : records) {
    if (!r.pass) ++failures;
    if (r.case_id.find("/c1") != std::string::npos && r.analytic == 0.5) {
      saw_half = true;
    }
    if (r.case_id.find("/c2") != std::string::npos && r.analytic == 0.125) {
      saw_eighth = true;
    }
    if (r.analytic == 0.75) saw_three_quarters = true;
    if (r.case_id.find("slope") != std::string::npos) saw_slope = true;
  }
  CHECK(failures == 0);
  CHECK(saw_half);
  CHECK(saw_eighth);
  CHECK(saw_three_quarters);
  CHECK(saw_slope);
}

TEST_CASE("verification records serialize to json") {
  const auto records = run_suite(Suite::Taylor);
  const auto parsed = nlohmann::json::parse(to_json(records));
  REQUIRE(parsed.is_array());
  REQUIRE(parsed.size() == records.size());
  const auto& first = parsed.at(0);
  for (const char* key : {"case_id", "analytic_value", "numeric_value",
                          "abs_err", "rel_err", "pass"}) {
    CHECK(first.contains(key));
  }
  const std::string text = to_text(records);
  CHECK(text.find("[PASS]") != std::string::npos);
}

TEST_CASE("cycle report json schema") {
  const CycleReport engine = cycle_report(
      BathPair(4.0, 1.0), FrequencyPair(1.0, 2.0), Protocol::Adiabatic);
  const auto parsed = nlohmann::json::parse(to_json(engine));
  CHECK(parsed.at("engine_mode").get<bool>());
  CHECK(!parsed.at("fridge_mode").get<bool>());
  CHECK(parsed.at("efficiency").get<double>() ==
        doctest::Approx(0.5).epsilon(1e-14));
  CHECK(parsed.at("cop").is_null());
  CHECK(parsed.at("work_out").get<double>() ==
        doctest::Approx(0.1378602823858916).epsilon(1e-15));

  OptResult result;
  result.controls = {0.5};
  result.objective = 1.0;
  result.merit = 0.25;
  const auto opt_parsed = nlohmann::json::parse(to_json(result));
  CHECK(opt_parsed.at("method") == "analytic");
  CHECK(opt_parsed.at("convergence").is_null());
  CHECK(opt_parsed.at("figure_of_merit").get<double>() == 0.25);
}
