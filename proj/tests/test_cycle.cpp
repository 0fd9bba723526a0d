#include <cmath>
#include <random>

#include <doctest.h>

#include "otto/cycle.hpp"

using namespace otto;

namespace {

// Independent reference for coth(x/2): long-double hyperbolics, valid far
// away from the overflow range the production path has to dodge.
long double coth_half_reference(long double x) {
  return std::cosh(x / 2.0L) / std::sinh(x / 2.0L);
}

// coth(1) to 17 digits, frozen from a 50-digit evaluation.
constexpr double kCothOne = 1.3130352854993313;

}  // namespace

TEST_CASE("bath pair invariants and derived ratios") {
  const BathPair baths(2.0, 1.0);
  CHECK(baths.tau() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(baths.eta_carnot() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(baths.zeta_carnot() == doctest::Approx(1.0).epsilon(1e-15));

  CHECK_THROWS_AS(BathPair(1.0, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(BathPair(1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(BathPair(2.0, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(BathPair::from_tau(1.2), std::invalid_argument);
  CHECK_THROWS_AS(BathPair::from_eta_carnot(0.0), std::invalid_argument);

  const BathPair from_zeta = BathPair::from_zeta_carnot(2.0, 1.0);
  CHECK(from_zeta.tau() == doctest::Approx(2.0 / 3.0).epsilon(1e-15));

  CHECK_THROWS_AS(FrequencyPair(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(FrequencyPair(1.0, -2.0), std::invalid_argument);
}

TEST_CASE("adiabaticity parameter") {
  CHECK(adiabaticity(Protocol::Adiabatic, {1.0, 2.0}) == 1.0);
  CHECK(adiabaticity(Protocol::SuddenSwitch, {1.0, 1.0}) == 1.0);
  CHECK(adiabaticity(Protocol::SuddenSwitch, {1.0, 2.0}) == 1.25);

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> freq(0.05, 20.0);
  for (int i = 0; i < 200; ++i) {
    const FrequencyPair freqs{freq(rng), freq(rng)};
    CHECK(adiabaticity(Protocol::SuddenSwitch, freqs) >= 1.0);
  }
}

TEST_CASE("coth_half against the long-double reference") {
  for (const double x : {1e-6, 1e-5, 1e-4, 2e-4, 1e-3, 0.01, 0.1, 0.5, 1.0,
                         2.0, 5.0, 20.0, 100.0, 500.0}) {
    const double got = coth_half(x);
    const double want = static_cast<double>(coth_half_reference(x));
    CHECK(got == doctest::Approx(want).epsilon(1e-14));
  }
  CHECK(coth_half(2.0) == doctest::Approx(kCothOne).epsilon(1e-15));
  // No overflow where naive cosh/sinh blows up.
  CHECK(coth_half(2000.0) == 1.0);
  CHECK(coth_half(1e8) == 1.0);
  // Continuity across the series/expm1 switchover.
  const double below = coth_half(1e-4 * (1.0 - 1e-12));
  const double above = coth_half(1e-4 * (1.0 + 1e-12));
  CHECK(std::abs(below - above) / above < 1e-12);
}

TEST_CASE("thermal factors per regime") {
  // High-T factor against exact coth at a small argument.
  const double high = thermal_factor(Regime::HighT, 0.01, 1.0);
  CHECK(high == 200.0);
  CHECK(std::abs(high - coth_half(0.01)) / coth_half(0.01) < 1e-5);
  CHECK(std::abs(high - coth_half(0.01)) / coth_half(0.01) > 0.0);

  // Low-T factor vs exact at a large argument: indistinguishable in double.
  const double low = thermal_factor(Regime::LowT, 20.0, 1.0);
  CHECK(low == doctest::Approx(1.0 + 2.0 * std::exp(-20.0)).epsilon(1e-16));
  CHECK(std::abs(low - coth_half(20.0)) < 1e-16);
}

TEST_CASE("corner energies") {
  const BathPair baths(2.0, 1.0);
  const FrequencyPair freqs(1.0, 2.0);

  const CycleEnergies ad =
      corner_energies(baths, freqs, Protocol::Adiabatic);
  CHECK(ad.h_a == doctest::Approx(0.65651764274966565).epsilon(1e-15));

  const CycleEnergies ss =
      corner_energies(baths, freqs, Protocol::SuddenSwitch);
  CHECK(ss.h_b == doctest::Approx(1.6412941068741641).epsilon(1e-15));
  CHECK(ss.h_b ==
        doctest::Approx(1.25 * freqs.omega_2 * ad.h_a / freqs.omega_1)
            .epsilon(1e-15));

  // Zero-point saturation at large beta*omega.
  const BathPair frozen(5000.0, 2500.0);
  const CycleEnergies zp = corner_energies(frozen, freqs, Protocol::Adiabatic);
  CHECK(zp.h_a == doctest::Approx(freqs.omega_1 / 2.0).epsilon(1e-15));

  // coth >= 1 bounds at the corners.
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> pos(0.05, 10.0);
  for (int i = 0; i < 200; ++i) {
    const double b2 = pos(rng);
    const BathPair b(b2 * (1.0 + pos(rng)), b2);
    const FrequencyPair f(pos(rng), pos(rng));
    for (const auto protocol : {Protocol::Adiabatic, Protocol::SuddenSwitch}) {
      const double lambda = adiabaticity(protocol, f);
      const CycleEnergies e = corner_energies(b, f, protocol);
      CHECK(e.h_a > 0.0);
      CHECK(e.h_b >= lambda * f.omega_2 / 2.0);
      CHECK(e.h_c > 0.0);
      CHECK(e.h_d >= lambda * f.omega_1 / 2.0);
    }
  }
}

TEST_CASE("heats and their corner-difference identity") {
  // Equal Boltzmann arguments: no exchange at all.
  const Heats null_q =
      heats(BathPair(2.0, 1.0), FrequencyPair(1.0, 2.0), Protocol::Adiabatic);
  CHECK(null_q.q_hot == doctest::Approx(0.0).epsilon(0).scale(1));
  CHECK(std::abs(null_q.q_hot) < 1e-16);
  CHECK(std::abs(null_q.q_cold) < 1e-16);

  // Frozen oracle values for beta = (4, 1), omega = (1, 2), adiabatic.
  const Heats q =
      heats(BathPair(4.0, 1.0), FrequencyPair(1.0, 2.0), Protocol::Adiabatic);
  CHECK(q.q_hot == doctest::Approx(0.27572056477178321).epsilon(1e-15));
  CHECK(q.q_cold == doctest::Approx(-0.1378602823858916).epsilon(1e-15));

  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> pos(0.05, 10.0);
  for (int i = 0; i < 300; ++i) {
    const double b2 = pos(rng);
    const BathPair b(b2 * (1.0 + pos(rng)), b2);
    const FrequencyPair f(pos(rng), pos(rng));
    for (const auto protocol : {Protocol::Adiabatic, Protocol::SuddenSwitch}) {
      const Heats hq = heats(b, f, protocol);
      const CycleEnergies e = corner_energies(b, f, protocol);
      CHECK(hq.q_hot ==
            doctest::Approx(e.h_c - e.h_b).epsilon(1e-12).scale(1.0));
      CHECK(hq.q_cold ==
            doctest::Approx(e.h_a - e.h_d).epsilon(1e-12).scale(1.0));
    }
  }
}

TEST_CASE("lambda monotonicity: the quench always absorbs less") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> pos(0.05, 8.0);
  for (int i = 0; i < 300; ++i) {
    const double b2 = pos(rng);
    const BathPair b(b2 * (1.0 + pos(rng)), b2);
    double w1 = pos(rng);
    double w2 = pos(rng);
    if (w1 == w2) w2 += 0.1;
    const FrequencyPair f(w1, w2);
    const Heats ad = heats(b, f, Protocol::Adiabatic);
    const Heats ss = heats(b, f, Protocol::SuddenSwitch);
    CHECK(ss.q_hot < ad.q_hot);
    CHECK(ss.q_cold < ad.q_cold);
  }
}

TEST_CASE("cycle report modes") {
  // Engine point: z in (tau, 1).
  const CycleReport engine = cycle_report(
      BathPair(4.0, 1.0), FrequencyPair(1.0, 2.0), Protocol::Adiabatic);
  CHECK(engine.engine_mode);
  CHECK(!engine.fridge_mode);
  REQUIRE(engine.efficiency.has_value());
  CHECK(!engine.cop.has_value());
  CHECK(*engine.efficiency == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(engine.work_out ==
        doctest::Approx(0.1378602823858916).epsilon(1e-15));
  CHECK(engine.work_out == engine.q_hot + engine.q_cold);

  // Fridge point: beta1*omega1 < beta2*omega2 with z < tau.
  const CycleReport fridge = cycle_report(
      BathPair(2.0, 1.0), FrequencyPair(0.5, 2.0), Protocol::Adiabatic);
  CHECK(fridge.fridge_mode);
  CHECK(!fridge.engine_mode);
  REQUIRE(fridge.cop.has_value());
  CHECK(*fridge.cop == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(fridge.q_cold > 0.0);
  CHECK(fridge.q_hot < 0.0);
  CHECK(fridge.work_in > 0.0);

  // Degenerate cycle: no frequency span, no work, neither mode.
  const CycleReport null_cycle = cycle_report(
      BathPair(3.0, 1.0), FrequencyPair(1.0, 1.0), Protocol::Adiabatic);
  CHECK(!null_cycle.engine_mode);
  CHECK(!null_cycle.fridge_mode);
  CHECK(!null_cycle.efficiency.has_value());
  CHECK(!null_cycle.cop.has_value());

  // Boundary cycle (all heats ~ 0) classifies as neither mode.
  const CycleReport boundary = cycle_report(
      BathPair(2.0, 1.0), FrequencyPair(1.0, 2.0), Protocol::Adiabatic);
  CHECK(!boundary.engine_mode);
  CHECK(!boundary.fridge_mode);
}

TEST_CASE("scale covariance of dimensionless outputs") {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> pos(0.1, 5.0);
  for (int i = 0; i < 200; ++i) {
    const double b2 = pos(rng);
    const double b1 = b2 * (1.0 + pos(rng));
    const double w1 = pos(rng);
    const double w2 = pos(rng);
    const double s = pos(rng);
    for (const auto protocol : {Protocol::Adiabatic, Protocol::SuddenSwitch}) {
      const CycleReport base =
          cycle_report(BathPair(b1, b2), FrequencyPair(w1, w2), protocol);
      const CycleReport scaled = cycle_report(
          BathPair(s * b1, s * b2), FrequencyPair(w1 / s, w2 / s), protocol);
      CHECK(base.engine_mode == scaled.engine_mode);
      CHECK(base.fridge_mode == scaled.fridge_mode);
      if (base.efficiency && scaled.efficiency) {
        CHECK(*base.efficiency ==
              doctest::Approx(*scaled.efficiency).epsilon(1e-11));
      }
      if (base.cop && scaled.cop) {
        CHECK(*base.cop == doctest::Approx(*scaled.cop).epsilon(1e-11));
      }
      CHECK(scaled.work_out ==
            doctest::Approx(base.work_out / s).epsilon(1e-11).scale(1e-12));
    }
  }
}

TEST_CASE("regime consistency at the temperature extremes") {
  // High-T: beta*omega ~ 1e-3 on both reservoirs.
  const BathPair hot(2.0, 1.0);
  const FrequencyPair small(5e-4, 2e-3);
  for (const auto protocol : {Protocol::Adiabatic, Protocol::SuddenSwitch}) {
    const Heats exact = heats(hot, small, protocol);
    const Heats approx = heats(hot, small, protocol, Regime::HighT);
    CHECK(std::abs(exact.q_hot - approx.q_hot) / std::abs(exact.q_hot) <
          1e-4);
    CHECK(std::abs(exact.q_cold - approx.q_cold) / std::abs(exact.q_cold) <
          1e-4);
  }

  // Low-T: beta*omega ~ 30 on both reservoirs.
  const FrequencyPair large(16.0, 30.0);
  for (const auto protocol : {Protocol::Adiabatic, Protocol::SuddenSwitch}) {
    const Heats exact = heats(hot, large, protocol);
    const Heats approx = heats(hot, large, protocol, Regime::LowT);
    CHECK(std::abs(exact.q_hot - approx.q_hot) < 1e-8);
    CHECK(std::abs(exact.q_cold - approx.q_cold) < 1e-8);
  }
}
