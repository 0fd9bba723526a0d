#include "otto/cycle.hpp"

#include <cmath>
#include <stdexcept>

namespace otto {

namespace {

void require(bool ok, const char* message) {
  if (!ok) throw std::invalid_argument(message);
}

}  // namespace

BathPair::BathPair(double beta_cold_in, double beta_hot_in)
    : beta_cold(beta_cold_in), beta_hot(beta_hot_in) {
  require(std::isfinite(beta_cold) && std::isfinite(beta_hot),
          "inverse temperatures must be finite");
  require(beta_hot > 0.0, "inverse temperatures must be positive");
  require(beta_cold > beta_hot, "beta_cold must exceed beta_hot");
}

BathPair BathPair::from_tau(double tau, double beta_hot) {
  require(std::isfinite(tau) && tau > 0.0 && tau < 1.0,
          "tau must lie in (0, 1)");
  return BathPair(beta_hot / tau, beta_hot);
}

BathPair BathPair::from_eta_carnot(double eta_c, double beta_hot) {
  require(std::isfinite(eta_c) && eta_c > 0.0 && eta_c < 1.0,
          "eta_c must lie in (0, 1)");
  return from_tau(1.0 - eta_c, beta_hot);
}

BathPair BathPair::from_zeta_carnot(double zeta_c, double beta_hot) {
  require(std::isfinite(zeta_c) && zeta_c > 0.0, "zeta_c must be positive");
  return from_tau(zeta_c / (1.0 + zeta_c), beta_hot);
}

FrequencyPair::FrequencyPair(double omega_1_in, double omega_2_in)
    : omega_1(omega_1_in), omega_2(omega_2_in) {
  require(std::isfinite(omega_1) && std::isfinite(omega_2),
          "frequencies must be finite");
  require(omega_1 > 0.0 && omega_2 > 0.0, "frequencies must be positive");
}

double adiabaticity(Protocol protocol, const FrequencyPair& freqs) {
  if (protocol == Protocol::Adiabatic) return 1.0;
  const double w1 = freqs.omega_1;
  const double w2 = freqs.omega_2;
  return (w1 * w1 + w2 * w2) / (2.0 * w1 * w2);
}

double coth_half(double x) {
  if (x < 1e-4) {
    // Laurent series of coth(x/2); the x^3 term keeps ~1e-16 relative
    // accuracy at the switchover.
    return 2.0 / x + x / 6.0 - x * x * x / 360.0;
  }
  // coth(x/2) = 1 + 2/(e^x - 1); expm1 keeps small x accurate and large x
  // saturates cleanly at 1 instead of overflowing.
  return 1.0 + 2.0 / std::expm1(x);
}

double thermal_factor(Regime regime, double beta, double omega) {
  const double x = beta * omega;
  switch (regime) {
    case Regime::HighT:
      return 2.0 / x;
    case Regime::LowT:
      return 1.0 + 2.0 * std::exp(-x);
    case Regime::Exact:
    default:
      return coth_half(x);
  }
}

CycleEnergies corner_energies(const BathPair& baths, const FrequencyPair& freqs,
                              Protocol protocol, Regime regime) {
  const double lambda = adiabaticity(protocol, freqs);
  const double cold = thermal_factor(regime, baths.beta_cold, freqs.omega_1);
  const double hot = thermal_factor(regime, baths.beta_hot, freqs.omega_2);
  CycleEnergies e;
  e.h_a = 0.5 * freqs.omega_1 * cold;
  e.h_b = 0.5 * freqs.omega_2 * lambda * cold;
  e.h_c = 0.5 * freqs.omega_2 * hot;
  e.h_d = 0.5 * freqs.omega_1 * lambda * hot;
  return e;
}

Heats heats(const BathPair& baths, const FrequencyPair& freqs,
            Protocol protocol, Regime regime) {
  const double lambda = adiabaticity(protocol, freqs);
  const double cold = thermal_factor(regime, baths.beta_cold, freqs.omega_1);
  const double hot = thermal_factor(regime, baths.beta_hot, freqs.omega_2);
  Heats q;
  q.q_hot = 0.5 * freqs.omega_2 * (hot - lambda * cold);
  q.q_cold = 0.5 * freqs.omega_1 * (cold - lambda * hot);
  return q;
}

CycleReport cycle_report(const BathPair& baths, const FrequencyPair& freqs,
                         Protocol protocol, Regime regime) {
  const Heats q = heats(baths, freqs, protocol, regime);
  CycleReport report;
  report.q_hot = q.q_hot;
  report.q_cold = q.q_cold;
  report.work_out = q.q_hot + q.q_cold;
  report.work_in = -report.work_out;
  report.engine_mode =
      report.work_out > kModeTolerance && report.q_hot > kModeTolerance;
  report.fridge_mode = report.q_cold > kModeTolerance &&
                       report.q_hot < -kModeTolerance &&
                       report.work_in > kModeTolerance;
  if (report.engine_mode) {
    report.efficiency = report.work_out / report.q_hot;
  } else if (report.fridge_mode) {
    report.cop = report.q_cold / report.work_in;
  }
  return report;
}

}  // namespace otto
