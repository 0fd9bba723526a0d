#include "otto/fridge.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "otto/optimize.hpp"

namespace otto::fridge {

namespace {

constexpr const char* kSsFeasibilityRule =
    "sudden-switch refrigeration requires tau > 1/2 (zeta_c > 1)";

void check_z_open(double z) {
  if (!(z > 0.0 && z < 1.0)) {
    throw std::invalid_argument("compression ratio z must lie in (0, 1)");
  }
}

void check_zeta(double zeta_c) {
  if (!(zeta_c > 0.0)) {
    throw std::invalid_argument("zeta_c must be positive");
  }
}

}  // namespace

double omega_tradeoff(double q_cold, double work_in, double zeta_max) {
  return 2.0 * q_cold - zeta_max * work_in;
}

double zeta_max(Protocol protocol, double zeta_c) {
  return protocol == Protocol::Adiabatic ? zeta_c : cop_max_ss(zeta_c);
}

double cop_adiabatic(double z) {
  check_z_open(z);
  return z / (1.0 - z);
}

double cop_chi_high(double zeta_c) {
  check_zeta(zeta_c);
  return std::sqrt(1.0 + zeta_c) - 1.0;
}

// ---------------------------------------------------------------------------
// adiabatic, high-temperature limit
// ---------------------------------------------------------------------------

double q_cold_high(double z, const BathPair& baths) {
  check_z_open(z);
  return (baths.tau() - z) / baths.beta_hot;
}

double work_in_high(double z, const BathPair& baths) {
  check_z_open(z);
  const double tau = baths.tau();
  return (tau - z) * (1.0 - z) / (baths.beta_hot * z);
}

double omega_high(double z, const BathPair& baths) {
  return omega_tradeoff(q_cold_high(z, baths), work_in_high(z, baths),
                        baths.zeta_carnot());
}

double cop_at_max_omega_high(double zeta_c) {
  check_zeta(zeta_c);
  return zeta_c /
         (std::sqrt((1.0 + zeta_c) * (2.0 + zeta_c)) - zeta_c);
}

OptResult max_omega_high(const BathPair& baths) {
  const double tau = baths.tau();
  const double z_star = tau / std::sqrt(2.0 - tau);
  OptResult r;
  r.controls = {z_star};
  r.objective = omega_high(z_star, baths);
  r.merit = cop_at_max_omega_high(baths.zeta_carnot());
  return r;
}

OptResult max_omega_high_numeric(const BathPair& baths) {
  opt::ScalarProblem1D p;
  p.objective = [&baths](double z) -> opt::Value {
    return omega_high(z, baths);
  };
  p.lo = 0.0;
  p.hi = baths.tau();  // positive cooling needs z < tau here
  const opt::Result1D res = opt::maximize_1d(p);
  OptResult r;
  r.method = Method::Numeric;
  r.controls = {res.x};
  r.objective = res.value;
  r.merit = cop_adiabatic(res.x);
  r.convergence = Convergence{res.iterations, p.tolerance};
  return r;
}

// ---------------------------------------------------------------------------
// adiabatic, low-temperature limit
// ---------------------------------------------------------------------------

double q_cold_low(double omega_1, double omega_2, const BathPair& baths) {
  return omega_1 * (std::exp(-baths.beta_cold * omega_1) -
                    std::exp(-baths.beta_hot * omega_2));
}

double work_in_low(double omega_1, double omega_2, const BathPair& baths) {
  return (omega_2 - omega_1) * (std::exp(-baths.beta_cold * omega_1) -
                                std::exp(-baths.beta_hot * omega_2));
}

double omega_low(double omega_1, double omega_2, const BathPair& baths) {
  const double zc = baths.zeta_carnot();
  return ((2.0 + zc) * omega_1 - zc * omega_2) *
         (std::exp(-baths.beta_cold * omega_1) -
          std::exp(-baths.beta_hot * omega_2));
}

double cop_at_max_omega_low(double zeta_c) {
  check_zeta(zeta_c);
  // k = ln((1+zeta)/(2+zeta)) < 0 always, so nothing here degenerates.
  const double k = -std::log1p(1.0 / (1.0 + zeta_c));
  return zeta_c * (1.0 - (1.0 + zeta_c) * k) /
         (1.0 - 2.0 * (1.0 + zeta_c) * k);
}

OptResult max_omega_low(const BathPair& baths) {
  const double zc = baths.zeta_carnot();
  const double k = -std::log1p(1.0 / (1.0 + zc));
  OptResult r;
  r.controls = {(1.0 - (1.0 + zc) * k) / baths.beta_cold,
                (1.0 - (2.0 + zc) * k) / baths.beta_hot};
  r.objective = omega_low(r.controls[0], r.controls[1], baths);
  r.merit = cop_at_max_omega_low(zc);
  return r;
}

OptResult max_omega_low_numeric(const BathPair& baths) {
  opt::ScalarProblem2D p;
  p.objective = [&baths](double w1, double w2) -> opt::Value {
    return omega_low(w1, w2, baths);
  };
  p.x_hi = 50.0 / baths.beta_cold;
  p.y_hi = 50.0 / baths.beta_hot;
  const opt::Result2D res = opt::maximize_2d(p);
  OptResult r;
  r.method = Method::Numeric;
  r.controls = {res.x, res.y};
  r.objective = res.value;
  r.merit = res.x / (res.y - res.x);
  r.convergence = Convergence{res.iterations, p.tolerance};
  return r;
}

// ---------------------------------------------------------------------------
// sudden switch, high-temperature limit
// ---------------------------------------------------------------------------

SsQuantities ss_quantities(double z, const BathPair& baths) {
  check_z_open(z);
  const double tau = baths.tau();
  const double b2 = baths.beta_hot;
  const double u = z * z;
  SsQuantities q;
  q.q_cold = (tau - 0.5 * (u + 1.0)) / b2;
  q.work_in = (u - 1.0) * (u - tau) / (2.0 * b2 * u);
  q.feasible = q.q_cold > 0.0;
  q.cop = q.feasible ? u * (2.0 * tau - u - 1.0) / ((u - 1.0) * (u - tau))
                     : 0.0;
  return q;
}

double cop_max_ss(double zeta_c) {
  check_zeta(zeta_c);
  return 1.0 + 3.0 * zeta_c - 2.0 * std::sqrt(2.0 * zeta_c * (1.0 + zeta_c));
}

double omega_ss(double z, const BathPair& baths) {
  check_z_open(z);
  const double tau = baths.tau();
  const double b2 = baths.beta_hot;
  const double u = z * z;
  const double q_cold = (tau - 0.5 * (u + 1.0)) / b2;
  const double work_in = (u - 1.0) * (u - tau) / (2.0 * b2 * u);
  return omega_tradeoff(q_cold, work_in, cop_max_ss(baths.zeta_carnot()));
}

namespace {

// Stationarity of the quench trade-off gives z*^4 directly.
double optimal_z_squared_ss(double zeta_c) {
  const double zm = cop_max_ss(zeta_c);
  return std::sqrt(zeta_c * zm / ((1.0 + zeta_c) * (2.0 + zm)));
}

}  // namespace

double cop_at_max_omega_ss(double zeta_c) {
  if (!(zeta_c > 1.0)) throw std::domain_error(kSsFeasibilityRule);
  const double a = optimal_z_squared_ss(zeta_c);
  return a * (1.0 - zeta_c + a * (1.0 + zeta_c)) /
         ((a - 1.0) * (zeta_c - a * (1.0 + zeta_c)));
}

OptResult max_omega_ss(const BathPair& baths) {
  const double zc = baths.zeta_carnot();
  if (!(baths.tau() > 0.5)) throw std::domain_error(kSsFeasibilityRule);
  const double z_star = std::sqrt(optimal_z_squared_ss(zc));
  OptResult r;
  r.controls = {z_star};
  r.objective = omega_ss(z_star, baths);
  r.merit = cop_at_max_omega_ss(zc);
  return r;
}

OptResult max_omega_ss_numeric(const BathPair& baths) {
  const double tau = baths.tau();
  if (!(tau > 0.5)) throw std::domain_error(kSsFeasibilityRule);
  opt::ScalarProblem1D p;
  p.objective = [&baths](double z) -> opt::Value {
    return omega_ss(z, baths);
  };
  p.lo = 0.0;
  p.hi = std::sqrt(2.0 * tau - 1.0);  // cooling window
  const opt::Result1D res = opt::maximize_1d(p);
  OptResult r;
  r.method = Method::Numeric;
  r.controls = {res.x};
  r.objective = res.value;
  r.merit = ss_quantities(res.x, baths).cop;
  r.convergence = Convergence{res.iterations, p.tolerance};
  return r;
}

// ---------------------------------------------------------------------------
// cooling power at the trade-off optimum
// ---------------------------------------------------------------------------

namespace {

void check_tau_for(CpRegime regime, double tau) {
  if (!(tau > 0.0 && tau < 1.0)) {
    throw std::invalid_argument("tau must lie in (0, 1)");
  }
  if (regime == CpRegime::SuddenSwitch && !(tau > 0.5)) {
    throw std::domain_error(kSsFeasibilityRule);
  }
}

}  // namespace

double cooling_power_at_mof(CpRegime regime, double tau, double beta_hot) {
  check_tau_for(regime, tau);
  switch (regime) {
    case CpRegime::AdiabaticHigh:
      return (tau - tau / std::sqrt(2.0 - tau)) / beta_hot;
    case CpRegime::AdiabaticLow: {
      const double inv = 1.0 / (2.0 - tau);
      return std::pow(inv, 1.0 / (1.0 - tau)) *
             (1.0 - tau - std::log(inv)) * tau /
             (std::numbers::e * beta_hot * (2.0 - tau));
    }
    case CpRegime::SuddenSwitch:
    default: {
      const double root = std::sqrt(2.0 * tau);
      return (2.0 * tau -
              std::sqrt(tau * (2.0 * tau - 2.0 * root + 1.0) /
                        (3.0 - 2.0 * root)) -
              1.0) /
             (2.0 * beta_hot);
    }
  }
}

double cooling_power_at_mof_composed(CpRegime regime, double tau,
                                     double beta_hot) {
  check_tau_for(regime, tau);
  const BathPair baths = BathPair::from_tau(tau, beta_hot);
  switch (regime) {
    case CpRegime::AdiabaticHigh:
      return q_cold_high(tau / std::sqrt(2.0 - tau), baths);
    case CpRegime::AdiabaticLow: {
      const OptResult at_mof = max_omega_low(baths);
      return q_cold_low(at_mof.controls[0], at_mof.controls[1], baths);
    }
    case CpRegime::SuddenSwitch:
    default: {
      const double z_star =
          std::sqrt(optimal_z_squared_ss(baths.zeta_carnot()));
      return ss_quantities(z_star, baths).q_cold;
    }
  }
}

CpPeak cp_mof_peak(CpRegime regime, double beta_hot) {
  opt::ScalarProblem1D p;
  p.objective = [regime, beta_hot](double tau) -> opt::Value {
    return cooling_power_at_mof(regime, tau, beta_hot);
  };
  p.lo = regime == CpRegime::SuddenSwitch ? 0.5 : 0.0;
  p.hi = 1.0;
  const opt::Result1D res = opt::maximize_1d(p);
  return CpPeak{res.x, res.value, res.iterations};
}

}  // namespace otto::fridge
