#pragma once

#include "otto/cycle.hpp"
#include "otto/opt_result.hpp"

namespace otto::fridge {

// Refrigerator-mode trade-off optimization: COP at maximum trade-off for
// quasistatic driving (high- and low-temperature limits) and for the sudden
// quench, plus the cooling power delivered at each of those optima.

// Trade-off objective 2*Q_cold - zeta_max*W_in.
double omega_tradeoff(double q_cold, double work_in, double zeta_max);

// COP ceiling entering the weight: the Carnot value for quasistatic
// driving, the much tighter quench bound otherwise.
double zeta_max(Protocol protocol, double zeta_c);

// COP of the quasistatic cycle, z/(1-z) for z in (0, 1).
double cop_adiabatic(double z);

// COP at maximum chi-criterion (cooling power times COP), the standard
// comparison curve for the high-temperature regime.
double cop_chi_high(double zeta_c);

// --- adiabatic driving, high-temperature limit ---

double q_cold_high(double z, const BathPair& baths);
double work_in_high(double z, const BathPair& baths);
double omega_high(double z, const BathPair& baths);

double cop_at_max_omega_high(double zeta_c);

OptResult max_omega_high(const BathPair& baths);
OptResult max_omega_high_numeric(const BathPair& baths);

// --- adiabatic driving, low-temperature limit ---

double q_cold_low(double omega_1, double omega_2, const BathPair& baths);
double work_in_low(double omega_1, double omega_2, const BathPair& baths);
double omega_low(double omega_1, double omega_2, const BathPair& baths);

double cop_at_max_omega_low(double zeta_c);

OptResult max_omega_low(const BathPair& baths);
OptResult max_omega_low_numeric(const BathPair& baths);

// --- sudden switch of frequencies, high-temperature limit ---

// Cooling only happens for z^2 < 2*tau - 1, which already requires
// tau > 1/2 (zeta_c > 1): a quenched cycle cannot refrigerate from a cold
// bath below half the hot-bath temperature.
struct SsQuantities {
  double q_cold = 0.0;
  double work_in = 0.0;
  double cop = 0.0;   // meaningful only when feasible
  bool feasible = false;
};

SsQuantities ss_quantities(double z, const BathPair& baths);

// COP ceiling for the quench; positive only for zeta_c > 1.
double cop_max_ss(double zeta_c);

double omega_ss(double z, const BathPair& baths);

double cop_at_max_omega_ss(double zeta_c);

// Throw std::domain_error when tau <= 1/2 (no feasible window).
OptResult max_omega_ss(const BathPair& baths);
OptResult max_omega_ss_numeric(const BathPair& baths);

// --- cooling power at the trade-off optimum ---

enum class CpRegime { AdiabaticHigh, AdiabaticLow, SuddenSwitch };

// Closed-form cooling power at the regime's optimum controls, as a function
// of the temperature ratio. SuddenSwitch requires tau > 1/2.
double cooling_power_at_mof(CpRegime regime, double tau, double beta_hot);

// Same value assembled the long way round: optimum controls first, then the
// regime's cooling power evaluated there. Guards the closed forms against
// transcription drift.
double cooling_power_at_mof_composed(CpRegime regime, double tau,
                                     double beta_hot);

struct CpPeak {
  double tau_star = 0.0;
  double q_cold = 0.0;
  int iterations = 0;
};

// Interior maximizer of the cooling power over the regime's tau domain;
// the sensible operating point when bath temperatures are free to choose.
CpPeak cp_mof_peak(CpRegime regime, double beta_hot);

}  // namespace otto::fridge
