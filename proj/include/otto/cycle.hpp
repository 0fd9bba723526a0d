#pragma once

#include <optional>

namespace otto {

// Energetics of the four-stroke harmonic Otto cycle. Units: hbar = k_B = 1,
// so frequencies carry the energy unit and inverse temperatures its
// reciprocal. beta_hot = 1 is the conventional energy scale for dimensional
// outputs; every constructor lets the caller override it.

enum class Protocol { Adiabatic, SuddenSwitch };

// Evaluation regime for the per-reservoir thermal factor. The asymptotic
// regimes are explicit modes selected by the caller, never auto-detected,
// so that exact-vs-limit comparisons stay meaningful.
enum class Regime { Exact, HighT, LowT };

// Inverse temperatures of the two reservoirs. Invariant:
// beta_cold > beta_hot > 0 (the cold reservoir is the colder one).
struct BathPair {
  double beta_cold = 2.0;
  double beta_hot = 1.0;

  BathPair(double beta_cold, double beta_hot);

  static BathPair from_tau(double tau, double beta_hot = 1.0);
  static BathPair from_eta_carnot(double eta_c, double beta_hot = 1.0);
  static BathPair from_zeta_carnot(double zeta_c, double beta_hot = 1.0);

  // Reservoir temperature ratio T_cold/T_hot, in (0, 1).
  [[nodiscard]] double tau() const { return beta_hot / beta_cold; }
  [[nodiscard]] double eta_carnot() const { return 1.0 - tau(); }
  [[nodiscard]] double zeta_carnot() const { return tau() / (1.0 - tau()); }
};

// Oscillator frequencies at the two ends of the drive stroke, both positive.
struct FrequencyPair {
  double omega_1 = 1.0;
  double omega_2 = 2.0;

  FrequencyPair(double omega_1, double omega_2);

  // z = omega_1/omega_2; the cycle compresses when z < 1.
  [[nodiscard]] double compression_ratio() const { return omega_1 / omega_2; }
};

// Dimensionless adiabaticity parameter of the drive: 1 for quasistatic
// ramps, (w1^2+w2^2)/(2 w1 w2) >= 1 for an instantaneous quench.
double adiabaticity(Protocol protocol, const FrequencyPair& freqs);

// coth(x/2) for x > 0, safe against overflow for large x and catastrophic
// cancellation for small x (naive cosh/sinh blows up near x ~ 1400).
double coth_half(double x);

// Per-reservoir thermal factor coth(beta*omega/2) in the requested regime:
// exact, 2/(beta*omega) (high-T), or 1 + 2 exp(-beta*omega) (low-T).
// Applicability of the asymptotic regimes is the caller's responsibility.
double thermal_factor(Regime regime, double beta, double omega);

// Mean oscillator energies at the four cycle corners.
struct CycleEnergies {
  double h_a = 0.0;
  double h_b = 0.0;
  double h_c = 0.0;
  double h_d = 0.0;
};

CycleEnergies corner_energies(const BathPair& baths, const FrequencyPair& freqs,
                              Protocol protocol, Regime regime = Regime::Exact);

// Heat taken in during the hot and cold isochores. Sign convention: every
// incoming flux is positive, so q_hot > 0 means the medium absorbs heat
// from the hot bath and q_cold > 0 means it absorbs from the cold bath.
struct Heats {
  double q_hot = 0.0;
  double q_cold = 0.0;
};

Heats heats(const BathPair& baths, const FrequencyPair& freqs,
            Protocol protocol, Regime regime = Regime::Exact);

// Full bookkeeping for one cycle configuration. work_out = q_hot + q_cold
// exactly; efficiency is set only in engine mode and cop only in fridge
// mode, and the two modes are mutually exclusive.
struct CycleReport {
  double q_hot = 0.0;
  double q_cold = 0.0;
  double work_out = 0.0;
  double work_in = 0.0;
  std::optional<double> efficiency;
  std::optional<double> cop;
  bool engine_mode = false;
  bool fridge_mode = false;
};

// Heats within this absolute tolerance of zero classify the cycle as
// "neither mode" rather than risking a division by a vanishing q_hot/w_in.
inline constexpr double kModeTolerance = 1e-12;

CycleReport cycle_report(const BathPair& baths, const FrequencyPair& freqs,
                         Protocol protocol, Regime regime = Regime::Exact);

}  // namespace otto
