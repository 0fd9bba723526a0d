#pragma once

#include <vector>

#include "otto/cycle.hpp"
#include "otto/opt_result.hpp"

namespace otto::engine {

// Engine-mode trade-off optimization. Every closed-form optimum below has a
// numeric twin that maximizes the same regime objective with the generic
// derivative-free machinery, so the two routes stay independent.

enum class ObjectiveKind { Work, Omega };

// Trade-off objective 2W - eta_max*Q2: twice the useful work minus the
// ceiling-weighted intake.
double omega_tradeoff(double work, double q_hot, double eta_max);

// Maximum efficiency entering the trade-off weight: the Carnot value for
// quasistatic driving, a friction-limited ceiling (< 1/2) for the quench.
double eta_max(Protocol protocol, double eta_c);

// --- adiabatic driving, high-temperature limit (z-only objectives) ---

double q_hot_high(double z, const BathPair& baths);
double q_cold_high(double z, const BathPair& baths);
double work_high(double z, const BathPair& baths);
double omega_high(double z, const BathPair& baths);

// Efficiency at maximum trade-off, adiabatic high-T closed form.
double eta_at_max_omega_high(double eta_c);

OptResult max_omega_high(const BathPair& baths);
OptResult max_omega_high_numeric(const BathPair& baths);
OptResult max_work_high(const BathPair& baths);  // Curzon-Ahlborn point
OptResult max_work_high_numeric(const BathPair& baths);

// --- adiabatic driving, low-temperature limit (two-control objectives) ---

// Valid for beta*omega >> 1 on both reservoirs; not enforced here.
double work_low(double omega_1, double omega_2, const BathPair& baths);
double q_hot_low(double omega_1, double omega_2, const BathPair& baths);
double omega_low(double omega_1, double omega_2, const BathPair& baths);

double eta_at_max_work_low(double eta_c);
double eta_at_max_omega_low(double eta_c);

OptResult max_work_low(const BathPair& baths);
OptResult max_work_low_numeric(const BathPair& baths);
OptResult max_omega_low(const BathPair& baths);
OptResult max_omega_low_numeric(const BathPair& baths);

// Below this Carnot efficiency the low-T closed forms are 0/0 degenerate and
// the analytic paths switch to their near-equilibrium series (truncation
// error O(eta_c^3) relative, ~1e-18 at the seam).
inline constexpr double kSeriesThreshold = 1e-6;

// --- sudden switch of frequencies, high-temperature limit ---

double eta_ss(double z, double tau);
double work_ss(double z, const BathPair& baths);
double q_hot_ss(double z, const BathPair& baths);
double eta_max_ss(double eta_c);  // friction-limited ceiling, <= 1/2
double omega_ss(double z, const BathPair& baths);

// Efficiency at maximum trade-off for the quench; closed form in eta_c.
double eta_at_max_omega_ss(double eta_c);

// The optimal z has no closed form for the quench: the optimum is located
// numerically and the merit cross-checked against the closed form.
OptResult max_omega_ss(const BathPair& baths);
OptResult max_omega_ss_numeric(const BathPair& baths);
OptResult max_work_ss(const BathPair& baths);
OptResult max_work_ss_numeric(const BathPair& baths);

struct ReferenceEfficiencies {
  double eta_ca = 0.0;      // 1 - sqrt(1 - eta_c)
  double eta_w_low = 0.0;   // low-T work optimum
  double eta_w_ss = 0.0;    // quench work optimum
};

ReferenceEfficiencies reference_efficiencies(double eta_c);

// --- parametric efficiency/work loop for the quench ---

struct LoopPoint {
  double z = 0.0;
  double eta = 0.0;
  double work = 0.0;
};

// Samples z over [sqrt(tau), 1] (both endpoints land exactly on (0, 0), so
// the curve closes) and locates the max-work and max-efficiency points by
// refined maximization rather than grid lookup.
struct LoopCurve {
  std::vector<LoopPoint> samples;
  LoopPoint max_work;
  LoopPoint max_eta;
};

LoopCurve loop_curve(double tau, double beta_hot, int n_points);

}  // namespace otto::engine
