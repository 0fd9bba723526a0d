#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

namespace otto::opt {

// Derivative-free maximizers used as the independent check on every closed
// form in the library: a coarse grid scan locates the basin, golden-section
// (1-D) or downhill-simplex (2-D) refinement narrows it, and a short
// finite-difference polish removes the flat-top noise floor so optimizer
// output stays two orders of magnitude below the 1e-8 comparison budget.
// Everything here is deterministic: identical problems give bit-identical
// results regardless of evaluation order.

// An objective may decline to evaluate (infeasible point). Infeasible
// orders below every finite value; it is never encoded as a sentinel.
using Value = std::optional<double>;
using Objective1D = std::function<Value(double)>;
using Objective2D = std::function<Value(double, double)>;

// Thrown when no feasible point exists on the scan grid, or a refinement
// step meets a non-finite objective value.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ScalarProblem1D {
  Objective1D objective;
  double lo = 0.0;  // open interval (lo, hi)
  double hi = 1.0;
  double tolerance = 1e-12;  // absolute control tolerance
  int grid_points = 2048;    // initial scan resolution, >= 8
};

struct Result1D {
  double x = 0.0;
  double value = 0.0;
  int iterations = 0;
  // Set when the best grid sample is the one adjacent to a domain edge
  // (no interior optimum was bracketed).
  bool on_boundary = false;
};

Result1D maximize_1d(const ScalarProblem1D& problem);

struct ScalarProblem2D {
  Objective2D objective;
  double x_lo = 0.0;
  double x_hi = 1.0;
  double y_lo = 0.0;
  double y_hi = 1.0;
  double tolerance = 1e-10;  // simplex size tolerance
  int grid_points = 256;     // scan resolution per axis, >= 4
};

struct Result2D {
  double x = 0.0;
  double y = 0.0;
  double value = 0.0;
  int iterations = 0;
};

Result2D maximize_2d(const ScalarProblem2D& problem);

// Least-squares polynomial fit of f on (0, scale] sampled at Chebyshev
// points, with f(0) pinned to the analytic limit supplied by the caller.
// Used to extract near-equilibrium expansion coefficients.
struct SeriesFit {
  std::vector<double> coefficients;  // lowest order first; [0] = value_at_zero
  double residual = 0.0;             // max |fit - sample| over the nodes
  bool ill_conditioned = false;
};

SeriesFit fit_series(const std::function<double(double)>& f, int order,
                     double scale, double value_at_zero);

// Least-squares fit of f(s) ~ slope*s + intercept + inv_coeff/s on a large-s
// Chebyshev grid with 1/s in (0, inv_scale]. Used for the large-argument
// expansions where the leading behaviour is linear.
struct AsymptoteFit {
  double slope = 0.0;
  double intercept = 0.0;
  double inv_coeff = 0.0;
  double residual = 0.0;
};

AsymptoteFit fit_asymptote(const std::function<double(double)>& f,
                           double inv_scale = 0.02);

}  // namespace otto::opt
