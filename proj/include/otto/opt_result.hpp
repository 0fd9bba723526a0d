#pragma once

#include <optional>
#include <vector>

namespace otto {

enum class Method { Analytic, Numeric };

struct Convergence {
  int iterations = 0;
  double tolerance = 0.0;  // control/simplex tolerance actually used
};

// Result of one optimization problem: the optimal control values (z, or
// omega_1 and omega_2), the objective at the optimum, and the figure of
// merit (efficiency or COP) reached there. Matched analytic/numeric pairs
// must agree on the merit to 1e-8.
struct OptResult {
  std::vector<double> controls;
  double objective = 0.0;
  double merit = 0.0;
  Method method = Method::Analytic;
  std::optional<Convergence> convergence;  // set for numeric results only
};

}  // namespace otto
