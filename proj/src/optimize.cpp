#include "otto/optimize.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace otto::opt {

namespace {

constexpr double kInvPhi = 0.6180339887498949;  // golden-ratio shrink factor
constexpr int kMaxGoldenIterations = 256;
constexpr int kMaxSimplexIterations = 1000;

// Infeasible orders below every finite value.
bool value_less(const Value& a, const Value& b) {
  if (!a) return b.has_value();
  if (!b) return false;
  return *a < *b;
}

void check_finite(const Value& v) {
  if (v && !std::isfinite(*v)) {
    throw NumericError("objective returned a non-finite value");
  }
}

// Wraps an objective, remembering the best point seen. Ties within 1e-12
// resolve to the smallest control value so plateaus report deterministically.
class Tracked1D {
 public:
  explicit Tracked1D(const Objective1D& f) : f_(f) {}

  Value operator()(double x) {
    Value v = f_(x);
    check_finite(v);
    if (value_less(best_v_, v)) {
      best_v_ = v;
      best_x_ = x;
    } else if (v && best_v_ && std::abs(*v - *best_v_) < 1e-12 &&
               x < best_x_) {
      best_x_ = x;
    }
    return v;
  }

  [[nodiscard]] bool found() const { return best_v_.has_value(); }
  [[nodiscard]] double best_x() const { return best_x_; }
  [[nodiscard]] double best_value() const { return *best_v_; }

 private:
  const Objective1D& f_;
  Value best_v_;
  double best_x_ = 0.0;
};

}  // namespace

Result1D maximize_1d(const ScalarProblem1D& problem) {
  if (!problem.objective) throw std::invalid_argument("objective not set");
  if (!(problem.lo < problem.hi)) {
    throw std::invalid_argument("domain must satisfy lo < hi");
  }
  if (problem.grid_points < 8) {
    throw std::invalid_argument("grid_points must be at least 8");
  }
  if (!(problem.tolerance > 0.0)) {
    throw std::invalid_argument("tolerance must be positive");
  }

  Tracked1D f(problem.objective);
  const int n = problem.grid_points;
  const double lo = problem.lo;
  const double hi = problem.hi;
  const double step = (hi - lo) / (n + 1);

  // Strictly interior uniform scan of the open interval.
  int best = -1;
  Value best_v;
  for (int i = 0; i < n; ++i) {
    const double x = lo + step * (i + 1);
    const Value v = f(x);
    if (value_less(best_v, v)) {
      best_v = v;
      best = i;
    }
  }
  if (best < 0) {
    throw NumericError("objective is infeasible on the entire scan grid");
  }

  Result1D result;
  result.on_boundary = best == 0 || best == n - 1;

  // Golden-section refinement inside the bracketing cells.
  double a = best == 0 ? lo + 0.5 * step : lo + step * best;
  double b = best == n - 1 ? hi - 0.5 * step : lo + step * (best + 2);
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  Value fc = f(c);
  Value fd = f(d);
  int iterations = 0;
  while (b - a > problem.tolerance && iterations < kMaxGoldenIterations) {
    ++iterations;
    if (value_less(fc, fd)) {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    } else {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    }
  }
  result.iterations = iterations;

  // Successive-parabola polish. Comparison-based shrinking stalls at the
  // ~sqrt(eps) flat-top noise floor; two vertex fits with shrinking stencils
  // push the argmax error down to ~1e-10 of the domain width.
  double x = 0.5 * (a + b);
  Value fx = f(x);
  bool polished = false;
  if (!result.on_boundary && fx) {
    const double scale = hi - lo;
    for (const double frac : {1e-4, 1e-5, 3e-6}) {
      const double h = frac * scale;
      const double xm = x - h;
      const double xp = x + h;
      if (!(xm > lo && xp < hi)) continue;
      const Value fm = f(xm);
      const Value fp = f(xp);
      if (!fm || !fp) break;
      const double d2 = *fp - 2.0 * (*fx) + *fm;
      if (!(d2 < 0.0)) break;
      double t = -0.5 * (*fp - *fm) / d2;
      t = std::clamp(t, -1.0, 1.0);
      const double xn =
          std::clamp(x + t * h, lo + 0.25 * step, hi - 0.25 * step);
      const Value fn = f(xn);
      if (!fn) break;
      x = xn;
      fx = fn;
      polished = true;
    }
  }

  if (polished && fx) {
    result.x = x;
    result.value = *fx;
  } else {
    result.x = f.best_x();
    result.value = f.best_value();
  }
  return result;
}

namespace {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

struct Vertex {
  Point2 p;
  Value v;
};

}  // namespace

Result2D maximize_2d(const ScalarProblem2D& problem) {
  if (!problem.objective) throw std::invalid_argument("objective not set");
  if (!(problem.x_lo < problem.x_hi) || !(problem.y_lo < problem.y_hi)) {
    throw std::invalid_argument("domain rectangle is degenerate");
  }
  if (problem.grid_points < 4) {
    throw std::invalid_argument("grid_points must be at least 4");
  }
  if (!(problem.tolerance > 0.0)) {
    throw std::invalid_argument("tolerance must be positive");
  }

  const double wx = problem.x_hi - problem.x_lo;
  const double wy = problem.y_hi - problem.y_lo;

  // Points outside the open rectangle count as infeasible so the simplex
  // cannot wander out of the domain.
  auto eval = [&](const Point2& p) -> Value {
    if (!(p.x > problem.x_lo && p.x < problem.x_hi && p.y > problem.y_lo &&
          p.y < problem.y_hi)) {
      return std::nullopt;
    }
    Value v = problem.objective(p.x, p.y);
    check_finite(v);
    return v;
  };

  const int n = problem.grid_points;
  const double sx = wx / (n + 1);
  const double sy = wy / (n + 1);
  Point2 seed;
  Value seed_v;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const Point2 p{problem.x_lo + sx * (i + 1), problem.y_lo + sy * (j + 1)};
      const Value v = eval(p);
      if (value_less(seed_v, v)) {
        seed_v = v;
        seed = p;
      }
    }
  }
  if (!seed_v) {
    throw NumericError("objective is infeasible on the entire scan grid");
  }

  // Downhill simplex (maximizing), seeded one grid cell wide.
  std::array<Vertex, 3> s{
      Vertex{seed, seed_v},
      Vertex{{std::min(seed.x + sx, problem.x_hi - 0.5 * sx), seed.y}, {}},
      Vertex{{seed.x, std::min(seed.y + sy, problem.y_hi - 0.5 * sy)}, {}}};
  s[1].v = eval(s[1].p);
  s[2].v = eval(s[2].p);

  auto order = [&]() {
    std::stable_sort(s.begin(), s.end(), [](const Vertex& a, const Vertex& b) {
      return value_less(b.v, a.v);  // best first
    });
  };
  auto size = [&]() {
    double m = 0.0;
    for (int i = 1; i < 3; ++i) {
      m = std::max(m, std::max(std::abs(s[i].p.x - s[0].p.x),
                               std::abs(s[i].p.y - s[0].p.y)));
    }
    return m;
  };

  int iterations = 0;
  order();
  while (size() > problem.tolerance && iterations < kMaxSimplexIterations) {
    ++iterations;
    const Point2 centroid{0.5 * (s[0].p.x + s[1].p.x),
                          0.5 * (s[0].p.y + s[1].p.y)};
    auto along = [&](double t) {
      return Point2{centroid.x + t * (centroid.x - s[2].p.x),
                    centroid.y + t * (centroid.y - s[2].p.y)};
    };
    const Vertex reflected{along(1.0), eval(along(1.0))};
    if (value_less(s[0].v, reflected.v)) {
      const Vertex expanded{along(2.0), eval(along(2.0))};
      s[2] = value_less(reflected.v, expanded.v) ? expanded : reflected;
    } else if (value_less(s[1].v, reflected.v)) {
      s[2] = reflected;
    } else {
      const bool outside = value_less(s[2].v, reflected.v);
      const double t = outside ? 0.5 : -0.5;
      const Vertex contracted{along(t), eval(along(t))};
      const Value& floor = outside ? reflected.v : s[2].v;
      if (value_less(floor, contracted.v)) {
        s[2] = contracted;
      } else {
        for (int i = 1; i < 3; ++i) {
          s[i].p.x = 0.5 * (s[i].p.x + s[0].p.x);
          s[i].p.y = 0.5 * (s[i].p.y + s[0].p.y);
          s[i].v = eval(s[i].p);
        }
      }
    }
    order();
  }

  Point2 best = s[0].p;
  Value best_v = s[0].v;

  // Finite-difference Newton polish, same rationale as the 1-D parabola.
  // The stencil shrinks so the O(h^2) vertex bias ends well below the 1e-8
  // comparison budget even on the 50-wide low-temperature domains.
  for (const double frac : {1e-4, 1e-5, 1e-6, 3e-7}) {
    const double hx = frac * wx;
    const double hy = frac * wy;
    const Value f0 = eval(best);
    const Value fxp = eval({best.x + hx, best.y});
    const Value fxm = eval({best.x - hx, best.y});
    const Value fyp = eval({best.x, best.y + hy});
    const Value fym = eval({best.x, best.y - hy});
    const Value fpp = eval({best.x + hx, best.y + hy});
    const Value fpm = eval({best.x + hx, best.y - hy});
    const Value fmp = eval({best.x - hx, best.y + hy});
    const Value fmm = eval({best.x - hx, best.y - hy});
    if (!f0 || !fxp || !fxm || !fyp || !fym || !fpp || !fpm || !fmp || !fmm) {
      break;
    }
    const double gx = (*fxp - *fxm) / (2.0 * hx);
    const double gy = (*fyp - *fym) / (2.0 * hy);
    const double fxx = (*fxp - 2.0 * *f0 + *fxm) / (hx * hx);
    const double fyy = (*fyp - 2.0 * *f0 + *fym) / (hy * hy);
    const double fxy = (*fpp - *fpm - *fmp + *fmm) / (4.0 * hx * hy);
    const double det = fxx * fyy - fxy * fxy;
    if (!(fxx < 0.0) || !(det > 0.0)) break;  // not locally concave
    double step_x = -(fyy * gx - fxy * gy) / det;
    double step_y = -(fxx * gy - fxy * gx) / det;
    step_x = std::clamp(step_x, -10.0 * hx, 10.0 * hx);
    step_y = std::clamp(step_y, -10.0 * hy, 10.0 * hy);
    const Point2 next{best.x + step_x, best.y + step_y};
    const Value fn = eval(next);
    if (!fn) break;
    best = next;
    best_v = fn;
  }

  if (!best_v) {
    throw NumericError("refinement left the feasible region");
  }
  Result2D result;
  result.x = best.x;
  result.y = best.y;
  result.value = *best_v;
  result.iterations = iterations;
  return result;
}

namespace {

// Gaussian elimination with partial pivoting for the tiny normal systems.
template <int N>
std::array<double, N> solve(std::array<std::array<double, N>, N> m,
                            std::array<double, N> rhs, bool* singular) {
  for (int col = 0; col < N; ++col) {
    int pivot = col;
    for (int row = col + 1; row < N; ++row) {
      if (std::abs(m[row][col]) > std::abs(m[pivot][col])) pivot = row;
    }
    if (m[pivot][col] == 0.0) {
      if (singular) *singular = true;
      return {};
    }
    std::swap(m[col], m[pivot]);
    std::swap(rhs[col], rhs[pivot]);
    for (int row = col + 1; row < N; ++row) {
      const double factor = m[row][col] / m[col][col];
      for (int k = col; k < N; ++k) m[row][k] -= factor * m[col][k];
      rhs[row] -= factor * rhs[col];
    }
  }
  std::array<double, N> x{};
  for (int row = N - 1; row >= 0; --row) {
    double acc = rhs[row];
    for (int k = row + 1; k < N; ++k) acc -= m[row][k] * x[k];
    x[row] = acc / m[row][row];
  }
  if (singular) *singular = false;
  return x;
}

std::vector<double> chebyshev_nodes(int count, double scale) {
  std::vector<double> nodes(count);
  for (int j = 0; j < count; ++j) {
    const double theta = std::numbers::pi * (2.0 * j + 1.0) / (2.0 * count);
    nodes[j] = scale * 0.5 * (1.0 - std::cos(theta));
  }
  return nodes;
}

constexpr int kFitSamples = 64;
constexpr double kConditionLimit = 1e12;

}  // namespace

SeriesFit fit_series(const std::function<double(double)>& f, int order,
                     double scale, double value_at_zero) {
  if (order < 1 || order > 4) {
    throw std::invalid_argument("series order must lie in [1, 4]");
  }
  if (!(scale > 0.0)) throw std::invalid_argument("scale must be positive");

  const std::vector<double> xs = chebyshev_nodes(kFitSamples, scale);
  std::vector<double> ts(kFitSamples);
  std::vector<double> gs(kFitSamples);
  for (int j = 0; j < kFitSamples; ++j) {
    ts[j] = xs[j] / scale;
    gs[j] = f(xs[j]) - value_at_zero;
    if (!std::isfinite(gs[j])) {
      throw NumericError("series fit sampled a non-finite value");
    }
  }

  // Normal equations in the normalized variable t = x/scale with basis
  // {t, t^2, ..., t^order}; the constant term is pinned to value_at_zero.
  std::array<std::array<double, 4>, 4> gram{};
  std::array<double, 4> rhs{};
  for (int j = 0; j < kFitSamples; ++j) {
    double tk = 1.0;
    std::array<double, 4> powers{};
    for (int k = 0; k < order; ++k) {
      tk *= ts[j];
      powers[k] = tk;
    }
    for (int k = 0; k < order; ++k) {
      rhs[k] += powers[k] * gs[j];
      for (int l = 0; l < order; ++l) gram[k][l] += powers[k] * powers[l];
    }
  }
  for (int k = order; k < 4; ++k) gram[k][k] = 1.0;  // pad unused rows

  bool singular = false;
  const std::array<double, 4> a = solve<4>(gram, rhs, &singular);

  // 1-norm condition estimate of the padded Gram matrix via its inverse.
  double cond = 0.0;
  if (!singular) {
    double norm = 0.0;
    double inv_norm = 0.0;
    for (int col = 0; col < 4; ++col) {
      double col_sum = 0.0;
      std::array<double, 4> unit{};
      unit[col] = 1.0;
      const std::array<double, 4> inv_col = solve<4>(gram, unit, &singular);
      double inv_sum = 0.0;
      for (int row = 0; row < 4; ++row) {
        col_sum += std::abs(gram[row][col]);
        inv_sum += std::abs(inv_col[row]);
      }
      norm = std::max(norm, col_sum);
      inv_norm = std::max(inv_norm, inv_sum);
    }
    cond = norm * inv_norm;
  }

  SeriesFit fit;
  fit.ill_conditioned = singular || cond > kConditionLimit;
  fit.coefficients.resize(order + 1);
  fit.coefficients[0] = value_at_zero;
  double scale_k = 1.0;
  for (int k = 0; k < order; ++k) {
    scale_k *= scale;
    fit.coefficients[k + 1] = a[k] / scale_k;
  }
  for (int j = 0; j < kFitSamples; ++j) {
    double model = 0.0;
    double tk = 1.0;
    for (int k = 0; k < order; ++k) {
      tk *= ts[j];
      model += a[k] * tk;
    }
    fit.residual = std::max(fit.residual, std::abs(gs[j] - model));
  }
  return fit;
}

AsymptoteFit fit_asymptote(const std::function<double(double)>& f,
                           double inv_scale) {
  if (!(inv_scale > 0.0)) {
    throw std::invalid_argument("inv_scale must be positive");
  }
  // In u = 1/s the model f(s) ~ slope*s + intercept + inv_coeff/s becomes
  // u*f(1/u) = slope + intercept*u + inv_coeff*u^2, an ordinary quadratic.
  const std::vector<double> us = chebyshev_nodes(kFitSamples, inv_scale);
  std::array<std::array<double, 3>, 3> gram{};
  std::array<double, 3> rhs{};
  std::vector<double> values(kFitSamples);
  for (int j = 0; j < kFitSamples; ++j) {
    const double u = us[j];
    const double value = u * f(1.0 / u);
    if (!std::isfinite(value)) {
      throw NumericError("asymptote fit sampled a non-finite value");
    }
    values[j] = value;
    const std::array<double, 3> basis{1.0, u, u * u};
    for (int k = 0; k < 3; ++k) {
      rhs[k] += basis[k] * value;
      for (int l = 0; l < 3; ++l) gram[k][l] += basis[k] * basis[l];
    }
  }
  bool singular = false;
  const std::array<double, 3> a = solve<3>(gram, rhs, &singular);
  if (singular) throw NumericError("asymptote fit is singular");

  AsymptoteFit fit;
  fit.slope = a[0];
  fit.intercept = a[1];
  fit.inv_coeff = a[2];
  for (int j = 0; j < kFitSamples; ++j) {
    const double u = us[j];
    const double model = a[0] + a[1] * u + a[2] * u * u;
    fit.residual = std::max(fit.residual, std::abs(values[j] - model));
  }
  return fit;
}

}  // namespace otto::opt
