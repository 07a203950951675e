#include "mpsrg/criticality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "mpsrg/errors.hpp"
#include "mpsrg/models.hpp"

namespace mpsrg {

namespace {

double eval_curve(const std::function<double(double)>& curve, double g) {
  double v = std::numeric_limits<double>::quiet_NaN();
  try {
    v = curve(g);
  } catch (const std::exception& e) {
    throw EvaluationFailed(std::string("curve evaluation failed: ") + e.what());
  }
  if (!std::isfinite(v)) throw EvaluationFailed("curve returned a non-finite value");
  return v;
}

}  // namespace

DerivativeEstimate one_sided_derivative(const std::function<double(double)>& curve,
                                        double g0, Side side, double h0,
                                        int levels) {
  if (!(h0 > 0.0)) throw UnsupportedParameter("step h0 must be positive");
  if (levels < 2) throw UnsupportedParameter("need at least two Richardson levels");
  const double sgn = (side == Side::kRight) ? 1.0 : -1.0;

  DerivativeEstimate est;
  est.side = side;
  std::vector<double> d(static_cast<size_t>(levels));
  double h = h0;
  for (int k = 0; k < levels; ++k) {
    // Two-point stencil strictly inside the open side; g0 itself is never
    // evaluated, so cusps and one-sided domains are safe.
    const double a = eval_curve(curve, g0 + sgn * 2.0 * h);
    const double b = eval_curve(curve, g0 + sgn * h);
    d[static_cast<size_t>(k)] = sgn * (a - b) / h;
    est.step_sequence.push_back(h);
    h *= 0.5;
  }

  // A derivative diverging as |g-g0|^p with p<0 makes |D_k| grow by 2^{-p}
  // per halving; the -1/2 power grows by sqrt(2). Flag divergence when the
  // last three ratios all exceed 2^{1/4}, the midpoint between convergent
  // (ratio -> 1) and that slowest relevant divergence.
  const double threshold = std::pow(2.0, 0.25);
  int growing = 0;
  for (size_t k = d.size() - 1; k >= 1 && k + 3 >= d.size(); --k) {
    if (std::abs(d[k - 1]) > 0.0 &&
        std::abs(d[k]) / std::abs(d[k - 1]) >= threshold)
      ++growing;
  }
  if (growing >= std::min<int>(3, levels - 1)) {
    est.diverged = true;
    // Log-log slope of |D_k| against h_k estimates the divergence power.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const auto n = static_cast<double>(d.size());
    for (size_t k = 0; k < d.size(); ++k) {
      const double x = std::log(est.step_sequence[k]);
      const double y = std::log(std::abs(d[k]));
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    est.divergence_exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    est.value = d.back();
    est.richardson_order = 0;
    est.error_bound = std::abs(d[d.size() - 1] - d[d.size() - 2]);
    return est;
  }

  // Richardson on the h-halving ladder; the stencil error is a power series
  // in h, so level j cancels the O(h^j) term.
  std::vector<double> row = d;
  double prev_best = row.back();
  for (int j = 1; j < levels; ++j) {
    const double w = std::pow(2.0, j);
    std::vector<double> next(row.size() - 1);
    for (size_t k = 0; k + 1 < row.size(); ++k)
      next[k] = (w * row[k + 1] - row[k]) / (w - 1.0);
    prev_best = row.back();
    row = std::move(next);
  }
  est.value = row.front();
  est.richardson_order = levels - 1;
  est.error_bound = std::abs(est.value - prev_best);
  est.diverged = false;
  return est;
}

double derivative_jump(const std::function<double(double)>& curve, double g0) {
  const DerivativeEstimate right =
      one_sided_derivative(curve, g0, Side::kRight);
  const DerivativeEstimate left = one_sided_derivative(curve, g0, Side::kLeft);
  if (right.diverged || left.diverged)
    throw DivergedSide("one-sided derivative diverges; jump undefined");
  return right.value - left.value;
}

BetaValue beta_function(const ModelPoint& point, double g, long L) {
  if (L < 2 || L % 2 != 0)
    throw UnsupportedParameter("beta function needs a positive even block size");
  double e1 = 0.0, e2 = 0.0;
  switch (point.model) {
    case ModelId::kAklt:
      e1 = aklt_per_block(L);
      e2 = aklt_per_block(2 * L);
      break;
    case ModelId::kGhz:
    case ModelId::kAntiferroGhz:
      break;  // per-block entanglement identically zero
    case ModelId::kCluster:
      e1 = e2 = std::log(2.0);
      break;
    case ModelId::kModel1:
      e1 = model1_per_block(g, L);
      e2 = model1_per_block(g, 2 * L);
      break;
    case ModelId::kModel2:
      e1 = model2_per_block(g, L);
      e2 = model2_per_block(g, 2 * L);
      break;
  }
  return {g, L, (e2 - e1) / std::log(2.0)};
}

ScalingFit extract_nu(const std::vector<std::pair<double, double>>& slopes) {
  if (slopes.size() < 4)
    throw UnsupportedParameter("exponent fit needs at least 4 points");
  for (const auto& [dg, s] : slopes)
    if (!(dg > 0.0) || !(s > 0.0))
      throw UnsupportedParameter("exponent fit needs strictly positive pairs");

  const auto n = static_cast<double>(slopes.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [dg, s] : slopes) {
    const double x = std::log(dg);
    const double y = std::log(s);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double var = n * sxx - sx * sx;
  if (std::abs(var) < 1e-14 * std::max(1.0, sxx * n))
    throw DegenerateFit("zero variance in |g - g_c| grid");
  const double slope = (n * sxy - sx * sy) / var;
  const double intercept = (sy - slope * sx) / n;

  ScalingFit fit;
  fit.exponent_raw = slope;
  fit.nu = slope + 1.0;  // slope = d*nu - 1 with d = 1
  double ss = 0.0;
  for (const auto& [dg, s] : slopes) {
    const double rres = std::log(s) - (intercept + slope * std::log(dg));
    ss += rres * rres;
  }
  fit.residual = std::sqrt(ss / n);
  fit.grid.reserve(slopes.size());
  for (const auto& [dg, s] : slopes) fit.grid.push_back(dg);
  return fit;
}

}  // namespace mpsrg
