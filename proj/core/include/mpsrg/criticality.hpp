#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "mpsrg/models.hpp"

namespace mpsrg {

enum class Side { kLeft, kRight };

struct DerivativeEstimate {
  double value = 0.0;
  Side side = Side::kRight;
  std::vector<double> step_sequence;  // h values, coarse to fine
  int richardson_order = 0;
  bool diverged = false;
  double divergence_exponent = 0.0;  // log-log slope of the raw differences
  double error_bound = 0.0;          // |last - previous| Richardson gap
};

struct ScalingFit {
  double nu = 0.0;
  double exponent_raw = 0.0;  // fitted slope, equals d*nu - 1 with d = 1
  std::vector<double> grid;
  double residual = 0.0;  // fit RMS
  int dimension = 1;
};

struct BetaValue {
  double g = 0.0;
  long L = 0;
  double value = 0.0;  // (E_{2L} - E_L)/log 2
};

// One-sided derivative by Richardson extrapolation on the offset stencil
// D_k = [c(g0 + 2 h_k s) - c(g0 + h_k s)]/(h_k s), s = +-1, h_k = h0/2^k.
// The stencil never evaluates c at g0 itself, so it is usable at cusps and
// branch points. Divergence is flagged when |D_k| grows by at least 2^(1/4)
// per halving over 3 consecutive levels (a power-law derivative ~ h^(-a),
// a >= 1/4, grows like 2^a per halving; smooth curves give ratios -> 1);
// the exponent estimate is the least-squares slope of log|D_k| vs log h_k
// over the finest levels.
DerivativeEstimate one_sided_derivative(
    const std::function<double(double)>& curve, double g0, Side side,
    double h0 = 1e-3, int levels = 4);

// Right minus left derivative; throws DivergedSide if either side diverges.
double derivative_jump(const std::function<double(double)>& curve, double g0);

// (E_{2L}(g) - E_L(g)) / log 2, the discrete d E_L/d log L at base-2 steps,
// evaluated on the closed forms of the catalog models.
BetaValue beta_function(const ModelPoint& point, double g, long L);

// Least-squares fit of log|dE/dg| vs log|g - g_c|; slope = d*nu - 1, d = 1.
ScalingFit extract_nu(const std::vector<std::pair<double, double>>& slopes);

}  // namespace mpsrg
