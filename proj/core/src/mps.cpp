#include "mpsrg/mps.hpp"

#include <cmath>

#include "mpsrg/transfer.hpp"

namespace mpsrg {

UniformMps make_uniform_mps(std::vector<Matrix> matrices) {
  if (matrices.empty()) {
    throw DimensionMismatch("make_uniform_mps: empty matrix list");
  }
  const Eigen::Index d0 = matrices[0].rows();
  bool any_nonzero = false;
  for (const auto& a : matrices) {
    if (a.rows() != a.cols() || a.rows() != d0) {
      throw DimensionMismatch("make_uniform_mps: matrices must be square and equal-sized");
    }
    if (a.cwiseAbs().maxCoeff() > 0.0) any_nonzero = true;
  }
  if (!any_nonzero) {
    throw NullState("make_uniform_mps: all site matrices are zero");
  }
  return UniformMps{std::move(matrices)};
}

Complex amplitude(const UniformMps& mps, std::span<const int> config) {
  const int d = mps.phys_dim();
  Matrix prod = Matrix::Identity(mps.bond_dim(), mps.bond_dim());
  for (int p : config) {
    if (p < 0 || p >= d) {
      throw LabelOutOfRange("amplitude: label outside [0, d)");
    }
    prod = prod * mps.tensors[p];
  }
  return prod.trace();
}

StateVector state_vector(const UniformMps& mps, int m, std::int64_t budget) {
  const int d = mps.phys_dim();
  const Eigen::Index D = mps.bond_dim();
  std::int64_t dim = 1;
  for (int i = 0; i < m; ++i) {
    dim *= d;
    if (dim > budget) {
      throw BudgetExceeded("state_vector: d^m exceeds the memory budget");
    }
  }
  // Build partial products left to right: level i holds all d^i products.
  // Lexicographic order with p_1 most significant falls out of the loop order.
  std::vector<Matrix> partial{Matrix::Identity(D, D)};
  for (int site = 0; site < m; ++site) {
    std::vector<Matrix> next;
    next.reserve(partial.size() * d);
    for (const auto& pfx : partial) {
      for (int p = 0; p < d; ++p) next.push_back(pfx * mps.tensors[p]);
    }
    partial = std::move(next);
  }
  StateVector out;
  out.amplitudes.resize(static_cast<Eigen::Index>(dim));
  for (std::int64_t i = 0; i < dim; ++i) {
    out.amplitudes[static_cast<Eigen::Index>(i)] = partial[static_cast<size_t>(i)].trace();
  }
  out.norm = out.amplitudes.norm();
  return out;
}

double norm_sq(const UniformMps& mps, int m) {
  // Tr(E^m) on the rescaled operator; the trace of a power of a real-spectrum
  // pair sum is real up to rounding.
  const TransferOperator e = transfer_operator(mps);
  auto [p, logscale] = scaled_power(e, m);
  return p.trace().real() * std::exp(static_cast<double>(m) * logscale);
}

StateVector antiferro_ghz_state_vector(int m) {
  if (m < 2 || m % 2 != 0) {
    throw UnsupportedParameter("antiferro_ghz_state_vector: m must be even and >= 2");
  }
  std::int64_t dim = std::int64_t{1} << m;
  if (dim > kStateVectorBudget) {
    throw BudgetExceeded("antiferro_ghz_state_vector: 2^m exceeds the budget");
  }
  StateVector out;
  out.amplitudes = Vector::Zero(static_cast<Eigen::Index>(dim));
  std::int64_t even = 0, odd = 0;  // 0101.. and 1010.. bit patterns
  for (int site = 0; site < m; ++site) {
    // p_1 is the most significant digit.
    even = (even << 1) | (site % 2);
    odd = (odd << 1) | ((site + 1) % 2);
  }
  out.amplitudes[static_cast<Eigen::Index>(even)] = 1.0;
  out.amplitudes[static_cast<Eigen::Index>(odd)] = 1.0;
  out.norm = out.amplitudes.norm();
  return out;
}

}  // namespace mpsrg
