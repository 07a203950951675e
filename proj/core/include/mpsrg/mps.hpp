#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "mpsrg/errors.hpp"

namespace mpsrg {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Translation-invariant MPS |psi> = sum_p Tr(A_{p_1} ... A_{p_m}) |p_1..p_m>,
// periodic (trace) closure, one D x D matrix per physical label.
// States are unnormalized by convention; downstream quantities divide
// explicitly by Tr(E^m).
struct UniformMps {
  std::vector<Matrix> tensors;

  int phys_dim() const { return static_cast<int>(tensors.size()); }
  Eigen::Index bond_dim() const { return tensors.empty() ? 0 : tensors[0].rows(); }
};

// Default refusal threshold for dense d^m objects: 2^20 vector entries.
inline constexpr std::int64_t kStateVectorBudget = std::int64_t{1} << 20;

// Validates squareness, equal dimensions and non-nullness.
UniformMps make_uniform_mps(std::vector<Matrix> matrices);

// Tr(A_{p_1} ... A_{p_m}), unnormalized.
Complex amplitude(const UniformMps& mps, std::span<const int> config);

struct StateVector {
  Vector amplitudes;  // lexicographic, p_1 most significant digit
  double norm;        // Euclidean norm of `amplitudes`
};

// All d^m amplitudes; refuses above `budget` entries.
StateVector state_vector(const UniformMps& mps, int m,
                         std::int64_t budget = kStateVectorBudget);

// Tr(E^m) = sum_config |amplitude|^2, real and nonnegative.
double norm_sq(const UniformMps& mps, int m);

// |0101..> + |1010..> for even m; the period-2 state is supplied only as a
// finite-chain vector, never as a UniformMps.
StateVector antiferro_ghz_state_vector(int m);

}  // namespace mpsrg
