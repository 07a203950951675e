#pragma once

#include <Eigen/Dense>
#include <vector>

#include "mpsrg/mps.hpp"

namespace mpsrg {

// E = sum_p A_p (x) conj(A_p); row index (alpha, mu) = alpha*D + mu with
// alpha the ket bond index and mu the conjugated one. Invariant under
// A_p -> sum_q U_{pq} A_q for unitary U.
struct TransferOperator {
  Matrix matrix;  // D^2 x D^2
  Eigen::Index bond_dim = 0;
};

// Normalized fixed-point Schmidt coefficients, descending, summing to 1.
struct SchmidtSpectrum {
  std::vector<double> values;
};

// Result of the two-site SVD merge: A'_l = lambda_l V^l with V^l reshaped
// to D x D; the merged MPS satisfies E_merged = E^2.
struct MergedSite {
  UniformMps merged;
  std::vector<double> singular_values;  // descending, cut below 1e-12*max
};

TransferOperator transfer_operator(const UniformMps& mps);

// W = sum_p A_p (x) conj(B_p) for two states with equal physical dimension.
Matrix mixed_transfer(const UniformMps& a, const UniformMps& b);

// E -> E^2; iterating l times gives E^(2^l).
TransferOperator rg_step(const TransferOperator& e);

// Stack rows (pq) of [A_p A_q]_{alpha gamma}, SVD, keep singular values
// above 1e-12 * largest.
MergedSite merge_sites(const UniformMps& mps);

// Full eigenvalue list, descending by magnitude; magnitude ties broken by
// descending real part, then descending imaginary part.
Eigen::VectorXcd dominant_spectrum(const TransferOperator& e);

inline constexpr double kDegeneracyTol = 1e-8;  // relative, on |lambda_1|

// Dominant right/left eigenvectors reshaped to D x D matrices, gauged so the
// right one is the identity: factor R = X X^dag, transform L -> X^dag L X,
// diagonalize, normalize to unit sum. Eigenvector phases are fixed by making
// the largest-magnitude entry real positive.
SchmidtSpectrum fixed_point_spectrum(const TransferOperator& e,
                                     double degeneracy_tol = kDegeneracyTol);

// E_inf = -log(lambda_tilde_1).
double fixed_point_entanglement(const SchmidtSpectrum& spec);

// S = -2 sum_i lambda_tilde_i log(lambda_tilde_i); E_inf <= S/2 <= log D.
double fixed_point_entropy(const SchmidtSpectrum& spec);

// E^L computed on the 1/max-entry rescaled operator: result.first is
// (E/scale)^L, result.second is log(scale) so that
// log E^L = log(result.first) + L*result.second entrywise in scale.
std::pair<Matrix, double> scaled_power(const TransferOperator& e, long L);

}  // namespace mpsrg
