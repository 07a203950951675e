#pragma once

#include "mpsrg/mps.hpp"
#include "mpsrg/transfer.hpp"

namespace mpsrg {

struct TwoSiteDensity {
  Matrix rho;                // d^2 x d^2, Hermitian, unit trace
  bool from_finite_chain = false;  // degenerate transfer spectrum fallback
};

// Nearest-neighbor reduced density matrix.
// Infinite-chain path: rho_{(pq),(p'q')} ∝ l^dag (A_p A_q (x) conj(A_p' A_q')) r
// with l, r the dominant left/right transfer eigenvectors; a degenerate
// dominant eigenvalue routes to the finite-chain path at m = 12.
TwoSiteDensity two_site_rdm(const UniformMps& mps);

// Same matrix element from the exact finite-m trace closure,
// rho ∝ Tr[(A_p A_q (x) conj(A_p' A_q')) E^(m-2)]; agrees with the dense
// state_vector reduction at the same m to rounding.
TwoSiteDensity two_site_rdm_finite(const UniformMps& mps, int m);

// Wootters concurrence of a qubit-pair density matrix:
// C = max(0, s1-s2-s3-s4), s_i descending square roots of the eigenvalues of
// rho (sy (x) sy) conj(rho) (sy (x) sy). Eigenvalues in [-1e-9, 0) clamp to 0.
double concurrence(const TwoSiteDensity& rho);

// f = 2 log|mu_1(W)| - log lambda_1(E1) - log lambda_1(E2): the even-m
// m -> infinity limit of (1/m) log[|Tr W^m|^2/(Tr E1^m Tr E2^m)].
double fidelity_per_site(const UniformMps& a, const UniformMps& b);

// <psi|H|psi>/<psi|psi> from the dense finite-chain vector.
double mps_energy(const UniformMps& mps, const Matrix& hamiltonian, int m);

}  // namespace mpsrg
