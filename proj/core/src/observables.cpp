#include "mpsrg/observables.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "detail.hpp"
#include "mpsrg/errors.hpp"
#include "mpsrg/transfer.hpp"

namespace mpsrg {

namespace {

using detail::kron;
using detail::phase_fix;
using detail::spectrum_order;

// Common tail: fix the overall phase through the complex trace, then
// enforce the Hermitian unit-trace invariants.
TwoSiteDensity finalize_density(Matrix rho, bool finite) {
  const Complex tr = rho.trace();
  if (std::abs(tr) == 0.0) throw NullState("two-site density has zero trace");
  rho /= tr;
  const double herm_dev = (rho - Matrix(rho.adjoint())).norm();
  if (herm_dev > 1e-10 * std::max(1.0, rho.norm()))
    throw InternalError("two-site density is not Hermitian");
  rho = 0.5 * (rho + Matrix(rho.adjoint()));
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
  if (es.eigenvalues().minCoeff() < -1e-9)
    throw InternalError("two-site density is not positive semidefinite");
  return {std::move(rho), finite};
}

Matrix raw_rdm(const UniformMps& mps, const Matrix& env) {
  // rho[(pq),(p'q')] = <l| (A_p A_q) (x) conj(A_{p'} A_{q'}) |r> with env the
  // rank-one (infinite) or power (finite-ring) closure of the other sites;
  // both cases reduce to Tr[env * kron(A_p A_q, conj(A_{p'} A_{q'}))].
  const Eigen::Index d = mps.phys_dim();
  Matrix rho(d * d, d * d);
  std::vector<Matrix> pair(static_cast<size_t>(d * d));
  for (Eigen::Index p = 0; p < d; ++p)
    for (Eigen::Index q = 0; q < d; ++q)
      pair[static_cast<size_t>(p * d + q)] =
          mps.tensors[static_cast<size_t>(p)] * mps.tensors[static_cast<size_t>(q)];
  for (Eigen::Index r = 0; r < d * d; ++r)
    for (Eigen::Index c = 0; c < d * d; ++c)
      rho(r, c) =
          (env * kron(pair[static_cast<size_t>(r)],
                      pair[static_cast<size_t>(c)].conjugate()))
              .trace();
  return rho;
}

}  // namespace

TwoSiteDensity two_site_rdm_finite(const UniformMps& mps, int m) {
  if (m < 4) throw UnsupportedParameter("finite-chain fallback needs m >= 4");
  const TransferOperator e = transfer_operator(mps);
  // Closure of the remaining m-2 ring sites; the power scaling cancels in
  // the unit-trace normalization.
  const Matrix env = scaled_power(e, m - 2).first;
  return finalize_density(raw_rdm(mps, env), /*finite=*/true);
}

TwoSiteDensity two_site_rdm(const UniformMps& mps) {
  const TransferOperator e = transfer_operator(mps);
  const double scale = e.matrix.cwiseAbs().maxCoeff();
  if (scale == 0.0) throw NullState("transfer operator is identically zero");

  Eigen::ComplexEigenSolver<Matrix> es(e.matrix / scale);
  const auto order = spectrum_order(es.eigenvalues());
  const Complex lam1 = es.eigenvalues()[order[0]];
  if (order.size() > 1) {
    const Complex lam2 = es.eigenvalues()[order[1]];
    if (std::abs(std::abs(lam2) - std::abs(lam1)) <=
        kDegeneracyTol * std::abs(lam1))
      return two_site_rdm_finite(mps, 12);
  }
  const Vector r = phase_fix(es.eigenvectors().col(order[0]).normalized());
  Eigen::ComplexEigenSolver<Matrix> esl(e.matrix.adjoint() / scale);
  Eigen::Index kl = 0;
  (esl.eigenvalues().array() - std::conj(lam1)).abs().minCoeff(&kl);
  const Vector l = phase_fix(esl.eigenvectors().col(kl).normalized());

  // E^{m-2} -> lambda1^{m-2} |r><l| / <l|r>; the prefactor cancels in the
  // trace normalization, so the rank-one environment suffices.
  const Matrix env = r * l.adjoint();
  return finalize_density(raw_rdm(mps, env), /*finite=*/false);
}

double concurrence(const TwoSiteDensity& density) {
  const Matrix& rho = density.rho;
  if (rho.rows() != 4 || rho.cols() != 4)
    throw NotQubits("concurrence is defined for qubit pairs only");

  // Clamp roundoff negativity before the Wootters square roots.
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
  Eigen::VectorXd w = es.eigenvalues();
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (w[i] < -1e-9) throw InternalError("density matrix is not positive semidefinite");
    if (w[i] < 0.0) w[i] = 0.0;
  }
  const Matrix rho_psd =
      es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();

  Matrix yy = Matrix::Zero(4, 4);
  yy(0, 3) = -1;
  yy(1, 2) = 1;
  yy(2, 1) = 1;
  yy(3, 0) = -1;
  const Matrix rho_tilde = yy * rho_psd.conjugate() * yy;
  Eigen::ComplexEigenSolver<Matrix> prod(rho_psd * rho_tilde, false);
  std::vector<double> s;
  for (Eigen::Index i = 0; i < 4; ++i)
    s.push_back(std::sqrt(std::max(0.0, prod.eigenvalues()[i].real())));
  std::sort(s.begin(), s.end(), std::greater<double>());
  const double c = s[0] - s[1] - s[2] - s[3];
  return std::clamp(c, 0.0, 1.0);
}

double fidelity_per_site(const UniformMps& a, const UniformMps& b) {
  const TransferOperator w{mixed_transfer(a, b), a.bond_dim() * b.bond_dim()};
  const double mu = std::abs(dominant_spectrum(w)[0]);
  const double l1 = std::abs(dominant_spectrum(transfer_operator(a))[0]);
  const double l2 = std::abs(dominant_spectrum(transfer_operator(b))[0]);
  if (mu == 0.0 || l1 == 0.0 || l2 == 0.0)
    throw NullState("vanishing dominant eigenvalue in fidelity");
  // Even-m limit of (1/m) log[|Tr W^m|^2 / (Tr E1^m Tr E2^m)]: only the
  // dominant magnitudes survive.
  return 2.0 * std::log(mu) - std::log(l1) - std::log(l2);
}

double mps_energy(const UniformMps& mps, const Matrix& h, int m) {
  const StateVector sv = state_vector(mps, m);
  if (h.rows() != sv.amplitudes.size() || h.cols() != sv.amplitudes.size())
    throw DimensionMismatch("Hamiltonian dimension does not match the chain");
  const double nrm2 = sv.amplitudes.squaredNorm();
  if (!(nrm2 > 0.0)) throw NullState("state vector has zero norm");
  const Complex num = (sv.amplitudes.adjoint() * h * sv.amplitudes)(0, 0);
  return num.real() / nrm2;
}

}  // namespace mpsrg
