#include "mpsrg/transfer.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "detail.hpp"
#include "mpsrg/errors.hpp"

namespace mpsrg {

using detail::kron;
using detail::phase_fix;
using detail::reshape_to_matrix;
using detail::spectrum_order;

TransferOperator transfer_operator(const UniformMps& mps) {
  const Eigen::Index D = mps.bond_dim();
  Matrix e = Matrix::Zero(D * D, D * D);
  for (const Matrix& a : mps.tensors) e += kron(a, a.conjugate());
  return {std::move(e), D};
}

Matrix mixed_transfer(const UniformMps& a, const UniformMps& b) {
  if (a.phys_dim() != b.phys_dim())
    throw DimensionMismatch("mixed transfer operator needs equal physical dimensions");
  Matrix w = Matrix::Zero(a.bond_dim() * b.bond_dim(), a.bond_dim() * b.bond_dim());
  for (size_t p = 0; p < a.tensors.size(); ++p)
    w += kron(a.tensors[p], b.tensors[p].conjugate());
  return w;
}

TransferOperator rg_step(const TransferOperator& e) {
  return {e.matrix * e.matrix, e.bond_dim};
}

MergedSite merge_sites(const UniformMps& mps) {
  constexpr double rel_cut = 1e-12;
  const Eigen::Index d = mps.phys_dim();
  const Eigen::Index D = mps.bond_dim();
  // K[(p q), (alpha gamma)] = [A_p A_q]_{alpha gamma}: amplitudes of the
  // two-site cell as a map from bond pair to physical pair.
  Matrix k(d * d, D * D);
  for (Eigen::Index p = 0; p < d; ++p)
    for (Eigen::Index q = 0; q < d; ++q) {
      const Matrix prod = mps.tensors[static_cast<size_t>(p)] *
                          mps.tensors[static_cast<size_t>(q)];
      for (Eigen::Index a = 0; a < D; ++a)
        for (Eigen::Index g = 0; g < D; ++g)
          k(p * d + q, a * D + g) = prod(a, g);
    }
  Eigen::JacobiSVD<Matrix> svd(k, Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  std::vector<Matrix> tensors;
  std::vector<double> kept;
  for (Eigen::Index l = 0; l < sv.size(); ++l) {
    if (sv[l] <= rel_cut * sv[0]) break;
    // sum_{pq} K^dag K = conj(V) Sigma^2 V^T, so the merged catalog
    // sigma_l * reshape(conj(V_l)) reproduces E^2 exactly.
    tensors.push_back(sv[l] * reshape_to_matrix(svd.matrixV().col(l).conjugate(), D));
    kept.push_back(sv[l]);
  }
  if (tensors.empty()) throw NullState("merged site has no nonzero singular values");
  return {make_uniform_mps(std::move(tensors)), std::move(kept)};
}

Eigen::VectorXcd dominant_spectrum(const TransferOperator& e) {
  const double scale = e.matrix.cwiseAbs().maxCoeff();
  if (scale == 0.0) throw NullState("transfer operator is identically zero");
  Eigen::ComplexEigenSolver<Matrix> es(e.matrix / scale, /*computeEigenvectors=*/false);
  const Eigen::VectorXcd w = es.eigenvalues() * scale;
  const auto order = spectrum_order(w);
  Eigen::VectorXcd out(w.size());
  for (Eigen::Index i = 0; i < w.size(); ++i)
    out[i] = w[order[static_cast<size_t>(i)]];
  return out;
}

std::pair<Matrix, double> scaled_power(const TransferOperator& e, long L) {
  if (L < 1) throw UnsupportedParameter("block size must be at least 1");
  const double scale = e.matrix.cwiseAbs().maxCoeff();
  if (scale == 0.0) throw NullState("transfer operator is identically zero");
  Matrix base = e.matrix / scale;
  Matrix acc = Matrix::Identity(e.matrix.rows(), e.matrix.cols());
  long n = L;
  while (n > 0) {
    if (n & 1) acc = acc * base;
    base = base * base;
    n >>= 1;
  }
  return {std::move(acc), std::log(scale)};
}

SchmidtSpectrum fixed_point_spectrum(const TransferOperator& e, double degeneracy_tol) {
  const Eigen::Index D = e.bond_dim;
  const double scale = e.matrix.cwiseAbs().maxCoeff();
  if (scale == 0.0) throw NullState("transfer operator is identically zero");
  const Matrix em = e.matrix / scale;

  Eigen::ComplexEigenSolver<Matrix> es(em);
  if (es.info() != Eigen::Success)
    throw NonDiagonalizableFixedPoint("transfer operator eigendecomposition failed");
  const auto order = spectrum_order(es.eigenvalues());
  const Complex lam1 = es.eigenvalues()[order[0]];
  if (order.size() > 1) {
    const Complex lam2 = es.eigenvalues()[order[1]];
    if (std::abs(std::abs(lam2) - std::abs(lam1)) <= degeneracy_tol * std::abs(lam1))
      throw DegenerateDominantEigenvalue(
          "dominant transfer eigenvalue is degenerate; no unique fixed point");
  }
  const Vector rvec = phase_fix(es.eigenvectors().col(order[0]).normalized());

  // Left fixed point from the adjoint problem: E^dag w = conj(lambda1) w.
  Eigen::ComplexEigenSolver<Matrix> esl(em.adjoint());
  if (esl.info() != Eigen::Success)
    throw NonDiagonalizableFixedPoint("adjoint eigendecomposition failed");
  Eigen::Index kl = 0;
  (esl.eigenvalues().array() - std::conj(lam1)).abs().minCoeff(&kl);
  const Vector lvec = phase_fix(esl.eigenvectors().col(kl).normalized());

  Matrix r = reshape_to_matrix(rvec, D);
  Matrix l = reshape_to_matrix(lvec, D);

  // Fixed points of a well-defined state are Hermitian (up to the fixed
  // global phase) and positive semidefinite.
  const auto hermitize = [](Matrix& m, const char* what) {
    const double dev = (m - m.adjoint()).norm();
    if (dev > 1e-8 * std::max(1.0, m.norm()))
      throw NonDiagonalizableFixedPoint(std::string(what) +
                                        " fixed point is not Hermitian");
    m = 0.5 * (m + Matrix(m.adjoint()));
  };
  hermitize(r, "right");
  hermitize(l, "left");

  Eigen::SelfAdjointEigenSolver<Matrix> rsa(r);
  Eigen::VectorXd rw = rsa.eigenvalues();
  double rmax = rw.cwiseAbs().maxCoeff();
  if (rmax <= 0.0) throw RankDeficientFixedPoint("right fixed point vanishes");
  if (-rw.minCoeff() > rw.maxCoeff()) {
    // A globally negative fixed point is a leftover sign; flip it.
    r = -r;
    rsa.compute(r);
    rw = rsa.eigenvalues();
    rmax = rw.cwiseAbs().maxCoeff();
  }
  if (rw.minCoeff() < -1e-10 * rmax)
    throw RankDeficientFixedPoint("right fixed point is not positive semidefinite");
  if (rw.maxCoeff() <= 1e-12 * rmax)
    throw RankDeficientFixedPoint("right fixed point has no positive support");

  // X = sqrt(r) restricted to the positive support.
  Eigen::VectorXd sq = rw.cwiseMax(0.0).cwiseSqrt();
  const Matrix x = rsa.eigenvectors() * sq.asDiagonal() * rsa.eigenvectors().adjoint();

  Matrix lg = x.adjoint() * l * x;
  hermitize(lg, "gauged left");
  Eigen::SelfAdjointEigenSolver<Matrix> lsa(lg);
  Eigen::VectorXd w = lsa.eigenvalues();
  if (-w.minCoeff() > w.maxCoeff()) w = -w;
  std::vector<double> vals;
  const double wmax = w.cwiseAbs().maxCoeff();
  if (wmax <= 0.0) throw RankDeficientFixedPoint("gauged left fixed point vanishes");
  for (Eigen::Index i = w.size() - 1; i >= 0; --i)
    if (w[i] > 1e-12 * wmax) vals.push_back(w[i]);
  if (vals.empty())
    throw RankDeficientFixedPoint("gauged left fixed point has no positive support");
  std::sort(vals.begin(), vals.end(), std::greater<double>());
  const double total = std::accumulate(vals.begin(), vals.end(), 0.0);
  for (double& v : vals) v /= total;
  return {std::move(vals)};
}

double fixed_point_entanglement(const SchmidtSpectrum& spec) {
  if (spec.values.empty()) throw NullState("empty Schmidt spectrum");
  return -std::log(spec.values.front());
}

double fixed_point_entropy(const SchmidtSpectrum& spec) {
  if (spec.values.empty()) throw NullState("empty Schmidt spectrum");
  double h = 0.0;
  for (double v : spec.values)
    if (v > 0.0) h -= 2.0 * v * std::log(v);
  return h;
}

}  // namespace mpsrg
