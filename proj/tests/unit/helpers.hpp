#pragma once

#include <cstdint>
#include <random>

#include "mpsrg/models.hpp"
#include "mpsrg/mps.hpp"

namespace testutil {

inline Eigen::MatrixXcd random_unitary(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  Eigen::MatrixXcd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = mpsrg::Complex(nd(rng), nd(rng));
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
  return qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
}

// Bond gauge A_p -> U A_p U^dag; leaves every trace amplitude invariant.
inline mpsrg::UniformMps gauge(const mpsrg::UniformMps& mps, const Eigen::MatrixXcd& u) {
  std::vector<mpsrg::Matrix> out;
  out.reserve(mps.tensors.size());
  for (const auto& a : mps.tensors) out.push_back(u * a * u.adjoint());
  return mpsrg::make_uniform_mps(std::move(out));
}

// Physical mixing B_p = sum_q U_{pq} A_q; leaves the transfer operator
// invariant for unitary U.
inline mpsrg::UniformMps mix(const mpsrg::UniformMps& mps, const Eigen::MatrixXcd& u) {
  int d = mps.phys_dim();
  std::vector<mpsrg::Matrix> out(static_cast<std::size_t>(d));
  for (int p = 0; p < d; ++p) {
    mpsrg::Matrix b = mpsrg::Matrix::Zero(mps.bond_dim(), mps.bond_dim());
    for (int q = 0; q < d; ++q) b += u(p, q) * mps.tensors[static_cast<std::size_t>(q)];
    out[static_cast<std::size_t>(p)] = b;
  }
  return mpsrg::make_uniform_mps(std::move(out));
}

inline mpsrg::UniformMps model(mpsrg::ModelId id, double g = 0.0) {
  return mpsrg::catalog_mps({id, g});
}

// Dense two-site reduced density matrix from the full state vector: trace
// out sites 3..m with p_1 the most significant amplitude digit.
inline mpsrg::Matrix dense_two_site_rdm(const mpsrg::UniformMps& mps, int m) {
  mpsrg::StateVector sv = mpsrg::state_vector(mps, m);
  Eigen::Index rows = static_cast<Eigen::Index>(mps.phys_dim()) * mps.phys_dim();
  Eigen::Index cols = sv.amplitudes.size() / rows;
  Eigen::Map<const Eigen::Matrix<mpsrg::Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
      block(sv.amplitudes.data(), rows, cols);
  mpsrg::Matrix rho = block * block.adjoint();
  rho /= rho.trace();
  return rho;
}

}  // namespace testutil
