#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <vector>

#include "mpsrg/mps.hpp"

namespace mpsrg::detail {

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Largest-magnitude entry made real positive; deterministic eigenvector
// gauge (the first index wins exact magnitude ties).
inline Vector phase_fix(const Vector& v) {
  Eigen::Index k = 0;
  v.cwiseAbs().maxCoeff(&k);
  const Complex z = v[k];
  if (std::abs(z) == 0.0) return v;
  return v * (std::abs(z) / z);
}

// vec index (alpha, mu) = alpha*D + mu.
inline Matrix reshape_to_matrix(const Vector& v, Eigen::Index D) {
  Matrix m(D, D);
  for (Eigen::Index a = 0; a < D; ++a)
    for (Eigen::Index mu = 0; mu < D; ++mu) m(a, mu) = v[a * D + mu];
  return m;
}

// Descending |lambda|; exact magnitude ties broken by descending real part,
// then descending imaginary part.
inline std::vector<Eigen::Index> spectrum_order(const Eigen::VectorXcd& w) {
  std::vector<Eigen::Index> idx(static_cast<size_t>(w.size()));
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](Eigen::Index i, Eigen::Index j) {
    const double ai = std::abs(w[i]), aj = std::abs(w[j]);
    if (ai != aj) return ai > aj;
    if (w[i].real() != w[j].real()) return w[i].real() > w[j].real();
    return w[i].imag() > w[j].imag();
  });
  return idx;
}

// Dominant-magnitude eigenpair of a small dense complex matrix.
inline std::pair<Complex, Vector> dominant_eig(const Matrix& b) {
  Eigen::ComplexEigenSolver<Matrix> es(b);
  Eigen::Index k = 0;
  es.eigenvalues().cwiseAbs().maxCoeff(&k);
  Vector v = es.eigenvectors().col(k);
  v /= v.norm();
  return {es.eigenvalues()[k], phase_fix(v)};
}

// z^n by binary exponentiation; exact multiplications, no log branch cuts.
inline Complex ipow(Complex z, long n) {
  Complex r{1.0, 0.0};
  while (n > 0) {
    if (n & 1) r *= z;
    z *= z;
    n >>= 1;
  }
  return r;
}

}  // namespace mpsrg::detail
