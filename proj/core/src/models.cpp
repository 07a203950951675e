#include "mpsrg/models.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "detail.hpp"
#include "mpsrg/errors.hpp"

namespace mpsrg {

namespace {

Matrix sigma_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Matrix sigma_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Matrix sigma_plus() {
  Matrix m(2, 2);
  m << 0, 1, 0, 0;
  return m;
}

Matrix sigma_minus() {
  Matrix m(2, 2);
  m << 0, 0, 1, 0;
  return m;
}

}  // namespace

ModelId parse_model(const std::string& name) {
  if (name == "aklt") return ModelId::kAklt;
  if (name == "ghz") return ModelId::kGhz;
  if (name == "afm-ghz") return ModelId::kAntiferroGhz;
  if (name == "cluster") return ModelId::kCluster;
  if (name == "model1") return ModelId::kModel1;
  if (name == "model2") return ModelId::kModel2;
  throw UnsupportedModel("unknown model '" + name + "'");
}

std::string model_name(ModelId id) {
  switch (id) {
    case ModelId::kAklt: return "aklt";
    case ModelId::kGhz: return "ghz";
    case ModelId::kAntiferroGhz: return "afm-ghz";
    case ModelId::kCluster: return "cluster";
    case ModelId::kModel1: return "model1";
    case ModelId::kModel2: return "model2";
  }
  throw InternalError("unreachable model id");
}

bool model_has_coupling(ModelId id) {
  return id == ModelId::kModel1 || id == ModelId::kModel2;
}

UniformMps catalog_mps(const ModelPoint& point) {
  const double g = point.g;
  if (model_has_coupling(point.model)) {
    if (!std::isfinite(g)) throw UnsupportedParameter("coupling must be finite");
  } else if (g != 0.0) {
    throw UnsupportedParameter("model does not take a coupling");
  }
  switch (point.model) {
    case ModelId::kAklt:
      return make_uniform_mps({sigma_z(), std::sqrt(2.0) * sigma_plus(),
                               -std::sqrt(2.0) * sigma_minus()});
    case ModelId::kGhz: {
      // (1 +- sigma_z)/sqrt(2): E = 2|00><00| + 2|11><11|.
      const double r2 = std::sqrt(2.0);
      Matrix a0(2, 2), a1(2, 2);
      a0 << r2, 0, 0, 0;
      a1 << 0, 0, 0, r2;
      return make_uniform_mps({a0, a1});
    }
    case ModelId::kAntiferroGhz:
      return make_uniform_mps({sigma_plus(), sigma_minus()});
    case ModelId::kCluster: {
      Matrix a0(2, 2), a1(2, 2);
      a0 << 0, 0, 1, 1;
      a1 << 1, -1, 0, 0;
      return make_uniform_mps({a0, a1});
    }
    case ModelId::kModel1: {
      Matrix a0(2, 2), a1(2, 2);
      a0 << 0, 0, 1, 1;
      a1 << 1, g, 0, 0;
      return make_uniform_mps({a0, a1});
    }
    case ModelId::kModel2:
      // Label order (m = +1, 0, -1) matching S_z = diag(1, 0, -1); the
      // transfer operator is order-independent but the Hamiltonian check
      // is not.
      return make_uniform_mps({sigma_plus(), -sigma_z(), g * sigma_minus()});
  }
  throw InternalError("unreachable model id");
}

double model1_per_block(double g, long L) {
  if (L < 1) throw UnsupportedParameter("block size must be at least 1");
  // 1e-12 guard band: both |g| = 1 points are limits of the surrounding
  // branches, evaluated exactly.
  if (std::abs(std::abs(g) - 1.0) < 1e-12) return g > 0 ? 0.0 : std::log(2.0);
  if (g == 0.0) return 0.0;
  const double dl = static_cast<double>(L);
  if (g > 0) {
    const double t =
        std::pow((1.0 + g) / std::abs(1.0 - g), dl) * std::sqrt(g);
    if (t > 1.0 + g)
      return std::log(2.0) + std::log1p(g) - 2.0 * std::log1p(std::sqrt(g));
    return std::log(2.0) -
           std::log1p(std::pow((1.0 - g) / (1.0 + g), dl) +
                      g * std::pow(1.0 + g, dl - 2.0) *
                          std::pow(std::abs(1.0 - g), -dl));
  }
  const double u = -g;
  const double c = 0.5 * (1.0 + std::sqrt(1.0 + u / ((1.0 - u) * (1.0 - u))));
  return std::log(2.0) -
         std::log1p(c * std::pow(std::abs(1.0 - u) / (1.0 + u), dl));
}

double model1_fixed_point(double g) {
  if (g == 0.0) return 0.0;
  if (g < 0.0) return std::log(2.0);
  return std::log(2.0) + std::log1p(g) - 2.0 * std::log1p(std::sqrt(g));
}

double model2_per_block(double g, long L) {
  if (L < 1) throw UnsupportedParameter("block size must be at least 1");
  const double u = std::abs(g);
  if (u == 0.0) return 0.0;
  const double dl = static_cast<double>(L);
  if (u > 2.0)
    return std::log(2.0) - std::log1p(std::pow((u - 1.0) / (1.0 + u), dl));
  return std::log(2.0) - std::log1p(std::pow(1.0 + u, -dl));
}

double model2_fixed_point(double g) { return g == 0.0 ? 0.0 : std::log(2.0); }

double fidelity_closed_form(double g1, double g2) {
  const double p = g1 * g2;
  if (p >= 0.0) {
    const double s = std::sqrt(p);
    return std::log((1.0 + s) * (1.0 + s) /
                    ((1.0 + std::abs(g1)) * (1.0 + std::abs(g2))));
  }
  return std::log((1.0 + std::abs(p)) /
                  ((1.0 + std::abs(g1)) * (1.0 + std::abs(g2))));
}

double aklt_per_block(long L) {
  if (L < 1) throw UnsupportedParameter("block size must be at least 1");
  return std::log(2.0) - std::log1p(std::pow(-1.0 / 3.0, static_cast<double>(L)));
}

namespace {

// Embed a k-site operator acting on the given (possibly wrapped) ordered
// sites into the d^m-dimensional chain Hamiltonian, site 0 most significant.
void place(Matrix& h, const Matrix& op, const std::vector<long>& sites, long d,
           long m) {
  const long k = static_cast<long>(sites.size());
  std::vector<long> stride(static_cast<size_t>(m), 1);
  for (long s = m - 2; s >= 0; --s)
    stride[static_cast<size_t>(s)] = stride[static_cast<size_t>(s + 1)] * d;
  long dk = 1;
  for (long i = 0; i < k; ++i) dk *= d;

  const long dim = h.rows();
  std::vector<long> digs(static_cast<size_t>(m));
  for (long row = 0; row < dim; ++row) {
    long t = row;
    for (long s = m - 1; s >= 0; --s) {
      digs[static_cast<size_t>(s)] = t % d;
      t /= d;
    }
    long rloc = 0;
    for (long i = 0; i < k; ++i)
      rloc = rloc * d + digs[static_cast<size_t>(sites[static_cast<size_t>(i)])];
    for (long cloc = 0; cloc < dk; ++cloc) {
      const Complex val = op(rloc, cloc);
      if (val == Complex{0.0, 0.0}) continue;
      long col = row;
      long rem = cloc;
      for (long i = k - 1; i >= 0; --i) {
        const long nd = rem % d;
        rem /= d;
        const long site = sites[static_cast<size_t>(i)];
        col += (nd - digs[static_cast<size_t>(site)]) *
               stride[static_cast<size_t>(site)];
      }
      h(row, col) += val;
    }
  }
}

Matrix kron2(const Matrix& a, const Matrix& b) { return detail::kron(a, b); }

}  // namespace

Matrix hamiltonian(const ModelPoint& point, int m) {
  if (m < 3) throw UnsupportedParameter("chain must have at least 3 sites");
  const double g = point.g;
  if (point.model == ModelId::kModel1) {
    const long d = 2;
    long dim = 1;
    for (long i = 0; i < m; ++i) {
      dim *= d;
      if (dim > 1024) throw BudgetExceeded("dense Hamiltonian limited to 1024 states");
    }
    Matrix h = Matrix::Zero(dim, dim);
    const Matrix zz = 2.0 * (g * g - 1.0) * kron2(sigma_z(), sigma_z());
    const Matrix x1 = -(1.0 + g) * (1.0 + g) * sigma_x();
    const Matrix zxz =
        (g - 1.0) * (g - 1.0) * kron2(sigma_z(), kron2(sigma_x(), sigma_z()));
    for (long i = 0; i < m; ++i) {
      place(h, zz, {i, (i + 1) % m}, d, m);
      place(h, x1, {i}, d, m);
      place(h, zxz, {i, (i + 1) % m, (i + 2) % m}, d, m);
    }
    return h;
  }
  if (point.model == ModelId::kModel2) {
    const long d = 3;
    long dim = 1;
    for (long i = 0; i < m; ++i) {
      dim *= d;
      if (dim > 1024) throw BudgetExceeded("dense Hamiltonian limited to 1024 states");
    }
    Matrix sz3 = Matrix::Zero(3, 3);
    sz3(0, 0) = 1.0;
    sz3(2, 2) = -1.0;
    Matrix sp3 = Matrix::Zero(3, 3);
    sp3(0, 1) = sp3(1, 2) = std::sqrt(2.0);
    const Matrix sm3 = sp3.adjoint();
    const Matrix sx3 = 0.5 * (sp3 + sm3);
    const Matrix sy3 = (sp3 - sm3) / Complex(0.0, 2.0);
    const Matrix ss = kron2(sx3, sx3) + kron2(sy3, sy3) + kron2(sz3, sz3);
    const Matrix zz = kron2(sz3, sz3);
    const Matrix t2 = (2.0 + g * g) * ss + 2.0 * ss * ss -
                      (g + 2.0) * (g + 2.0) * zz * zz +
                      g * (g + 2.0) * (zz * ss + ss * zz);
    const Matrix t1 = 2.0 * (4.0 - g * g) * sz3 * sz3;
    Matrix h = Matrix::Zero(dim, dim);
    for (long i = 0; i < m; ++i) {
      place(h, t2, {i, (i + 1) % m}, d, m);
      place(h, t1, {i}, d, m);
    }
    return h;
  }
  throw UnsupportedModel("Hamiltonian defined for model1 and model2 only");
}

}  // namespace mpsrg
