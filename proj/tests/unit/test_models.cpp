#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "mpsrg/errors.hpp"
#include "mpsrg/models.hpp"

using namespace mpsrg;
using testutil::model;

namespace {
double rel_gap(const Matrix& h, const Vector& psi) {
  Complex num = psi.adjoint() * h * psi;
  double r = num.real() / psi.squaredNorm();
  return (h * psi - r * psi).norm() / (psi.norm() * std::max(1.0, std::abs(r)));
}
}  // namespace

TEST_SUITE("models") {
  TEST_CASE("name parsing round trips") {
    for (const char* name : {"aklt", "ghz", "afm-ghz", "cluster", "model1", "model2"}) {
      CHECK(model_name(parse_model(name)) == name);
    }
    CHECK_THROWS_AS(parse_model("ising"), UnsupportedModel);
    CHECK(model_has_coupling(ModelId::kModel1));
    CHECK(model_has_coupling(ModelId::kModel2));
    CHECK_FALSE(model_has_coupling(ModelId::kAklt));
    CHECK_FALSE(model_has_coupling(ModelId::kGhz));
  }

  TEST_CASE("catalog matrices") {
    UniformMps ghz = model(ModelId::kGhz);
    CHECK(std::abs(ghz.tensors[0](0, 0) - Complex(std::sqrt(2.0), 0)) < 1e-15);
    CHECK(std::abs(ghz.tensors[1](1, 1) - Complex(std::sqrt(2.0), 0)) < 1e-15);
    CHECK(std::abs(ghz.tensors[0](1, 1)) < 1e-15);

    UniformMps m1 = model(ModelId::kModel1, 3.0);
    CHECK(std::abs(m1.tensors[0](1, 0) - Complex(1, 0)) < 1e-15);
    CHECK(std::abs(m1.tensors[0](1, 1) - Complex(1, 0)) < 1e-15);
    CHECK(std::abs(m1.tensors[1](0, 1) - Complex(3, 0)) < 1e-15);

    UniformMps m2 = model(ModelId::kModel2, 2.5);
    CHECK(m2.phys_dim() == 3);
    CHECK(std::abs(m2.tensors[0](0, 1) - Complex(1, 0)) < 1e-15);   // sigma+
    CHECK(std::abs(m2.tensors[1](0, 0) - Complex(-1, 0)) < 1e-15);  // -sigma_z
    CHECK(std::abs(m2.tensors[2](1, 0) - Complex(2.5, 0)) < 1e-15); // g sigma-

    // Cluster is model 1 at g = -1.
    UniformMps cl = model(ModelId::kCluster);
    UniformMps m1n = model(ModelId::kModel1, -1.0);
    for (int p : {0, 1}) {
      CHECK((cl.tensors[p] - m1n.tensors[p]).cwiseAbs().maxCoeff() < 1e-15);
    }

    CHECK_THROWS_AS(model(ModelId::kAklt, 0.3), UnsupportedParameter);
    CHECK_THROWS_AS(model(ModelId::kModel1, std::nan("")), UnsupportedParameter);
  }

  TEST_CASE("closed forms: anchors and limits") {
    CHECK(aklt_per_block(2) == doctest::Approx(std::log(9.0 / 5.0)).epsilon(1e-14));
    CHECK(aklt_per_block(1) == doctest::Approx(std::log(2.0) - std::log1p(-1.0 / 3.0)).epsilon(1e-14));

    // Product point, cluster point, and the deep-block limit.
    for (long L : {1L, 2L, 5L, 12L}) {
      CHECK(model1_per_block(1.0, L) == doctest::Approx(0.0));
      CHECK(model1_per_block(-1.0, L) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
      CHECK(model1_per_block(0.0, L) == doctest::Approx(0.0));
      CHECK(model2_per_block(0.0, L) == doctest::Approx(0.0));
    }
    CHECK(model1_per_block(4.0, 40) == doctest::Approx(model1_fixed_point(4.0)).epsilon(1e-10));
    CHECK(model1_fixed_point(4.0) == doctest::Approx(std::log(10.0 / 9.0)).epsilon(1e-14));
    CHECK(model1_fixed_point(-0.5) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
    CHECK(model1_fixed_point(0.0) == doctest::Approx(0.0));

    // Model 2 touches the AKLT value at the cusp couplings for even blocks.
    for (long L : {2L, 4L}) {
      CHECK(model2_per_block(2.0, L) == doctest::Approx(aklt_per_block(L)).epsilon(1e-14));
      CHECK(model2_per_block(-2.0, L) == doctest::Approx(aklt_per_block(L)).epsilon(1e-14));
    }
    CHECK(model2_fixed_point(0.7) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
    CHECK(model2_fixed_point(0.0) == doctest::Approx(0.0));

    // Ratio forms stay finite at extreme couplings.
    CHECK(std::isfinite(model1_per_block(1e10, 8)));
    CHECK(std::isfinite(model2_per_block(1e10, 2)));
    CHECK(model2_per_block(1e10, 2) == doctest::Approx(0.0).epsilon(1e-9));

    CHECK_THROWS_AS(model1_per_block(0.5, 0), UnsupportedParameter);
  }

  TEST_CASE("fidelity closed form") {
    for (double g : {-1.7, -0.3, 0.0, 0.4, 2.0}) {
      CHECK(fidelity_closed_form(g, g) == doctest::Approx(0.0));
    }
    CHECK(fidelity_closed_form(1.0, 0.0) == doctest::Approx(-std::log(2.0)).epsilon(1e-14));
    CHECK(fidelity_closed_form(1.0, -1.0) == doctest::Approx(-std::log(2.0)).epsilon(1e-14));
    CHECK(fidelity_closed_form(0.7, -1.3) ==
          doctest::Approx(fidelity_closed_form(-1.3, 0.7)).epsilon(1e-14));
    CHECK(fidelity_closed_form(0.5, 2.0) <= 0.0);
  }

  TEST_CASE("parent hamiltonians annihilate their ground states") {
    Matrix h1 = hamiltonian({ModelId::kModel1, 0.8}, 6);
    REQUIRE(h1.rows() == 64);
    CHECK((h1 - h1.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(rel_gap(h1, state_vector(model(ModelId::kModel1, 0.8), 6).amplitudes) < 1e-8);

    Matrix h2 = hamiltonian({ModelId::kModel2, 1.1}, 4);
    REQUIRE(h2.rows() == 81);
    CHECK((h2 - h2.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(rel_gap(h2, state_vector(model(ModelId::kModel2, 1.1), 4).amplitudes) < 1e-8);

    CHECK_THROWS_AS(hamiltonian({ModelId::kModel1, 0.5}, 11), BudgetExceeded);
    CHECK_THROWS_AS(hamiltonian({ModelId::kModel2, 0.5}, 7), BudgetExceeded);
    CHECK_THROWS_AS(hamiltonian({ModelId::kModel1, 0.5}, 2), UnsupportedParameter);
    CHECK_THROWS_AS(hamiltonian({ModelId::kGhz, 0.0}, 4), UnsupportedModel);
  }
}
