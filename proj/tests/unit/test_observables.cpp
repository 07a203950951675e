#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "mpsrg/errors.hpp"
#include "mpsrg/models.hpp"
#include "mpsrg/observables.hpp"

using namespace mpsrg;
using testutil::model;

TEST_SUITE("observables") {
  TEST_CASE("two-site density matrix at the product point") {
    TwoSiteDensity rdm = two_site_rdm(model(ModelId::kModel1, 1.0));
    CHECK_FALSE(rdm.from_finite_chain);
    REQUIRE(rdm.rho.rows() == 4);
    // |++><++| has every entry equal to 1/4.
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c)
        CHECK(std::abs(rdm.rho(r, c) - Complex(0.25, 0)) < 1e-12);
  }

  TEST_CASE("degenerate transfer spectrum falls back to a finite chain") {
    TwoSiteDensity rdm = two_site_rdm(model(ModelId::kGhz));
    CHECK(rdm.from_finite_chain);
    Matrix expect = Matrix::Zero(4, 4);
    expect(0, 0) = expect(3, 3) = 0.5;
    CHECK((rdm.rho - expect).cwiseAbs().maxCoeff() < 1e-12);
  }

  TEST_CASE("density matrices are normalized, Hermitian, positive") {
    for (double g : {0.7, -1.4, 2.3}) {
      TwoSiteDensity rdm = two_site_rdm(model(ModelId::kModel1, g));
      CHECK(std::abs(rdm.rho.trace() - Complex(1, 0)) < 1e-12);
      CHECK((rdm.rho - rdm.rho.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
      Eigen::SelfAdjointEigenSolver<Matrix> es(rdm.rho);
      CHECK(es.eigenvalues().minCoeff() > -1e-12);
    }
  }

  TEST_CASE("finite-chain contraction equals the dense reduction") {
    for (double g : {1.3, -0.6}) {
      UniformMps mps = model(ModelId::kModel1, g);
      Matrix dense = testutil::dense_two_site_rdm(mps, 12);
      TwoSiteDensity contracted = two_site_rdm_finite(mps, 12);
      CHECK((contracted.rho - dense).cwiseAbs().maxCoeff() < 1e-10);
    }
    CHECK_THROWS_AS(two_site_rdm_finite(model(ModelId::kModel1, 0.5), 3), UnsupportedParameter);
  }

  TEST_CASE("concurrence") {
    auto c_of = [](double g) { return concurrence(two_site_rdm(model(ModelId::kModel1, g))); };
    CHECK(c_of(1.0) == doctest::Approx(0.0).epsilon(1e-8));
    CHECK(std::abs(c_of(0.0)) < 1e-8);
    CHECK(c_of(0.5) == doctest::Approx(0.259259).epsilon(1e-4));
    CHECK(c_of(2.0) == doctest::Approx(0.259259).epsilon(1e-4));
    CHECK_THROWS_AS(concurrence(two_site_rdm(model(ModelId::kModel2, 0.5))), NotQubits);
  }

  TEST_CASE("fidelity per site") {
    CHECK(std::abs(fidelity_per_site(model(ModelId::kModel1, 0.7), model(ModelId::kModel1, 0.7))) <
          1e-12);
    CHECK(fidelity_per_site(model(ModelId::kModel1, 1.0), model(ModelId::kModel1, 0.0)) ==
          doctest::Approx(-std::log(2.0)).epsilon(1e-12));

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    for (int t = 0; t < 10; ++t) {
      double g1 = dist(rng), g2 = dist(rng);
      for (ModelId id : {ModelId::kModel1, ModelId::kModel2}) {
        double f12 = fidelity_per_site(model(id, g1), model(id, g2));
        double f21 = fidelity_per_site(model(id, g2), model(id, g1));
        CHECK(std::abs(f12 - fidelity_closed_form(g1, g2)) < 1e-10);
        CHECK(std::abs(f12 - f21) < 1e-12);
        CHECK(f12 <= 1e-12);
      }
    }
  }

  TEST_CASE("mps energy matches the dense ground energy") {
    struct Case {
      ModelId id;
      double g;
      int m;
    };
    for (Case c : {Case{ModelId::kModel1, 0.8, 6}, Case{ModelId::kModel2, -1.2, 4}}) {
      UniformMps mps = model(c.id, c.g);
      Matrix h = hamiltonian({c.id, c.g}, c.m);
      Eigen::SelfAdjointEigenSolver<Matrix> es((h + h.adjoint()) / 2.0);
      double e0 = es.eigenvalues().minCoeff();
      double e = mps_energy(mps, h, c.m);
      CHECK(std::abs(e - e0) <= 1e-8 * std::max(1.0, std::abs(e0)));
    }
    CHECK_THROWS_AS(
        mps_energy(model(ModelId::kModel1, 0.5), Matrix::Identity(8, 8), 4),
        DimensionMismatch);
  }
}
