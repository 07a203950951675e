#include <doctest.h>

#include <array>
#include <cmath>

#include "helpers.hpp"
#include "mpsrg/errors.hpp"
#include "mpsrg/models.hpp"
#include "mpsrg/mps.hpp"

using namespace mpsrg;
using testutil::model;

TEST_SUITE("mps") {
  TEST_CASE("make_uniform_mps validates its input") {
    CHECK_THROWS_AS(make_uniform_mps({}), DimensionMismatch);
    CHECK_THROWS_AS(make_uniform_mps({Matrix::Zero(2, 3)}), DimensionMismatch);
    CHECK_THROWS_AS(make_uniform_mps({Matrix::Identity(2, 2), Matrix::Identity(3, 3)}),
                    DimensionMismatch);
    CHECK_THROWS_AS(make_uniform_mps({Matrix::Zero(2, 2), Matrix::Zero(2, 2)}), NullState);
  }

  TEST_CASE("amplitude is the periodic matrix trace") {
    UniformMps ghz = model(ModelId::kGhz);
    std::array<int, 3> all0{0, 0, 0};
    std::array<int, 3> mixed{0, 1, 0};
    CHECK(std::abs(amplitude(ghz, all0) - Complex(std::pow(2.0, 1.5), 0.0)) < 1e-14);
    CHECK(std::abs(amplitude(ghz, mixed)) < 1e-14);

    std::array<int, 2> bad{0, 2};
    CHECK_THROWS_AS(amplitude(ghz, bad), LabelOutOfRange);
  }

  TEST_CASE("norm_sq reproduces the catalog traces") {
    CHECK(norm_sq(model(ModelId::kAklt), 6) == doctest::Approx(732.0).epsilon(1e-12));
    CHECK(norm_sq(model(ModelId::kGhz), 5) == doctest::Approx(64.0).epsilon(1e-12));
    CHECK(norm_sq(model(ModelId::kCluster), 4) == doctest::Approx(16.0).epsilon(1e-12));
    CHECK(norm_sq(model(ModelId::kAntiferroGhz), 6) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(norm_sq(model(ModelId::kAntiferroGhz), 5) == doctest::Approx(0.0));
  }

  TEST_CASE("state_vector agrees with amplitude entry by entry") {
    UniformMps mps = model(ModelId::kModel1, 0.7);
    int m = 5;
    StateVector sv = state_vector(mps, m);
    REQUIRE(sv.amplitudes.size() == 32);
    CHECK(sv.norm == doctest::Approx(sv.amplitudes.norm()).epsilon(1e-14));
    for (Eigen::Index idx : {0L, 7L, 13L, 21L, 31L}) {
      std::array<int, 5> config{};
      Eigen::Index rest = idx;
      for (int s = m - 1; s >= 0; --s) {
        config[static_cast<std::size_t>(s)] = static_cast<int>(rest % 2);
        rest /= 2;
      }
      CHECK(std::abs(sv.amplitudes[idx] - amplitude(mps, config)) < 1e-13);
    }
    CHECK(norm_sq(mps, m) == doctest::Approx(sv.norm * sv.norm).epsilon(1e-12));
  }

  TEST_CASE("state_vector refuses above the budget") {
    CHECK_THROWS_AS(state_vector(model(ModelId::kGhz), 21), BudgetExceeded);
    CHECK_THROWS_AS(state_vector(model(ModelId::kModel2, 1.0), 13), BudgetExceeded);
    CHECK_NOTHROW(state_vector(model(ModelId::kGhz), 21, std::int64_t{1} << 22));
  }

  TEST_CASE("antiferro ghz state vector") {
    StateVector sv = antiferro_ghz_state_vector(6);
    REQUIRE(sv.amplitudes.size() == 64);
    CHECK(std::abs(sv.amplitudes[21] - Complex(1.0, 0.0)) < 1e-15);  // 010101
    CHECK(std::abs(sv.amplitudes[42] - Complex(1.0, 0.0)) < 1e-15);  // 101010
    CHECK(sv.norm == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    double weight = sv.amplitudes.squaredNorm();
    CHECK(weight == doctest::Approx(2.0).epsilon(1e-14));
    CHECK_THROWS_AS(antiferro_ghz_state_vector(5), UnsupportedParameter);
    CHECK_THROWS_AS(antiferro_ghz_state_vector(40), BudgetExceeded);
  }
}
