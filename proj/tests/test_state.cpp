#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"

#include "berry/errors.hpp"
#include "berry/families.hpp"
#include "berry/state.hpp"

using namespace berry;

namespace {

const Complex I{0.0, 1.0};

StateVector random_state(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> normal;
  std::vector<Complex> amps(n);
  for (auto& z : amps) z = {normal(rng), normal(rng)};
  return StateVector(std::move(amps));
}

}  // namespace

TEST_CASE("inner product") {
  CHECK(inner_product({1.0, 0.0}, {0.0, 1.0}) == Complex{0.0, 0.0});
  const double r = 1.0 / std::sqrt(2.0);
  const Complex v = inner_product({r, r}, {r, r});
  CHECK(v.real() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(v.imag() == 0.0);
  // conjugation acts on the left slot
  CHECK(inner_product({I, 0.0}, {1.0, 0.0}) == Complex{0.0, -1.0});
}

TEST_CASE("inner product rejects mismatched lengths") {
  try {
    inner_product({1.0, 0.0}, {1.0, 0.0, 0.0});
    FAIL("expected a dimension error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::dimension);
  }
}

TEST_CASE("norm") {
  CHECK(norm({1.0, 0.0}) == 1.0);
  CHECK(norm({0.6, 0.8 * I}) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(norm({2.0, 0.0, 0.0}) == 2.0);
}

TEST_CASE("is_normalized") {
  CHECK(is_normalized({1.0, 0.0}, 1e-12));
  CHECK_FALSE(is_normalized({1.1, 0.0}, 1e-12));
  CHECK(is_normalized(su2_spin_half_state(0.7, 1.3), 1e-12));
}

TEST_CASE("state vectors hold only finite amplitudes") {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(StateVector({Complex{nan, 0.0}}), Error);
  CHECK_THROWS_AS(StateVector(std::vector<Complex>{}), Error);
}

TEST_CASE("inner product is conjugate symmetric, norm is homogeneous and subadditive") {
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<std::size_t> dims(1, 5);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = dims(rng);
    const StateVector a = random_state(rng, n);
    const StateVector b = random_state(rng, n);
    const Complex ab = inner_product(a, b);
    const Complex ba = inner_product(b, a);
    CHECK(std::abs(ab - std::conj(ba)) <= 1e-12 * (1.0 + std::abs(ab)));

    const Complex c{normal(rng), normal(rng)};
    CHECK(std::abs(norm(c * a) - std::abs(c) * norm(a)) <= 1e-12 * (1.0 + norm(c * a)));

    CHECK(norm(a + b) <= norm(a) + norm(b) + 1e-12);
  }
}

TEST_CASE("operator algebra") {
  const StateVector up{1.0, 0.0};
  const Operator p = Operator::outer(up, up);
  CHECK(p(0, 0) == Complex{1.0, 0.0});
  CHECK(p(1, 1) == Complex{0.0, 0.0});
  CHECK(p.trace() == Complex{1.0, 0.0});
  CHECK(p.hermiticity_defect() == 0.0);

  Operator sigma_y(2);
  sigma_y(0, 1) = -I;
  sigma_y(1, 0) = I;
  CHECK(sigma_y.hermiticity_defect() == 0.0);
  const StateVector image = sigma_y.apply(up);
  CHECK(image[0] == Complex{0.0, 0.0});
  CHECK(image[1] == I);

  Operator skew(2);
  skew(0, 1) = 1.0;
  CHECK(skew.hermiticity_defect() == 1.0);
  CHECK_THROWS_AS(sigma_y.apply({1.0, 0.0, 0.0}), Error);
}
