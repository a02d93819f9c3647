#include <cmath>

#include "doctest.h"

#include "oracles.hpp"

#include "berry/errors.hpp"
#include "berry/geometry.hpp"
#include "berry/sampling.hpp"

using namespace berry;

namespace {

// Closed-form curvature of the built-in families, all k < l pairs.
double exact_curvature(const std::string& id, std::span<const double> c, std::size_t k,
                       std::size_t l) {
  if (id == "su2-spin-half") return -0.5 * std::sin(c[0]);
  if (id == "su2-spin-1") return -std::sin(c[0]);
  // SU(3) chart: theta, phi, g, gamma; only A_phi and A_gamma are nonzero
  const double theta = c[0];
  const double g = c[2];
  if (k == 0 && l == 1) return -std::sin(theta) * std::cos(2 * g);
  if (k == 1 && l == 2) return 2.0 * std::cos(theta) * std::sin(2 * g);
  if (k == 2 && l == 3) return -2.0 * std::sin(2 * g);
  return 0.0;
}

}  // namespace

TEST_CASE("finite-difference connection at reference points") {
  const auto half = make_su2_spin_half_family();
  const auto a = berry_connection_fd(half, half.point({kPi / 2, 0.4}), 1e-5);
  CHECK(std::abs(a["theta"]) <= 1e-9);
  CHECK(std::abs(a["phi"] - 0.5) <= 1e-9);

  const auto one = make_su2_spin1_family();
  const auto b = berry_connection_fd(one, one.point({2 * kPi / 5, 1.0}), 1e-5);
  CHECK(b["phi"] == doctest::Approx(0.309017).epsilon(1e-6));

  const auto su3 = make_su3_spin1_family();
  const auto c = berry_connection_fd(su3, su3.point({1.0, 0.2, 0.4, 0.7}), 1e-5);
  CHECK(c["gamma"] == doctest::Approx(0.696707).epsilon(1e-6));
}

TEST_CASE("finite-difference curvature at reference points") {
  const auto half = make_su2_spin_half_family();
  CHECK(berry_curvature_fd(half, half.point({kPi / 2, 0.3}))("theta", "phi") ==
        doctest::Approx(-0.5).epsilon(1e-6));
  const auto one = make_su2_spin1_family();
  CHECK(berry_curvature_fd(one, one.point({kPi / 6, 0.3}))("theta", "phi") ==
        doctest::Approx(-0.5).epsilon(1e-6));

  // d/dg of the closed-form A_gamma = cos 2g, by the five-point oracle
  const double g = kPi / 8;
  const double expected = oracle::derivative([](double x) { return std::cos(2 * x); }, g);
  CHECK(expected == doctest::Approx(-1.414214).epsilon(1e-6));
  const auto su3 = make_su3_spin1_family();
  const auto f = berry_curvature_fd(su3, su3.point({kPi / 3, 0.5, g, 1.0}));
  CHECK(std::abs(f("g", "gamma") - expected) <= 1e-6);
}

TEST_CASE("connection agrees with the closed forms on a 20-point sample") {
  for (const auto& id : builtin_family_ids()) {
    const StateFamily family = family_by_id(id);
    double worst = 0.0;
    for (const auto& coords : quasi_random_points(family.chart(), 20, 0)) {
      const auto p = family.point(coords);
      const auto fd = berry_connection_fd(family, p, 1e-5);
      const auto exact = analytic_connection(family, p);
      for (std::size_t k = 0; k < coords.size(); ++k) {
        worst = std::max(worst, std::abs(fd[k] - exact[k]));
      }
    }
    CAPTURE(id);
    CHECK(worst <= 5e-9);
  }
}

TEST_CASE("curvature agrees with the closed forms on a 20-point sample") {
  for (const auto& id : builtin_family_ids()) {
    const StateFamily family = family_by_id(id);
    const std::size_t m = family.chart().dimension();
    double worst = 0.0;
    for (const auto& coords : quasi_random_points(family.chart(), 20, 0)) {
      const auto f = berry_curvature_fd(family, family.point(coords), 1e-4);
      for (std::size_t k = 0; k < m; ++k) {
        for (std::size_t l = k + 1; l < m; ++l) {
          worst = std::max(worst, std::abs(f(k, l) - exact_curvature(id, coords, k, l)));
        }
      }
    }
    CAPTURE(id);
    CHECK(worst <= 1e-6);
  }
}

TEST_CASE("connection is real for normalized families") {
  for (const auto& id : {"su2-spin-half", "su2-spin-1", "su3-spin-1"}) {
    const StateFamily family = family_by_id(id);
    for (const auto& coords : quasi_random_points(family.chart(), 20, 3)) {
      CHECK(connection_reality_defect(family, family.point(coords), 1e-5) <= 1e-9);
    }
  }
}

TEST_CASE("reality defect detects a parameter-dependent norm") {
  // Scaling one amplitude makes the norm depend on theta.
  const StateFamily skewed("skewed", 2, sphere_chart(), [](std::span<const double> c) {
    const auto v = su2_spin_half_state(c[0], c[1]);
    return StateVector{1.1 * v[0], v[1]};
  });
  CHECK(connection_reality_defect(skewed, skewed.point({1.0, 0.3})) > 1e-3);

  // A uniform rescaling keeps the norm constant, so the defect stays at zero.
  const StateFamily scaled("scaled", 2, sphere_chart(), [](std::span<const double> c) {
    return Complex{1.1, 0.0} * su2_spin_half_state(c[0], c[1]);
  });
  CHECK(connection_reality_defect(scaled, scaled.point({1.0, 0.3})) <= 1e-9);
}

TEST_CASE("gauge transformation shifts the connection by -grad(alpha)") {
  const auto half = make_su2_spin_half_family();
  const auto regauged =
      half.regauged([](std::span<const double> c) { return 0.3 * c[0] + 0.7 * c[1]; });
  for (const auto& coords : quasi_random_points(half.chart(), 20, 5)) {
    const auto p = half.point(coords);
    const auto a = berry_connection_fd(half, p);
    const auto b = berry_connection_fd(regauged, p);
    CHECK(std::abs((b["theta"] - a["theta"]) + 0.3) <= 1e-8);
    CHECK(std::abs((b["phi"] - a["phi"]) + 0.7) <= 1e-8);
    const double f = berry_curvature_fd(half, p)("theta", "phi");
    const double g = berry_curvature_fd(regauged, p)("theta", "phi");
    CHECK(std::abs(f - g) <= 1e-6);
  }
  CHECK_FALSE(regauged.has_analytic_connection());
}

TEST_CASE("curvature form is antisymmetric by construction") {
  const auto su3 = make_su3_spin1_family();
  const auto f = berry_curvature_fd(su3, su3.point({1.1, 0.4, 0.3, 2.0}));
  for (std::size_t k = 0; k < 4; ++k) {
    CHECK(f(k, k) == 0.0);
    for (std::size_t l = 0; l < 4; ++l) CHECK(f(k, l) == -f(l, k));
  }
  CurvatureForm manual(su3.chart_ptr());
  manual.set(3, 1, 2.5);
  CHECK(manual(1, 3) == -2.5);
  CHECK(manual(3, 1) == 2.5);
  CHECK_THROWS_AS(manual.set(2, 2, 1.0), Error);
}

TEST_CASE("invalid steps are rejected") {
  const auto half = make_su2_spin_half_family();
  CHECK_THROWS_AS(berry_connection_fd(half, half.point({1.0, 1.0}), 0.0), Error);
  CHECK_THROWS_AS(berry_curvature_fd(half, half.point({1.0, 1.0}), -1e-4), Error);
}
