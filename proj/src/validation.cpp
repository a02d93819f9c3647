#include "berry/validation.hpp"

#include <algorithm>
#include <cmath>

#include "berry/experiment.hpp"
#include "berry/geometry.hpp"
#include "berry/sampling.hpp"

namespace berry {

namespace {

CheckResult check(std::string name, double worst, double tolerance) {
  return {std::move(name), worst <= tolerance, worst, tolerance};
}

ExperimentConfig circle_config(const std::string& family, const std::string& sweep,
                               std::map<std::string, double> fixed, Method method) {
  ExperimentConfig c;
  c.id = "validate";
  c.family = family;
  c.method = method;
  CircleLoopSpec loop;
  loop.sweep = sweep;
  loop.fixed = std::move(fixed);
  c.loop = loop;
  return c;
}

double worst_deviation(const std::vector<ResultRecord>& records) {
  double worst = 0.0;
  for (const auto& r : records) {
    if (r.deviation && r.method.find('|') == std::string::npos) worst = std::max(worst, *r.deviation);
  }
  return worst;
}

// max |A_fd - A_exact| and |F_fd(first, second) - F_exact| over the sample.
template <typename CurvatureExact>
std::pair<double, double> pointwise_errors(const StateFamily& family, std::uint64_t seed,
                                           std::size_t first, std::size_t second,
                                           CurvatureExact curvature_exact) {
  double connection_error = 0.0;
  double curvature_error = 0.0;
  for (const auto& coords : quasi_random_points(family.chart(), 20, seed)) {
    const ParameterPoint p = family.point(coords);
    const auto fd = berry_connection_fd(family, p);
    const auto exact = analytic_connection(family, p);
    for (std::size_t k = 0; k < coords.size(); ++k) {
      connection_error = std::max(connection_error, std::abs(fd[k] - exact[k]));
    }
    const double f = berry_curvature_component_fd(family, coords, first, second);
    curvature_error = std::max(curvature_error, std::abs(f - curvature_exact(coords)));
  }
  return {connection_error, curvature_error};
}

}  // namespace

std::vector<CheckResult> run_validation_suite(std::uint64_t seed, bool with_oracle) {
  std::vector<CheckResult> results;
  const std::vector<double> thetas{kPi / 6, kPi / 4, kPi / 3, kPi / 2, 2 * kPi / 3};

  {
    const auto half = make_su2_spin_half_family();
    const auto [a, f] = pointwise_errors(half, seed, 0, 1,
                                         [](const auto& c) { return -0.5 * std::sin(c[0]); });
    results.push_back(check("spin-1/2 connection A_phi = cos^2(theta/2)", a, 5e-9));
    results.push_back(check("spin-1/2 curvature F_theta_phi = -sin(theta)/2", f, 1e-6));
  }
  {
    const auto one = make_su2_spin1_family();
    const auto [a, f] = pointwise_errors(one, seed, 0, 1,
                                         [](const auto& c) { return -std::sin(c[0]); });
    results.push_back(check("spin-1 connection A_phi = cos(theta)", a, 5e-9));
    results.push_back(check("spin-1 curvature F_theta_phi = -sin(theta)", f, 1e-6));
  }
  {
    const auto su3 = make_su3_spin1_family();
    const auto [a, f] = pointwise_errors(su3, seed, 2, 3,
                                         [](const auto& c) { return -2.0 * std::sin(2 * c[2]); });
    results.push_back(check("SU(3) connection A_phi = cos(theta)cos(2g), A_gamma = cos(2g)", a, 5e-9));
    results.push_back(check("SU(3) curvature F_g_gamma = -2 sin(2g)", f, 1e-6));
  }

  for (const char* family : {"su2-spin-half", "su2-spin-1"}) {
    double worst = 0.0;
    for (double theta : thetas) {
      for (Method m : {Method::line, Method::overlap, Method::surface}) {
        worst = std::max(worst, worst_deviation(run_experiment(
                                    circle_config(family, "phi", {{"theta", theta}}, m))));
      }
    }
    results.push_back(check(std::string(family) + " loop phases vs solid-angle law", worst, 1e-4));
  }

  {
    double worst = 0.0;
    for (double g : {kPi / 8, kPi / 6, kPi / 4}) {
      for (Method m : {Method::line, Method::overlap, Method::surface}) {
        worst = std::max(worst, worst_deviation(run_experiment(circle_config(
                                    "su3-spin-1", "gamma", {{"theta", 1.0}, {"phi", 0.3}, {"g", g}}, m))));
      }
    }
    results.push_back(check("SU(3) gamma-loop phases vs -2pi(1 - cos 2g)", worst, 1e-4));
  }

  {
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      for (int j = 0; j < 50; ++j) {
        const double theta = kPi * i / 49.0;
        const double phi = kTwoPi * j / 49.0;
        const auto a = su3_spin1_state(theta, phi, 0.0, 0.0);
        const auto b = su2_spin1_state(theta, phi);
        for (std::size_t k = 0; k < 3; ++k) worst = std::max(worst, std::abs(a[k] - b[k]));
      }
    }
    results.push_back(check("SU(3) state at g = gamma = 0 equals the SU(2) spin-1 state", worst, 1e-15));
  }

  if (with_oracle) {
    for (const auto& [family, theta] :
         {std::pair{"su2-spin-half", kPi / 2}, std::pair{"su2-spin-1", kPi / 3}}) {
      const auto records =
          run_experiment(circle_config(family, "phi", {{"theta", theta}}, Method::schrodinger));
      results.push_back(check(std::string(family) + " Schrodinger geometric phase (T = 2000)",
                              worst_deviation(records), 2e-2));
    }
  }
  return results;
}

}  // namespace berry
