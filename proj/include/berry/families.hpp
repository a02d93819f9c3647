#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "berry/chart.hpp"
#include "berry/state.hpp"

namespace berry {

/// Smooth map from chart coordinates to unit state vectors, optionally with a
/// closed-form Berry connection used for cross-checks.
class StateFamily {
 public:
  using Evaluator = std::function<StateVector(std::span<const double>)>;
  using ConnectionFn = std::function<std::vector<double>(std::span<const double>)>;

  StateFamily(std::string id, std::size_t dimension, ChartPtr chart, Evaluator evaluator,
              ConnectionFn connection = {});

  const std::string& id() const noexcept { return id_; }
  std::size_t dimension() const noexcept { return dimension_; }
  const ParameterChart& chart() const noexcept { return *chart_; }
  const ChartPtr& chart_ptr() const noexcept { return chart_; }
  bool has_analytic_connection() const noexcept { return static_cast<bool>(connection_); }

  /// Throws Errc::evaluation if the evaluator produces a wrong-sized or
  /// non-finite vector, Errc::dimension if coords do not match the chart.
  StateVector evaluate(std::span<const double> coords) const;
  StateVector evaluate(const ParameterPoint& p) const { return evaluate(p.coords()); }

  ParameterPoint point(std::vector<double> coords) const { return {chart_, std::move(coords)}; }

  /// Same chart, evaluator replaced by e^{i alpha(coords)} times the original.
  /// The closed-form connection is dropped.
  StateFamily regauged(std::function<double(std::span<const double>)> alpha) const;

  friend ConnectionCovector analytic_connection(const StateFamily& family, const ParameterPoint& p);

 private:
  std::string id_;
  std::size_t dimension_;
  ChartPtr chart_;
  Evaluator evaluator_;
  ConnectionFn connection_;
};

/// Throws Errc::unsupported_family when the family has no closed form.
ConnectionCovector analytic_connection(const StateFamily& family, const ParameterPoint& p);

// Spin coherent states, verbatim in the standard section (singular at theta=0).

/// (cos(theta/2) e^{-i phi}, sin(theta/2))
StateVector su2_spin_half_state(double theta, double phi);
/// (e^{i phi} sin^2(theta/2), sin(theta)/sqrt2, e^{-i phi} cos^2(theta/2))
StateVector su2_spin1_state(double theta, double phi);
/// Spin-1 coherent state of SU(3) in the real (theta, phi, g, gamma) parameterization.
/// Reduces to su2_spin1_state at g = gamma = 0.
StateVector su3_spin1_state(double theta, double phi, double g, double gamma);

StateVector su2_spin_half_state(const ParameterPoint& p);
StateVector su2_spin1_state(const ParameterPoint& p);
StateVector su3_spin1_state(const ParameterPoint& p);

/// theta in [0, pi], phi in [0, 2pi].
ChartPtr sphere_chart();
/// theta, phi, g in [0, pi/2], gamma in [0, 2pi].
ChartPtr su3_chart();

StateFamily make_su2_spin_half_family();
StateFamily make_su2_spin1_family();
StateFamily make_su3_spin1_family();

/// "su2-spin-half", "su2-spin-1", "su3-spin-1". Throws Errc::config otherwise.
StateFamily family_by_id(std::string_view id);
std::vector<std::string> builtin_family_ids();

}  // namespace berry
