#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace berry {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

struct Coordinate {
  std::string name;
  double lower = 0.0;
  double upper = 0.0;
  /// Angles such as phi and gamma: values differing by 2*pi label the same
  /// point, which is what makes a full sweep a closed loop.
  bool periodic = false;
};

/// Ordered named coordinates with closed bounds (radians).
class ParameterChart {
 public:
  explicit ParameterChart(std::vector<Coordinate> coordinates);

  std::size_t dimension() const noexcept { return coords_.size(); }
  const Coordinate& coordinate(std::size_t k) const { return coords_.at(k); }
  std::span<const Coordinate> coordinates() const noexcept { return coords_; }

  std::optional<std::size_t> find(std::string_view name) const;
  /// Throws Errc::config for unknown names.
  std::size_t index_of(std::string_view name) const;

  /// Names of coordinates falling outside their bounds (by more than 1e-12).
  std::vector<std::string> out_of_bounds(std::span<const double> coords) const;

  /// Distance between two values of coordinate k, modulo 2*pi if periodic.
  double separation(std::size_t k, double a, double b) const;

 private:
  std::vector<Coordinate> coords_;
};

using ChartPtr = std::shared_ptr<const ParameterChart>;

/// A point of a chart. Coordinates outside the bounds are allowed: every
/// built-in formula is entire in its parameters.
class ParameterPoint {
 public:
  ParameterPoint(ChartPtr chart, std::vector<double> coords);

  const ParameterChart& chart() const noexcept { return *chart_; }
  const ChartPtr& chart_ptr() const noexcept { return chart_; }
  std::span<const double> coords() const noexcept { return coords_; }

  double operator[](std::size_t k) const { return coords_.at(k); }
  double operator[](std::string_view name) const { return coords_[chart_->index_of(name)]; }

  ParameterPoint with(std::size_t k, double value) const;
  ParameterPoint with(std::string_view name, double value) const;
  ParameterPoint shifted(std::size_t k, double delta) const;

 private:
  ChartPtr chart_;
  std::vector<double> coords_;
};

/// Real covector A_k on a chart, plus the imaginary residue of
/// i<phi|d_k phi> that finite differences leave behind.
struct ConnectionCovector {
  ChartPtr chart;
  std::vector<double> components;
  std::vector<double> imaginary_residue;

  double operator[](std::size_t k) const { return components.at(k); }
  double operator[](std::string_view name) const { return components[chart->index_of(name)]; }
};

}  // namespace berry
