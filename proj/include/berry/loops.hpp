#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "berry/chart.hpp"
#include "berry/families.hpp"
#include "berry/geometry.hpp"

namespace berry {

inline constexpr std::size_t kDefaultLoopSamples = 2048;
inline constexpr std::size_t kDefaultSurfaceGrid = 256;

/// Canonical representative of an angle in (-pi, pi].
double canonical_phase(double radians);

/// |e^{i(a-b)} - 1|, the distance between two phase factors.
double phase_deviation(double a, double b);

struct PhaseValue {
  double raw = 0.0;

  double canonical() const { return canonical_phase(raw); }
};

bool phases_equal_mod_2pi(PhaseValue a, PhaseValue b, double tol);

/// A closed curve t in [0, 1] -> chart coordinates.
class Loop {
 public:
  using Sampler = std::function<std::vector<double>(double)>;

  Loop(ChartPtr chart, Sampler sampler, std::string description = {},
       double closure_tolerance = 1e-12);

  /// Sweeps coordinate `swept` linearly from `from` to `to`, all others held
  /// at `base`.
  static Loop circle(ChartPtr chart, std::vector<double> base, std::size_t swept, double from,
                     double to);

  /// Piecewise-linear path through explicit samples, spaced uniformly in t.
  /// The last row must repeat the first (modulo 2*pi on periodic coordinates).
  static Loop polyline(ChartPtr chart, std::vector<std::vector<double>> rows);

  const ParameterChart& chart() const noexcept { return *chart_; }
  const ChartPtr& chart_ptr() const noexcept { return chart_; }
  const std::string& description() const noexcept { return description_; }

  std::vector<double> at(double t) const;

  bool is_closed() const;
  /// Throws Errc::closure with the offending coordinate.
  void check_closed() const;

  Loop reversed() const;
  /// Same geometric curve traversed as t -> sampler(warp(t)); warp must map
  /// [0, 1] monotonically onto [0, 1].
  Loop reparameterized(std::function<double(double)> warp) const;

 private:
  ChartPtr chart_;
  Sampler sampler_;
  std::string description_;
  double closure_tolerance_;
};

/// Reads a loop from CSV: header naming coordinates, one row per sample, the
/// first row repeated last. Coordinates missing from the header are taken
/// from `base`.
Loop read_loop_csv(std::istream& in, ChartPtr chart, std::span<const double> base);

/// Oriented axis-aligned rectangle [a1, b1] x [a2, b2] in the ordered pair of
/// coordinates (first, second). Reversed bounds flip the orientation.
struct SurfacePatch {
  ChartPtr chart;
  std::size_t first = 0;
  std::size_t second = 1;
  double a1 = 0.0, b1 = 0.0;
  double a2 = 0.0, b2 = 0.0;
  std::vector<double> base;

  void validate() const;
  /// Counterclockwise boundary in (first, second).
  Loop boundary() const;
};

enum class ConnectionSource { finite_difference, analytic };

struct LineIntegralOptions {
  std::size_t samples = kDefaultLoopSamples;
  double h = kConnectionStep;
  ConnectionSource source = ConnectionSource::finite_difference;
};

/// Trapezoid rule for the loop integral of A_k dlambda^k over samples+1
/// equispaced t values. Coordinate increments of periodic coordinates are
/// unwrapped into (-pi, pi].
PhaseValue line_integral_phase(const StateFamily& family, const Loop& loop,
                               const LineIntegralOptions& options = {});

/// -arg prod_j <phi_j | phi_{j+1}> over a ring of states (the last overlap
/// wraps to the first state).
PhaseValue overlap_product_phase(std::span<const StateVector> ring);

PhaseValue overlap_product_phase(const StateFamily& family, const Loop& loop,
                                 std::size_t samples = kDefaultLoopSamples);

/// Samples the loop at t_j = j / samples, j < samples.
std::vector<StateVector> sample_states(const StateFamily& family, const Loop& loop,
                                       std::size_t samples);

struct SurfaceIntegralOptions {
  std::size_t n1 = kDefaultSurfaceGrid;
  std::size_t n2 = kDefaultSurfaceGrid;
  double h = kCurvatureStep;
};

/// Midpoint rule for the oriented integral of F_{first,second} over the patch.
PhaseValue surface_integral_phase(const StateFamily& family, const SurfacePatch& patch,
                                  const SurfaceIntegralOptions& options = {});

/// Integral of (1 - cos theta) dphi along the loop (trapezoid).
double solid_angle(const Loop& loop, std::size_t samples = kDefaultLoopSamples);

}  // namespace berry
