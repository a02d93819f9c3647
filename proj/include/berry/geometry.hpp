#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "berry/chart.hpp"
#include "berry/families.hpp"

namespace berry {

inline constexpr double kConnectionStep = 1e-5;
inline constexpr double kCurvatureStep = 1e-4;

/// Antisymmetric curvature two-form. Only the k < l entries are stored, so
/// F(k, l) == -F(l, k) holds exactly.
class CurvatureForm {
 public:
  explicit CurvatureForm(ChartPtr chart);

  const ParameterChart& chart() const noexcept { return *chart_; }
  std::size_t dimension() const noexcept { return m_; }

  double operator()(std::size_t k, std::size_t l) const;
  double operator()(std::string_view k, std::string_view l) const;
  /// Sets F(k, l) (and implicitly F(l, k) = -value). k != l.
  void set(std::size_t k, std::size_t l, double value);

 private:
  std::size_t slot(std::size_t k, std::size_t l) const;

  ChartPtr chart_;
  std::size_t m_;
  std::vector<double> upper_;
};

/// A_k = Re i<phi(p)| (phi(p + h e_k) - phi(p - h e_k)) / 2h >.
ConnectionCovector berry_connection_fd(const StateFamily& family, const ParameterPoint& p,
                                       double h = kConnectionStep);

/// Single component A_k; avoids evaluating the other directions.
double berry_connection_component_fd(const StateFamily& family, std::span<const double> coords,
                                     std::size_t k, double h = kConnectionStep);

/// F_kl = d_k A_l - d_l A_k, central differences of the finite-difference
/// connection with the same step h for both levels.
CurvatureForm berry_curvature_fd(const StateFamily& family, const ParameterPoint& p,
                                 double h = kCurvatureStep);

double berry_curvature_component_fd(const StateFamily& family, std::span<const double> coords,
                                    std::size_t k, std::size_t l, double h = kCurvatureStep);

/// max_k |Im(i<phi|d_k phi>)|; vanishes when the norm is constant.
double connection_reality_defect(const StateFamily& family, const ParameterPoint& p,
                                 double h = kConnectionStep);

}  // namespace berry
