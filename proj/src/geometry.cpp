#include "berry/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "berry/errors.hpp"

namespace berry {

namespace {

const Complex I{0.0, 1.0};

void require_step(double h) {
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw Error(Errc::config, "finite-difference step must be positive");
  }
}

// i <phi | d_k phi> by central differences, given phi at the centre.
Complex connection_term(const StateFamily& family, const StateVector& centre,
                        std::span<const double> coords, std::size_t k, double h) {
  std::vector<double> probe(coords.begin(), coords.end());
  probe[k] = coords[k] + h;
  const StateVector forward = family.evaluate(probe);
  probe[k] = coords[k] - h;
  const StateVector backward = family.evaluate(probe);
  const Complex overlap = inner_product(centre, forward) - inner_product(centre, backward);
  return I * overlap / (2.0 * h);
}

}  // namespace

CurvatureForm::CurvatureForm(ChartPtr chart)
    : chart_(std::move(chart)), m_(chart_->dimension()), upper_(m_ * (m_ - 1) / 2, 0.0) {}

std::size_t CurvatureForm::slot(std::size_t k, std::size_t l) const {
  // row-major packing of the strict upper triangle, k < l
  return k * m_ - k * (k + 1) / 2 + (l - k - 1);
}

double CurvatureForm::operator()(std::size_t k, std::size_t l) const {
  if (k >= m_ || l >= m_) throw Error(Errc::dimension, "curvature index out of range");
  if (k == l) return 0.0;
  return k < l ? upper_[slot(k, l)] : -upper_[slot(l, k)];
}

double CurvatureForm::operator()(std::string_view k, std::string_view l) const {
  return (*this)(chart_->index_of(k), chart_->index_of(l));
}

void CurvatureForm::set(std::size_t k, std::size_t l, double value) {
  if (k >= m_ || l >= m_ || k == l) throw Error(Errc::dimension, "invalid curvature index");
  if (k < l) {
    upper_[slot(k, l)] = value;
  } else {
    upper_[slot(l, k)] = -value;
  }
}

ConnectionCovector berry_connection_fd(const StateFamily& family, const ParameterPoint& p,
                                       double h) {
  require_step(h);
  const StateVector centre = family.evaluate(p);
  const std::size_t m = family.chart().dimension();
  ConnectionCovector a{family.chart_ptr(), std::vector<double>(m), std::vector<double>(m)};
  for (std::size_t k = 0; k < m; ++k) {
    const Complex term = connection_term(family, centre, p.coords(), k, h);
    a.components[k] = term.real();
    a.imaginary_residue[k] = term.imag();
  }
  return a;
}

double berry_connection_component_fd(const StateFamily& family, std::span<const double> coords,
                                     std::size_t k, double h) {
  require_step(h);
  if (k >= family.chart().dimension()) throw Error(Errc::dimension, "connection index");
  const StateVector centre = family.evaluate(coords);
  return connection_term(family, centre, coords, k, h).real();
}

double berry_curvature_component_fd(const StateFamily& family, std::span<const double> coords,
                                    std::size_t k, std::size_t l, double h) {
  require_step(h);
  const std::size_t m = family.chart().dimension();
  if (k >= m || l >= m) throw Error(Errc::dimension, "curvature index out of range");
  if (k == l) return 0.0;

  std::vector<double> probe(coords.begin(), coords.end());
  auto derivative = [&](std::size_t along, std::size_t component) {
    probe[along] = coords[along] + h;
    const double plus = berry_connection_component_fd(family, probe, component, h);
    probe[along] = coords[along] - h;
    const double minus = berry_connection_component_fd(family, probe, component, h);
    probe[along] = coords[along];
    return (plus - minus) / (2.0 * h);
  };
  const double value = derivative(k, l) - derivative(l, k);
  if (!std::isfinite(value)) throw Error(Errc::evaluation, "non-finite curvature");
  return value;
}

CurvatureForm berry_curvature_fd(const StateFamily& family, const ParameterPoint& p, double h) {
  CurvatureForm f(family.chart_ptr());
  const std::size_t m = family.chart().dimension();
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t l = k + 1; l < m; ++l) {
      f.set(k, l, berry_curvature_component_fd(family, p.coords(), k, l, h));
    }
  }
  return f;
}

double connection_reality_defect(const StateFamily& family, const ParameterPoint& p, double h) {
  const ConnectionCovector a = berry_connection_fd(family, p, h);
  double worst = 0.0;
  for (double r : a.imaginary_residue) worst = std::max(worst, std::abs(r));
  return worst;
}

}  // namespace berry
