#include "berry/chart.hpp"

#include <cmath>
#include <set>

#include "berry/errors.hpp"

namespace berry {

ParameterChart::ParameterChart(std::vector<Coordinate> coordinates)
    : coords_(std::move(coordinates)) {
  if (coords_.empty()) throw Error(Errc::config, "chart needs at least one coordinate");
  std::set<std::string> seen;
  for (const auto& c : coords_) {
    if (c.name.empty()) throw Error(Errc::config, "chart coordinate with empty name");
    if (!seen.insert(c.name).second) {
      throw Error(Errc::config, "duplicate chart coordinate '" + c.name + "'");
    }
    if (!std::isfinite(c.lower) || !std::isfinite(c.upper) || c.lower > c.upper) {
      throw Error(Errc::config, "invalid bounds for coordinate '" + c.name + "'");
    }
  }
}

std::optional<std::size_t> ParameterChart::find(std::string_view name) const {
  for (std::size_t k = 0; k < coords_.size(); ++k) {
    if (coords_[k].name == name) return k;
  }
  return std::nullopt;
}

std::size_t ParameterChart::index_of(std::string_view name) const {
  if (auto k = find(name)) return *k;
  throw Error(Errc::config, "unknown coordinate '" + std::string(name) + "'");
}

std::vector<std::string> ParameterChart::out_of_bounds(std::span<const double> coords) const {
  std::vector<std::string> names;
  for (std::size_t k = 0; k < coords_.size() && k < coords.size(); ++k) {
    if (coords[k] < coords_[k].lower - 1e-12 || coords[k] > coords_[k].upper + 1e-12) {
      names.push_back(coords_[k].name);
    }
  }
  return names;
}

double ParameterChart::separation(std::size_t k, double a, double b) const {
  const double d = std::abs(a - b);
  if (!coords_.at(k).periodic) return d;
  const double r = std::fmod(d, kTwoPi);
  return std::min(r, kTwoPi - r);
}

ParameterPoint::ParameterPoint(ChartPtr chart, std::vector<double> coords)
    : chart_(std::move(chart)), coords_(std::move(coords)) {
  if (!chart_) throw Error(Errc::config, "parameter point without chart");
  if (coords_.size() != chart_->dimension()) {
    throw Error(Errc::dimension, "point has " + std::to_string(coords_.size()) +
                                     " coordinates, chart has " +
                                     std::to_string(chart_->dimension()));
  }
}

ParameterPoint ParameterPoint::with(std::size_t k, double value) const {
  auto coords = coords_;
  coords.at(k) = value;
  return {chart_, std::move(coords)};
}

ParameterPoint ParameterPoint::with(std::string_view name, double value) const {
  return with(chart_->index_of(name), value);
}

ParameterPoint ParameterPoint::shifted(std::size_t k, double delta) const {
  return with(k, coords_.at(k) + delta);
}

}  // namespace berry
