#include "berry/loops.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <sstream>

#include "berry/errors.hpp"

namespace berry {

namespace {

std::string format_number(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

double unwrap_increment(const ParameterChart& chart, std::size_t k, double delta) {
  if (!chart.coordinate(k).periodic) return delta;
  return std::remainder(delta, kTwoPi);
}

void require_samples(std::size_t samples, std::size_t minimum, const char* what) {
  if (samples < minimum) {
    throw Error(Errc::config, std::string(what) + " needs at least " + std::to_string(minimum) +
                                  " samples, got " + std::to_string(samples));
  }
}

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

}  // namespace

double canonical_phase(double radians) {
  double r = std::remainder(radians, kTwoPi);
  if (r <= -kPi) r += kTwoPi;
  return r;
}

double phase_deviation(double a, double b) { return 2.0 * std::abs(std::sin(0.5 * (a - b))); }

bool phases_equal_mod_2pi(PhaseValue a, PhaseValue b, double tol) {
  if (!(tol > 0.0)) throw Error(Errc::config, "phase tolerance must be positive");
  return phase_deviation(a.raw, b.raw) <= tol;
}

Loop::Loop(ChartPtr chart, Sampler sampler, std::string description, double closure_tolerance)
    : chart_(std::move(chart)),
      sampler_(std::move(sampler)),
      description_(std::move(description)),
      closure_tolerance_(closure_tolerance) {
  if (!chart_) throw Error(Errc::config, "loop without chart");
  if (!sampler_) throw Error(Errc::config, "loop without sampler");
}

Loop Loop::circle(ChartPtr chart, std::vector<double> base, std::size_t swept, double from,
                  double to) {
  if (base.size() != chart->dimension()) {
    throw Error(Errc::dimension, "circle base point does not match chart");
  }
  if (swept >= chart->dimension()) throw Error(Errc::config, "swept coordinate out of range");
  std::string description = "circle(" + chart->coordinate(swept).name + ": " +
                            format_number(from) + " -> " + format_number(to);
  for (std::size_t k = 0; k < base.size(); ++k) {
    if (k != swept) description += ", " + chart->coordinate(k).name + "=" + format_number(base[k]);
  }
  description += ")";
  auto sampler = [base = std::move(base), swept, from, to](double t) {
    auto coords = base;
    coords[swept] = from + t * (to - from);
    return coords;
  };
  return Loop(std::move(chart), std::move(sampler), std::move(description));
}

Loop Loop::polyline(ChartPtr chart, std::vector<std::vector<double>> rows) {
  if (rows.size() < 3) throw Error(Errc::config, "polyline loop needs at least 3 rows");
  const std::size_t m = chart->dimension();
  for (const auto& row : rows) {
    if (row.size() != m) throw Error(Errc::dimension, "polyline row does not match chart");
  }
  // Unwrap periodic coordinates so linear interpolation follows the short way.
  for (std::size_t k = 0; k < m; ++k) {
    if (!chart->coordinate(k).periodic) continue;
    for (std::size_t j = 1; j < rows.size(); ++j) {
      rows[j][k] = rows[j - 1][k] + std::remainder(rows[j][k] - rows[j - 1][k], kTwoPi);
    }
  }
  std::string description = "polyline(" + std::to_string(rows.size()) + " rows)";
  auto sampler = [rows = std::move(rows)](double t) {
    const double s = std::clamp(t, 0.0, 1.0) * static_cast<double>(rows.size() - 1);
    const auto j = std::min(static_cast<std::size_t>(s), rows.size() - 2);
    const double frac = s - static_cast<double>(j);
    std::vector<double> coords(rows[j].size());
    for (std::size_t k = 0; k < coords.size(); ++k) {
      coords[k] = rows[j][k] + frac * (rows[j + 1][k] - rows[j][k]);
    }
    return coords;
  };
  return Loop(std::move(chart), std::move(sampler), std::move(description));
}

std::vector<double> Loop::at(double t) const {
  auto coords = sampler_(t);
  if (coords.size() != chart_->dimension()) {
    throw Error(Errc::dimension, "loop sampler returned wrong number of coordinates");
  }
  return coords;
}

bool Loop::is_closed() const {
  const auto start = at(0.0);
  const auto end = at(1.0);
  for (std::size_t k = 0; k < start.size(); ++k) {
    if (!(chart_->separation(k, start[k], end[k]) <= closure_tolerance_)) return false;
  }
  return true;
}

void Loop::check_closed() const {
  const auto start = at(0.0);
  const auto end = at(1.0);
  for (std::size_t k = 0; k < start.size(); ++k) {
    const double gap = chart_->separation(k, start[k], end[k]);
    if (!(gap <= closure_tolerance_)) {
      throw Error(Errc::closure, "loop " + description_ + " is open in coordinate '" +
                                     chart_->coordinate(k).name + "' (gap " +
                                     format_number(gap) + ")");
    }
  }
}

Loop Loop::reversed() const {
  auto inner = sampler_;
  return Loop(chart_, [inner](double t) { return inner(1.0 - t); }, "reversed " + description_,
              closure_tolerance_);
}

Loop Loop::reparameterized(std::function<double(double)> warp) const {
  auto inner = sampler_;
  return Loop(
      chart_, [inner, warp = std::move(warp)](double t) { return inner(warp(t)); },
      description_, closure_tolerance_);
}

Loop read_loop_csv(std::istream& in, ChartPtr chart, std::span<const double> base) {
  if (base.size() != chart->dimension()) {
    throw Error(Errc::dimension, "CSV loop base point does not match chart");
  }
  std::string line;
  std::vector<std::size_t> columns;
  std::vector<std::vector<double>> rows;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string content = trim(line);
    if (content.empty() || content.front() == '#') continue;
    const auto cells = split_csv_line(content);
    if (columns.empty()) {
      for (const auto& name : cells) {
        const auto k = chart->find(name);
        if (!k) throw Error(Errc::config, "CSV loop: unknown coordinate '" + name + "'");
        for (auto existing : columns) {
          if (existing == *k) throw Error(Errc::config, "CSV loop: duplicate column '" + name + "'");
        }
        columns.push_back(*k);
      }
      continue;
    }
    if (cells.size() != columns.size()) {
      throw Error(Errc::config, "CSV loop: line " + std::to_string(line_no) + " has " +
                                    std::to_string(cells.size()) + " cells, expected " +
                                    std::to_string(columns.size()));
    }
    std::vector<double> row(base.begin(), base.end());
    for (std::size_t c = 0; c < cells.size(); ++c) {
      std::size_t used = 0;
      double value = 0.0;
      try {
        value = std::stod(cells[c], &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != cells[c].size() || !std::isfinite(value)) {
        throw Error(Errc::config, "CSV loop: bad number '" + cells[c] + "' on line " +
                                      std::to_string(line_no));
      }
      row[columns[c]] = value;
    }
    rows.push_back(std::move(row));
  }
  if (columns.empty()) throw Error(Errc::config, "CSV loop: missing header row");
  Loop loop = Loop::polyline(std::move(chart), std::move(rows));
  loop.check_closed();
  return loop;
}

void SurfacePatch::validate() const {
  if (!chart) throw Error(Errc::config, "surface patch without chart");
  const std::size_t m = chart->dimension();
  if (first >= m || second >= m || first == second) {
    throw Error(Errc::config, "surface patch needs two distinct chart coordinates");
  }
  if (base.size() != m) throw Error(Errc::dimension, "surface patch base does not match chart");
  if (!(std::isfinite(a1) && std::isfinite(b1) && std::isfinite(a2) && std::isfinite(b2)) ||
      a1 == b1 || a2 == b2) {
    throw Error(Errc::config, "surface patch rectangle is degenerate");
  }
}

Loop SurfacePatch::boundary() const {
  validate();
  auto corner_path = [p = *this](double t) {
    auto coords = p.base;
    const double s = std::clamp(t, 0.0, 1.0) * 4.0;
    if (s <= 1.0) {
      coords[p.first] = p.a1 + s * (p.b1 - p.a1);
      coords[p.second] = p.a2;
    } else if (s <= 2.0) {
      coords[p.first] = p.b1;
      coords[p.second] = p.a2 + (s - 1.0) * (p.b2 - p.a2);
    } else if (s <= 3.0) {
      coords[p.first] = p.b1 + (s - 2.0) * (p.a1 - p.b1);
      coords[p.second] = p.b2;
    } else {
      coords[p.first] = p.a1;
      coords[p.second] = p.b2 + (s - 3.0) * (p.a2 - p.b2);
    }
    return coords;
  };
  std::string description = "boundary(" + chart->coordinate(first).name + ": [" +
                            format_number(a1) + ", " + format_number(b1) + "] x " +
                            chart->coordinate(second).name + ": [" + format_number(a2) + ", " +
                            format_number(b2) + "])";
  return Loop(chart, corner_path, std::move(description));
}

PhaseValue line_integral_phase(const StateFamily& family, const Loop& loop,
                               const LineIntegralOptions& options) {
  require_samples(options.samples, 16, "line integral");
  loop.check_closed();
  const ParameterChart& chart = family.chart();
  const std::size_t m = chart.dimension();
  const std::size_t n = options.samples;
  if (loop.chart().dimension() != m) throw Error(Errc::dimension, "loop chart mismatch");

  std::vector<std::vector<double>> points(n + 1);
  for (std::size_t j = 0; j <= n; ++j) points[j] = loop.at(static_cast<double>(j) / n);

  std::vector<std::vector<double>> increments(n, std::vector<double>(m));
  std::vector<bool> active(m, false);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < m; ++k) {
      increments[j][k] = unwrap_increment(chart, k, points[j + 1][k] - points[j][k]);
      if (increments[j][k] != 0.0) active[k] = true;
    }
  }

  // connection[j][k], only for coordinates the loop actually moves along
  std::vector<std::vector<double>> connection(n + 1, std::vector<double>(m, 0.0));
  for (std::size_t j = 0; j <= n; ++j) {
    if (options.source == ConnectionSource::analytic) {
      connection[j] = analytic_connection(family, family.point(points[j])).components;
      continue;
    }
    for (std::size_t k = 0; k < m; ++k) {
      if (active[k]) {
        connection[j][k] = berry_connection_component_fd(family, points[j], k, options.h);
      }
    }
  }

  double sum = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < m; ++k) {
      sum += 0.5 * (connection[j][k] + connection[j + 1][k]) * increments[j][k];
    }
  }
  if (!std::isfinite(sum)) throw Error(Errc::evaluation, "non-finite line integral");
  return {sum};
}

PhaseValue overlap_product_phase(std::span<const StateVector> ring) {
  if (ring.empty()) throw Error(Errc::config, "overlap product needs at least one state");
  Complex product{1.0, 0.0};
  for (std::size_t j = 0; j < ring.size(); ++j) {
    const StateVector& next = ring[(j + 1) % ring.size()];
    const Complex overlap = inner_product(ring[j], next);
    if (std::abs(overlap) < 1e-10) {
      throw Error(Errc::path_too_coarse, "vanishing overlap between samples " + std::to_string(j) +
                                             " and " + std::to_string(j + 1) +
                                             "; increase the sample count");
    }
    product *= overlap;
  }
  return {-std::arg(product)};
}

std::vector<StateVector> sample_states(const StateFamily& family, const Loop& loop,
                                       std::size_t samples) {
  std::vector<StateVector> ring;
  ring.reserve(samples);
  for (std::size_t j = 0; j < samples; ++j) {
    ring.push_back(family.evaluate(loop.at(static_cast<double>(j) / samples)));
  }
  return ring;
}

PhaseValue overlap_product_phase(const StateFamily& family, const Loop& loop,
                                 std::size_t samples) {
  require_samples(samples, 16, "overlap product");
  loop.check_closed();
  const auto ring = sample_states(family, loop, samples);
  return overlap_product_phase(ring);
}

PhaseValue surface_integral_phase(const StateFamily& family, const SurfacePatch& patch,
                                  const SurfaceIntegralOptions& options) {
  patch.validate();
  if (options.n1 < 8 || options.n2 < 8) {
    throw Error(Errc::config, "surface grid must be at least 8 x 8");
  }
  if (patch.chart->dimension() != family.chart().dimension()) {
    throw Error(Errc::dimension, "patch chart mismatch");
  }
  const double du = (patch.b1 - patch.a1) / static_cast<double>(options.n1);
  const double dv = (patch.b2 - patch.a2) / static_cast<double>(options.n2);
  std::vector<double> coords = patch.base;
  double sum = 0.0;
  for (std::size_t i = 0; i < options.n1; ++i) {
    coords[patch.first] = patch.a1 + (static_cast<double>(i) + 0.5) * du;
    double row = 0.0;
    for (std::size_t j = 0; j < options.n2; ++j) {
      coords[patch.second] = patch.a2 + (static_cast<double>(j) + 0.5) * dv;
      row += berry_curvature_component_fd(family, coords, patch.first, patch.second, options.h);
    }
    sum += row;
  }
  const double value = sum * du * dv;
  if (!std::isfinite(value)) throw Error(Errc::evaluation, "non-finite surface integral");
  return {value};
}

double solid_angle(const Loop& loop, std::size_t samples) {
  require_samples(samples, 16, "solid angle");
  const ParameterChart& chart = loop.chart();
  const auto theta = chart.find("theta");
  const auto phi = chart.find("phi");
  if (!theta || !phi) throw Error(Errc::config, "solid angle needs theta and phi coordinates");
  loop.check_closed();
  auto previous = loop.at(0.0);
  double sum = 0.0;
  for (std::size_t j = 1; j <= samples; ++j) {
    auto current = loop.at(static_cast<double>(j) / samples);
    const double dphi = unwrap_increment(chart, *phi, current[*phi] - previous[*phi]);
    sum += 0.5 * ((1.0 - std::cos(previous[*theta])) + (1.0 - std::cos(current[*theta]))) * dphi;
    previous = std::move(current);
  }
  return sum;
}

}  // namespace berry
