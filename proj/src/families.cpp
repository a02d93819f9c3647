#include "berry/families.hpp"

#include <cmath>

#include "berry/errors.hpp"

namespace berry {

namespace {

const Complex I{0.0, 1.0};

Complex phase_factor(double angle) { return std::polar(1.0, angle); }

void require_chart_point(const ParameterPoint& p, std::size_t dim, const char* what) {
  if (p.chart().dimension() != dim) {
    throw Error(Errc::dimension, std::string(what) + " expects " + std::to_string(dim) +
                                     " coordinates");
  }
}

}  // namespace

StateFamily::StateFamily(std::string id, std::size_t dimension, ChartPtr chart,
                         Evaluator evaluator, ConnectionFn connection)
    : id_(std::move(id)),
      dimension_(dimension),
      chart_(std::move(chart)),
      evaluator_(std::move(evaluator)),
      connection_(std::move(connection)) {
  if (dimension_ == 0) throw Error(Errc::config, "family dimension must be >= 1");
  if (!chart_) throw Error(Errc::config, "family without chart");
  if (!evaluator_) throw Error(Errc::config, "family without evaluator");
}

StateVector StateFamily::evaluate(std::span<const double> coords) const {
  if (coords.size() != chart_->dimension()) {
    throw Error(Errc::dimension, "family '" + id_ + "' expects " +
                                     std::to_string(chart_->dimension()) + " coordinates");
  }
  for (double c : coords) {
    if (!std::isfinite(c)) throw Error(Errc::evaluation, "non-finite parameter coordinate");
  }
  // StateVector's constructor rejects non-finite amplitudes itself.
  StateVector v = evaluator_(coords);
  if (v.size() != dimension_) {
    throw Error(Errc::evaluation, "family '" + id_ + "' returned a vector of length " +
                                      std::to_string(v.size()));
  }
  return v;
}

StateFamily StateFamily::regauged(std::function<double(std::span<const double>)> alpha) const {
  auto inner = evaluator_;
  return StateFamily(id_ + "+gauge", dimension_, chart_,
                     [inner, alpha = std::move(alpha)](std::span<const double> c) {
                       return phase_factor(alpha(c)) * inner(c);
                     });
}

ConnectionCovector analytic_connection(const StateFamily& family, const ParameterPoint& p) {
  if (!family.connection_) {
    throw Error(Errc::unsupported_family,
                "family '" + family.id() + "' has no closed-form connection");
  }
  if (p.chart().dimension() != family.chart().dimension()) {
    throw Error(Errc::dimension, "point does not belong to the family chart");
  }
  ConnectionCovector a{family.chart_, family.connection_(p.coords()), {}};
  a.imaginary_residue.assign(a.components.size(), 0.0);
  return a;
}

StateVector su2_spin_half_state(double theta, double phi) {
  return {std::cos(theta / 2) * phase_factor(-phi), Complex{std::sin(theta / 2), 0.0}};
}

StateVector su2_spin1_state(double theta, double phi) {
  const double s = std::sin(theta / 2);
  const double c = std::cos(theta / 2);
  return {phase_factor(phi) * (s * s), Complex{std::sin(theta) / std::sqrt(2.0), 0.0},
          phase_factor(-phi) * (c * c)};
}

StateVector su3_spin1_state(double theta, double phi, double g, double gamma) {
  const double s2 = std::sin(theta / 2) * std::sin(theta / 2);
  const double c2 = std::cos(theta / 2) * std::cos(theta / 2);
  const double cg = std::cos(g);
  const double sg = std::sin(g);
  const Complex down = phase_factor(-gamma);
  const Complex up = phase_factor(gamma);
  return {phase_factor(phi) * (down * (s2 * cg) - up * (c2 * sg)),
          (std::sin(theta) / std::sqrt(2.0)) * (down * cg + up * sg),
          phase_factor(-phi) * (down * (c2 * cg) - up * (s2 * sg))};
}

StateVector su2_spin_half_state(const ParameterPoint& p) {
  require_chart_point(p, 2, "su2_spin_half_state");
  return su2_spin_half_state(p[0], p[1]);
}

StateVector su2_spin1_state(const ParameterPoint& p) {
  require_chart_point(p, 2, "su2_spin1_state");
  return su2_spin1_state(p[0], p[1]);
}

StateVector su3_spin1_state(const ParameterPoint& p) {
  require_chart_point(p, 4, "su3_spin1_state");
  return su3_spin1_state(p[0], p[1], p[2], p[3]);
}

ChartPtr sphere_chart() {
  static const ChartPtr chart = std::make_shared<const ParameterChart>(std::vector<Coordinate>{
      {"theta", 0.0, kPi, false},
      {"phi", 0.0, kTwoPi, true},
  });
  return chart;
}

ChartPtr su3_chart() {
  static const ChartPtr chart = std::make_shared<const ParameterChart>(std::vector<Coordinate>{
      {"theta", 0.0, kPi, false},
      {"phi", 0.0, kTwoPi, true},
      {"g", 0.0, kPi / 2, false},
      {"gamma", 0.0, kTwoPi, true},
  });
  return chart;
}

StateFamily make_su2_spin_half_family() {
  return StateFamily(
      "su2-spin-half", 2, sphere_chart(),
      [](std::span<const double> c) { return su2_spin_half_state(c[0], c[1]); },
      [](std::span<const double> c) {
        const double half = std::cos(c[0] / 2);
        return std::vector<double>{0.0, half * half};
      });
}

StateFamily make_su2_spin1_family() {
  return StateFamily(
      "su2-spin-1", 3, sphere_chart(),
      [](std::span<const double> c) { return su2_spin1_state(c[0], c[1]); },
      [](std::span<const double> c) { return std::vector<double>{0.0, std::cos(c[0])}; });
}

StateFamily make_su3_spin1_family() {
  return StateFamily(
      "su3-spin-1", 3, su3_chart(),
      [](std::span<const double> c) { return su3_spin1_state(c[0], c[1], c[2], c[3]); },
      [](std::span<const double> c) {
        const double c2g = std::cos(2 * c[2]);
        // order: theta, phi, g, gamma
        return std::vector<double>{0.0, std::cos(c[0]) * c2g, 0.0, c2g};
      });
}

std::vector<std::string> builtin_family_ids() {
  return {"su2-spin-half", "su2-spin-1", "su3-spin-1"};
}

StateFamily family_by_id(std::string_view id) {
  if (id == "su2-spin-half") return make_su2_spin_half_family();
  if (id == "su2-spin-1") return make_su2_spin1_family();
  if (id == "su3-spin-1") return make_su3_spin1_family();
  throw Error(Errc::config, "unknown family '" + std::string(id) +
                                "' (expected su2-spin-half, su2-spin-1 or su3-spin-1)");
}

}  // namespace berry
