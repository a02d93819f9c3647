#include "berry/adiabatic.hpp"

#include <algorithm>
#include <cmath>

#include "berry/errors.hpp"

namespace berry {

namespace {

const Complex minus_i{0.0, -1.0};

// out = -i H in
void derivative(const Operator& h, std::span<const Complex> in, std::span<Complex> out) {
  h.apply_into(in, out);
  for (auto& z : out) z *= minus_i;
}

double buffer_norm(std::span<const Complex> v) {
  double sum = 0.0;
  for (const auto& z : v) sum += std::norm(z);
  return std::sqrt(sum);
}

}  // namespace

HamiltonianFamily projector_hamiltonian(const StateFamily& family) {
  auto evaluate = [family](std::span<const double> coords) {
    const StateVector phi = family.evaluate(coords);
    return Complex{-1.0, 0.0} * Operator::outer(phi, phi);
  };
  return {family.dimension(), family.chart_ptr(), std::move(evaluate),
          [](std::span<const double>) { return -1.0; }};
}

HamiltonianFamily constant_hamiltonian(ChartPtr chart, Operator h, double tracked_energy) {
  const std::size_t n = h.dimension();
  return {n, std::move(chart), [h = std::move(h)](std::span<const double>) { return h; },
          [tracked_energy](std::span<const double>) { return tracked_energy; }};
}

void Schedule::validate() const {
  if (!(total_time > 0.0) || !std::isfinite(total_time)) {
    throw Error(Errc::config, "schedule total time must be positive");
  }
  if (steps < 1000) throw Error(Errc::config, "schedule needs at least 1000 steps");
}

std::size_t recommended_steps(double total_time, double operator_norm) {
  const double steps = std::ceil(total_time * operator_norm / 1e-3);
  return std::max<std::size_t>(1000, static_cast<std::size_t>(steps));
}

StateVector evolve(const HamiltonianFamily& hamiltonian, const Schedule& schedule,
                   const StateVector& initial, const EvolveOptions& options) {
  schedule.validate();
  if (initial.size() != hamiltonian.dimension) {
    throw Error(Errc::dimension, "initial state does not match the Hamiltonian dimension");
  }
  if (!is_normalized(initial, 1e-9)) throw Error(Errc::config, "initial state must be normalized");

  const std::size_t n = hamiltonian.dimension;
  const double T = schedule.total_time;
  const double dt = T / static_cast<double>(schedule.steps);
  auto hamiltonian_at = [&](double t) {
    Operator h = hamiltonian.evaluate(schedule.loop.at(t / T));
    if (h.dimension() != n) throw Error(Errc::dimension, "Hamiltonian changed dimension");
    return h;
  };

  std::vector<Complex> psi(initial.amplitudes().begin(), initial.amplitudes().end());
  std::vector<Complex> k1(n), k2(n), k3(n), k4(n), trial(n);
  double current_norm = buffer_norm(psi);
  Operator h_start = hamiltonian_at(0.0);

  for (std::size_t step = 0; step < schedule.steps; ++step) {
    const double t = dt * static_cast<double>(step);
    const Operator h_mid = hamiltonian_at(t + 0.5 * dt);
    Operator h_end = hamiltonian_at(step + 1 == schedule.steps ? T : t + dt);

    derivative(h_start, psi, k1);
    for (std::size_t a = 0; a < n; ++a) trial[a] = psi[a] + (0.5 * dt) * k1[a];
    derivative(h_mid, trial, k2);
    for (std::size_t a = 0; a < n; ++a) trial[a] = psi[a] + (0.5 * dt) * k2[a];
    derivative(h_mid, trial, k3);
    for (std::size_t a = 0; a < n; ++a) trial[a] = psi[a] + dt * k3[a];
    derivative(h_end, trial, k4);
    for (std::size_t a = 0; a < n; ++a) {
      psi[a] += (dt / 6.0) * (k1[a] + 2.0 * k2[a] + 2.0 * k3[a] + k4[a]);
    }

    const double new_norm = buffer_norm(psi);
    if (!std::isfinite(new_norm) || std::abs(new_norm - current_norm) > options.max_step_norm_drift) {
      throw Error(Errc::step_size, "norm drift " + std::to_string(std::abs(new_norm - current_norm)) +
                                       " in step " + std::to_string(step) +
                                       "; increase the number of steps");
    }
    if (options.renormalize) {
      for (auto& z : psi) z /= new_norm;
      current_norm = 1.0;
    } else {
      current_norm = new_norm;
    }
    h_start = std::move(h_end);
  }
  return StateVector(std::move(psi));
}

PhaseReport extract_phases(const StateVector& psi_final, const StateVector& phi_ref,
                           double energy, double total_time) {
  const Complex overlap = inner_product(phi_ref, psi_final);
  const double magnitude = std::abs(overlap);
  if (!(magnitude > 0.5)) {
    throw Error(Errc::adiabaticity_lost,
                "overlap with the tracked eigenstate fell to " + std::to_string(magnitude) +
                    "; increase the total time");
  }
  PhaseReport report;
  report.total_phase = std::arg(overlap);
  report.dynamical_phase = canonical_phase(-energy * total_time);
  report.geometric_phase = canonical_phase(report.total_phase - report.dynamical_phase);
  report.residual_overlap_deficit = std::max(0.0, 1.0 - magnitude);
  return report;
}

PhaseReport adiabatic_loop_phase(const StateFamily& family, const Loop& loop, double total_time,
                                 std::size_t steps) {
  loop.check_closed();
  const HamiltonianFamily h = projector_hamiltonian(family);
  const Schedule schedule{loop, total_time,
                          steps == 0 ? recommended_steps(total_time) : steps};
  const StateVector start = family.evaluate(loop.at(0.0));
  const StateVector final_state = evolve(h, schedule, start);
  const auto end_coords = loop.at(1.0);
  const StateVector reference = family.evaluate(end_coords);
  // E is constant along the loop for the projector Hamiltonian.
  return extract_phases(final_state, reference, h.tracked_energy(end_coords), total_time);
}

}  // namespace berry
