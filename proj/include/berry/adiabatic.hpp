#pragma once

#include <cstddef>
#include <functional>
#include <span>

#include "berry/chart.hpp"
#include "berry/families.hpp"
#include "berry/loops.hpp"
#include "berry/state.hpp"

namespace berry {

/// Parameter-dependent Hermitian Hamiltonian with one tracked, nondegenerate
/// level E(lambda).
struct HamiltonianFamily {
  std::size_t dimension = 0;
  ChartPtr chart;
  std::function<Operator(std::span<const double>)> evaluate;
  std::function<double(std::span<const double>)> tracked_energy;
};

/// H(lambda) = -|phi(lambda)><phi(lambda)|. The family state is an exact
/// eigenvector with E = -1, separated by a gap of 1 from the zero eigenspace.
HamiltonianFamily projector_hamiltonian(const StateFamily& family);

/// Coordinate-independent Hamiltonian, for stationary-state checks.
HamiltonianFamily constant_hamiltonian(ChartPtr chart, Operator h, double tracked_energy);

/// Loop traversed as lambda(t / total_time), t in [0, total_time].
struct Schedule {
  Loop loop;
  double total_time = 0.0;
  std::size_t steps = 0;

  /// T > 0 and steps >= 1000, else Errc::config.
  void validate() const;
};

/// Steps keeping ||H|| dt <= 1e-3 for a Hamiltonian of norm `operator_norm`.
std::size_t recommended_steps(double total_time, double operator_norm = 1.0);

struct EvolveOptions {
  bool renormalize = true;
  /// Per-step tolerance on | ||psi|| - 1 | before renormalization.
  double max_step_norm_drift = 1e-6;
};

/// Fixed-step RK4 for d psi/dt = -i H(lambda(t/T)) psi (hbar = 1).
/// Throws Errc::step_size when a single step drifts the norm by more than the
/// tolerance.
StateVector evolve(const HamiltonianFamily& hamiltonian, const Schedule& schedule,
                   const StateVector& initial, const EvolveOptions& options = {});

struct PhaseReport {
  double total_phase = 0.0;
  double dynamical_phase = 0.0;
  double geometric_phase = 0.0;
  /// 1 - |<phi_ref | psi_final>|
  double residual_overlap_deficit = 0.0;
};

/// Splits arg<phi_ref|psi_final> into -E*T and the geometric remainder, all
/// reduced to (-pi, pi]. Throws Errc::adiabaticity_lost when the overlap
/// magnitude is 0.5 or less.
PhaseReport extract_phases(const StateVector& psi_final, const StateVector& phi_ref,
                           double energy, double total_time);

/// Starts in phi(lambda(0)), evolves under the projector Hamiltonian and
/// extracts phases against phi(lambda(1)).
PhaseReport adiabatic_loop_phase(const StateFamily& family, const Loop& loop, double total_time,
                                 std::size_t steps = 0);

}  // namespace berry
