#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "berry/chart.hpp"

namespace berry {

/// Radical inverse of `index` in the given prime base.
double radical_inverse(std::uint64_t index, unsigned base);

/// Halton points mapped into the chart bounds, starting at sequence index
/// seed + 1. Non-periodic coordinates keep a distance `margin` from their
/// bounds, which keeps the theta samples off the poles.
std::vector<std::vector<double>> quasi_random_points(const ParameterChart& chart,
                                                     std::size_t count, std::uint64_t seed,
                                                     double margin = 1e-3);

}  // namespace berry
