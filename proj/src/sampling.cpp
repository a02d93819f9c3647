#include "berry/sampling.hpp"

#include <array>

#include "berry/errors.hpp"

namespace berry {

double radical_inverse(std::uint64_t index, unsigned base) {
  double result = 0.0;
  double scale = 1.0 / base;
  while (index > 0) {
    result += static_cast<double>(index % base) * scale;
    index /= base;
    scale /= base;
  }
  return result;
}

std::vector<std::vector<double>> quasi_random_points(const ParameterChart& chart,
                                                     std::size_t count, std::uint64_t seed,
                                                     double margin) {
  static constexpr std::array<unsigned, 8> primes{2, 3, 5, 7, 11, 13, 17, 19};
  const std::size_t m = chart.dimension();
  if (m > primes.size()) throw Error(Errc::config, "quasi-random sampling supports at most 8 coordinates");
  std::vector<std::vector<double>> points(count, std::vector<double>(m));
  for (std::size_t j = 0; j < count; ++j) {
    for (std::size_t k = 0; k < m; ++k) {
      const auto& c = chart.coordinate(k);
      const double pad = c.periodic ? 0.0 : margin;
      const double u = radical_inverse(seed + j + 1, primes[k]);
      points[j][k] = (c.lower + pad) + u * ((c.upper - pad) - (c.lower + pad));
    }
  }
  return points;
}

}  // namespace berry
