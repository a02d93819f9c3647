#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace berry {

enum class Errc {
  dimension,           // mismatched vector / matrix sizes
  evaluation,          // non-finite amplitudes or integrands
  unsupported_family,  // no closed-form connection available
  closure,             // loop endpoints differ
  path_too_coarse,     // consecutive overlaps vanish
  step_size,           // Schrodinger integrator lost unitarity
  adiabaticity_lost,   // evolved state left the tracked eigenstate
  config,              // invalid experiment configuration or chart
};

std::string_view to_string(Errc code) noexcept;

/// Process exit status for an error category: 2 config, 4 adiabaticity lost,
/// 3 every other numerical failure.
int exit_code(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace berry
