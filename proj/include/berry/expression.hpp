#pragma once

#include <string_view>

namespace berry {

/// Evaluates angle literals such as "pi/2", "-3*pi/4" or "2*(pi - 0.1)".
/// Grammar: numbers, the constant pi, + - * /, unary minus and parentheses.
/// Throws Errc::config on malformed input.
double evaluate_expression(std::string_view text);

}  // namespace berry
