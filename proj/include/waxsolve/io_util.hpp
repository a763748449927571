#pragma once

#include <string>

namespace waxsolve {

// 17 significant digits (lossless for doubles), always with a decimal point
// or exponent so integral values read back as "2.0" rather than "2".
std::string format_double(double x);

} // namespace waxsolve
