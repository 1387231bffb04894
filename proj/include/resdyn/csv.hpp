#pragma once

#include <string>

namespace resdyn {

// Full-precision, locale-independent float formatting for CSV/JSON output
// (17 significant digits, '.' decimal separator).
std::string format17(double v);

}  // namespace resdyn
