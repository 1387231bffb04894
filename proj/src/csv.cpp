#include "resdyn/csv.hpp"

#include <cstdio>

namespace resdyn {

std::string format17(double x) {
    // The process never calls setlocale, so snprintf formats with the default
    // "C" locale and the decimal separator is always '.'.
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return std::string(buf);
}

}  // namespace resdyn
