#include "waxsolve/io_util.hpp"

#include <cstdio>

namespace waxsolve {

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    std::string s(buf);
    if (s.find_first_of(".eE") == std::string::npos && s.find_first_not_of("+-0123456789") == std::string::npos)
        s += ".0";
    return s;
}

} // namespace waxsolve
