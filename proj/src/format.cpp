#include "spinsplit/format.hpp"

#include <cstdio>

namespace spinsplit {

std::string format_sci(double value) {
    if (value == 0.0) value = 0.0; // collapse -0 so output is sign-stable
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.8e", value);
    return buf;
}

} // namespace spinsplit
