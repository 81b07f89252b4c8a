#pragma once

#include <string>

namespace spinsplit {

// Scientific notation with exactly 9 significant digits. All numeric CLI and
// CSV output goes through this so identical inputs give byte-identical text.
std::string format_sci(double value);

} // namespace spinsplit
