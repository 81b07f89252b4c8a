#pragma once

namespace spinsplit {

// Execution policy for the grid/batch drivers (sweep rows, verification
// samples). `parallel` uses OpenMP when compiled in and falls back to the
// serial path otherwise. The serial path is the reference the tests compare
// against; results are bit-identical either way.
enum class Execution { serial, parallel };

} // namespace spinsplit
