#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "spinsplit/charged.hpp"
#include "spinsplit/errors.hpp"
#include "spinsplit/execution.hpp"
#include "spinsplit/neutral.hpp"
#include "spinsplit/units.hpp"

// Parameter sweeps over the splitting formulas, producing deterministic
// tables for plotting or regression.
namespace spinsplit::sweep {

enum class Variable { delta, p_perp, p_par, b };

std::string variable_name(Variable v);

// Inclusive endpoints; steps is the number of sample points (>= 2).
// x_i = start + (stop-start) * i/(steps-1).
struct Range {
    double start = 0.0;
    double stop = 0.0;
    int steps = 0;
};

// One curve: the base config with field overrides applied.
// Neutral keys: p_par, p_perp, delta. Charged keys: p_par, b, n.
struct Curve {
    std::string label;
    std::vector<std::pair<std::string, double>> overrides;
};

using BaseConfig = std::variant<neutral::NeutralConfig, charged::ChargedConfig>;

struct SweepSpec {
    Variable variable = Variable::delta;
    Range range;
    std::vector<Curve> curves;
    BaseConfig base;
};

// Throws invalid-sweep on: non-finite or inverted range, steps < 2, empty
// curves, duplicate/comma/newline labels, unknown override keys, a variable
// the base kind does not have, negative b range or override, non-integral or
// negative n override.
void validate(const SweepSpec& spec);

struct SweepTable {
    std::string abscissa_name;
    std::vector<std::string> curve_labels;
    // rows[i] = {x_i, y_curve0(x_i), y_curve1(x_i), ...}
    std::vector<std::vector<double>> rows;
    SweepSpec meta;
};

// Evaluates the splitting over the grid. Validation runs up front;
// each cell is then a pure function write into its own slot, so the
// parallel path is bit-identical to the serial one. A non-finite result
// raises DomainError("evaluation") naming the first offending (curve, x)
// in row-major order.
SweepTable run_sweep(const SweepSpec& spec, Execution exec = Execution::parallel);

// Canned sweeps matching the four figures in the README. fig1: splitting vs
// delta at p_par=0.3 for several p_perp. fig2: vs p_perp at delta=0.3 for
// several p_par. fig3: vs p_perp at p_par=0.5 for several delta. fig4:
// charged splitting vs b at p_par=0.2 for several n.
enum class Figure { fig1, fig2, fig3, fig4 };

Figure figure_from_name(const std::string& name); // invalid-input on unknown
SweepSpec figure_preset(Figure f);

// Header "x_name,label1,label2,...", one row per grid point, every value via
// format_sci, every line newline-terminated. Byte-deterministic.
std::string to_csv(const SweepTable& table);

// Rescales a natural-units table into SI for the given particle: energies to
// joule, momenta to kg m/s, b to tesla. Column names get _joule/_si/_tesla
// suffixes.
SweepTable to_si(const SweepTable& table, const units::ParticleSpec& particle);

} // namespace spinsplit::sweep
