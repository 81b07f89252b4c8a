#include "spinsplit/sweep.hpp"

#include <cmath>
#include <set>

#include "spinsplit/format.hpp"

namespace spinsplit::sweep {

namespace {

bool is_neutral(const BaseConfig& base) {
    return std::holds_alternative<neutral::NeutralConfig>(base);
}

bool known_key(const BaseConfig& base, const std::string& key) {
    if (is_neutral(base))
        return key == "p_par" || key == "p_perp" || key == "delta";
    return key == "p_par" || key == "b" || key == "n";
}

bool variable_applies(const BaseConfig& base, Variable v) {
    if (is_neutral(base))
        return v == Variable::delta || v == Variable::p_perp || v == Variable::p_par;
    return v == Variable::b || v == Variable::p_par;
}

void apply_override(BaseConfig& base, const std::string& key, double value) {
    if (auto* n = std::get_if<neutral::NeutralConfig>(&base)) {
        if (key == "p_par") n->p_par = value;
        else if (key == "p_perp") n->p_perp = value;
        else n->delta = value;
    } else {
        auto& c = std::get<charged::ChargedConfig>(base);
        if (key == "p_par") c.p_par = value;
        else if (key == "b") c.b = value;
        else c.n = static_cast<int>(value);
    }
}

void set_variable(BaseConfig& base, Variable v, double x) {
    if (auto* n = std::get_if<neutral::NeutralConfig>(&base)) {
        if (v == Variable::delta) n->delta = x;
        else if (v == Variable::p_perp) n->p_perp = x;
        else n->p_par = x;
    } else {
        auto& c = std::get<charged::ChargedConfig>(base);
        if (v == Variable::b) c.b = x;
        else c.p_par = x;
    }
}

double evaluate(const BaseConfig& cfg) {
    if (const auto* n = std::get_if<neutral::NeutralConfig>(&cfg))
        return neutral::splitting(*n).splitting;
    return charged::splitting(std::get<charged::ChargedConfig>(cfg)).splitting;
}

} // namespace

std::string variable_name(Variable v) {
    switch (v) {
    case Variable::delta: return "delta";
    case Variable::p_perp: return "p_perp";
    case Variable::p_par: return "p_par";
    case Variable::b: return "b";
    }
    return "?";
}

void validate(const SweepSpec& spec) {
    const auto fail = [](const std::string& msg) {
        throw DomainError("invalid-sweep", msg);
    };

    if (!std::isfinite(spec.range.start) || !std::isfinite(spec.range.stop))
        fail("range endpoints must be finite");
    if (!(spec.range.start < spec.range.stop))
        fail("range must satisfy start < stop");
    if (spec.range.steps < 2)
        fail("range needs at least 2 steps");
    if (spec.curves.empty())
        fail("at least one curve required");

    if (!variable_applies(spec.base, spec.variable))
        fail("variable '" + variable_name(spec.variable) +
             "' does not apply to the base config kind");
    if (!is_neutral(spec.base) && spec.variable == Variable::b && spec.range.start < 0.0)
        fail("field parameter b cannot be swept below 0");

    if (const auto* n = std::get_if<neutral::NeutralConfig>(&spec.base))
        neutral::validate(*n);
    else
        charged::validate(std::get<charged::ChargedConfig>(spec.base));

    std::set<std::string> labels;
    for (const auto& curve : spec.curves) {
        if (curve.label.empty())
            fail("curve labels must be non-empty");
        if (curve.label.find(',') != std::string::npos ||
            curve.label.find('\n') != std::string::npos)
            fail("curve label '" + curve.label + "' contains a comma or newline");
        if (!labels.insert(curve.label).second)
            fail("duplicate curve label '" + curve.label + "'");
        for (const auto& [key, value] : curve.overrides) {
            if (!known_key(spec.base, key))
                fail("unknown override key '" + key + "' for curve '" + curve.label + "'");
            if (key == variable_name(spec.variable))
                fail("curve '" + curve.label + "' overrides the swept variable");
            if (!std::isfinite(value))
                fail("override '" + key + "' must be finite");
            if (key == "b" && value < 0.0)
                fail("override b must be non-negative");
            if (key == "n" &&
                (value < 0.0 || value > 2147483647.0 || std::floor(value) != value))
                fail("override n must be a non-negative integer");
        }
    }
}

SweepTable run_sweep(const SweepSpec& spec, Execution exec) {
    validate(spec);

    // Everything below is validated and throw-free, which keeps the
    // parallel region safe; non-finite results are collected afterwards.
    std::vector<BaseConfig> curve_cfgs;
    curve_cfgs.reserve(spec.curves.size());
    for (const auto& curve : spec.curves) {
        BaseConfig cfg = spec.base;
        for (const auto& [key, value] : curve.overrides) apply_override(cfg, key, value);
        curve_cfgs.push_back(cfg);
    }

    const int steps = spec.range.steps;
    const int ncurves = static_cast<int>(spec.curves.size());
    const double span = spec.range.stop - spec.range.start;

    SweepTable table;
    table.abscissa_name = variable_name(spec.variable);
    for (const auto& curve : spec.curves) table.curve_labels.push_back(curve.label);
    table.rows.assign(static_cast<size_t>(steps),
                      std::vector<double>(static_cast<size_t>(ncurves) + 1));
    table.meta = spec;

    const auto fill_row = [&](int i) {
        const double x =
            i == steps - 1 ? spec.range.stop
                           : spec.range.start + span * (static_cast<double>(i) / (steps - 1));
        auto& row = table.rows[static_cast<size_t>(i)];
        row[0] = x;
        for (int c = 0; c < ncurves; ++c) {
            BaseConfig cfg = curve_cfgs[static_cast<size_t>(c)];
            set_variable(cfg, spec.variable, x);
            row[static_cast<size_t>(c) + 1] = evaluate(cfg);
        }
    };

    if (exec == Execution::parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
        for (int i = 0; i < steps; ++i) fill_row(i);
    } else {
        for (int i = 0; i < steps; ++i) fill_row(i);
    }

    for (const auto& row : table.rows)
        for (size_t c = 1; c < row.size(); ++c)
            if (!std::isfinite(row[c]))
                throw DomainError("evaluation",
                                  "non-finite result for curve '" +
                                      table.curve_labels[c - 1] + "' at " +
                                      table.abscissa_name + " = " + format_sci(row[0]));
    return table;
}

Figure figure_from_name(const std::string& name) {
    if (name == "fig1") return Figure::fig1;
    if (name == "fig2") return Figure::fig2;
    if (name == "fig3") return Figure::fig3;
    if (name == "fig4") return Figure::fig4;
    throw DomainError("invalid-input",
                      "unknown figure '" + name + "' (expected fig1..fig4)");
}

SweepSpec figure_preset(Figure f) {
    // Captioned values (p_par = 0.3 / delta = 0.3 / p_par = 0.5 / p_par = 0.2)
    // are fixed; ranges, point counts and curve families are this artifact's
    // plotting conventions.
    SweepSpec spec;
    switch (f) {
    case Figure::fig1:
        spec.variable = Variable::delta;
        spec.range = {0.0, 3.0, 301};
        spec.base = neutral::NeutralConfig{0.3, 0.0, 0.0};
        spec.curves = {{"p_perp=0", {{"p_perp", 0.0}}},
                       {"p_perp=0.5", {{"p_perp", 0.5}}},
                       {"p_perp=1", {{"p_perp", 1.0}}},
                       {"p_perp=1.5", {{"p_perp", 1.5}}}};
        break;
    case Figure::fig2:
        spec.variable = Variable::p_perp;
        spec.range = {0.0, 3.0, 301};
        spec.base = neutral::NeutralConfig{0.0, 0.0, 0.3};
        spec.curves = {{"p_par=0", {{"p_par", 0.0}}},
                       {"p_par=0.5", {{"p_par", 0.5}}},
                       {"p_par=1", {{"p_par", 1.0}}},
                       {"p_par=2", {{"p_par", 2.0}}}};
        break;
    case Figure::fig3:
        spec.variable = Variable::p_perp;
        spec.range = {0.0, 3.0, 301};
        spec.base = neutral::NeutralConfig{0.5, 0.0, 0.0};
        spec.curves = {{"delta=0.1", {{"delta", 0.1}}},
                       {"delta=0.3", {{"delta", 0.3}}},
                       {"delta=0.6", {{"delta", 0.6}}},
                       {"delta=0.9", {{"delta", 0.9}}}};
        break;
    case Figure::fig4:
        spec.variable = Variable::b;
        spec.range = {0.0, 2.0, 201};
        spec.base = charged::ChargedConfig{0.2, 0.0, 0};
        spec.curves = {{"n=0", {{"n", 0.0}}},
                       {"n=1", {{"n", 1.0}}},
                       {"n=2", {{"n", 2.0}}},
                       {"n=5", {{"n", 5.0}}}};
        break;
    }
    return spec;
}

std::string to_csv(const SweepTable& table) {
    std::string out = table.abscissa_name;
    for (const auto& label : table.curve_labels) {
        out += ',';
        out += label;
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (size_t c = 0; c < row.size(); ++c) {
            if (c > 0) out += ',';
            out += format_sci(row[c]);
        }
        out += '\n';
    }
    return out;
}

SweepTable to_si(const SweepTable& table, const units::ParticleSpec& particle) {
    units::validate(particle);
    const double energy = units::rest_energy_joule(particle);

    double x_scale = 0.0;
    std::string suffix;
    switch (table.meta.variable) {
    case Variable::delta:
        x_scale = energy;
        suffix = "_joule";
        break;
    case Variable::p_perp:
    case Variable::p_par:
        x_scale = units::momentum_unit_si(particle);
        suffix = "_kg_m_s";
        break;
    case Variable::b:
        x_scale = units::critical_field_tesla(particle); // throws for neutral
        suffix = "_tesla";
        break;
    }

    SweepTable out = table;
    out.abscissa_name += suffix;
    for (auto& label : out.curve_labels) label += "_joule";
    for (auto& row : out.rows) {
        row[0] *= x_scale;
        for (size_t c = 1; c < row.size(); ++c) row[c] *= energy;
    }
    return out;
}

} // namespace spinsplit::sweep
