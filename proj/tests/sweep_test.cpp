#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>

#include "spinsplit/errors.hpp"
#include "spinsplit/format.hpp"
#include "spinsplit/oracles.hpp"
#include "spinsplit/sweep.hpp"
#include "spinsplit/units.hpp"

using namespace spinsplit;
using namespace spinsplit::sweep;
using doctest::Approx;

namespace {

bool rejects(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const DomainError& e) {
        return e.category() == "invalid-sweep";
    }
    return false;
}

SweepSpec neutral_spec() {
    SweepSpec s;
    s.variable = Variable::delta;
    s.range = {0.0, 2.0, 5};
    s.curves = {{"a", {}}};
    s.base = neutral::NeutralConfig{0.3, 0.0, 0.0};
    return s;
}

SweepSpec charged_spec() {
    SweepSpec s;
    s.variable = Variable::b;
    s.range = {0.0, 1.0, 5};
    s.curves = {{"a", {}}};
    s.base = charged::ChargedConfig{0.2, 0.0, 0};
    return s;
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) out.push_back(line);
    return out;
}

} // namespace

TEST_CASE("variable names") {
    CHECK(variable_name(Variable::delta) == std::string("delta"));
    CHECK(variable_name(Variable::p_perp) == std::string("p_perp"));
    CHECK(variable_name(Variable::p_par) == std::string("p_par"));
    CHECK(variable_name(Variable::b) == std::string("b"));
}

TEST_CASE("spec validation rejects malformed sweeps") {
    CHECK(rejects([] { auto s = neutral_spec(); s.range.stop = s.range.start; validate(s); }));
    CHECK(rejects([] { auto s = neutral_spec(); s.range = {1.0, 0.5, 5}; validate(s); }));
    CHECK(rejects([] { auto s = neutral_spec(); s.range.steps = 1; validate(s); }));
    CHECK(rejects([] { auto s = neutral_spec(); s.range.start = NAN; validate(s); }));
    CHECK(rejects([] { auto s = neutral_spec(); s.curves.clear(); validate(s); }));
    CHECK(rejects([] { auto s = neutral_spec(); s.curves = {{"", {}}}; validate(s); }));
    CHECK(rejects([] { auto s = neutral_spec(); s.curves = {{"x", {}}, {"x", {}}}; validate(s); }));
    CHECK(rejects([] { auto s = neutral_spec(); s.curves = {{"a,b", {}}}; validate(s); }));
    // Unknown override key.
    CHECK(rejects([] {
        auto s = neutral_spec();
        s.curves = {{"a", {{"bogus", 1.0}}}};
        validate(s);
    }));
    // Override may not touch the swept variable.
    CHECK(rejects([] {
        auto s = neutral_spec();
        s.curves = {{"a", {{"delta", 1.0}}}};
        validate(s);
    }));
    // Variable must belong to the base config kind.
    CHECK(rejects([] { auto s = neutral_spec(); s.variable = Variable::b; validate(s); }));
    CHECK(rejects([] { auto s = charged_spec(); s.variable = Variable::delta; validate(s); }));
    CHECK(rejects([] { auto s = charged_spec(); s.variable = Variable::p_perp; validate(s); }));
    // Field parameter may not go negative.
    CHECK(rejects([] { auto s = charged_spec(); s.range = {-0.5, 1.0, 5}; validate(s); }));
    CHECK(rejects([] {
        auto s = charged_spec();
        s.variable = Variable::p_par;
        s.range = {0.0, 2.0, 5};
        s.curves = {{"a", {{"b", -0.1}}}};
        validate(s);
    }));
    // Level index overrides must be non-negative integers.
    CHECK(rejects([] {
        auto s = charged_spec();
        s.curves = {{"a", {{"n", 1.5}}}};
        validate(s);
    }));
    CHECK(rejects([] {
        auto s = charged_spec();
        s.curves = {{"a", {{"n", -2.0}}}};
        validate(s);
    }));
    // Valid specs survive.
    auto ok = neutral_spec();
    CHECK_NOTHROW(validate(ok));
    auto okc = charged_spec();
    CHECK_NOTHROW(validate(okc));
}

TEST_CASE("grid endpoints and shape") {
    auto s = neutral_spec();
    s.range = {0.25, 1.75, 7};
    s.curves = {{"one", {}}, {"two", {{"p_perp", 1.0}}}};
    const auto t = run_sweep(s);
    CHECK(t.abscissa_name == std::string("delta"));
    REQUIRE(t.curve_labels.size() == 2);
    REQUIRE(t.rows.size() == 7);
    for (const auto& row : t.rows) REQUIRE(row.size() == 3);
    CHECK(t.rows.front()[0] == 0.25);
    CHECK(t.rows.back()[0] == 1.75);
    for (size_t i = 1; i < t.rows.size(); ++i) CHECK(t.rows[i][0] > t.rows[i - 1][0]);

    // Two points means exactly the endpoints.
    s.range = {0.0, 1.0, 2};
    const auto t2 = run_sweep(s);
    REQUIRE(t2.rows.size() == 2);
    CHECK(t2.rows[0][0] == 0.0);
    CHECK(t2.rows[1][0] == 1.0);
}

TEST_CASE("sweep values match direct evaluation") {
    auto s = neutral_spec();
    s.range = {0.0, 3.0, 31};
    s.curves = {{"q0", {}}, {"q1", {{"p_perp", 1.0}}}};
    const auto t = run_sweep(s);
    for (const auto& row : t.rows) {
        const double d = row[0];
        CHECK(row[1] == neutral::splitting({0.3, 0.0, d}).splitting);
        CHECK(row[2] == neutral::splitting({0.3, 1.0, d}).splitting);
    }
    // delta = 0 row vanishes identically.
    CHECK(t.rows.front()[1] == 0.0);
    CHECK(t.rows.front()[2] == 0.0);
}

TEST_CASE("sweeps are deterministic and policy independent") {
    const auto spec = figure_preset(Figure::fig3);
    const auto a = run_sweep(spec, Execution::parallel);
    const auto b = run_sweep(spec, Execution::parallel);
    const auto c = run_sweep(spec, Execution::serial);
    REQUIRE(a.rows.size() == b.rows.size());
    REQUIRE(a.rows.size() == c.rows.size());
    for (size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(a.rows[i] == b.rows[i]);
        CHECK(a.rows[i] == c.rows[i]);
    }
}

TEST_CASE("figure presets") {
    CHECK(figure_from_name("fig1") == Figure::fig1);
    CHECK(figure_from_name("fig4") == Figure::fig4);
    CHECK_THROWS_AS((void)figure_from_name("fig9"), DomainError);

    const auto f1 = figure_preset(Figure::fig1);
    CHECK(f1.variable == Variable::delta);
    CHECK(f1.curves.size() == 4);
    CHECK(f1.curves[0].label == std::string("p_perp=0"));
    CHECK(std::holds_alternative<neutral::NeutralConfig>(f1.base));

    const auto f4 = figure_preset(Figure::fig4);
    CHECK(f4.variable == Variable::b);
    CHECK(f4.curves[3].label == std::string("n=5"));
    CHECK(std::holds_alternative<charged::ChargedConfig>(f4.base));

    for (Figure f : {Figure::fig1, Figure::fig2, Figure::fig3, Figure::fig4})
        CHECK_NOTHROW(validate(figure_preset(f)));
}

TEST_CASE("figure shapes") {
    // Splitting vs delta: non-decreasing, bounded by twice the transverse energy.
    const auto t1 = run_sweep(figure_preset(Figure::fig1));
    const double qs[] = {0.0, 0.5, 1.0, 1.5};
    for (size_t c = 1; c <= 4; ++c) {
        const double bound = 2.0 * std::sqrt(1.0 + qs[c - 1] * qs[c - 1]);
        for (size_t i = 0; i < t1.rows.size(); ++i) {
            CHECK(t1.rows[i][c] <= bound * (1.0 + 1e-12));
            if (i > 0) CHECK(t1.rows[i][c] >= t1.rows[i - 1][c] - 1e-12);
        }
    }

    // Splitting vs transverse momentum: dead flat when p_par = 0, rising otherwise.
    const auto t2 = run_sweep(figure_preset(Figure::fig2));
    for (const auto& row : t2.rows) CHECK(row[1] == Approx(0.6).epsilon(1e-14));
    for (size_t c = 2; c <= 4; ++c)
        for (size_t i = 1; i < t2.rows.size(); ++i)
            CHECK(t2.rows[i][c] >= t2.rows[i - 1][c] - 1e-12);

    // Larger delta rises faster with transverse momentum.
    const auto t3 = run_sweep(figure_preset(Figure::fig3));
    double prev_rise = -1.0;
    for (size_t c = 1; c <= 4; ++c) {
        const double rise = t3.rows.back()[c] - t3.rows.front()[c];
        CHECK(rise > prev_rise);
        prev_rise = rise;
    }

    // Landau splitting grows with field, shrinks with level index.
    const auto t4 = run_sweep(figure_preset(Figure::fig4));
    for (size_t c = 1; c <= 4; ++c)
        for (size_t i = 1; i < t4.rows.size(); ++i)
            CHECK(t4.rows[i][c] > t4.rows[i - 1][c]);
    for (size_t i = 1; i < t4.rows.size(); ++i)
        for (size_t c = 2; c <= 4; ++c)
            CHECK(t4.rows[i][c] < t4.rows[i][c - 1]);
}

TEST_CASE("csv rendering") {
    auto s = neutral_spec();
    s.range = {0.0, 1.0, 3};
    s.curves = {{"base", {}}, {"wide", {{"p_perp", 2.0}}}};
    const auto t = run_sweep(s);
    const std::string csv = to_csv(t);
    const auto lines = split_lines(csv);
    REQUIRE(lines.size() == 4);
    CHECK(lines[0] == "delta,base,wide");
    CHECK(!csv.empty());
    CHECK(csv.back() == '\n');

    // Every numeric token survives a parse round trip at the printed precision.
    for (size_t i = 1; i < lines.size(); ++i) {
        std::istringstream row(lines[i]);
        std::string tok;
        while (std::getline(row, tok, ',')) {
            const double v = std::strtod(tok.c_str(), nullptr);
            CHECK(format_sci(v) == tok);
        }
    }

    // Byte-for-byte stable across runs.
    CHECK(to_csv(run_sweep(s)) == csv);
}

TEST_CASE("si scaling") {
    const auto p = units::preset("electron");
    const double mc2 = units::rest_energy_joule(p);
    const double mc = units::momentum_unit_si(p);

    auto s = neutral_spec();
    s.range = {0.1, 0.9, 5};
    const auto t = run_sweep(s);
    const auto si = to_si(t, p);
    CHECK(si.abscissa_name == std::string("delta_joule"));
    REQUIRE(si.curve_labels.size() == 1);
    CHECK(si.curve_labels[0] == std::string("a_joule"));
    for (size_t i = 0; i < t.rows.size(); ++i) {
        CHECK(si.rows[i][0] == t.rows[i][0] * mc2);
        CHECK(si.rows[i][1] == t.rows[i][1] * mc2);
    }

    auto sp = neutral_spec();
    sp.variable = Variable::p_perp;
    sp.base = neutral::NeutralConfig{0.0, 0.0, 0.3};
    const auto tp = to_si(run_sweep(sp), p);
    CHECK(tp.abscissa_name == std::string("p_perp_kg_m_s"));
    CHECK(tp.rows[2][0] == run_sweep(sp).rows[2][0] * mc);

    const auto tb = to_si(run_sweep(figure_preset(Figure::fig4)), p);
    CHECK(tb.abscissa_name == std::string("b_tesla"));
    CHECK(tb.rows[1][0] ==
          run_sweep(figure_preset(Figure::fig4)).rows[1][0] * units::critical_field_tesla(p));

    // Field scaling needs a charge to define the critical field.
    const auto neutron = units::preset("neutron");
    try {
        (void)to_si(run_sweep(figure_preset(Figure::fig4)), neutron);
        CHECK(false);
    } catch (const DomainError& e) {
        CHECK(e.category() == std::string("neutral-particle"));
    }
}

TEST_CASE("non-finite evaluations are reported") {
    auto s = neutral_spec();
    s.range = {1e307, 1.7e308, 2};
    bool caught = false;
    try {
        (void)run_sweep(s);
    } catch (const DomainError& e) {
        caught = true;
        CHECK(e.category() == std::string("evaluation"));
        CHECK(std::string(e.what()).find("non-finite") != std::string::npos);
    }
    CHECK(caught);
}
