#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "spinsplit/charged.hpp"
#include "spinsplit/errors.hpp"
#include "spinsplit/execution.hpp"
#include "spinsplit/format.hpp"
#include "spinsplit/neutral.hpp"
#include "spinsplit/oracles.hpp"
#include "spinsplit/sweep.hpp"
#include "spinsplit/units.hpp"

namespace {

using namespace spinsplit;

[[noreturn]] void usage_error(const std::string& msg) {
    throw DomainError("usage", msg);
}

double parse_double(const std::string& s) {
    try {
        size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) usage_error("cannot parse number '" + s + "'");
        return v;
    } catch (const DomainError&) {
        throw;
    } catch (const std::exception&) {
        usage_error("cannot parse number '" + s + "'");
    }
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string::size_type from = 0;
    while (true) {
        const auto to = s.find(sep, from);
        if (to == std::string::npos) {
            parts.push_back(s.substr(from));
            return parts;
        }
        parts.push_back(s.substr(from, to - from));
        from = to + 1;
    }
}

std::vector<std::pair<std::string, double>> parse_kv_list(const std::string& arg) {
    std::vector<std::pair<std::string, double>> kv;
    for (const auto& part : split(arg, ',')) {
        const auto eq = part.find('=');
        if (eq == std::string::npos || eq == 0)
            usage_error("expected key=value, got '" + part + "'");
        kv.emplace_back(part.substr(0, eq), parse_double(part.substr(eq + 1)));
    }
    return kv;
}

std::vector<double> parse_list(const std::string& arg) {
    std::vector<double> values;
    for (const auto& part : split(arg, ',')) values.push_back(parse_double(part));
    return values;
}

sweep::Range parse_range(const std::string& arg) {
    const auto parts = split(arg, ':');
    if (parts.size() != 3)
        usage_error("--range wants start:stop:steps, got '" + arg + "'");
    sweep::Range r;
    r.start = parse_double(parts[0]);
    r.stop = parse_double(parts[1]);
    try {
        size_t pos = 0;
        const long long steps = std::stoll(parts[2], &pos);
        if (pos != parts[2].size() || steps < 0 || steps > 10000000)
            usage_error("bad step count '" + parts[2] + "'");
        r.steps = static_cast<int>(steps);
    } catch (const DomainError&) {
        throw;
    } catch (const std::exception&) {
        usage_error("bad step count '" + parts[2] + "'");
    }
    return r;
}

void emit(std::ostringstream& out, const std::string& key, double value) {
    out << key << '=' << format_sci(value) << '\n';
}

// Shared SI plumbing: --particle picks a preset or "custom" assembled from
// the --mass-kg/--charge-c/--mdm-jt/--edm-cm flags.
struct ParticleFlags {
    std::string name;
    double mass_kg = 0.0;
    double charge_c = 0.0;
    double mdm_jt = 0.0;
    double edm_cm = 0.0;
    CLI::Option* name_opt = nullptr;
    CLI::Option* mass_opt = nullptr;

    void attach(CLI::App* cmd) {
        name_opt = cmd->add_option("--particle", name,
                                   "particle preset (electron, proton, neutron, muon) or 'custom'");
        mass_opt = cmd->add_option("--mass-kg", mass_kg, "custom particle mass [kg]");
        cmd->add_option("--charge-c", charge_c, "custom particle charge [C]")->needs(mass_opt);
        cmd->add_option("--mdm-jt", mdm_jt, "custom magnetic dipole moment size [J/T]")->needs(mass_opt);
        cmd->add_option("--edm-cm", edm_cm, "custom electric dipole moment size [C m]")->needs(mass_opt);
        mass_opt->needs(name_opt);
    }

    bool given() const { return name_opt->count() > 0; }

    units::ParticleSpec resolve() const {
        if (name == "custom") {
            if (mass_opt->count() == 0)
                usage_error("--particle custom requires --mass-kg");
            units::ParticleSpec p{mass_kg, charge_c, mdm_jt, edm_cm, "custom"};
            units::validate(p);
            return p;
        }
        if (mass_opt->count() > 0)
            usage_error("--mass-kg only applies with --particle custom");
        return units::preset(name);
    }
};

} // namespace

int main(int argc, char** argv) {
    std::ostringstream out;
    std::string out_path;
    int exit_code = 0;

    CLI::App app{"relativistic spin splitting and Larmor precession in static E/B fields"};
    app.require_subcommand(1);
    app.fallthrough(); // let the global --out appear after a subcommand
    app.add_option("--out", out_path, "write output to this file instead of stdout");

    // ---- eval ----------------------------------------------------------
    auto* eval_cmd = app.add_subcommand("eval", "evaluate the splitting at one configuration");
    eval_cmd->require_subcommand(1);

    auto* eval_n = eval_cmd->add_subcommand("neutral", "neutral particle with dipole coupling");
    {
        struct State {
            double p_par = 0.0, p_perp = 0.0, delta = 0.0;
            double e_vpm = 0.0, b_tesla = 0.0;
            bool si = false;
            ParticleFlags particle;
        };
        auto st = std::make_shared<State>();
        eval_n->add_option("--p-par", st->p_par, "longitudinal momentum [mc]");
        eval_n->add_option("--p-perp", st->p_perp, "transverse momentum [mc]");
        auto* delta_opt = eval_n->add_option("--delta", st->delta, "interaction energy [mc^2]");
        st->particle.attach(eval_n);
        auto* e_opt = eval_n->add_option("--e-vpm", st->e_vpm, "electric field [V/m]")
                          ->needs(st->particle.name_opt)
                          ->excludes(delta_opt);
        auto* b_opt = eval_n->add_option("--b-tesla", st->b_tesla, "magnetic field [T]")
                          ->needs(st->particle.name_opt)
                          ->excludes(delta_opt);
        eval_n->add_flag("--si", st->si, "also print SI outputs")->needs(st->particle.name_opt);

        eval_n->callback([st, e_opt, b_opt, &out]() {
            double delta = st->delta;
            units::ParticleSpec particle;
            const bool fields = e_opt->count() > 0 || b_opt->count() > 0;
            if (fields || st->si) particle = st->particle.resolve();
            if (fields)
                delta = units::delta_from_fields(particle, {st->e_vpm, st->b_tesla}).value;

            const neutral::NeutralConfig cfg{st->p_par, st->p_perp, delta};
            const auto eig = neutral::eigenvalues(cfg);
            const auto res = neutral::splitting(cfg);
            emit(out, "p_par", cfg.p_par);
            emit(out, "p_perp", cfg.p_perp);
            emit(out, "delta", cfg.delta);
            emit(out, "e_plus_up", eig.e_plus_up);
            emit(out, "e_plus_down", eig.e_plus_down);
            emit(out, "splitting", res.splitting);
            out << "regime=" << neutral::to_string(res.regime) << '\n';
            emit(out, "threshold", res.threshold);
            if (st->si) {
                const units::NaturalValue split{res.splitting, units::Kind::energy};
                emit(out, "splitting_joule", units::to_si_energy(split, particle));
                emit(out, "larmor_rad_s", units::larmor_frequency(split, particle));
            }
        });
    }

    auto* eval_c = eval_cmd->add_subcommand("charged", "charged particle in a magnetic field");
    {
        struct State {
            double p_par = 0.0, b = 0.0, b_tesla = 0.0;
            int n = 0;
            bool si = false;
            ParticleFlags particle;
        };
        auto st = std::make_shared<State>();
        eval_c->add_option("--p-par", st->p_par, "longitudinal momentum [mc]");
        auto* b_nat = eval_c->add_option("--b", st->b, "field parameter b [dimensionless]");
        eval_c->add_option("--n", st->n, "Landau index");
        st->particle.attach(eval_c);
        auto* b_si = eval_c->add_option("--b-tesla", st->b_tesla, "magnetic field [T]")
                         ->needs(st->particle.name_opt)
                         ->excludes(b_nat);
        eval_c->add_flag("--si", st->si, "also print SI outputs")->needs(st->particle.name_opt);

        eval_c->callback([st, b_si, &out]() {
            double b = st->b;
            units::ParticleSpec particle;
            if (b_si->count() > 0 || st->si) particle = st->particle.resolve();
            if (b_si->count() > 0)
                b = units::b_param(particle, {0.0, st->b_tesla}).value;

            const charged::ChargedConfig cfg{st->p_par, b, st->n};
            const auto res = charged::splitting(cfg);
            emit(out, "p_par", cfg.p_par);
            emit(out, "b", cfg.b);
            out << "n=" << cfg.n << '\n';
            emit(out, "level_up", res.level_up);
            emit(out, "level_down", res.level_down);
            emit(out, "splitting", res.splitting);
            emit(out, "splitting_nonrel", charged::splitting_nonrel(cfg));
            if (st->si) {
                const units::NaturalValue split{res.splitting, units::Kind::energy};
                emit(out, "splitting_joule", units::to_si_energy(split, particle));
                emit(out, "larmor_rad_s", units::larmor_frequency(split, particle));
            }
        });
    }

    // ---- sweep ---------------------------------------------------------
    auto* sweep_cmd = app.add_subcommand("sweep", "evaluate a 1-parameter sweep and emit CSV");
    {
        struct State {
            std::string figure, kind, var, range, base;
            std::vector<std::string> curves;
            bool si = false, serial = false;
            ParticleFlags particle;
        };
        auto st = std::make_shared<State>();
        auto* fig_opt = sweep_cmd->add_option("--figure", st->figure, "canned sweep: fig1..fig4");
        auto* kind_opt = sweep_cmd->add_option("--kind", st->kind, "neutral or charged")
                             ->excludes(fig_opt);
        auto* var_opt = sweep_cmd->add_option("--var", st->var, "swept variable: delta, p_perp, p_par or b")
                            ->excludes(fig_opt);
        auto* range_opt = sweep_cmd->add_option("--range", st->range, "grid as start:stop:steps")
                              ->excludes(fig_opt);
        auto* curve_opt = sweep_cmd->add_option("--curve", st->curves,
                                                "one curve as k=v[,k=v]... (repeatable)")
                              ->excludes(fig_opt);
        sweep_cmd->add_option("--base", st->base, "base config overrides k=v[,k=v]...")
            ->excludes(fig_opt);
        st->particle.attach(sweep_cmd);
        sweep_cmd->add_flag("--si", st->si, "rescale the table to SI units")
            ->needs(st->particle.name_opt);
        sweep_cmd->add_flag("--serial", st->serial, "force single-threaded evaluation");

        sweep_cmd->callback([st, fig_opt, kind_opt, var_opt, range_opt, curve_opt, &out]() {
            sweep::SweepSpec spec;
            if (fig_opt->count() > 0) {
                spec = sweep::figure_preset(sweep::figure_from_name(st->figure));
            } else {
                if (kind_opt->count() == 0 || var_opt->count() == 0 ||
                    range_opt->count() == 0 || curve_opt->count() == 0)
                    usage_error("sweep needs --figure or all of --kind, --var, --range, --curve");
                if (st->kind == "neutral")
                    spec.base = neutral::NeutralConfig{};
                else if (st->kind == "charged")
                    spec.base = charged::ChargedConfig{};
                else
                    usage_error("--kind must be neutral or charged");

                if (st->var == "delta") spec.variable = sweep::Variable::delta;
                else if (st->var == "p_perp") spec.variable = sweep::Variable::p_perp;
                else if (st->var == "p_par") spec.variable = sweep::Variable::p_par;
                else if (st->var == "b") spec.variable = sweep::Variable::b;
                else usage_error("--var must be delta, p_perp, p_par or b");

                spec.range = parse_range(st->range);
                if (!st->base.empty()) {
                    for (const auto& [key, value] : parse_kv_list(st->base)) {
                        if (auto* ncfg = std::get_if<neutral::NeutralConfig>(&spec.base)) {
                            if (key == "p_par") ncfg->p_par = value;
                            else if (key == "p_perp") ncfg->p_perp = value;
                            else if (key == "delta") ncfg->delta = value;
                            else usage_error("unknown base key '" + key + "' for a neutral sweep");
                        } else {
                            auto& ccfg = std::get<charged::ChargedConfig>(spec.base);
                            if (key == "p_par") ccfg.p_par = value;
                            else if (key == "b") ccfg.b = value;
                            else if (key == "n") {
                                if (value < 0 || std::floor(value) != value)
                                    usage_error("base n must be a non-negative integer");
                                ccfg.n = static_cast<int>(value);
                            } else usage_error("unknown base key '" + key + "' for a charged sweep");
                        }
                    }
                }
                for (const auto& arg : st->curves) {
                    sweep::Curve curve;
                    curve.label = arg;
                    for (auto& ch : curve.label)
                        if (ch == ',') ch = ' ';
                    curve.overrides = parse_kv_list(arg);
                    spec.curves.push_back(std::move(curve));
                }
            }

            auto table = sweep::run_sweep(
                spec, st->serial ? Execution::serial : Execution::parallel);
            if (st->si) table = sweep::to_si(table, st->particle.resolve());
            out << sweep::to_csv(table);
        });
    }

    // ---- limits --------------------------------------------------------
    auto* limits_cmd = app.add_subcommand(
        "limits", "compare exact splittings against the asymptotic formulas");
    limits_cmd->require_subcommand(1);

    auto* limits_n = limits_cmd->add_subcommand("neutral", "low/high speed limits in p_par");
    {
        struct State {
            std::string regime;
            double p_perp = 0.0, delta = 0.3;
            std::string at;
        };
        auto st = std::make_shared<State>();
        limits_n->add_option("--regime", st->regime, "low or high")->required();
        limits_n->add_option("--p-perp", st->p_perp, "transverse momentum [mc]");
        limits_n->add_option("--delta", st->delta, "interaction energy [mc^2]");
        limits_n->add_option("--at", st->at, "comma-separated p_par values");

        limits_n->callback([st, &out]() {
            std::vector<double> at;
            const bool low = st->regime == "low";
            if (!low && st->regime != "high")
                usage_error("--regime must be low or high");
            if (!st->at.empty())
                at = parse_list(st->at);
            else if (low)
                at = {1e-3, 3e-3, 1e-2, 3e-2, 1e-1};
            else
                at = {10, 30, 100, 300, 1000};

            out << "p_par,exact,approx,abs_error,rel_error\n";
            for (double p : at) {
                const neutral::NeutralConfig cfg{p, st->p_perp, st->delta};
                const double exact = neutral::splitting(cfg).splitting;
                const double approx = low ? neutral::splitting_low_speed(cfg)
                                          : neutral::splitting_high_speed(cfg);
                const double abs_err = std::abs(exact - approx);
                const double rel = abs_err == 0.0 ? 0.0 : abs_err / std::abs(exact);
                out << format_sci(p) << ',' << format_sci(exact) << ','
                    << format_sci(approx) << ',' << format_sci(abs_err) << ','
                    << format_sci(rel) << '\n';
            }
        });
    }

    auto* limits_c = limits_cmd->add_subcommand("charged", "low-field / high-speed limits");
    {
        struct State {
            std::string regime;
            double p_par = 0.0, b = 0.1;
            int n = 0;
            std::string at;
        };
        auto st = std::make_shared<State>();
        limits_c->add_option("--regime", st->regime, "low (varies b) or high (varies p_par)")
            ->required();
        limits_c->add_option("--p-par", st->p_par, "longitudinal momentum [mc] (low regime)");
        limits_c->add_option("--b", st->b, "field parameter (high regime)");
        limits_c->add_option("--n", st->n, "Landau index");
        limits_c->add_option("--at", st->at, "comma-separated values of the varied quantity");

        limits_c->callback([st, &out]() {
            const bool low = st->regime == "low";
            if (!low && st->regime != "high")
                usage_error("--regime must be low or high");
            std::vector<double> at;
            if (!st->at.empty())
                at = parse_list(st->at);
            else if (low)
                at = {1e-4, 3e-4, 1e-3, 3e-3, 1e-2};
            else
                at = {10, 30, 100, 300, 1000};

            out << (low ? "b" : "p_par") << ",exact,approx,abs_error,rel_error\n";
            for (double v : at) {
                const charged::ChargedConfig cfg =
                    low ? charged::ChargedConfig{st->p_par, v, st->n}
                        : charged::ChargedConfig{v, st->b, st->n};
                const double exact = charged::splitting(cfg).splitting;
                const double approx = low ? charged::splitting_low_field(cfg)
                                          : charged::splitting_high_speed(cfg);
                const double abs_err = std::abs(exact - approx);
                const double rel = abs_err == 0.0 ? 0.0 : abs_err / std::abs(exact);
                out << format_sci(v) << ',' << format_sci(exact) << ','
                    << format_sci(approx) << ',' << format_sci(abs_err) << ','
                    << format_sci(rel) << '\n';
            }
        });
    }

    // ---- verify --------------------------------------------------------
    auto* verify_cmd =
        app.add_subcommand("verify", "compare closed forms against the numerical oracles");
    {
        struct State {
            std::string kind;
            int samples = 1000;
            std::uint64_t seed = 42;
            double tol = 0.0;
            bool verbose = false, serial = false;
        };
        auto st = std::make_shared<State>();
        verify_cmd->add_option("--kind", st->kind, "dirac or landau")->required();
        verify_cmd->add_option("--samples", st->samples, "number of random configurations");
        verify_cmd->add_option("--seed", st->seed, "PRNG seed");
        auto* tol_opt = verify_cmd->add_option("--tol", st->tol, "pass threshold on max relative error");
        verify_cmd->add_flag("--verbose", st->verbose, "also print the worst sample");
        verify_cmd->add_flag("--serial", st->serial, "force single-threaded evaluation");

        verify_cmd->callback([st, tol_opt, &out, &exit_code]() {
            oracles::VerifyKind kind;
            if (st->kind == "dirac")
                kind = oracles::VerifyKind::dirac;
            else if (st->kind == "landau")
                kind = oracles::VerifyKind::landau;
            else
                usage_error("--kind must be dirac or landau");

            const double tol = tol_opt->count() > 0
                                   ? st->tol
                                   : (kind == oracles::VerifyKind::dirac ? 1e-12 : 1e-3);
            const auto report = oracles::run_verification(
                kind, st->samples, st->seed, tol,
                st->serial ? Execution::serial : Execution::parallel);
            out << report.summary_line() << '\n';
            if (st->verbose) out << report.worst_line() << '\n';
            if (!report.pass) exit_code = 3;
        });
    }

    // ---- convert -------------------------------------------------------
    auto* convert_cmd =
        app.add_subcommand("convert", "SI <-> natural unit conversions for a particle");
    {
        struct State {
            ParticleFlags particle;
            double e_vpm = 0.0, b_tesla = 0.0;
            double energy_joule = 0.0, momentum_si = 0.0, splitting = 0.0;
        };
        auto st = std::make_shared<State>();
        st->particle.attach(convert_cmd);
        st->particle.name_opt->required();
        auto* e_opt = convert_cmd->add_option("--e-vpm", st->e_vpm, "electric field [V/m]");
        auto* b_opt = convert_cmd->add_option("--b-tesla", st->b_tesla, "magnetic field [T]");
        auto* en_opt = convert_cmd->add_option("--energy-joule", st->energy_joule,
                                               "energy to convert to natural units [J]");
        auto* mom_opt = convert_cmd->add_option("--momentum-si", st->momentum_si,
                                                "momentum to convert to natural units [kg m/s]");
        auto* split_opt = convert_cmd->add_option(
            "--splitting", st->splitting, "natural splitting to convert to J and rad/s");

        convert_cmd->callback([st, e_opt, b_opt, en_opt, mom_opt, split_opt, &out]() {
            const units::ParticleSpec particle = st->particle.resolve();
            out << "particle=" << particle.name << '\n';
            emit(out, "mass_kg", particle.mass);
            emit(out, "charge_c", particle.charge);
            emit(out, "mdm_jt", particle.mdm);
            emit(out, "edm_cm", particle.edm);
            emit(out, "mc2_joule", units::rest_energy_joule(particle));
            emit(out, "mc_si", units::momentum_unit_si(particle));
            if (particle.charge != 0.0)
                emit(out, "b_crit_tesla", units::critical_field_tesla(particle));

            if (e_opt->count() > 0 || b_opt->count() > 0) {
                const units::FieldSpec f{st->e_vpm, st->b_tesla};
                emit(out, "delta", units::delta_from_fields(particle, f).value);
                if (particle.charge != 0.0 && b_opt->count() > 0)
                    emit(out, "b", units::b_param(particle, f).value);
            }
            if (en_opt->count() > 0)
                emit(out, "energy_natural",
                     units::natural_energy(st->energy_joule, particle).value);
            if (mom_opt->count() > 0)
                emit(out, "momentum_natural",
                     units::natural_momentum(st->momentum_si, particle).value);
            if (split_opt->count() > 0) {
                const units::NaturalValue split{st->splitting, units::Kind::energy};
                emit(out, "splitting_joule", units::to_si_energy(split, particle));
                emit(out, "larmor_rad_s", units::larmor_frequency(split, particle));
            }
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        std::cerr << "error:usage:" << e.what() << '\n';
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "error:" << e.category() << ':' << e.what() << '\n';
        return e.category() == "usage" ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error:internal:" << e.what() << '\n';
        return 1;
    }

    const std::string text = out.str();
    if (!out_path.empty()) {
        std::ofstream file(out_path, std::ios::binary);
        if (!file) {
            std::cerr << "error:invalid-input:cannot open output file '" << out_path << "'\n";
            return 1;
        }
        file << text;
        file.close();
        if (!file.good()) {
            std::cerr << "error:invalid-input:failed writing output file '" << out_path << "'\n";
            return 1;
        }
    } else {
        std::cout << text;
    }
    return exit_code;
}
