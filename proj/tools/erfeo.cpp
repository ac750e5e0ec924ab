#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "erfeo/config_io.hpp"
#include "erfeo/dicke.hpp"
#include "erfeo/errors.hpp"
#include "erfeo/magnon.hpp"
#include "erfeo/resonances.hpp"
#include "erfeo/srpt.hpp"
#include "erfeo/sweeps.hpp"

using namespace erfeo;

namespace {

using Cell = std::variant<double, std::string, bool>;

struct Table {
    std::vector<std::string> headers;
    std::vector<std::vector<Cell>> rows;
};

std::string fmt9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v == 0.0 ? 0.0 : v);
    return buf;
}

std::string csv_cell(const Cell& c) {
    if (auto d = std::get_if<double>(&c)) return fmt9(*d);
    if (auto b = std::get_if<bool>(&c)) return *b ? "true" : "false";
    const std::string& s = std::get<std::string>(c);
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
}

std::string render(const Table& t, const std::string& format) {
    std::ostringstream os;
    if (format == "json") {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& r : t.rows) {
            nlohmann::ordered_json o;
            for (std::size_t i = 0; i < t.headers.size(); ++i) {
                const Cell& c = r[i];
                if (auto d = std::get_if<double>(&c))
                    o[t.headers[i]] = std::isfinite(*d) ? nlohmann::ordered_json(std::stod(fmt9(*d))) : nullptr;
                else if (auto b = std::get_if<bool>(&c))
                    o[t.headers[i]] = *b;
                else
                    o[t.headers[i]] = std::get<std::string>(c);
            }
            arr.push_back(std::move(o));
        }
        os << arr.dump(2) << '\n';
        return os.str();
    }
    for (std::size_t i = 0; i < t.headers.size(); ++i) os << (i ? "," : "") << t.headers[i];
    os << '\n';
    for (const auto& r : t.rows) {
        for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_cell(r[i]);
        os << '\n';
    }
    return os.str();
}

const std::vector<std::string> kStateHeaders = {"sx_A", "sy_A", "sz_A", "sx_B", "sy_B", "sz_B",
                                                "Sx_A", "Sy_A", "Sz_A", "Sx_B", "Sy_B", "Sz_B"};

void push_state(std::vector<Cell>& row, const SpinState& s) {
    const Vec12 v = s.pack();
    for (int i = 0; i < 12; ++i) row.emplace_back(v[i]);
}

struct Common {
    std::string config;
    std::string out;
    std::string format = "csv";
    int threads = 0;
    std::vector<std::string> overrides;
};

struct Grid {
    double lo, hi, step;
};

ModelConfig load(const Common& c) {
    ModelConfig cfg = c.config.empty() ? default_config() : load_config(c.config);
    for (const auto& o : c.overrides) apply_override(cfg, o);
    check_config(cfg);
    for (const auto& w : config_warnings(cfg)) std::cerr << "warning: " << w << '\n';
    return cfg;
}

void emit(const Common& c, const Table& t) {
    const std::string text = render(t, c.format);
    if (c.out.empty() || c.out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(c.out, std::ios::binary);
    if (!f) throw ConfigError("cannot open output file " + c.out);
    f << text;
}

int cmd_equilibrium(const Common& c, const std::string& method) {
    const ModelConfig cfg = load(c);
    const SweepPoint p = equilibrium_point(cfg, parse_method(method));
    Table t;
    t.headers = {"T_K", "Bx_T", "By_T", "Bz_T"};
    t.headers.insert(t.headers.end(), kStateHeaders.begin(), kStateHeaders.end());
    for (const char* h : {"F_meV", "order", "phi_deg", "alpha_r", "alpha_i", "branch", "status"}) t.headers.push_back(h);
    std::vector<Cell> row = {p.T, p.B.x(), p.B.y(), p.B.z()};
    push_state(row, p.state);
    row.insert(row.end(), {p.free_energy, p.order_parameter, p.phi_deg, p.alpha_r, p.alpha_i, p.branch,
                           std::string(p.converged ? "ok" : "not-converged")});
    t.rows.push_back(std::move(row));
    emit(c, t);
    return p.converged ? 0 : 2;
}

int cmd_sweep_t(const Common& c, const std::string& method, const Grid& g) {
    const ModelConfig cfg = load(c);
    const auto pts = temperature_sweep(cfg, make_grid(g.lo, g.hi, g.step), parse_method(method));
    Table t;
    t.headers = {"T_K"};
    t.headers.insert(t.headers.end(), kStateHeaders.begin(), kStateHeaders.end());
    for (const char* h : {"order", "phi_deg", "alpha_r", "alpha_i", "F_meV", "status"}) t.headers.push_back(h);
    for (const auto& p : pts) {
        std::vector<Cell> row = {p.T};
        push_state(row, p.state);
        row.insert(row.end(), {p.order_parameter, p.phi_deg, p.alpha_r, p.alpha_i, p.free_energy,
                               std::string(p.converged ? "ok" : "not-converged")});
        t.rows.push_back(std::move(row));
    }
    emit(c, t);
    return 0;
}

int cmd_phase_diagram(const Common& c, const std::string& axis, const std::string& method, const Grid& tg,
                      const Grid& bg) {
    const ModelConfig cfg = load(c);
    const PhaseGrid pg = phase_diagram(cfg, parse_axis(axis), make_grid(tg.lo, tg.hi, tg.step),
                                       make_grid(bg.lo, bg.hi, bg.step), parse_method(method), c.threads);
    Table t;
    t.headers = {"T_K", "B_T", "order", "phi_deg", "ordered", "status"};
    for (std::size_t i = 0; i < pg.T.size(); ++i)
        for (std::size_t j = 0; j < pg.B.size(); ++j) {
            const std::size_t k = i * pg.B.size() + j;
            t.rows.push_back({pg.T[i], pg.B[j], pg.order[k], pg.phi[k], pg.order[k] > kOrderThreshold,
                              std::string(pg.converged[k] ? "ok" : "not-converged")});
        }
    emit(c, t);
    return 0;
}

int cmd_boundary(const Common& c, const std::string& variant, const std::string& method, const Grid& tg,
                 const Grid& bg) {
    const ModelConfig cfg = load(c);
    BoundaryOptions bo;
    bo.B_grid = make_grid(bg.lo, bg.hi, bg.step);
    if (tg.step > 0.0) bo.T_grid = make_grid(tg.lo, tg.hi, tg.step);
    bo.threads = c.threads;
    const auto pts = phase_boundary(cfg, parse_variant(variant), parse_method(method), bo);
    Table t;
    t.headers = {"variant", "T_K", "B_T"};
    for (const auto& p : pts) t.rows.push_back({variant, p.T, p.B});
    emit(c, t);
    return 0;
}

int cmd_resonances(const Common& c, const std::string& axis, const std::string& method, const Grid& bg,
                   double T) {
    const ModelConfig cfg = load(c);
    const auto rows = resonance_sweep(cfg, T, parse_axis(axis), make_grid(bg.lo, bg.hi, bg.step),
                                      parse_method(method), c.threads);
    Table t;
    t.headers = {"B_T"};
    for (int i = 1; i <= 4; ++i) {
        t.headers.push_back("nu" + std::to_string(i) + "_THz");
        t.headers.push_back("label" + std::to_string(i));
    }
    t.headers.push_back("status");
    for (const auto& r : rows) {
        std::vector<Cell> row = {r.B};
        for (std::size_t i = 0; i < 4; ++i) {
            if (i < r.set.frequencies.size()) {
                row.emplace_back(r.set.frequencies[i]);
                row.emplace_back(i < r.set.labels.size() ? label_name(r.set.labels[i]) : std::string());
            } else {
                row.emplace_back(std::nan(""));
                row.emplace_back(std::string());
            }
        }
        row.emplace_back(r.status);
        t.rows.push_back(std::move(row));
    }
    emit(c, t);
    return 0;
}

int cmd_depths(const Common& c) {
    const ModelConfig cfg = load(c);
    const ReducedDicke r = reduce_for_ltpt(dicke_params(cfg), cfg.env.B_ext);
    const CouplingDepths d = coupling_depths(r);
    Table t;
    t.headers = {"D_lambda_z", "D_lambda_x", "D_JEr", "sum", "superradiant"};
    t.rows.push_back({d.D_lambda_z, d.D_lambda_x, d.D_JEr, d.sum(), d.superradiant});
    emit(c, t);
    return 0;
}

int cmd_validate_symmetry(const Common& c) {
    const ModelConfig cfg = load(c);
    const SymmetryReport r = validate_gamma12_symmetry(build_coupling_vectors(cfg.xc));
    std::string joined;
    for (const auto& v : r.violated_relations) joined += (joined.empty() ? "" : "; ") + v;
    Table t;
    t.headers = {"satisfied", "violated_relations"};
    t.rows.push_back({r.satisfied, joined});
    emit(c, t);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ErFeO3 two-sublattice spin model"};
    app.require_subcommand(1);
    Common c;
    app.add_option("--config", c.config, "TOML configuration file")->check(CLI::ExistingFile);
    app.add_option("--out", c.out, "output file (default stdout)");
    app.add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--threads", c.threads, "worker threads, 0 = available parallelism")->check(CLI::NonNegativeNumber);
    app.add_option("--override", c.overrides, "dotted key=value, repeatable")->take_all();
    app.fallthrough();

    std::string method = "mean-field", axis = "a", variant = "full";
    Grid tg{0.1, 6.0, 0.05}, bg{-2.0, 2.0, 0.05};

    auto method_opt = [&](CLI::App* s) {
        s->add_option("--method", method, "mean-field or dicke")->check(CLI::IsMember({"mean-field", "dicke"}));
    };
    auto t_opts = [&](CLI::App* s) {
        s->add_option("--tmin", tg.lo, "K");
        s->add_option("--tmax", tg.hi, "K");
        s->add_option("--tstep", tg.step, "K");
    };
    auto b_opts = [&](CLI::App* s) {
        s->add_option("--bmin", bg.lo, "T");
        s->add_option("--bmax", bg.hi, "T");
        s->add_option("--bstep", bg.step, "T");
    };
    auto axis_opt = [&](CLI::App* s) { s->add_option("--axis", axis, "a, b or c")->check(CLI::IsMember({"a", "b", "c"})); };

    auto* eq = app.add_subcommand("equilibrium", "single equilibrium solve at the configured T and field");
    method_opt(eq);
    auto* st = app.add_subcommand("sweep-t", "temperature sweep at the configured field");
    method_opt(st);
    t_opts(st);
    auto* pd = app.add_subcommand("phase-diagram", "order parameter on a T x B grid");
    method_opt(pd);
    axis_opt(pd);
    t_opts(pd);
    b_opts(pd);
    auto* bd = app.add_subcommand("boundary", "phase boundary for a field along a");
    method_opt(bd);
    bd->add_option("--variant", variant, "full, no-er-fe or no-er-er")
        ->check(CLI::IsMember({"full", "no-er-fe", "no-er-er"}));
    t_opts(bd);
    b_opts(bd);
    auto* rs = app.add_subcommand("resonances", "resonance frequencies along a field sweep");
    method_opt(rs);
    axis_opt(rs);
    b_opts(rs);
    double res_T = 20.0;
    rs->add_option("--temperature", res_T, "K, independent of environment.T")->check(CLI::PositiveNumber);
    app.add_subcommand("depths", "coupling depths of the reduced Dicke model");
    app.add_subcommand("validate-symmetry", "check the Er-Fe couplings against the Gamma12 pattern");

    Grid rs_default{0.0, 10.0, 0.1}, bd_default{-2.0, 2.0, 0.5};

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        const std::string name = app.get_subcommands().front()->get_name();
        if (name == "equilibrium") return cmd_equilibrium(c, method);
        if (name == "sweep-t") return cmd_sweep_t(c, method, tg);
        if (name == "phase-diagram") return cmd_phase_diagram(c, axis, method, tg, bg);
        if (name == "boundary") {
            Grid b = bd_default;
            if (bd->count("--bmin")) b.lo = bg.lo;
            if (bd->count("--bmax")) b.hi = bg.hi;
            if (bd->count("--bstep")) b.step = bg.step;
            // B_c(T) is scanned only when a T step is given explicitly
            Grid t = tg;
            if (!bd->count("--tstep")) t.step = 0.0;
            return cmd_boundary(c, variant, method, t, b);
        }
        if (name == "resonances") {
            Grid b = rs_default;
            if (rs->count("--bmin")) b.lo = bg.lo;
            if (rs->count("--bmax")) b.hi = bg.hi;
            if (rs->count("--bstep")) b.step = bg.step;
            return cmd_resonances(c, axis, method, b, res_T);
        }
        if (name == "depths") return cmd_depths(c);
        if (name == "validate-symmetry") return cmd_validate_symmetry(c);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << '\n';
        return 1;
    } catch (const ConvergenceError& e) {
        std::cerr << "not converged: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
