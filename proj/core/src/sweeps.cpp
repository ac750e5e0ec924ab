#include "erfeo/sweeps.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <tbb/blocked_range.h>
#include <tbb/parallel_for.h>
#include <tbb/task_arena.h>

#include "erfeo/dicke.hpp"
#include "erfeo/errors.hpp"
#include "erfeo/magnon.hpp"

namespace erfeo {

Method parse_method(const std::string& s) {
    if (s == "mean-field" || s == "mf") return Method::mean_field;
    if (s == "dicke") return Method::dicke;
    throw ConfigError("method must be mean-field or dicke");
}

std::string method_name(Method m) { return m == Method::mean_field ? "mean-field" : "dicke"; }

Variant parse_variant(const std::string& s) {
    if (s == "full") return Variant::full;
    if (s == "no-er-fe") return Variant::no_er_fe;
    if (s == "no-er-er") return Variant::no_er_er;
    throw ConfigError("variant must be full, no-er-fe or no-er-er");
}

std::string variant_name(Variant v) {
    switch (v) {
        case Variant::full: return "full";
        case Variant::no_er_fe: return "no-er-fe";
        case Variant::no_er_er: return "no-er-er";
    }
    return "?";
}

ModelConfig apply_variant(ModelConfig cfg, Variant v) {
    if (v == Variant::no_er_fe) cfg.xc.J = cfg.xc.D_x = cfg.xc.D_y = 0.0;
    if (v == Variant::no_er_er) cfg.er.J_Er = 0.0;
    return cfg;
}

std::vector<double> make_grid(double lo, double hi, double step) {
    if (!(step > 0.0)) throw ConfigError("grid step must be positive");
    if (hi < lo) throw ConfigError("grid must be ascending");
    std::vector<double> g;
    const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
    for (long i = 0; i <= n; ++i) g.push_back(lo + static_cast<double>(i) * step);
    return g;
}

void parallel_for_index(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
    tbb::task_arena arena(threads > 0 ? threads : tbb::task_arena::automatic);
    arena.execute([&] {
        tbb::parallel_for(tbb::blocked_range<std::size_t>(0, n, 1), [&](const tbb::blocked_range<std::size_t>& r) {
            for (std::size_t i = r.begin(); i != r.end(); ++i) fn(i);
        });
    });
}

SweepPoint equilibrium_point(const ModelConfig& cfg, Method method, const SolverOptions& opt,
                             const std::optional<SpinState>& warm) {
    SweepPoint p;
    p.T = cfg.env.T;
    p.B = cfg.env.B_ext;
    if (method == Method::mean_field) {
        std::vector<Seed> seeds;
        if (warm) seeds.push_back({"warm", *warm});
        for (auto& s : canonical_seeds(cfg, opt)) seeds.push_back(std::move(s));
        const EquilibriumResult r = solve_equilibrium(cfg, seeds, opt);
        p.state = r.state;
        p.free_energy = r.free_energy;
        p.converged = r.converged;
        p.branch = r.branch_tag;
    } else {
        const MagnonBasis mb = magnon_basis(cfg.fe);
        const ReducedDicke rd = reduce_for_ltpt(dicke_params(cfg, mb), cfg.env.B_ext);
        const SemiclassicalState s = semiclassical_equilibrium(rd, cfg.env.T);
        const Vec3 fe = fe_spins_from_magnons(s.alpha_r, s.alpha_i, cfg, mb);
        p.state.sigma_A = Vec3(s.sigma_x, 0.0, s.sigma_z);
        p.state.sigma_B = Vec3(s.sigma_x, 0.0, -s.sigma_z);
        p.state.S_A = Vec3(fe.x(), fe.y(), -fe.z());
        p.state.S_B = Vec3(fe.x(), -fe.y(), fe.z());
        p.alpha_r = s.alpha_r;
        p.alpha_i = s.alpha_i;
        p.free_energy = s.action;
        p.converged = s.converged;
        p.branch = s.sigma_z > 0.0 ? "ordered" : "normal";
    }
    p.order_parameter = order_parameter(p.state);
    p.phi_deg = rotation_angle_deg(p.state);
    return p;
}

std::vector<SweepPoint> temperature_sweep(const ModelConfig& cfg, const std::vector<double>& Ts, Method method,
                                          const SolverOptions& opt, bool warm_start) {
    if (!std::is_sorted(Ts.begin(), Ts.end())) throw ConfigError("temperature grid must be ascending");
    std::vector<SweepPoint> out;
    std::optional<SpinState> warm;
    for (double T : Ts) {
        ModelConfig c = cfg;
        c.env.T = T;
        SweepPoint p = equilibrium_point(c, method, opt, warm_start ? warm : std::nullopt);
        if (p.converged) warm = p.state;
        out.push_back(std::move(p));
    }
    return out;
}

bool is_ordered(const ModelConfig& cfg, Method method, const SolverOptions& opt) {
    return equilibrium_point(cfg, method, opt).order_parameter > kOrderThreshold;
}

PhaseGrid phase_diagram(const ModelConfig& cfg, Axis axis, const std::vector<double>& Ts,
                        const std::vector<double>& Bs, Method method, int threads, const SolverOptions& opt) {
    if (!std::is_sorted(Ts.begin(), Ts.end()) || !std::is_sorted(Bs.begin(), Bs.end()))
        throw ConfigError("grids must be ascending");
    if (method == Method::dicke && axis != Axis::a) throw DomainError("the reduced model needs the field along a");
    PhaseGrid g;
    g.axis = axis;
    g.T = Ts;
    g.B = Bs;
    const std::size_t nT = Ts.size(), nB = Bs.size();
    g.order.assign(nT * nB, 0.0);
    g.phi.assign(nT * nB, 0.0);
    g.converged.assign(nT * nB, 0);
    parallel_for_index(nT * nB, threads, [&](std::size_t k) {
        ModelConfig c = cfg;
        c.env.T = Ts[k / nB];
        c.env.B_ext = axis_field(axis, Bs[k % nB]);
        const SweepPoint p = equilibrium_point(c, method, opt);
        g.order[k] = p.order_parameter;
        g.phi[k] = p.phi_deg;
        g.converged[k] = p.converged ? 1 : 0;
    });
    auto ordered = [&](std::size_t i, std::size_t j) { return g.at(i, j) > kOrderThreshold; };
    for (std::size_t j = 0; j < nB; ++j)
        for (std::size_t i = 0; i + 1 < nT; ++i)
            if (ordered(i, j) != ordered(i + 1, j)) g.boundary.push_back({0.5 * (Ts[i] + Ts[i + 1]), Bs[j]});
    for (std::size_t i = 0; i < nT; ++i)
        for (std::size_t j = 0; j + 1 < nB; ++j)
            if (ordered(i, j) != ordered(i, j + 1)) g.boundary.push_back({Ts[i], 0.5 * (Bs[j] + Bs[j + 1])});
    return g;
}

std::optional<double> critical_temperature(const ModelConfig& cfg, Method method, double lo, double hi, double tol,
                                           const SolverOptions& opt) {
    auto ordered_at = [&](double T) {
        ModelConfig c = cfg;
        c.env.T = T;
        return is_ordered(c, method, opt);
    };
    if (!ordered_at(lo) || ordered_at(hi)) return std::nullopt;
    while (hi - lo > 2.0 * tol) {
        const double mid = 0.5 * (lo + hi);
        (ordered_at(mid) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

std::optional<double> critical_field(const ModelConfig& cfg, double sign, Method method, double B_max, double tol,
                                     const SolverOptions& opt) {
    auto ordered_at = [&](double B) {
        ModelConfig c = cfg;
        c.env.B_ext = Vec3(sign * B, 0.0, 0.0);
        return is_ordered(c, method, opt);
    };
    double lo = 0.0, hi = B_max;
    if (!ordered_at(lo) || ordered_at(hi)) return std::nullopt;
    while (hi - lo > 2.0 * tol) {
        const double mid = 0.5 * (lo + hi);
        (ordered_at(mid) ? lo : hi) = mid;
    }
    return sign * 0.5 * (lo + hi);
}

std::vector<BoundaryPoint> phase_boundary(const ModelConfig& cfg_in, Variant variant, Method method,
                                          const BoundaryOptions& bopt, const SolverOptions& opt) {
    const ModelConfig cfg = apply_variant(cfg_in, variant);
    const std::size_t nB = bopt.B_grid.size(), nT = bopt.T_grid.size();
    std::vector<std::optional<BoundaryPoint>> pts(nB + 2 * nT);
    parallel_for_index(pts.size(), bopt.threads, [&](std::size_t k) {
        if (k < nB) {
            ModelConfig c = cfg;
            c.env.B_ext = Vec3(bopt.B_grid[k], 0.0, 0.0);
            if (auto t = critical_temperature(c, method, 0.05, 10.0, bopt.T_tol, opt))
                pts[k] = BoundaryPoint{*t, bopt.B_grid[k]};
        } else {
            const std::size_t i = (k - nB) / 2;
            const double sign = (k - nB) % 2 == 0 ? -1.0 : 1.0;
            ModelConfig c = cfg;
            c.env.T = bopt.T_grid[i];
            if (auto b = critical_field(c, sign, method, 6.0, bopt.B_tol, opt))
                pts[k] = BoundaryPoint{bopt.T_grid[i], *b};
        }
    });
    std::vector<BoundaryPoint> out;
    for (const auto& p : pts)
        if (p) out.push_back(*p);
    std::stable_sort(out.begin(), out.end(), [](const BoundaryPoint& a, const BoundaryPoint& b) {
        return a.B < b.B || (a.B == b.B && a.T < b.T);
    });
    return out;
}

double afm_angle_from_c_deg(const SpinState& s) {
    const Vec3 L = s.S_A - s.S_B;
    return std::atan2(std::abs(L.x()), std::abs(L.z())) * 180.0 / std::numbers::pi;
}

bool is_gamma4(const SpinState& s) { return afm_angle_from_c_deg(s) > 45.0; }

std::optional<double> gamma2_gamma4_field(const ModelConfig& cfg, double B_max, double step,
                                          const SolverOptions& opt) {
    auto g4_at = [&](double B) {
        ModelConfig c = cfg;
        c.env.B_ext = Vec3(0.0, 0.0, B);
        const EquilibriumResult r = solve_equilibrium(c, opt);
        return is_gamma4(r.state);
    };
    double prev = 0.0;
    if (g4_at(prev)) return 0.0;
    for (double B = step; B <= B_max + 1e-9; B += step) {
        if (g4_at(B)) {
            double lo = prev, hi = B;
            while (hi - lo > 0.02) {
                const double mid = 0.5 * (lo + hi);
                (g4_at(mid) ? hi : lo) = mid;
            }
            return 0.5 * (lo + hi);
        }
        prev = B;
    }
    return std::nullopt;
}

std::vector<ResonanceRow> resonance_sweep(const ModelConfig& cfg, double T, Axis axis, const std::vector<double>& Bs,
                                          Method method, int threads, const SolverOptions& opt) {
    std::vector<ResonanceRow> rows(Bs.size());
    parallel_for_index(Bs.size(), threads, [&](std::size_t k) {
        ResonanceRow& row = rows[k];
        row.B = Bs[k];
        try {
            row.set = method == Method::mean_field ? mf_resonances(cfg, T, axis_field(axis, Bs[k]), opt)
                                                   : dicke_resonances(cfg, T, axis, Bs[k]);
        } catch (const DomainError&) {
            row.status = "out-of-domain";
        } catch (const InstabilityError&) {
            row.status = "unstable";
        } catch (const ConvergenceError&) {
            row.status = "no-convergence";
        } catch (const PreconditionError&) {
            row.status = "non-stationary";
        }
    });
    return rows;
}

}  // namespace erfeo
