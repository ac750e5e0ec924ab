#include "erfeo/mean_field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "erfeo/magnon.hpp"
#include "erfeo/units.hpp"

namespace erfeo {

Vec12 SpinState::pack() const {
    Vec12 v;
    v << sigma_A, sigma_B, S_A, S_B;
    return v;
}

SpinState SpinState::unpack(const Vec12& v) {
    SpinState s;
    s.sigma_A = v.segment<3>(0);
    s.sigma_B = v.segment<3>(3);
    s.S_A = v.segment<3>(6);
    s.S_B = v.segment<3>(9);
    return s;
}

namespace {

struct FieldModel {
    CouplingSet cs;
    Vec3 zeeman_er, zeeman_fe;
    double zJEr2;   // 2 zEr J_Er
    double x;
    double zJ, zD, Ax, Az, Axz;
    double S;

    explicit FieldModel(const ModelConfig& cfg)
        : cs(build_coupling_vectors(cfg.xc)),
          zeeman_er(PhysConsts::mu_B * cfg.er.g_Er.cwiseProduct(cfg.env.B_ext)),
          zeeman_fe(PhysConsts::mu_B * cfg.fe.g_Fe.cwiseProduct(cfg.env.B_ext)),
          zJEr2(2.0 * cfg.z_Er() * cfg.er.J_Er),
          x(cfg.env.x),
          zJ(cfg.fe.z * cfg.fe.J_Fe),
          zD(cfg.fe.z * cfg.fe.D_Fe_y),
          Ax(cfg.fe.A_x),
          Az(cfg.fe.A_z),
          Axz(cfg.fe.A_xz),
          S(cfg.fe.S) {}

    MeanFields fields(const SpinState& st) const {
        const Vec3* sig[2] = {&st.sigma_A, &st.sigma_B};
        const Vec3* spin[2] = {&st.S_A, &st.S_B};
        MeanFields f;
        Vec3* her[2] = {&f.h_Er_A, &f.h_Er_B};
        Vec3* hfe[2] = {&f.h_Fe_A, &f.h_Fe_B};
        for (int s = 0; s < 2; ++s) {
            Vec3 erfe = Vec3::Zero();
            for (int t = 0; t < 2; ++t) erfe += cs.J[s][t] * *spin[t] - cs.D[s][t].cross(*spin[t]);
            erfe.y() = 0.0;
            *her[s] = zeeman_er + zJEr2 * *sig[1 - s] + 2.0 * erfe;
        }
        for (int t = 0; t < 2; ++t) {
            Vec3 h = zeeman_fe;
            for (int s = 0; s < 2; ++s) h += x * (cs.J[s][t] * *sig[s] + cs.D[s][t].cross(*sig[s]));
            const Vec3& o = *spin[1 - t];
            const Vec3& m = *spin[t];
            const double sg = t == A ? 1.0 : -1.0;
            h += Vec3(zJ * o.x() + sg * zD * o.z() - 2.0 * Ax * m.x() - sg * Axz * m.z(),
                      zJ * o.y(),
                      zJ * o.z() - sg * zD * o.x() - 2.0 * Az * m.z() - sg * Axz * m.x());
            *hfe[t] = h;
        }
        return f;
    }

    // Classical energy per unit cell; Er-Fe terms see sigma with y removed.
    double energy(const SpinState& st, const Vec3& B_er_zeeman, const Vec3& B_fe_zeeman) const {
        const Vec3* sig[2] = {&st.sigma_A, &st.sigma_B};
        const Vec3* spin[2] = {&st.S_A, &st.S_B};
        const Vec3 &a = st.S_A, &b = st.S_B;
        double e = B_fe_zeeman.dot(a + b);
        e += zJ * a.dot(b) - zD * (a.z() * b.x() - b.z() * a.x());
        e -= Ax * (a.x() * a.x() + b.x() * b.x()) + Az * (a.z() * a.z() + b.z() * b.z());
        e -= Axz * (a.x() * a.z() - b.x() * b.z());
        double er = 0.5 * B_er_zeeman.dot(st.sigma_A + st.sigma_B);
        er += 0.5 * zJEr2 * st.sigma_A.dot(st.sigma_B);
        for (int s = 0; s < 2; ++s) {
            Vec3 ts = *sig[s];
            ts.y() = 0.0;
            for (int t = 0; t < 2; ++t) er += cs.J[s][t] * ts.dot(*spin[t]) + cs.D[s][t].dot(ts.cross(*spin[t]));
        }
        return e + x * er;
    }
};

Vec3 er_update(const Vec3& h, double kT) {
    const double n = h.norm();
    if (n == 0.0) return Vec3::Zero();
    return -(std::tanh(n / (2.0 * kT)) / n) * h;
}

Vec3 fe_update(const Vec3& h, double kT, double S) {
    const double n = h.norm();
    if (n == 0.0) return Vec3::Zero();
    return -(S * brillouin(S, S * n / kT) / n) * h;
}

SpinState update(const FieldModel& fm, const SpinState& st, double kT) {
    const MeanFields f = fm.fields(st);
    SpinState out;
    out.sigma_A = er_update(f.h_Er_A, kT);
    out.sigma_B = er_update(f.h_Er_B, kT);
    out.S_A = fe_update(f.h_Fe_A, kT, fm.S);
    out.S_B = fe_update(f.h_Fe_B, kT, fm.S);
    return out;
}

double er_entropy(double m) {
    m = std::min(std::abs(m), 1.0);
    if (m >= 1.0 - 1e-15) return 0.0;
    const double y = std::atanh(m);
    return std::log(2.0 * std::cosh(y)) - y * m;
}

double fe_entropy(double m, double S) {
    const double r = std::min(std::abs(m) / S, 1.0);
    if (r >= 1.0 - 1e-15) return 0.0;
    const double xarg = inverse_brillouin(S, r) / S;
    // ln sum_{k=-S}^{S} exp(-k x), summed from the largest term down.
    const int n = static_cast<int>(std::lround(2.0 * S));
    double acc = 0.0;
    for (int k = 0; k <= n; ++k) acc += std::exp(-k * xarg);
    const double lnZ = S * xarg + std::log(acc);
    return lnZ - xarg * std::abs(m);
}

double clamp_T(double T, const SolverOptions& opt) { return std::max(T, opt.T_floor); }

// Newton iteration on G(v) = update(v) - v with a finite-difference Jacobian.
bool newton_polish(const FieldModel& fm, Vec12& v, double kT, const SolverOptions& opt, int& steps) {
    auto G = [&](const Vec12& u) -> Vec12 { return update(fm, SpinState::unpack(u), kT).pack() - u; };
    Vec12 g = G(v);
    double gn = g.cwiseAbs().maxCoeff();
    const double target = std::min(opt.tol, 1e-12);
    Eigen::Matrix<double, 12, 12> Jm;
    for (int it = 0; it < 50; ++it) {
        if (gn < target) break;
        const double e = 1e-7;
        for (int j = 0; j < 12; ++j) {
            Vec12 p = v, m = v;
            p[j] += e;
            m[j] -= e;
            Jm.col(j) = (G(p) - G(m)) / (2.0 * e);
        }
        const Vec12 step = Jm.jacobiSvd(Eigen::ComputeFullU | Eigen::ComputeFullV).solve(-g);
        if (!step.allFinite()) return false;
        // Full steps; the soft Er modes near Tc make monotone line searches stall.
        double t = 1.0;
        bool accepted = false;
        for (int ls = 0; ls < 12 && !accepted; ++ls, t *= 0.5) {
            const Vec12 trial = v + t * step;
            const Vec12 gt = G(trial);
            if (gt.allFinite()) {
                v = trial;
                g = gt;
                gn = gt.cwiseAbs().maxCoeff();
                accepted = true;
            }
        }
        ++steps;
        if (!accepted) break;
    }
    if (gn >= target) return false;

    // Reject fixed points the damped map would leave: eigenvalues of
    // (1 - eta) I + eta dPhi must stay inside the unit circle.
    const double e = 1e-7;
    for (int j = 0; j < 12; ++j) {
        Vec12 p = v, m = v;
        p[j] += e;
        m[j] -= e;
        Jm.col(j) = (G(p) - G(m)) / (2.0 * e);
    }
    const Eigen::Matrix<double, 12, 12> damped =
        Eigen::Matrix<double, 12, 12>::Identity() + opt.eta * Jm;
    const auto ev = damped.eigenvalues();
    for (int i = 0; i < 12; ++i)
        if (std::abs(ev[i]) > 1.0 + 1e-7) return false;
    return true;
}

}  // namespace

MeanFields compute_mean_fields(const SpinState& s, const ModelConfig& cfg) { return FieldModel(cfg).fields(s); }

double brillouin(double J, double z) {
    const double a = (2.0 * J + 1.0) / (2.0 * J);
    const double b = 1.0 / (2.0 * J);
    if (std::abs(z) < 1e-3) {
        const double a2 = a * a, b2 = b * b;
        return (a2 - b2) * z / 3.0 - (a2 * a2 - b2 * b2) * z * z * z / 45.0;
    }
    return a / std::tanh(a * z) - b / std::tanh(b * z);
}

double inverse_brillouin(double J, double target) {
    if (target <= 0.0) return 0.0;
    double lo = 0.0, hi = 1.0;
    while (brillouin(J, hi) < target && hi < 1e6) hi *= 2.0;
    for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (brillouin(J, mid) < target)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

SpinState thermal_update(const MeanFields& f, double T, const ModelConfig& cfg) {
    const double S = cfg.fe.S;
    SpinState out;
    if (T <= 0.0) {
        auto sat = [](const Vec3& h, double mag) -> Vec3 {
            const double n = h.norm();
            return n == 0.0 ? Vec3::Zero() : Vec3(-(mag / n) * h);
        };
        out.sigma_A = sat(f.h_Er_A, 1.0);
        out.sigma_B = sat(f.h_Er_B, 1.0);
        out.S_A = sat(f.h_Fe_A, S);
        out.S_B = sat(f.h_Fe_B, S);
        return out;
    }
    const double kT = PhysConsts::k_B * T;
    out.sigma_A = er_update(f.h_Er_A, kT);
    out.sigma_B = er_update(f.h_Er_B, kT);
    out.S_A = fe_update(f.h_Fe_A, kT, S);
    out.S_B = fe_update(f.h_Fe_B, kT, S);
    return out;
}

SpinState self_consistency_map(const SpinState& s, const ModelConfig& cfg, double T) {
    return update(FieldModel(cfg), s, PhysConsts::k_B * std::max(T, SolverOptions{}.T_floor));
}

std::vector<Seed> canonical_seeds(const ModelConfig& cfg, const SolverOptions& opt) {
    const double S = cfg.fe.S;
    const double beta = canting_angle(cfg.fe);
    const double sb = std::sin(beta), cb = std::cos(beta);
    const Vec3 fe_A(S * sb, 0.0, -S * cb), fe_B(S * sb, 0.0, S * cb);

    std::vector<Seed> seeds;
    seeds.push_back({"gamma2", {Vec3(-0.5, 0, 0), Vec3(-0.5, 0, 0), fe_A, fe_B}});
    seeds.push_back({"gamma12+", {Vec3(-0.3, 0, 0.9), Vec3(-0.3, 0, -0.9), Vec3(S * sb, 1.5, -2.0),
                                  Vec3(S * sb, -1.5, 2.0)}});
    seeds.push_back({"gamma12-", mirror(seeds.back().state)});
    seeds.back().tag = "gamma12-";

    const Vec3 gb = cfg.er.g_Er.cwiseProduct(cfg.env.B_ext);
    const Vec3 er = gb.norm() > 0.0 ? Vec3(-0.9 * gb.normalized()) : Vec3(-0.9, 0, 0);
    seeds.push_back({"field-aligned", {er, er, fe_A, fe_B}});

    if (opt.gamma4_seed) {
        seeds.push_back({"gamma4", {er, er, Vec3(-S * cb, 0.0, -S * sb), Vec3(S * cb, 0.0, -S * sb)}});
    }

    if (opt.random_seeds > 0) {
        std::mt19937_64 rng(opt.rng_seed);
        std::normal_distribution<double> nd(0.0, 1.0);
        std::uniform_real_distribution<double> ud(0.0, 1.0);
        auto rvec = [&](double len) {
            Vec3 v(nd(rng), nd(rng), nd(rng));
            return Vec3(len * v.normalized());
        };
        for (int i = 0; i < opt.random_seeds; ++i) {
            SpinState st{rvec(ud(rng)), rvec(ud(rng)), rvec(S), rvec(S)};
            seeds.push_back({"random" + std::to_string(i), st});
        }
    }
    return seeds;
}

EquilibriumResult solve_from(const ModelConfig& cfg, const Seed& seed, const SolverOptions& opt) {
    const FieldModel fm(cfg);
    const double T = clamp_T(cfg.env.T, opt);
    const double kT = PhysConsts::k_B * T;

    EquilibriumResult r;
    r.branch_tag = seed.tag;
    Vec12 v = seed.state.pack();
    int it = 0;
    bool done = false;

    auto damped = [&](int until) {
        for (; it < until; ++it) {
            const Vec12 nv = update(fm, SpinState::unpack(v), kT).pack();
            const Vec12 next = (1.0 - opt.eta) * v + opt.eta * nv;
            const double change = (next - v).cwiseAbs().maxCoeff();
            v = next;
            if (change < opt.tol) {
                ++it;
                return true;
            }
        }
        return false;
    };

    done = damped(std::min(opt.warmup, opt.max_iter));
    if (!done && opt.newton) {
        Vec12 trial = v;
        int steps = 0;
        if (newton_polish(fm, trial, kT, opt, steps)) {
            v = trial;
            done = true;
        }
        it += steps;
    }
    if (!done) done = damped(opt.max_iter);

    const SpinState fin = update(fm, SpinState::unpack(v), kT);
    r.residual = (update(fm, fin, kT).pack() - fin.pack()).cwiseAbs().maxCoeff();
    r.state = fin;
    r.iterations = it;
    r.converged = done && r.residual < 10.0 * opt.tol;
    r.free_energy = free_energy(fin, cfg, T);
    return r;
}

EquilibriumResult solve_equilibrium(const ModelConfig& cfg, const std::vector<Seed>& seeds,
                                    const SolverOptions& opt) {
    EquilibriumResult best;
    bool have = false;
    EquilibriumResult fallback;
    bool have_fallback = false;
    for (const auto& sd : seeds) {
        EquilibriumResult r = solve_from(cfg, sd, opt);
        if (!r.converged) {
            if (!have_fallback || r.residual < fallback.residual) {
                fallback = r;
                have_fallback = true;
            }
            continue;
        }
        // Ties within 1e-12 meV keep the earlier seed, so B = 0 reports sigma_z^A > 0.
        if (!have || r.free_energy < best.free_energy - 1e-12) {
            best = r;
            have = true;
        }
    }
    if (have) return best;
    fallback.converged = false;
    return fallback;
}

EquilibriumResult solve_equilibrium(const ModelConfig& cfg, const SolverOptions& opt) {
    return solve_equilibrium(cfg, canonical_seeds(cfg, opt), opt);
}

double order_parameter(const SpinState& s) { return std::abs(s.sigma_A.z() - s.sigma_B.z()); }

double free_energy(const SpinState& s, const ModelConfig& cfg, double T) {
    const FieldModel fm(cfg);
    const double e = fm.energy(s, fm.zeeman_er, fm.zeeman_fe);
    if (T <= 0.0) return e;
    const double kT = PhysConsts::k_B * T;
    const double S = cfg.fe.S;
    const double ent = cfg.env.x * (er_entropy(s.sigma_A.norm()) + er_entropy(s.sigma_B.norm())) +
                       fe_entropy(s.S_A.norm(), S) + fe_entropy(s.S_B.norm(), S);
    return e - kT * ent;
}

double rotation_angle_deg(const SpinState& s) {
    return std::atan2(s.S_A.y(), -s.S_A.z()) * 180.0 / std::numbers::pi;
}

SpinState mirror(const SpinState& s) {
    auto m = [](const Vec3& v) { return Vec3(v.x(), -v.y(), -v.z()); };
    SpinState o;
    o.sigma_A = m(s.sigma_A);
    o.sigma_B = m(s.sigma_B);
    o.S_A = Vec3(s.S_A.x(), -s.S_A.y(), s.S_A.z());
    o.S_B = Vec3(s.S_B.x(), -s.S_B.y(), s.S_B.z());
    return o;
}

StationarityReport stationarity(const SpinState& s, const ModelConfig& cfg, double T) {
    const MeanFields f = compute_mean_fields(s, cfg);
    const double kT = PhysConsts::k_B * std::max(T, SolverOptions{}.T_floor);
    const double S = cfg.fe.S;
    StationarityReport r;
    auto visit = [&](const Vec3& spin, const Vec3& h, double expected) {
        r.max_cross = std::max(r.max_cross, spin.cross(h).norm());
        r.max_dot = std::max(r.max_dot, spin.dot(h));
        r.max_magnitude_error = std::max(r.max_magnitude_error, std::abs(spin.norm() - expected));
    };
    visit(s.sigma_A, f.h_Er_A, std::tanh(f.h_Er_A.norm() / (2.0 * kT)));
    visit(s.sigma_B, f.h_Er_B, std::tanh(f.h_Er_B.norm() / (2.0 * kT)));
    visit(s.S_A, f.h_Fe_A, S * brillouin(S, S * f.h_Fe_A.norm() / kT));
    visit(s.S_B, f.h_Fe_B, S * brillouin(S, S * f.h_Fe_B.norm() / kT));
    return r;
}

}  // namespace erfeo
