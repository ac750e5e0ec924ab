#include "erfeo/srpt.hpp"

#include <cmath>

#include "erfeo/errors.hpp"
#include "erfeo/units.hpp"

namespace erfeo {

namespace {

// ln(2 cosh y) without overflow.
double log2cosh(double y) {
    y = std::abs(y);
    return y + std::log1p(std::exp(-2.0 * y));
}

// -kT ln Tr exp(-H/kT) for a two-level H = h.sigma, |h| = e.
double two_level_free_energy(double e, double kT) {
    if (kT <= 0.0) return -e;
    return -kT * log2cosh(e / kT);
}

}  // namespace

double baseline_action(const BaselineDicke& m, double alpha_i, double T) {
    const double h = PhysConsts::h;
    const double e = h * std::sqrt(0.25 * m.omega_ex * m.omega_ex + 4.0 * m.lambda * m.lambda * alpha_i * alpha_i);
    return h * m.omega_ph * alpha_i * alpha_i + two_level_free_energy(e, PhysConsts::k_B * T);
}

BaselineResult baseline_dicke_equilibrium(const BaselineDicke& m, double T) {
    BaselineResult r;
    const double kT = PhysConsts::k_B * T;
    const double h = PhysConsts::h;
    // Stationary alpha_i != 0 solves omega_ph = 2 lambda^2 tanh(E/kT) / E(alpha) with E in THz.
    auto rhs = [&](double a) {
        const double e = std::sqrt(0.25 * m.omega_ex * m.omega_ex + 4.0 * m.lambda * m.lambda * a * a);
        if (e == 0.0) return kT > 0.0 ? 2.0 * m.lambda * m.lambda * h / kT : INFINITY;
        const double t = kT > 0.0 ? std::tanh(h * e / kT) : 1.0;
        return 2.0 * m.lambda * m.lambda * t / e;
    };
    if (m.lambda == 0.0 || rhs(0.0) <= m.omega_ph) {
        r.action = baseline_action(m, 0.0, T);
        return r;
    }
    double lo = 0.0, hi = 1.0;
    while (rhs(hi) > m.omega_ph) hi *= 2.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (rhs(mid) > m.omega_ph)
            lo = mid;
        else
            hi = mid;
    }
    r.alpha_i = 0.5 * (lo + hi);
    r.action = baseline_action(m, r.alpha_i, T);
    return r;
}

Eigen::Vector2d effective_field(const ReducedDicke& r, double sx, double sz) {
    const double h = PhysConsts::h;
    const double hx = 0.5 * h * r.omegaEr + (r.zErJEr - 2.0 * h * r.lambda_x * r.lambda_x / r.omegapi) * sx;
    const double hz = -(r.zErJEr + 2.0 * h * r.lambda_z * r.lambda_z / r.omegapi) * sz;
    return {hx, hz};
}

double semiclassical_action(const ReducedDicke& r, double sx, double sz, double T) {
    const double ar = -r.lambda_x * sx / r.omegapi;
    const double ai = -r.lambda_z * sz / r.omegapi;
    const Eigen::Vector2d f = effective_field(r, sx, sz);
    return PhysConsts::h * r.omegapi * (ar * ar + ai * ai) - 0.5 * r.zErJEr * (sx * sx - sz * sz) +
           two_level_free_energy(f.norm(), PhysConsts::k_B * T);
}

namespace {

Eigen::Vector2d sc_update(const ReducedDicke& r, const Eigen::Vector2d& s, double kT) {
    const Eigen::Vector2d f = effective_field(r, s.x(), s.y());
    const double n = f.norm();
    if (n == 0.0) return Eigen::Vector2d::Zero();
    return -(std::tanh(n / kT) / n) * f;
}

SemiclassicalState sc_solve(const ReducedDicke& r, double T, Eigen::Vector2d s, const SemiclassicalOptions& opt) {
    const double kT = PhysConsts::k_B * T;
    SemiclassicalState st;
    int it = 0;
    for (; it < opt.max_iter; ++it) {
        const Eigen::Vector2d next = (1.0 - opt.eta) * s + opt.eta * sc_update(r, s, kT);
        const double change = (next - s).cwiseAbs().maxCoeff();
        s = next;
        if (change < opt.tol) {
            st.converged = true;
            break;
        }
    }
    if (!st.converged) {
        // Newton fallback on G(s) = update(s) - s.
        for (int k = 0; k < 50; ++k) {
            const Eigen::Vector2d g = sc_update(r, s, kT) - s;
            if (g.cwiseAbs().maxCoeff() < opt.tol) {
                st.converged = true;
                break;
            }
            Eigen::Matrix2d J;
            const double e = 1e-7;
            for (int j = 0; j < 2; ++j) {
                Eigen::Vector2d p = s, m = s;
                p[j] += e;
                m[j] -= e;
                J.col(j) = ((sc_update(r, p, kT) - p) - (sc_update(r, m, kT) - m)) / (2.0 * e);
            }
            s -= J.fullPivLu().solve(g);
        }
    }
    s = sc_update(r, s, kT);
    st.iterations = it;
    st.sigma_x = s.x();
    st.sigma_z = s.y();
    st.alpha_r = -r.lambda_x * s.x() / r.omegapi;
    st.alpha_i = -r.lambda_z * s.y() / r.omegapi;
    st.action = semiclassical_action(r, s.x(), s.y(), T);
    return st;
}

}  // namespace

SemiclassicalState semiclassical_equilibrium(const ReducedDicke& r, double T, const SemiclassicalOptions& opt) {
    if (r.omegapi <= 0.0) throw DomainError("qAFM frequency must be positive");
    T = std::max(T, opt.T_floor);
    const SemiclassicalState normal = sc_solve(r, T, {-1.0, 0.0}, opt);
    SemiclassicalState ordered = sc_solve(r, T, {-0.05, 0.9}, opt);
    SemiclassicalState best = normal;
    if (ordered.converged && (!normal.converged || ordered.action < normal.action - 1e-14)) best = ordered;
    if (best.sigma_z < 0.0) {
        best.sigma_z = -best.sigma_z;
        best.alpha_i = -best.alpha_i;
    }
    return best;
}

Vec3 fe_spins_from_magnons(double alpha_r, double alpha_i, const ModelConfig& cfg, const MagnonBasis& mb) {
    const double S = cfg.fe.S;
    const double pre = std::sqrt(2.0 * cfg.env.x * S);
    const double f = std::pow((mb.k.b + mb.k.a) / (mb.k.d - mb.k.c), 0.25);
    const double cb = std::cos(mb.beta0), sb = std::sin(mb.beta0);
    return {S * sb + pre * cb * f * alpha_r, -pre * alpha_i / f, S * cb - pre * sb * f * alpha_r};
}

double hp_energy(const ReducedDicke& r, double beta) {
    const double b2 = beta * beta;
    const double root = std::sqrt(std::max(0.0, 1.0 - b2));
    const double ar = -r.lambda_x * (2.0 * b2 - 1.0) / r.omegapi;
    const double ai = 2.0 * r.lambda_z * beta * root / r.omegapi;
    const double zj = r.zErJEr / PhysConsts::h;
    return r.omegapi * (ar * ar + ai * ai) + r.omegaEr * b2 + 4.0 * zj * b2 * (b2 - 1.0) +
           2.0 * r.lambda_x * ar * (2.0 * b2 - 1.0) - 4.0 * r.lambda_z * ai * beta * root;
}

HPGroundState hp_ground_state(const ReducedDicke& r) {
    if (r.omegapi <= 0.0) throw DomainError("qAFM frequency must be positive");
    HPGroundState g;
    g.alpha_r = r.lambda_x / r.omegapi;
    g.energy = hp_energy(r, 0.0);
    const double A = 4.0 * (r.lambda_z * r.lambda_z - r.lambda_x * r.lambda_x) / r.omegapi +
                     4.0 * r.zErJEr / PhysConsts::h;
    // E(u) = omega_Er u + A u (u - 1) + const has an interior minimum only for A > omega_Er.
    if (!(A > r.omegaEr)) return g;
    const double u = (A - r.omegaEr) / (2.0 * A);
    const double beta = -std::sqrt(u);
    const double e = hp_energy(r, beta);
    if (!(e < g.energy)) return g;
    if (u >= 1.0) throw ModelValidityError("Holstein-Primakoff amplitude outside |beta| < 1");
    g.beta = beta;
    g.alpha_r = -r.lambda_x * (2.0 * u - 1.0) / r.omegapi;
    g.alpha_i = 2.0 * r.lambda_z * beta * std::sqrt(1.0 - u) / r.omegapi;
    g.energy = e;
    return g;
}

CouplingDepths coupling_depths(const ReducedDicke& r) {
    if (r.omegaEr <= 0.0) throw DomainError("coupling depths diverge at omega_Er = 0");
    if (r.omegapi <= 0.0) throw DomainError("qAFM frequency must be positive");
    CouplingDepths d;
    d.D_lambda_z = 4.0 * r.lambda_z * r.lambda_z / (r.omegapi * r.omegaEr);
    d.D_lambda_x = -4.0 * r.lambda_x * r.lambda_x / (r.omegapi * r.omegaEr);
    d.D_JEr = 4.0 * r.zErJEr / (PhysConsts::h * r.omegaEr);
    d.superradiant = d.sum() > 1.0;
    return d;
}

}  // namespace erfeo
