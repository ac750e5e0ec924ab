#include "erfeo/spin_model.hpp"

#include <cmath>

#include "erfeo/errors.hpp"

namespace erfeo {

ModelConfig default_config() { return ModelConfig{}; }

CouplingSet build_coupling_vectors(const ErFeCouplings& xc) {
    const double Dx = xc.D_x, Dy = xc.D_y, Dz = xc.D_z;
    const double Dxp = xc.D_x_prime, Dyp = xc.D_y_prime, Dzp = xc.D_z_prime;
    CouplingSet cs;
    cs.J[A][A] = cs.J[B][B] = xc.J + xc.J_prime;
    cs.J[A][B] = cs.J[B][A] = xc.J - xc.J_prime;
    cs.D[A][A] = Vec3(Dx + Dxp, Dy + Dyp, Dz + Dzp);
    cs.D[A][B] = Vec3(-Dx + Dxp, -Dy + Dyp, -Dz + Dzp);
    cs.D[B][A] = Vec3(-Dx + Dxp, Dy - Dyp, Dz - Dzp);
    cs.D[B][B] = Vec3(Dx + Dxp, -Dy - Dyp, -Dz - Dzp);
    return cs;
}

SymmetryReport validate_gamma12_symmetry(const CouplingSet& cs, double tol) {
    // Averages over the Er index (first) and over the Fe index (second).
    auto Jer = [&](int sign, int t) { return (cs.J[A][t] + sign * cs.J[B][t]) / 2.0; };
    auto Jfe = [&](int s, int sign) { return (cs.J[s][A] + sign * cs.J[s][B]) / 2.0; };
    auto Der = [&](int sign, int t) -> Vec3 { return (cs.D[A][t] + sign * cs.D[B][t]) / 2.0; };
    auto Dfe = [&](int s, int sign) -> Vec3 { return (cs.D[s][A] + sign * cs.D[s][B]) / 2.0; };

    SymmetryReport rep;
    auto check = [&](bool ok, const char* name) {
        if (!ok) {
            rep.satisfied = false;
            rep.violated_relations.emplace_back(name);
        }
    };
    auto eq = [&](double a, double b) { return std::abs(a - b) <= tol; };

    check(eq(Jer(+1, A), Jer(+1, B)), "J_{+,A} = J_{+,B}");
    check(eq(Jer(-1, A), -Jer(-1, B)), "J_{-,A} = -J_{-,B}");
    check(eq(Der(-1, A).x(), -Der(-1, B).x()), "D_{-,A,x} = -D_{-,B,x}");
    check(eq(Der(+1, A).y(), -Der(+1, B).y()), "D_{+,A,y} = -D_{+,B,y}");
    check(eq(Der(-1, A).y(), Der(-1, B).y()), "D_{-,A,y} = D_{-,B,y}");
    check(eq(Der(+1, A).z(), -Der(+1, B).z()), "D_{+,A,z} = -D_{+,B,z}");
    check(eq(Der(-1, A).z(), Der(-1, B).z()), "D_{-,A,z} = D_{-,B,z}");

    check(eq(Jfe(A, +1), Jfe(B, +1)), "J_{A,+} = J_{B,+}");
    check(eq(Jfe(A, -1), -Jfe(B, -1)), "J_{A,-} = -J_{B,-}");
    check(eq(Dfe(A, -1).x(), -Dfe(B, -1).x()), "D_{A,-,x} = -D_{B,-,x}");
    check(eq(Dfe(A, +1).y(), -Dfe(B, +1).y()), "D_{A,+,y} = -D_{B,+,y}");
    check(eq(Dfe(A, -1).y(), Dfe(B, -1).y()), "D_{A,-,y} = D_{B,-,y}");
    check(eq(Dfe(A, +1).z(), -Dfe(B, +1).z()), "D_{A,+,z} = -D_{B,+,z}");
    check(eq(Dfe(A, -1).z(), Dfe(B, -1).z()), "D_{A,-,z} = D_{B,-,z}");
    return rep;
}

void check_config(const ModelConfig& cfg) {
    if (cfg.fe.S != 2.5) throw ConfigError("fe.S must be 2.5");
    if (cfg.fe.z != 6) throw ConfigError("fe.z must be 6");
    if (!(cfg.fe.J_Fe > 0.0)) throw ConfigError("fe.J_Fe must be positive");
    for (int i = 0; i < 3; ++i)
        if (!(cfg.er.g_Er[i] > 0.0)) throw ConfigError("er.g_Er components must be positive");
    for (int i = 0; i < 3; ++i)
        if (!(cfg.fe.g_Fe[i] > 0.0)) throw ConfigError("fe.g_Fe components must be positive");
    if (!(cfg.env.T >= 0.0)) throw ConfigError("environment.T must be non-negative");
    if (!(cfg.env.x >= 0.0 && cfg.env.x <= 1.0)) throw ConfigError("environment.x must lie in [0, 1]");
}

std::vector<std::string> config_warnings(const ModelConfig& cfg) {
    std::vector<std::string> w;
    if (cfg.xc.J_prime != 0.0) w.emplace_back("exchange.J_prime is nonzero; the transition may become a crossover");
    if (cfg.xc.D_y_prime != 0.0) w.emplace_back("exchange.D_y_prime is nonzero; the transition may become a crossover");
    if (cfg.xc.D_z != 0.0) w.emplace_back("exchange.D_z is nonzero; the transition may become a crossover");
    return w;
}

}  // namespace erfeo
