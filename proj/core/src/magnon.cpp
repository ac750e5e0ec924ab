#include "erfeo/magnon.hpp"

#include <cmath>
#include <numbers>

#include "erfeo/errors.hpp"
#include "erfeo/units.hpp"

namespace erfeo {

double canting_angle(const FeParams& fe) {
    const double zJ = fe.z * fe.J_Fe;
    const double zD = fe.z * fe.D_Fe_y;
    const double den = zJ - fe.A_x + fe.A_z;
    if (den == 0.0) throw DomainError("degenerate Fe parameters: zJ_Fe - A_x + A_z = 0");
    return -0.5 * std::atan((fe.A_xz + zD) / den);
}

Abcd abcd(const FeParams& fe, double beta0) {
    const double f = fe.S / (PhysConsts::g_f * PhysConsts::mu_B);
    const double zJ = fe.z * fe.J_Fe;
    const double zD = fe.z * fe.D_Fe_y;
    const double c2 = std::cos(2.0 * beta0), s2 = std::sin(2.0 * beta0);
    Abcd k;
    k.a = f * (-fe.A_z - fe.A_x - (zJ + fe.A_z - fe.A_x) * c2 + (fe.A_xz + zD) * s2);
    k.b = f * zJ;
    k.c = f * ((zJ + 2.0 * fe.A_z - 2.0 * fe.A_x) * c2 + zD * s2);
    k.d = f * (-zJ * c2 - (2.0 * fe.A_xz + zD) * s2);
    return k;
}

double magnon_omega(const Abcd& k, double K) {
    const double p = (k.b * std::cos(K) - k.a) * (k.d * std::cos(K) + k.c);
    if (p < 0.0) throw InstabilityError("negative magnon radicand: Fe parameters outside the Gamma2-stable regime");
    return PhysConsts::gamma * std::sqrt(p);
}

MagnonBasis magnon_basis(const FeParams& fe) {
    MagnonBasis mb;
    mb.beta0 = canting_angle(fe);
    mb.k = abcd(fe, mb.beta0);
    mb.omega0 = magnon_omega(mb.k, 0.0);
    mb.omegapi = magnon_omega(mb.k, std::numbers::pi);
    mb.nu0 = mb.omega0 / (2.0 * std::numbers::pi);
    mb.nupi = mb.omegapi / (2.0 * std::numbers::pi);
    const auto& k = mb.k;
    mb.scale_T0 = std::pow((k.b - k.a) / (k.d + k.c), 0.25);
    mb.scale_Tpi = std::pow((-k.b - k.a) / (-k.d + k.c), 0.25);
    mb.scale_Y0 = 1.0 / mb.scale_T0;
    mb.scale_Ypi = 1.0 / mb.scale_Tpi;
    return mb;
}

FeFluctuation fluctuation_map(const MagnonBasis& mb, double S, double x, double T0, double Y0,
                              double Tpi, double Ypi) {
    const double pre = std::sqrt(2.0 * x) * std::sqrt(2.0 * S);
    const double cb = std::cos(mb.beta0), sb = std::sin(mb.beta0);
    FeFluctuation f;
    f.dS_plus = pre * Vec3(Tpi * cb, Y0, -T0 * sb);
    f.dS_minus = pre * Vec3(-T0 * cb, -Ypi, Tpi * sb);
    return f;
}

}  // namespace erfeo
