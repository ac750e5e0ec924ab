#pragma once

#include "erfeo/spin_model.hpp"

namespace erfeo {

struct Abcd {
    double a = 0, b = 0, c = 0, d = 0;  // T
};

struct MagnonBasis {
    double beta0 = 0.0;     // rad
    Abcd k;
    double omega0 = 0.0;    // rad/ps
    double omegapi = 0.0;
    double nu0 = 0.0;       // THz
    double nupi = 0.0;
    // ((b cos K - a)/(d cos K + c))^{1/4}; the Y quadratures carry the inverse.
    double scale_T0 = 1.0;
    double scale_Tpi = 1.0;
    double scale_Y0 = 1.0;
    double scale_Ypi = 1.0;
};

double canting_angle(const FeParams& fe);
Abcd abcd(const FeParams& fe, double beta0);

// omega_K = gamma sqrt((b cos K - a)(d cos K + c)), rad/ps. Throws InstabilityError.
double magnon_omega(const Abcd& k, double K);

MagnonBasis magnon_basis(const FeParams& fe);

struct FeFluctuation {
    Vec3 dS_plus = Vec3::Zero();
    Vec3 dS_minus = Vec3::Zero();
};

// Quadratures are c-numbers per sqrt(N), N = 2 x N_UC Er spins; the per-site
// sqrt(2S/N_UC) normalization then becomes sqrt(2x) sqrt(2S).
FeFluctuation fluctuation_map(const MagnonBasis& basis, double S, double x, double T0, double Y0,
                              double Tpi, double Ypi);

}  // namespace erfeo
