#pragma once

#include "erfeo/magnon.hpp"
#include "erfeo/spin_model.hpp"

namespace erfeo {

// Frequencies are ordinary frequencies in THz; hbar*lambda equals h times the stored value.
struct DickeParams {
    double omega0 = 0.0;
    double omegapi = 0.0;
    double E_x = 0.0;          // meV
    double lambda_x = 0.0;
    double lambda_y = 0.0;
    double lambda_yp = 0.0;
    double lambda_z = 0.0;
    double lambda_zp = 0.0;
    double J_Er_term = 0.0;    // zEr J_Er, meV
    Vec3 g_Er{6.0, 3.4, 9.6};
    double x = 1.0;
};

struct CouplingStrengths {
    double lambda_x = 0.0;
    double lambda_y = 0.0;
    double lambda_yp = 0.0;
    double lambda_z = 0.0;
    double lambda_zp = 0.0;
};

// E_x = 4S (J sin beta0 + D_y cos beta0), meV.
double alignment_energy(const ErFeCouplings& xc, double S, double beta0);

CouplingStrengths coupling_strengths(const ModelConfig& cfg, const MagnonBasis& basis);

DickeParams dicke_params(const ModelConfig& cfg);
DickeParams dicke_params(const ModelConfig& cfg, const MagnonBasis& basis);

struct ReducedDicke {
    double omegapi = 0.0;   // THz
    double omegaEr = 0.0;   // THz, |E_x + g_x muB B_x| / h
    double lambda_x = 0.0;
    double lambda_z = 0.0;
    double zErJEr = 0.0;    // meV
};

// Keeps only the qAFM mode with the lambda_x and lambda_z couplings.
ReducedDicke reduce_for_ltpt(const DickeParams& p, double B_x);
// Same, checking that the field in cfg has no b or c component (DomainError otherwise).
ReducedDicke reduce_for_ltpt(const DickeParams& p, const Vec3& B_ext);

}  // namespace erfeo
