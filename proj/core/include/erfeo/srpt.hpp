#pragma once

#include "erfeo/dicke.hpp"
#include "erfeo/magnon.hpp"

namespace erfeo {

// omega_ph a^dag a + omega_ex S_x + (2i lambda / sqrt N)(a^dag - a) S_z, all in THz.
struct BaselineDicke {
    double omega_ph = 1.0;
    double omega_ex = 1.0;
    double lambda = 0.0;
};

struct BaselineResult {
    double alpha_r = 0.0;
    double alpha_i = 0.0;   // >= 0 by convention
    double action = 0.0;    // meV per atom
};

// Action per atom, h omega_ph |alpha|^2 - kT ln Tr exp(-H_a/kT); at T = 0 the ground energy.
double baseline_action(const BaselineDicke& m, double alpha_i, double T);
BaselineResult baseline_dicke_equilibrium(const BaselineDicke& m, double T);

struct SemiclassicalState {
    double alpha_r = 0.0;
    double alpha_i = 0.0;
    double sigma_x = 0.0;
    double sigma_z = 0.0;
    double action = 0.0;    // meV per Er spin
    int iterations = 0;
    bool converged = false;
};

struct SemiclassicalOptions {
    double eta = 0.3;
    double tol = 1e-13;
    int max_iter = 200000;
    double T_floor = 0.01;
};

// Two-level field (h_x, h_z) in meV for given Er expectation values.
Eigen::Vector2d effective_field(const ReducedDicke& r, double sigma_x, double sigma_z);

double semiclassical_action(const ReducedDicke& r, double sigma_x, double sigma_z, double T);

// Reports the sigma_z >= 0 member of the mirror pair.
SemiclassicalState semiclassical_equilibrium(const ReducedDicke& r, double T,
                                             const SemiclassicalOptions& opt = {});

// Er-ordering and magnon amplitudes to (S_x^A, S_y^A, -S_z^A).
Vec3 fe_spins_from_magnons(double alpha_r, double alpha_i, const ModelConfig& cfg, const MagnonBasis& basis);

struct HPGroundState {
    double beta = 0.0;      // sign chosen so that sigma_z = -2 beta sqrt(1 - beta^2) >= 0
    double alpha_r = 0.0;
    double alpha_i = 0.0;
    double energy = 0.0;    // per Er spin, in units of h THz
};

double hp_energy(const ReducedDicke& r, double beta);
HPGroundState hp_ground_state(const ReducedDicke& r);

struct CouplingDepths {
    double D_lambda_z = 0.0;
    double D_lambda_x = 0.0;
    double D_JEr = 0.0;
    bool superradiant = false;

    double sum() const { return D_lambda_z + D_lambda_x + D_JEr; }
};

CouplingDepths coupling_depths(const ReducedDicke& r);

}  // namespace erfeo
