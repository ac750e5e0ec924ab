#pragma once

#include <array>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace erfeo {

using Vec3 = Eigen::Vector3d;

struct FeParams {
    double S = 2.5;
    int z = 6;
    double J_Fe = 4.96;     // meV
    double D_Fe_y = -0.107;
    double A_x = 0.0073;
    double A_z = 0.0150;
    double A_xz = 0.0;
    double A_y = 0.0;       // symmetry analysis only, never enters the Hamiltonian
    Vec3 g_Fe{2.0, 2.0, 0.6};
};

struct ErParams {
    Vec3 g_Er{6.0, 3.4, 9.6};
    double J_Er = 0.037;    // meV
};

struct ErFeCouplings {
    double J = 0.60;        // meV
    double D_x = 0.034;
    double D_y = 0.003;
    double J_prime = 0.0;
    double D_x_prime = 0.0;
    double D_y_prime = 0.0;
    double D_z = 0.0;
    double D_z_prime = 0.0;
};

struct Environment {
    double T = 4.0;         // K
    Vec3 B_ext = Vec3::Zero();  // T
    double x = 1.0;
};

struct ModelConfig {
    FeParams fe;
    ErParams er;
    ErFeCouplings xc;
    Environment env;

    double z_Er() const { return 6.0 * env.x; }
};

ModelConfig default_config();

enum Sub { A = 0, B = 1 };

// J[s][t] and D[s][t] couple Er sublattice s with Fe sublattice t.
struct CouplingSet {
    std::array<std::array<double, 2>, 2> J{};
    std::array<std::array<Vec3, 2>, 2> D{};
};

CouplingSet build_coupling_vectors(const ErFeCouplings& xc);

struct SymmetryReport {
    bool satisfied = true;
    std::vector<std::string> violated_relations;
};

SymmetryReport validate_gamma12_symmetry(const CouplingSet& cs, double tol = 1e-12);

// Throws ConfigError on broken invariants.
void check_config(const ModelConfig& cfg);

// Non-fatal remarks, e.g. nonzero generalized couplings.
std::vector<std::string> config_warnings(const ModelConfig& cfg);

}  // namespace erfeo
