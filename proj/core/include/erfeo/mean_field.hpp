#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "erfeo/spin_model.hpp"

namespace erfeo {

using Vec12 = Eigen::Matrix<double, 12, 1>;

struct SpinState {
    Vec3 sigma_A = Vec3::Zero();
    Vec3 sigma_B = Vec3::Zero();
    Vec3 S_A = Vec3::Zero();
    Vec3 S_B = Vec3::Zero();

    Vec12 pack() const;
    static SpinState unpack(const Vec12& v);
};

// Energies in meV, i.e. g_f muB times the mean flux densities.
struct MeanFields {
    Vec3 h_Er_A = Vec3::Zero();
    Vec3 h_Er_B = Vec3::Zero();
    Vec3 h_Fe_A = Vec3::Zero();
    Vec3 h_Fe_B = Vec3::Zero();
};

struct EquilibriumResult {
    SpinState state;
    double free_energy = 0.0;   // meV per unit cell
    int iterations = 0;
    bool converged = false;
    std::string branch_tag;
    double residual = 0.0;      // max |update(state) - state|
};

struct Seed {
    std::string tag;
    SpinState state;
};

struct SolverOptions {
    double eta = 0.3;
    double tol = 1e-10;
    int max_iter = 50000;
    // Damped steps before the Newton polish is attempted.
    int warmup = 3000;
    bool newton = true;
    double T_floor = 0.01;
    int random_seeds = 0;
    std::uint64_t rng_seed = 20200701;
    bool gamma4_seed = true;
};

MeanFields compute_mean_fields(const SpinState& s, const ModelConfig& cfg);

double brillouin(double J, double z);
// Inverse of B_J on [0, 1).
double inverse_brillouin(double J, double b);

SpinState thermal_update(const MeanFields& f, double T, const ModelConfig& cfg);

// One application of the self-consistency map at temperature max(T, T_floor).
SpinState self_consistency_map(const SpinState& s, const ModelConfig& cfg, double T);

std::vector<Seed> canonical_seeds(const ModelConfig& cfg, const SolverOptions& opt = {});

EquilibriumResult solve_from(const ModelConfig& cfg, const Seed& seed, const SolverOptions& opt = {});
EquilibriumResult solve_equilibrium(const ModelConfig& cfg, const std::vector<Seed>& seeds,
                                    const SolverOptions& opt = {});
EquilibriumResult solve_equilibrium(const ModelConfig& cfg, const SolverOptions& opt = {});

double order_parameter(const SpinState& s);
double free_energy(const SpinState& s, const ModelConfig& cfg, double T);

// Fe AFM rotation angle from c toward b, atan2(S_y^A, -S_z^A) in degrees.
double rotation_angle_deg(const SpinState& s);

// (sigma_y, sigma_z, S_y) -> minus themselves on both sublattices.
SpinState mirror(const SpinState& s);

struct StationarityReport {
    double max_cross = 0.0;       // max |spin x field|
    double max_dot = 0.0;         // max spin . field, must be <= 0
    double max_magnitude_error = 0.0;
};

StationarityReport stationarity(const SpinState& s, const ModelConfig& cfg, double T);

}  // namespace erfeo
