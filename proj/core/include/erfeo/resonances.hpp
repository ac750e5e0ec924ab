#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "erfeo/bogoliubov.hpp"
#include "erfeo/dicke.hpp"
#include "erfeo/mean_field.hpp"

namespace erfeo {

enum class ModeLabel { qFM, qAFM, ErIn, ErOut };
std::string label_name(ModeLabel l);

enum class Axis { a, b, c };
Axis parse_axis(const std::string& s);
std::string axis_name(Axis a);
Vec3 axis_field(Axis a, double B);

struct ResonanceSet {
    std::vector<double> frequencies;   // THz, ascending
    std::vector<ModeLabel> labels;
    std::vector<std::string> validity;
};

// tanh(E_Er / 2kT), E_Er excluding the Er-Er exchange.
double effective_er_density(double T, const Vec3& B_ext, const DickeParams& dicke);

struct LinearizedSystem {
    Eigen::Matrix<double, 12, 12> matrix;   // 1/ps, acting on (dsigma_A, dsigma_B, dS_A, dS_B)
    SpinState reference;
};

// Precession of each spin about its static field plus the static spin about the fluctuating field.
// Throws PreconditionError if the state is not stationary at cfg.env.T.
LinearizedSystem linearize(const SpinState& state, const ModelConfig& cfg, double tol = 1e-6);

// nu = Re(i E / 2 pi) for every eigenvalue E, ascending.
std::vector<double> linear_frequencies(const LinearizedSystem& sys);

ResonanceSet mf_resonances(const ModelConfig& cfg, double T, const Vec3& B_ext, const SolverOptions& opt = {});

BosonicQuadratic dicke_quadratic(const DickeParams& p, Axis axis, double B);
ResonanceSet dicke_resonances(const ModelConfig& cfg, double T, Axis axis, double B);

struct Anticrossing {
    double B = 0.0;
    double gap = 0.0;      // THz
    ModeLabel first, second;
};

// Fields where the branches carrying labels p and q come closest while swapping order.
// window: number of grid points on each side used to test the swap.
std::vector<Anticrossing> find_anticrossings(const std::vector<double>& fields, const std::vector<ResonanceSet>& sets,
                                             ModeLabel p, ModeLabel q, int window = 10);

}  // namespace erfeo
