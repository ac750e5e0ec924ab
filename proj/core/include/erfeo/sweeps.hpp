#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "erfeo/mean_field.hpp"
#include "erfeo/resonances.hpp"
#include "erfeo/srpt.hpp"

namespace erfeo {

enum class Method { mean_field, dicke };
Method parse_method(const std::string& s);
std::string method_name(Method m);

enum class Variant { full, no_er_fe, no_er_er };
Variant parse_variant(const std::string& s);
std::string variant_name(Variant v);
// no-er-fe zeroes J, D_x, D_y; no-er-er zeroes J_Er.
ModelConfig apply_variant(ModelConfig cfg, Variant v);

// Inclusive grid lo, lo + step, ..., hi (hi included when it lies on the grid within 1e-9 step).
std::vector<double> make_grid(double lo, double hi, double step);

// Runs fn(i) for i in [0, n) on up to `threads` workers (0 = hardware default).
void parallel_for_index(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

struct SweepPoint {
    double T = 0.0;
    Vec3 B = Vec3::Zero();
    SpinState state;
    double order_parameter = 0.0;
    double phi_deg = 0.0;
    double alpha_r = 0.0;      // Dicke path only
    double alpha_i = 0.0;
    double free_energy = 0.0;  // mean-field F or semiclassical action
    bool converged = false;
    std::string branch;
};

// Single point; the Dicke path requires a field along a.
SweepPoint equilibrium_point(const ModelConfig& cfg, Method method, const SolverOptions& opt = {},
                             const std::optional<SpinState>& warm = std::nullopt);

// Ascending T grid at the field of cfg; mean-field points also seed from the previous point.
std::vector<SweepPoint> temperature_sweep(const ModelConfig& cfg, const std::vector<double>& Ts, Method method,
                                          const SolverOptions& opt = {}, bool warm_start = true);

struct BoundaryPoint {
    double T = 0.0;
    double B = 0.0;
};

struct PhaseGrid {
    Axis axis = Axis::a;
    std::vector<double> T;
    std::vector<double> B;
    // Row-major |T| x |B|.
    std::vector<double> order;
    std::vector<double> phi;
    std::vector<char> converged;
    std::vector<BoundaryPoint> boundary;

    double at(std::size_t iT, std::size_t iB) const { return order[iT * B.size() + iB]; }
};

inline constexpr double kOrderThreshold = 1e-4;

PhaseGrid phase_diagram(const ModelConfig& cfg, Axis axis, const std::vector<double>& Ts,
                        const std::vector<double>& Bs, Method method, int threads = 0,
                        const SolverOptions& opt = {});

bool is_ordered(const ModelConfig& cfg, Method method, const SolverOptions& opt = {});

// Bisection for the order-parameter threshold; returns nullopt when the bracket does not change phase.
std::optional<double> critical_temperature(const ModelConfig& cfg, Method method, double T_lo = 0.05,
                                           double T_hi = 10.0, double tol = 0.005, const SolverOptions& opt = {});
// Critical |B| along axis a with the given sign at the temperature of cfg.
std::optional<double> critical_field(const ModelConfig& cfg, double sign, Method method, double B_max = 6.0,
                                     double tol = 0.01, const SolverOptions& opt = {});

struct BoundaryOptions {
    std::vector<double> B_grid;     // Tc(B) bisection at each field
    std::vector<double> T_grid;     // B_c(T) bisection on both signs at each temperature
    double T_tol = 0.02;
    double B_tol = 0.05;
    int threads = 0;
};

std::vector<BoundaryPoint> phase_boundary(const ModelConfig& cfg, Variant variant, Method method,
                                          const BoundaryOptions& bopt, const SolverOptions& opt = {});

// Angle of the Fe AFM vector S_A - S_B from c toward a, degrees.
double afm_angle_from_c_deg(const SpinState& s);
// Gamma4 when the AFM vector lies closer to a than to c.
bool is_gamma4(const SpinState& s);

// First field along c where the mean-field state becomes Gamma4, refined by bisection.
std::optional<double> gamma2_gamma4_field(const ModelConfig& cfg, double B_max = 25.0, double step = 0.5,
                                          const SolverOptions& opt = {});

struct ResonanceRow {
    double B = 0.0;
    ResonanceSet set;
    std::string status = "ok";
};

std::vector<ResonanceRow> resonance_sweep(const ModelConfig& cfg, double T, Axis axis, const std::vector<double>& Bs,
                                          Method method, int threads = 0, const SolverOptions& opt = {});

}  // namespace erfeo
