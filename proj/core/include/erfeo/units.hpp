#pragma once

#include <numbers>
#include <string_view>

namespace erfeo {

// Internal units: energy meV, field T, temperature K, frequency THz.
struct PhysConsts {
    static constexpr double mu_B = 0.0578838180;    // meV/T
    static constexpr double k_B = 0.08617333262;    // meV/K
    static constexpr double h = 4.135667696;        // meV/THz
    static constexpr double hbar = h / (2.0 * std::numbers::pi);
    static constexpr double g_f = 2.0;
    static constexpr double meV_in_J = 1.602176634e-22;

    // gyromagnetic ratio of the free electron, rad/ps per T
    static constexpr double gamma = g_f * mu_B / hbar;
};

enum class Unit { meV, THz, K, J };

Unit parse_unit(std::string_view token);
std::string_view unit_name(Unit u);

double convert(double value, Unit from, Unit to);
double convert(double value, std::string_view from, std::string_view to);

inline constexpr double thz_to_mev(double nu) { return nu * PhysConsts::h; }
inline constexpr double mev_to_thz(double e) { return e / PhysConsts::h; }

}  // namespace erfeo
