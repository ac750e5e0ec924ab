#include "erfeo/units.hpp"

#include <string>

#include "erfeo/errors.hpp"

namespace erfeo {

namespace {

double to_mev_factor(Unit u) {
    switch (u) {
        case Unit::meV: return 1.0;
        case Unit::THz: return PhysConsts::h;
        case Unit::K: return PhysConsts::k_B;
        case Unit::J: return 1.0 / PhysConsts::meV_in_J;
    }
    return 1.0;
}

}  // namespace

Unit parse_unit(std::string_view token) {
    if (token == "meV") return Unit::meV;
    if (token == "THz") return Unit::THz;
    if (token == "K") return Unit::K;
    if (token == "J") return Unit::J;
    throw ConfigError("unknown unit '" + std::string(token) + "'");
}

std::string_view unit_name(Unit u) {
    switch (u) {
        case Unit::meV: return "meV";
        case Unit::THz: return "THz";
        case Unit::K: return "K";
        case Unit::J: return "J";
    }
    return "?";
}

double convert(double value, Unit from, Unit to) {
    if (from == to) return value;
    return value * to_mev_factor(from) / to_mev_factor(to);
}

double convert(double value, std::string_view from, std::string_view to) {
    return convert(value, parse_unit(from), parse_unit(to));
}

}  // namespace erfeo
