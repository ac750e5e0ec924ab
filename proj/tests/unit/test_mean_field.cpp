#include <doctest.h>

#include <cmath>
#include <random>

#include <Eigen/Geometry>

#include "erfeo/errors.hpp"
#include "erfeo/mean_field.hpp"
#include "erfeo/units.hpp"

using namespace erfeo;

namespace {

// Brillouin function written directly from its definition.
double brillouin_ref(double J, double z) {
    const double a = (2 * J + 1) / (2 * J), b = 1 / (2 * J);
    return a / std::tanh(a * z) - b / std::tanh(b * z);
}

SpinState gamma2_state(double S) {
    return {Vec3(-0.1, 0, 0), Vec3(-0.1, 0, 0), Vec3(0.03, 0, -S), Vec3(0.03, 0, S)};
}

}  // namespace

TEST_CASE("mean fields") {
    ModelConfig cfg = default_config();
    cfg.env.B_ext = Vec3(0, 0, 1);
    MeanFields f = compute_mean_fields(SpinState{}, cfg);
    CHECK((f.h_Er_A - Vec3(0, 0, 9.6 * PhysConsts::mu_B)).norm() < 1e-15);
    CHECK((f.h_Fe_A - Vec3(0, 0, 0.6 * PhysConsts::mu_B)).norm() < 1e-15);

    cfg.env.B_ext.setZero();
    SpinState s{};
    s.sigma_B = Vec3(1, 0, 0);
    f = compute_mean_fields(s, cfg);
    CHECK((f.h_Er_A - 2.0 * 6.0 * 0.037 * Vec3(1, 0, 0)).norm() < 1e-15);

    f = compute_mean_fields(gamma2_state(2.5), cfg);
    CHECK(f.h_Er_A.y() == 0.0);
    CHECK(f.h_Er_B.y() == 0.0);
}

TEST_CASE("mean fields are linear in state and field") {
    const ModelConfig cfg = default_config();
    std::mt19937_64 rng(7);
    std::normal_distribution<double> n(0, 1);
    auto rs = [&] {
        SpinState s{Vec3(n(rng), n(rng), n(rng)), Vec3(n(rng), n(rng), n(rng)), Vec3(n(rng), n(rng), n(rng)),
                    Vec3(n(rng), n(rng), n(rng))};
        return s;
    };
    const SpinState a = rs(), b = rs();
    const MeanFields f0 = compute_mean_fields(SpinState{}, cfg);
    const MeanFields fa = compute_mean_fields(a, cfg), fb = compute_mean_fields(b, cfg);
    const MeanFields fab = compute_mean_fields(SpinState::unpack(a.pack() + 2.0 * b.pack()), cfg);
    CHECK((fab.h_Fe_B - (fa.h_Fe_B + 2.0 * fb.h_Fe_B - 2.0 * f0.h_Fe_B)).norm() < 1e-12);
    CHECK((fab.h_Er_A - (fa.h_Er_A + 2.0 * fb.h_Er_A - 2.0 * f0.h_Er_A)).norm() < 1e-12);
}

TEST_CASE("brillouin") {
    for (double z : {0.1, 1.0, 3.0}) CHECK(std::abs(brillouin(0.5, z) - std::tanh(z)) < 1e-12);
    CHECK(brillouin(2.5, 1e3) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(brillouin(2.5, 0.01) - 0.004667) < 1e-6);
    for (double z : {1e-4, 0.3, 2.0, 7.0}) CHECK(brillouin(2.5, z) == doctest::Approx(brillouin_ref(2.5, z)).epsilon(1e-10));
    for (double b : {0.0, 0.1, 0.5, 0.99}) CHECK(brillouin(2.5, inverse_brillouin(2.5, b)) == doctest::Approx(b).epsilon(1e-10));
}

TEST_CASE("thermal update") {
    const ModelConfig cfg = default_config();
    MeanFields f{};
    const double T = 500.0, eps = 1e-3;
    f.h_Er_A = Vec3(0, 0, eps);
    SpinState s = thermal_update(f, T, cfg);
    CHECK(s.sigma_A.z() == doctest::Approx(-eps / (2 * PhysConsts::k_B * T)).epsilon(1e-6));

    CHECK(thermal_update(MeanFields{}, 3.0, cfg).pack().isZero());

    const double T2 = 2.0;
    f = MeanFields{};
    f.h_Fe_A = Vec3(PhysConsts::k_B * T2 * 10.0 / 2.5, 0, 0);
    s = thermal_update(f, T2, cfg);
    CHECK(s.S_A.norm() == doctest::Approx(2.5 * brillouin_ref(2.5, 10.0)).epsilon(1e-12));
    CHECK(s.S_A.x() < 0.0);
}

TEST_CASE("equilibrium phases") {
    ModelConfig cfg = default_config();

    SUBCASE("normal phase at 10 K") {
        cfg.env.T = 10.0;
        const EquilibriumResult r = solve_equilibrium(cfg);
        REQUIRE(r.converged);
        const SpinState& s = r.state;
        CHECK(std::abs(s.sigma_A.z()) < 1e-8);
        CHECK(std::abs(s.sigma_B.z()) < 1e-8);
        CHECK(std::abs(s.S_A.y()) < 1e-8);
        CHECK(std::abs(s.S_B.y()) < 1e-8);
        CHECK(s.S_A.z() == doctest::Approx(-s.S_B.z()).epsilon(1e-10));
        CHECK(s.S_A.x() > 0.0);
        CHECK(s.S_A.x() < 0.05 * cfg.fe.S);
        CHECK(order_parameter(s) < 1e-8);
    }
    SUBCASE("ordered phase at 2 K") {
        cfg.env.T = 2.0;
        const EquilibriumResult r = solve_equilibrium(cfg);
        REQUIRE(r.converged);
        CHECK(r.state.sigma_A.z() == doctest::Approx(-r.state.sigma_B.z()).epsilon(1e-9));
        CHECK(std::abs(r.state.S_A.y()) > 0.1);
        CHECK(order_parameter(r.state) > 0.1);
    }
    SUBCASE("rotation angle at the lowest temperature") {
        cfg.env.T = 0.0;
        const EquilibriumResult r = solve_equilibrium(cfg);
        CHECK(std::abs(rotation_angle_deg(r.state)) == doctest::Approx(46.0).epsilon(1.0 / 46.0));
    }
}

TEST_CASE("order parameter arithmetic") {
    SpinState s{};
    s.sigma_A.z() = 0.3;
    s.sigma_B.z() = -0.3;
    CHECK(order_parameter(s) == doctest::Approx(0.6));
}

TEST_CASE("free energy is stationary at the solution") {
    ModelConfig cfg = default_config();
    for (double T : {2.0, 6.0}) {
        cfg.env.T = T;
        const EquilibriumResult r = solve_equilibrium(cfg);
        REQUIRE(r.converged);
        const Vec12 v = r.state.pack();
        const double h = 1e-6;
        double worst = 0.0;
        // Er components: plain central differences
        for (int i = 0; i < 6; ++i) {
            if (std::abs(v[i]) < 1e-9) continue;   // entropy is not differentiable at zero length
            Vec12 p = v, m = v;
            p[i] += h;
            m[i] -= h;
            const double g = (free_energy(SpinState::unpack(p), cfg, T) - free_energy(SpinState::unpack(m), cfg, T)) / (2 * h);
            worst = std::max(worst, std::abs(g));
        }
        // Fe spins sit at |S| = S to double precision, so only length-preserving rotations are probed;
        // the entropy is constant along them and the T = 0 form carries the whole change.
        for (int blk = 6; blk < 12; blk += 3) {
            const Vec3 s = v.segment<3>(blk);
            for (int ax = 0; ax < 3; ++ax) {
                const Vec3 axis = Vec3::Unit(ax);
                if (axis.cross(s).norm() < 1e-9) continue;
                auto rotated = [&](double a) {
                    Vec12 w = v;
                    w.segment<3>(blk) = Eigen::AngleAxisd(a, axis) * s;
                    return free_energy(SpinState::unpack(w), cfg, 0.0);
                };
                worst = std::max(worst, std::abs((rotated(h) - rotated(-h)) / (2 * h)));
            }
        }
        CHECK(worst < 1e-5);
    }
}

TEST_CASE("normal phase beats the flipped artifacts at 10 K") {
    ModelConfig cfg = default_config();
    cfg.env.T = 10.0;
    const auto seeds = canonical_seeds(cfg);
    const EquilibriumResult best = solve_equilibrium(cfg);
    for (const auto& sd : seeds) {
        const EquilibriumResult r = solve_from(cfg, sd);
        if (r.converged) CHECK(best.free_energy <= r.free_energy + 1e-12);
    }
}

TEST_CASE("free energy along the damped tail") {
    ModelConfig cfg = default_config();
    cfg.env.T = 2.0;
    SpinState s = canonical_seeds(cfg)[1].state;
    const double eta = 0.3;
    std::vector<double> F;
    for (int it = 0; it < 4000; ++it) {
        const Vec12 v = s.pack();
        s = SpinState::unpack((1 - eta) * v + eta * self_consistency_map(s, cfg, cfg.env.T).pack());
        if (it >= 200) F.push_back(free_energy(s, cfg, cfg.env.T));
    }
    int rises = 0;
    for (std::size_t i = 1; i < F.size(); ++i) rises += F[i] > F[i - 1] + 1e-12;
    CHECK(rises == 0);
}

TEST_CASE("stationarity and mirror degeneracy") {
    ModelConfig cfg = default_config();
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> U(0, 1);
    for (int k = 0; k < 10; ++k) {
        cfg.env.T = 0.3 + 8 * U(rng);
        cfg.env.B_ext = Vec3(2 * U(rng) - 1, 2 * U(rng) - 1, 2 * U(rng) - 1);
        const EquilibriumResult r = solve_equilibrium(cfg);
        REQUIRE(r.converged);
        const StationarityReport rep = stationarity(r.state, cfg, cfg.env.T);
        CHECK(rep.max_cross < 1e-8);
        CHECK(rep.max_dot <= 0.0);
        CHECK(rep.max_magnitude_error < 1e-9);
        CHECK(r.state.sigma_A.norm() <= 1 + 1e-9);
        CHECK(r.state.S_A.norm() <= 2.5 + 1e-9);
    }

    cfg.env.B_ext.setZero();
    cfg.env.T = 1.5;
    const EquilibriumResult r = solve_equilibrium(cfg);
    const SpinState m = mirror(r.state);
    CHECK(std::abs(free_energy(r.state, cfg, 1.5) - free_energy(m, cfg, 1.5)) < 1e-10);
    const EquilibriumResult rm = solve_from(cfg, Seed{"mirror", m});
    CHECK(rm.converged);
    CHECK((rm.state.pack() - m.pack()).norm() < 1e-8);
}

TEST_CASE("normal-phase symmetry pattern above Tc") {
    ModelConfig cfg = default_config();
    cfg.env.T = 5.0;
    const SpinState s = solve_equilibrium(cfg).state;
    CHECK((s.sigma_A - s.sigma_B).norm() < 1e-8);
    CHECK(std::abs(s.sigma_A.y()) + std::abs(s.sigma_A.z()) < 1e-8);
    CHECK(std::abs(s.S_A.x() - s.S_B.x()) < 1e-8);
    CHECK(std::abs(s.S_A.z() + s.S_B.z()) < 1e-8);
}
