#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Dense>

#include "erfeo/dicke.hpp"
#include "erfeo/errors.hpp"
#include "erfeo/magnon.hpp"
#include "erfeo/mean_field.hpp"
#include "erfeo/srpt.hpp"
#include "erfeo/sweeps.hpp"
#include "erfeo/units.hpp"

using namespace erfeo;

TEST_CASE("canting angle") {
    FeParams fe;
    // long double evaluation of -atan((A_xz + z D)/(z J - A_x + A_z))/2
    const long double num = 0.0L + 6.0L * -0.107L;
    const long double den = 6.0L * 4.96L - 0.0073L + 0.0150L;
    const long double ref = -0.5L * std::atan(num / den);
    CHECK(canting_angle(fe) == doctest::Approx(static_cast<double>(ref)).epsilon(1e-14));
    CHECK(canting_angle(fe) == doctest::Approx(0.010782).epsilon(1e-4));
    CHECK(canting_angle(fe) > 0.0);
    fe.D_Fe_y = 0.0;
    CHECK(canting_angle(fe) == 0.0);
}

TEST_CASE("abcd coefficients") {
    FeParams fe;
    const Abcd k = abcd(fe, canting_angle(fe));
    CHECK(k.b == doctest::Approx(2.5 * 6 * 4.96 / (2 * PhysConsts::mu_B)));
    CHECK(k.b - k.a > 0);
    CHECK(k.d + k.c > 0);
    CHECK(-k.b - k.a > 0);
    CHECK(-k.d + k.c > 0);

    fe.A_x = fe.A_z = fe.D_Fe_y = 0.0;
    const Abcd z = abcd(fe, 0.0);
    CHECK(z.a == doctest::Approx(-z.b));
    CHECK(z.c == doctest::Approx(z.b));
    CHECK(z.d == doctest::Approx(-z.b));
}

TEST_CASE("magnon frequencies") {
    const MagnonBasis mb = magnon_basis(FeParams{});
    CHECK(mb.nupi == doctest::Approx(0.896).epsilon(0.01));
    CHECK(mb.nu0 == doctest::Approx(0.5789).epsilon(1e-3));
    CHECK(mb.omega0 < mb.omegapi);
    CHECK(mb.scale_T0 * mb.scale_Y0 == doctest::Approx(1.0));
    CHECK(mb.scale_Tpi * mb.scale_Ypi == doctest::Approx(1.0));
    Abcd k{1.0, 1.0, 2.0, 3.0};
    CHECK(magnon_omega(k, 0.0) == 0.0);
}

TEST_CASE("magnon frequencies from the spin-wave chain") {
    // dT_l/dt = gamma(-a Y_l + b/2 (Y_{l-1} + Y_{l+1})), dY_l/dt = gamma(-c T_l - d/2 (T_{l-1} + T_{l+1}))
    const MagnonBasis mb = magnon_basis(FeParams{});
    const Abcd& k = mb.k;
    const int L = 8;
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(2 * L, 2 * L);
    for (int l = 0; l < L; ++l) {
        const int lm = (l + L - 1) % L, lp = (l + 1) % L;
        M(l, L + l) += -k.a;
        M(l, L + lm) += k.b / 2;
        M(l, L + lp) += k.b / 2;
        M(L + l, l) += -k.c;
        M(L + l, lm) += -k.d / 2;
        M(L + l, lp) += -k.d / 2;
    }
    M *= PhysConsts::gamma;
    const Eigen::VectorXcd ev = M.eigenvalues();
    auto nearest = [&](double w) {
        double best = 1e300;
        for (int i = 0; i < ev.size(); ++i) best = std::min(best, std::abs(std::abs(ev[i].imag()) - w));
        return best;
    };
    CHECK(nearest(mb.omega0) < 1e-10 * mb.omega0);
    CHECK(nearest(mb.omegapi) < 1e-10 * mb.omegapi);
}

TEST_CASE("fluctuation map") {
    const MagnonBasis mb = magnon_basis(FeParams{});
    const double S = 2.5, x = 1.0, pre = std::sqrt(2 * x) * std::sqrt(2 * S);
    FeFluctuation f = fluctuation_map(mb, S, x, 0, 0, 0, 0);
    CHECK(f.dS_plus.isZero());
    CHECK(f.dS_minus.isZero());
    f = fluctuation_map(mb, S, x, 1, 0, 0, 0);
    CHECK((f.dS_plus - pre * Vec3(0, 0, -std::sin(mb.beta0))).norm() < 1e-14);
    CHECK((f.dS_minus - pre * Vec3(-std::cos(mb.beta0), 0, 0)).norm() < 1e-14);
    f = fluctuation_map(mb, S, x, 0, 0, 0, 1);
    CHECK(f.dS_plus.isZero());
    CHECK((f.dS_minus - pre * Vec3(0, -1, 0)).norm() < 1e-14);
}

TEST_CASE("alignment energy and couplings") {
    ModelConfig cfg = default_config();
    const MagnonBasis mb = magnon_basis(cfg.fe);
    CHECK(alignment_energy(cfg.xc, 2.5, mb.beta0) / PhysConsts::h == doctest::Approx(0.023).epsilon(0.03));
    ErFeCouplings xc = cfg.xc;
    xc.J = xc.D_y = 0.0;
    CHECK(alignment_energy(xc, 2.5, mb.beta0) == 0.0);
    CHECK(alignment_energy(cfg.xc, 2.5, 0.0) == doctest::Approx(4 * 2.5 * cfg.xc.D_y));

    const CouplingStrengths l1 = coupling_strengths(cfg, mb);
    CHECK(l1.lambda_x > 0);
    CHECK(l1.lambda_y > 0);
    CHECK(l1.lambda_yp > 0);
    CHECK(l1.lambda_z > 0);
    CHECK(l1.lambda_zp < 0);
    CHECK(l1.lambda_yp < 1e-2 * l1.lambda_x);
    CHECK(l1.lambda_yp < 1e-2 * l1.lambda_z);
    CHECK(std::abs(l1.lambda_y + l1.lambda_zp) == doctest::Approx(7e-4).epsilon(0.15));

    for (double x : {0.04, 0.25, 0.7}) {
        cfg.env.x = x;
        const CouplingStrengths l = coupling_strengths(cfg, mb);
        const double r = std::sqrt(x);
        CHECK(l.lambda_x == doctest::Approx(r * l1.lambda_x).epsilon(1e-12));
        CHECK(l.lambda_y == doctest::Approx(r * l1.lambda_y).epsilon(1e-12));
        CHECK(l.lambda_yp == doctest::Approx(r * l1.lambda_yp).epsilon(1e-12));
        CHECK(l.lambda_z == doctest::Approx(r * l1.lambda_z).epsilon(1e-12));
        CHECK(l.lambda_zp == doctest::Approx(r * l1.lambda_zp).epsilon(1e-12));
    }
    cfg.env.x = 0.0;
    const CouplingStrengths l0 = coupling_strengths(cfg, mb);
    CHECK(l0.lambda_x == 0.0);
    CHECK(l0.lambda_z == 0.0);
    CHECK(l0.lambda_zp == 0.0);
}

TEST_CASE("reduction for the low-temperature transition") {
    const ModelConfig cfg = default_config();
    const DickeParams p = dicke_params(cfg);
    CHECK(reduce_for_ltpt(p, 0.0).omegaEr == doctest::Approx(p.E_x / PhysConsts::h));
    CHECK(reduce_for_ltpt(p, -p.E_x / (6 * PhysConsts::mu_B)).omegaEr == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(reduce_for_ltpt(p, 1.0).omegaEr ==
          doctest::Approx(std::abs(p.E_x + 6 * PhysConsts::mu_B) / PhysConsts::h));
    CHECK_THROWS_AS(reduce_for_ltpt(p, Vec3(0, 0.5, 0)), DomainError);
    CHECK_NOTHROW(reduce_for_ltpt(p, Vec3(0.5, 0, 0)));
}

TEST_CASE("baseline Dicke model") {
    BaselineDicke m{1.0, 1.0, 0.0};
    for (double T : {0.01, 1.0, 10.0}) CHECK(baseline_dicke_equilibrium(m, T).alpha_i == 0.0);
    m.lambda = 0.4;   // 4 lambda^2 < w_ph w_ex
    for (double T : {0.01, 1.0}) CHECK(baseline_dicke_equilibrium(m, T).alpha_i == 0.0);

    // brute-force grid of the zero-temperature energy w_ph a^2 - sqrt(w_ex^2 + 16 lambda^2 a^2)/2
    m.lambda = 1.0;
    double best_a = 0.0, best_e = 1e300;
    for (int i = 0; i <= 400000; ++i) {
        const double a = 2.0 * i / 400000.0;
        const double e = a * a - 0.5 * std::sqrt(1.0 + 16.0 * a * a);
        if (e < best_e) best_e = e, best_a = a;
    }
    const BaselineResult r = baseline_dicke_equilibrium(m, 1e-4);
    CHECK(std::hypot(r.alpha_r, r.alpha_i) == doctest::Approx(best_a).epsilon(1e-4));
}

TEST_CASE("semiclassical two-level trace against numeric diagonalization") {
    const ReducedDicke r = reduce_for_ltpt(dicke_params(default_config()), 0.0);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> U(-1, 1);
    for (int k = 0; k < 20; ++k) {
        const double sx = U(rng), sz = U(rng), T = 0.5 + 5 * (U(rng) + 1);
        const Eigen::Vector2d h = effective_field(r, sx, sz);
        Eigen::Matrix2d H;
        H << h.y(), h.x(), h.x(), -h.y();
        const Eigen::Vector2d e = Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d>(H).eigenvalues();
        const double kT = PhysConsts::k_B * T;
        const double trace = std::exp(-e[0] / kT) + std::exp(-e[1] / kT);
        const double ar = -r.lambda_x * sx / r.omegapi, ai = -r.lambda_z * sz / r.omegapi;
        const double ref = PhysConsts::h * r.omegapi * (ar * ar + ai * ai) -
                           0.5 * r.zErJEr * (sx * sx - sz * sz) - kT * std::log(trace);
        CHECK(semiclassical_action(r, sx, sz, T) == doctest::Approx(ref).epsilon(1e-12));
    }
}

TEST_CASE("semiclassical equilibrium") {
    const ModelConfig cfg = default_config();
    const ReducedDicke r = reduce_for_ltpt(dicke_params(cfg), 0.0);

    SUBCASE("normal phase") {
        const SemiclassicalState s = semiclassical_equilibrium(r, 6.0);
        CHECK(s.converged);
        CHECK(std::abs(s.sigma_z) < 1e-9);
        CHECK(std::abs(s.alpha_i) < 1e-9);
    }
    SUBCASE("ordered phase and locking relations") {
        for (double T : {0.5, 2.0, 3.5}) {
            const SemiclassicalState s = semiclassical_equilibrium(r, T);
            CHECK(s.converged);
            CHECK(s.sigma_z > 0.1);
            CHECK(s.alpha_i < 0.0);
            CHECK(std::abs(r.omegapi * s.alpha_r + r.lambda_x * s.sigma_x) < 1e-9);
            CHECK(std::abs(r.omegapi * s.alpha_i + r.lambda_z * s.sigma_z) < 1e-9);
            CHECK(s.sigma_x * s.sigma_x + s.sigma_z * s.sigma_z <= 1 + 1e-9);
            CHECK(semiclassical_action(r, s.sigma_x, -s.sigma_z, T) ==
                  doctest::Approx(semiclassical_action(r, s.sigma_x, s.sigma_z, T)).epsilon(1e-14));
        }
    }
    SUBCASE("free-spin limit") {
        ReducedDicke f = r;
        f.lambda_x = f.lambda_z = f.zErJEr = 0.0;
        const double T = 1.0;
        const SemiclassicalState s = semiclassical_equilibrium(f, T);
        CHECK(s.sigma_x == doctest::Approx(-std::tanh(PhysConsts::h * f.omegaEr / (2 * PhysConsts::k_B * T))));
        CHECK(s.sigma_z == 0.0);
        CHECK(s.alpha_r == 0.0);
        CHECK(s.alpha_i == 0.0);
    }
}

TEST_CASE("Fe spins from magnon amplitudes") {
    const ModelConfig cfg = default_config();
    const MagnonBasis mb = magnon_basis(cfg.fe);
    const Vec3 s0 = fe_spins_from_magnons(0, 0, cfg, mb);
    CHECK((s0 - Vec3(2.5 * std::sin(mb.beta0), 0, 2.5 * std::cos(mb.beta0))).norm() < 1e-14);
    const Vec3 s1 = fe_spins_from_magnons(0, 0.2, cfg, mb);
    CHECK(s1.y() < 0.0);
    CHECK(s1.y() == doctest::Approx(-std::sqrt(2 * 2.5) * 0.2 * mb.scale_Ypi).epsilon(1e-12));

    ModelConfig c = cfg;
    c.env.T = 0.1;
    const SweepPoint mf = equilibrium_point(c, Method::mean_field);
    const SweepPoint dk = equilibrium_point(c, Method::dicke);
    CHECK(std::abs(mf.state.S_A.y() - dk.state.S_A.y()) < 0.05 * cfg.fe.S);
}

// The linear magnon map keeps S_z at S cos(beta0) while S_y grows, so the angle overshoots the
// normalized mean-field spin.
TEST_CASE("rotation angle from the magnon amplitudes matches mean field at 0.1 K" * doctest::should_fail()) {
    ModelConfig c = default_config();
    c.env.T = 0.1;
    const SweepPoint mf = equilibrium_point(c, Method::mean_field);
    const SweepPoint dk = equilibrium_point(c, Method::dicke);
    MESSAGE("phi mean-field " << mf.phi_deg << " deg, Dicke " << dk.phi_deg << " deg");
    CHECK(std::abs(std::abs(mf.phi_deg) - std::abs(dk.phi_deg)) < 3.0);
}

TEST_CASE("Holstein-Primakoff ground state") {
    const ModelConfig cfg = default_config();
    const MagnonBasis mb = magnon_basis(cfg.fe);
    const ReducedDicke r = reduce_for_ltpt(dicke_params(cfg, mb), 0.0);

    ReducedDicke z = r;
    z.lambda_x = z.lambda_z = z.zErJEr = 0.0;
    const HPGroundState g0 = hp_ground_state(z);
    CHECK(g0.beta == 0.0);
    CHECK(g0.alpha_r == 0.0);
    CHECK(g0.alpha_i == 0.0);

    const HPGroundState g = hp_ground_state(r);
    CHECK(g.beta != 0.0);
    CHECK(std::abs(g.beta) < 1.0);

    // T -> 0 consistency with the semiclassical solver
    const SemiclassicalState s = semiclassical_equilibrium(r, 0.01);
    const Vec3 fe_hp = fe_spins_from_magnons(g.alpha_r, g.alpha_i, cfg, mb);
    const Vec3 fe_sc = fe_spins_from_magnons(s.alpha_r, s.alpha_i, cfg, mb);
    CHECK((fe_hp - fe_sc).norm() < 1e-3);
    CHECK(-2 * g.beta * std::sqrt(1 - g.beta * g.beta) == doctest::Approx(s.sigma_z).epsilon(1e-3));
}

TEST_CASE("coupling depths") {
    const ReducedDicke r = reduce_for_ltpt(dicke_params(default_config()), 0.0);
    const CouplingDepths d = coupling_depths(r);
    CHECK(d.D_lambda_z == doctest::Approx(2.65).epsilon(0.03));
    CHECK(d.D_lambda_x == doctest::Approx(-0.51).epsilon(0.03));
    CHECK(d.D_JEr == doctest::Approx(9.29).epsilon(0.03));
    CHECK(d.superradiant);

    ReducedDicke c{};
    c.lambda_z = 0.2;
    c.omegapi = c.omegaEr = 0.4;
    CHECK(coupling_depths(c).D_lambda_z == doctest::Approx(1.0).epsilon(1e-15));

    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> U(0, 1);
    for (int k = 0; k < 200; ++k) {
        ReducedDicke b{};
        b.omegapi = 0.1 + U(rng);
        b.omegaEr = 0.1 + U(rng);
        b.lambda_z = U(rng);
        CHECK(coupling_depths(b).superradiant == (4 * b.lambda_z * b.lambda_z > b.omegapi * b.omegaEr));
    }
    ReducedDicke bad = r;
    bad.omegaEr = 0.0;
    CHECK_THROWS_AS(coupling_depths(bad), DomainError);
}
