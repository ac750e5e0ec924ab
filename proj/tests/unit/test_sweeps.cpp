#include <doctest.h>

#include <cmath>

#include "erfeo/errors.hpp"
#include "erfeo/sweeps.hpp"

using namespace erfeo;

TEST_CASE("grids and names") {
    const auto g = make_grid(0.1, 0.5, 0.1);
    REQUIRE(g.size() == 5);
    CHECK(g.back() == doctest::Approx(0.5));
    CHECK_THROWS_AS(make_grid(1.0, 0.0, 0.1), ConfigError);
    CHECK_THROWS_AS(make_grid(0.0, 1.0, 0.0), ConfigError);
    CHECK(parse_method("dicke") == Method::dicke);
    CHECK(parse_variant("no-er-er") == Variant::no_er_er);
    CHECK_THROWS_AS(parse_variant("none"), ConfigError);

    const ModelConfig v1 = apply_variant(default_config(), Variant::no_er_fe);
    CHECK(v1.xc.J == 0.0);
    CHECK(v1.xc.D_x == 0.0);
    CHECK(v1.xc.D_y == 0.0);
    CHECK(v1.er.J_Er == default_config().er.J_Er);
    const ModelConfig v2 = apply_variant(default_config(), Variant::no_er_er);
    CHECK(v2.er.J_Er == 0.0);
    CHECK(v2.xc.J == default_config().xc.J);
}

TEST_CASE("temperature sweep") {
    const ModelConfig cfg = default_config();
    const auto Ts = make_grid(3.5, 4.5, 0.1);
    const auto warm = temperature_sweep(cfg, Ts, Method::mean_field, {}, true);
    const auto cold = temperature_sweep(cfg, Ts, Method::mean_field, {}, false);
    REQUIRE(warm.size() == Ts.size());
    for (std::size_t i = 0; i < Ts.size(); ++i) {
        CHECK(warm[i].converged);
        CHECK((warm[i].order_parameter > kOrderThreshold) == (cold[i].order_parameter > kOrderThreshold));
        CHECK(warm[i].order_parameter == doctest::Approx(cold[i].order_parameter).epsilon(1e-6));
    }
    CHECK(warm.front().order_parameter > 0.1);
    CHECK(warm.back().order_parameter < kOrderThreshold);

    const auto dk = temperature_sweep(cfg, {2.0, 6.0}, Method::dicke);
    CHECK(dk[0].alpha_i != 0.0);
    CHECK(dk[1].alpha_i == 0.0);
    CHECK_THROWS_AS(temperature_sweep(cfg, {2.0, 1.0}, Method::mean_field), ConfigError);
}

TEST_CASE("phase diagram") {
    const ModelConfig cfg = default_config();
    const auto Bs = make_grid(-1.0, 1.0, 0.5);
    const PhaseGrid a = phase_diagram(cfg, Axis::a, {2.0, 5.0}, Bs, Method::mean_field, 1);
    const PhaseGrid b = phase_diagram(cfg, Axis::a, {2.0, 5.0}, Bs, Method::mean_field, 4);
    REQUIRE(a.order.size() == 2 * Bs.size());
    CHECK(a.order == b.order);
    for (std::size_t j = 0; j < Bs.size(); ++j) {
        CHECK(a.at(0, j) > kOrderThreshold);
        CHECK(a.at(1, j) == 0.0);
    }
    CHECK_THROWS_AS(phase_diagram(cfg, Axis::b, {2.0}, Bs, Method::dicke), DomainError);
}

TEST_CASE("boundary symmetry per variant") {
    ModelConfig cfg = apply_variant(default_config(), Variant::no_er_fe);
    cfg.env.T = 2.0;
    const auto p = critical_field(cfg, +1.0, Method::mean_field);
    const auto m = critical_field(cfg, -1.0, Method::mean_field);
    REQUIRE(p);
    REQUIRE(m);
    CHECK(std::abs(*p + *m) < 0.05);

    cfg = default_config();
    cfg.env.T = 2.0;
    const auto fp = critical_field(cfg, +1.0, Method::mean_field);
    const auto fm = critical_field(cfg, -1.0, Method::mean_field);
    REQUIRE(fp);
    REQUIRE(fm);
    CHECK(std::abs(*fm) > std::abs(*fp) + 0.05);
}

TEST_CASE("mean-field and Dicke boundaries agree within 0.5 T") {
    ModelConfig cfg = default_config();
    for (double T : {1.0, 2.0, 3.0}) {
        cfg.env.T = T;
        for (double sign : {1.0, -1.0}) {
            const auto m = critical_field(cfg, sign, Method::mean_field);
            const auto d = critical_field(cfg, sign, Method::dicke);
            REQUIRE(m);
            REQUIRE(d);
            CHECK(std::abs(*m - *d) < 0.5);
        }
    }
    const auto tc = critical_temperature(default_config(), Method::dicke);
    REQUIRE(tc);
    CHECK(*tc == doctest::Approx(4.0).epsilon(0.025));
}
