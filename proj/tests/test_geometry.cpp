#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "exo/errors.hpp"
#include "exo/geometry.hpp"
#include "support/oracles.hpp"

using namespace exo;
using namespace exo::geo;

TEST_CASE("pouch geometry derived quantities") {
    const PouchGeometry g = reference_pouch();
    CHECK(g.r4_mm == doctest::Approx(37.5605665696873).epsilon(1e-12));
    CHECK(g.r5_mm == doctest::Approx(28.01126998417358).epsilon(1e-12));
    CHECK(g.la_mm == doctest::Approx(99.42816344613912).epsilon(1e-12));
    CHECK(g.taper_rad == doctest::Approx(0.09574849291944074).epsilon(1e-12));
    CHECK_FALSE(g.untapered());
    CHECK(PouchGeometry(100, 100, 180, 7.5).untapered());
}

TEST_CASE("pouch geometry rejects degenerate spans") {
    CHECK_THROWS_AS(PouchGeometry(0, 88, 180, 7.5), domain_error);
    CHECK_THROWS_AS(PouchGeometry(118, 88, 180, -1), domain_error);
    // ld too small: la <= 0
    CHECK_THROWS_AS(PouchGeometry(118, 88, 80, 7.5), domain_error);
}

TEST_CASE("width_at is piecewise linear through the table values") {
    const SpindleProfile ucaa = ucaa_preset();
    const SpindleProfile ssaa = ssaa_preset();
    for (double x : {0.0, 50.0, 162.0, 200.0, 354.0})
        CHECK(width_at(ucaa, x) == doctest::Approx(90.0));
    CHECK(width_at(ssaa, 0.0) == doctest::Approx(52.0));
    CHECK(width_at(ssaa, 162.0) == doctest::Approx(90.0));
    CHECK(width_at(ssaa, 354.0) == doctest::Approx(56.5));
    // midpoint of the 52 -> 90 ramp, independent interpolation
    CHECK(width_at(ssaa, 81.0) == doctest::Approx((52.0 + 90.0) / 2.0));
    CHECK_THROWS_AS(width_at(ssaa, -0.1), domain_error);
    CHECK_THROWS_AS(width_at(ssaa, 354.1), domain_error);
}

TEST_CASE("width_at continuity and maximum") {
    for (std::uint64_t trial = 0; trial < 50; ++trial) {
        SpindleProfile p = ssaa_preset();
        p.w2_mm = test::rand_uniform(11, trial * 4 + 0, 60, 120);
        p.w1_mm = test::rand_uniform(11, trial * 4 + 1, 20, p.w2_mm);
        p.w3_mm = test::rand_uniform(11, trial * 4 + 2, 20, p.w2_mm);
        const double L = p.length_mm();
        double prev = width_at(p, 0);
        double maxw = prev;
        const int n = 2000;
        for (int i = 1; i <= n; ++i) {
            const double w = width_at(p, L * i / n);
            CHECK(std::abs(w - prev) <= 1.01 * (p.w2_mm * L / n)); // Lipschitz bound
            maxw = std::max(maxw, w);
            prev = w;
        }
        // the maximum sits at a node of the piecewise-linear profile
        maxw = std::max(maxw, width_at(p, p.lu_mm));
        CHECK(maxw == doctest::Approx(std::max({p.w1_mm, p.w2_mm, p.w3_mm})));
        // continuity at the fold
        CHECK(width_at(p, p.lu_mm) == doctest::Approx(p.w2_mm));
    }
}

TEST_CASE("calibrated volumes reproduce the published UCAA/SSAA pair") {
    const VolumeModelConfig cfg = default_volume_config();
    CHECK(cfg.fill_factor == doctest::Approx(0.8756228111700364).epsilon(1e-12));
    const double v_ucaa = inflated_volume_ml(ucaa_preset(), cfg);
    const double v_ssaa = inflated_volume_ml(ssaa_preset(), cfg);
    CHECK(v_ucaa == doctest::Approx(555.0).epsilon(1e-12));
    CHECK(v_ssaa == doctest::Approx(333.6131826741996).epsilon(1e-9));
    CHECK(std::abs(v_ssaa - 357.0) / 357.0 < 0.10);
    const double reduction = volume_reduction_percent(v_ucaa, v_ssaa);
    CHECK(std::abs(reduction - 35.7) < 5.0);
}

TEST_CASE("volume vanishes with the profile") {
    SpindleProfile p = ucaa_preset();
    p.lu_mm = 1e-6;
    p.lp_mm = 1e-6;
    const VolumeModelConfig cfg = default_volume_config();
    CHECK(inflated_volume_ml(p, cfg) < 1e-5);
    p.lu_mm = 5e-7;
    p.lp_mm = 5e-7;
    CHECK(inflated_volume_ml(p, cfg) < 5e-6); // linear in total length
}

TEST_CASE("volume ratio is independent of the fill factor") {
    double ratio_ref = 0;
    for (double k : {0.5, 0.8, 1.0}) {
        VolumeModelConfig cfg;
        cfg.fill_factor = k;
        const double r = inflated_volume_ml(ssaa_preset(), cfg) /
                         inflated_volume_ml(ucaa_preset(), cfg);
        if (ratio_ref == 0)
            ratio_ref = r;
        CHECK(r == doctest::Approx(ratio_ref).epsilon(1e-14));
    }
}

TEST_CASE("volume is monotone in each width") {
    const VolumeModelConfig cfg = default_volume_config();
    for (std::uint64_t trial = 0; trial < 40; ++trial) {
        SpindleProfile p = ssaa_preset();
        p.w2_mm = test::rand_uniform(13, trial * 4, 60, 120);
        p.w1_mm = test::rand_uniform(13, trial * 4 + 1, 20, p.w2_mm);
        p.w3_mm = test::rand_uniform(13, trial * 4 + 2, 20, p.w2_mm);
        const double base = inflated_volume_ml(p, cfg);
        for (double* w : {&p.w1_mm, &p.w3_mm}) {
            SpindleProfile q = p;
            double* qw = w == &p.w1_mm ? &q.w1_mm : &q.w3_mm;
            *qw += 1.0;
            if (*qw <= q.w2_mm)
                CHECK(inflated_volume_ml(q, cfg) >= base);
        }
        SpindleProfile q = p;
        q.w2_mm += 1.0;
        CHECK(inflated_volume_ml(q, cfg) >= base);
    }
}

TEST_CASE("numeric integration agrees with the frustum closed form") {
    for (const SpindleProfile& p : {ucaa_preset(), ssaa_preset()}) {
        VolumeModelConfig cfg = default_volume_config();
        cfg.integration_step_mm = 1.0;
        const double exact = inflated_volume_ml(p, cfg);
        const double numeric = inflated_volume_numeric_ml(p, cfg);
        CHECK(std::abs(numeric - exact) / exact < 1e-3);
        cfg.integration_step_mm = 0.1;
        CHECK(std::abs(inflated_volume_numeric_ml(p, cfg) - exact) / exact < 1e-5);
    }
}

TEST_CASE("degenerate geometry is rejected") {
    SpindleProfile p = ssaa_preset();
    p.w1_mm = 14.0; // < 2 * seal1
    const VolumeModelConfig cfg = default_volume_config();
    CHECK_THROWS_AS(inflated_volume_ml(p, cfg), domain_error);
    VolumeModelConfig bad;
    bad.fill_factor = 1.5;
    CHECK_THROWS_AS(inflated_volume_ml(ucaa_preset(), bad), domain_error);
}

TEST_CASE("volume_reduction formula") {
    CHECK(volume_reduction_percent(555.0, 357.0) == doctest::Approx(35.7).epsilon(2e-3));
    CHECK(volume_reduction_percent(123.4, 123.4) == doctest::Approx(0.0));
    CHECK(volume_reduction_percent(100.0, 64.3) == doctest::Approx(35.7));
    CHECK_THROWS_AS(volume_reduction_percent(0.0, 1.0), domain_error);
}
