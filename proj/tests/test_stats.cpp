#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "exo/errors.hpp"
#include "exo/stats.hpp"
#include "support/oracles.hpp"

using namespace exo;
using namespace exo::stats;

namespace {

std::vector<std::pair<double, double>> pairs_from_diffs(const std::vector<double>& diffs) {
    std::vector<std::pair<double, double>> out;
    for (double d : diffs)
        out.emplace_back(d, 0.0);
    return out;
}

} // namespace

TEST_CASE("uniform-sign n = 10 hits the exact two-tailed floor") {
    std::vector<std::pair<double, double>> paired;
    for (int i = 1; i <= 10; ++i)
        paired.emplace_back(10.0 + i, 10.0 - 0.3 * i); // all positive, no ties
    const StatResult r = wilcoxon_signed_rank(paired);
    CHECK(r.exact);
    CHECK(r.n_effective == 10);
    CHECK(r.p_value == 2.0 / 1024.0); // exact dyadic value
    CHECK(format_p(r.p_value) == "0.002");
    CHECK(r.statistic == doctest::Approx(55.0));
    CHECK(r.significant_raw);
    CHECK(r.significant_corrected);
}

TEST_CASE("minimum achievable two-tailed p is 2^(1-n)") {
    for (int n : {5, 8, 12}) {
        std::vector<std::pair<double, double>> paired;
        for (int i = 1; i <= n; ++i)
            paired.emplace_back(static_cast<double>(i), 0.0);
        const StatResult r = wilcoxon_signed_rank(paired);
        CHECK(r.p_value == std::ldexp(1.0, 1 - n));
    }
}

TEST_CASE("all-zero differences flag an undefined test") {
    std::vector<std::pair<double, double>> paired = {{1, 1}, {2, 2}, {3, 3}};
    const StatResult r = wilcoxon_signed_rank(paired);
    CHECK(r.undefined_test);
    CHECK(r.n_effective == 0);
    CHECK_FALSE(r.significant_raw);
    CHECK(std::isfinite(r.p_value));
}

TEST_CASE("swapping pair order flips the statistic and keeps p") {
    std::vector<std::pair<double, double>> ab = {{3, 1}, {5, 2}, {2, 4}, {9, 3}, {1, 1.5}};
    std::vector<std::pair<double, double>> ba;
    for (auto [a, b] : ab)
        ba.emplace_back(b, a);
    const StatResult r1 = wilcoxon_signed_rank(ab);
    const StatResult r2 = wilcoxon_signed_rank(ba);
    CHECK(r1.p_value == r2.p_value);
    CHECK(r1.statistic == doctest::Approx(-r2.statistic));
}

TEST_CASE("exact enumeration matches the recursive brute-force oracle bit-exactly") {
    int checked = 0;
    for (std::uint64_t trial = 0; trial < 500; ++trial) {
        const int n = 1 + static_cast<int>(test::rand_uniform(71, trial * 40, 0, 12));
        std::vector<std::pair<double, double>> paired;
        for (int i = 0; i < n; ++i) {
            // quantized values produce zeros and ties regularly
            const double a = std::round(test::rand_uniform(71, trial * 40 + 2 * i + 1, 0, 8));
            const double b = std::round(test::rand_uniform(71, trial * 40 + 2 * i + 2, 0, 8));
            paired.emplace_back(a, b);
        }
        const StatResult r = wilcoxon_signed_rank(paired);
        const double oracle = test::brute_force_wilcoxon_p(paired);
        if (r.undefined_test) {
            CHECK(oracle == 1.0);
        } else {
            CHECK(r.p_value == oracle); // bit-exact
            ++checked;
        }
    }
    CHECK(checked > 400);
}

TEST_CASE("serial and parallel enumeration agree bit-exactly") {
    std::vector<std::pair<double, double>> paired;
    for (int i = 0; i < 18; ++i)
        paired.emplace_back(test::rand_uniform(81, 2 * i, 0, 10),
                            test::rand_uniform(81, 2 * i + 1, 0, 10));
    const StatResult s = wilcoxon_signed_rank(paired, Exec::Serial);
    const StatResult p = wilcoxon_signed_rank(paired, Exec::Parallel);
    CHECK(s.p_value == p.p_value);
    CHECK(s.statistic == p.statistic);
}

TEST_CASE("large samples fall back to the normal approximation") {
    std::vector<std::pair<double, double>> paired;
    for (int i = 0; i < 40; ++i)
        paired.emplace_back(test::rand_uniform(91, 2 * i, 0, 10) + 0.8,
                            test::rand_uniform(91, 2 * i + 1, 0, 10));
    const StatResult r = wilcoxon_signed_rank(paired);
    CHECK_FALSE(r.exact);
    CHECK(r.p_value > 0.0);
    CHECK(r.p_value <= 1.0);
}

TEST_CASE("friedman statistic on the degenerate and ordered extremes") {
    SUBCASE("all-equal matrix") {
        const std::vector<std::vector<double>> m(6, std::vector<double>{2.0, 2.0, 2.0});
        const StatResult r = friedman(m);
        CHECK(r.statistic == doctest::Approx(0.0));
        CHECK(r.p_value == doctest::Approx(1.0));
    }
    SUBCASE("perfectly ordered columns, n = 10, k = 3") {
        std::vector<std::vector<double>> m;
        for (int i = 0; i < 10; ++i)
            m.push_back({1.0 + i, 5.0 + i, 9.0 + i});
        const StatResult r = friedman(m);
        CHECK(r.statistic == doctest::Approx(20.0).epsilon(1e-12));
        CHECK(r.p_value < 1e-4);
        // df = 2 upper tail has the closed form exp(-x/2)
        CHECK(r.p_value == doctest::Approx(std::exp(-10.0)).epsilon(1e-9));
    }
}

TEST_CASE("friedman p is invariant under condition relabeling") {
    std::vector<std::vector<double>> m = {
        {3.1, 1.2, 2.0}, {4.0, 2.5, 2.6}, {2.2, 2.0, 1.0}, {5.5, 3.3, 4.4}, {1.9, 0.4, 1.1}};
    std::vector<std::vector<double>> permuted;
    for (const auto& row : m)
        permuted.push_back({row[2], row[0], row[1]});
    CHECK(friedman(m).p_value == doctest::Approx(friedman(permuted).p_value).epsilon(1e-14));
    CHECK(friedman(m).statistic ==
          doctest::Approx(friedman(permuted).statistic).epsilon(1e-12));
}

TEST_CASE("friedman p is invariant under per-subject monotone transforms") {
    std::vector<std::vector<double>> m = {
        {3.1, 1.2, 2.0}, {4.0, 2.5, 2.6}, {2.2, 2.0, 1.0}, {5.5, 3.3, 4.4}};
    std::vector<std::vector<double>> warped;
    for (std::size_t i = 0; i < m.size(); ++i) {
        std::vector<double> row;
        for (double v : m[i])
            row.push_back(std::exp(v) * (1.0 + static_cast<double>(i))); // rank-preserving
        warped.push_back(row);
    }
    CHECK(friedman(m).p_value == doctest::Approx(friedman(warped).p_value).epsilon(1e-14));
}

TEST_CASE("friedman input validation") {
    CHECK_THROWS_AS(friedman({{1, 2, 3}}), domain_error);
    CHECK_THROWS_AS(friedman({{1, 2}, {3, 4}}), domain_error);
    CHECK_THROWS_AS(friedman({{1, 2, 3}, {1, 2}}), domain_error);
}

TEST_CASE("chi-square upper tail sanity") {
    CHECK(chi_squared_upper_tail(0.0, 2) == doctest::Approx(1.0));
    CHECK(chi_squared_upper_tail(20.0, 2) == doctest::Approx(std::exp(-10.0)).epsilon(1e-10));
    CHECK(chi_squared_upper_tail(3.841458820694124, 1) == doctest::Approx(0.05).epsilon(1e-6));
    CHECK_THROWS_AS(chi_squared_upper_tail(1.0, 0), domain_error);
}

TEST_CASE("bonferroni flags at m = 3") {
    const std::vector<double> ps = {0.002, 0.03, 0.06, 0.0166, 0.0167};
    const auto flags = bonferroni(ps, 3);
    CHECK(flags[0] == BonferroniFlag::Significant);
    CHECK(flags[1] == BonferroniFlag::Trend);
    CHECK(flags[2] == BonferroniFlag::NotSignificant);
    CHECK(flags[3] == BonferroniFlag::Significant);      // 0.0166 < 0.05/3
    CHECK(flags[4] == BonferroniFlag::Trend);            // 0.0167 > 0.05/3
    CHECK_THROWS_AS(bonferroni(ps, 0), domain_error);
}

TEST_CASE("paired effect size") {
    SUBCASE("constant differences have no defined d") {
        const auto paired = pairs_from_diffs({2, 2, 2, 2});
        CHECK_FALSE(effect_size_d(paired).has_value());
    }
    SUBCASE("zero-mean differences give d = 0") {
        const auto paired = pairs_from_diffs({1, -1, 1, -1});
        CHECK(*effect_size_d(paired) == doctest::Approx(0.0));
    }
    SUBCASE("hand-computed case {2,3,4,3,3}") {
        const auto paired = pairs_from_diffs({2, 3, 4, 3, 3});
        CHECK(*effect_size_d(paired) == doctest::Approx(4.242640687119285).epsilon(1e-12));
    }
    SUBCASE("positive when the first condition exceeds the second") {
        const std::vector<std::pair<double, double>> paired = {{5, 1}, {6, 2}, {7, 2.5}};
        CHECK(*effect_size_d(paired) > 0.0);
    }
    CHECK_THROWS_AS(effect_size_d(pairs_from_diffs({1})), domain_error);
}

TEST_CASE("reduction metric formula") {
    CHECK(reduction_percent(10, 4) == doctest::Approx(60.0));
    CHECK(reduction_percent(100, 41) == doctest::Approx(59.0));
    CHECK(reduction_percent(7.7, 7.7) == doctest::Approx(0.0));
    CHECK(reduction_percent(10, 11.41) == doctest::Approx(-14.1).epsilon(1e-12));
    // literal asymmetric formula, not a symmetrized variant
    for (std::uint64_t trial = 0; trial < 100; ++trial) {
        const double a = test::rand_uniform(61, 2 * trial, 0.1, 50);
        const double b = test::rand_uniform(61, 2 * trial + 1, 0.0, 50);
        CHECK(reduction_percent(a, b) == doctest::Approx(100.0 * (1.0 - b / a)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(reduction_percent(0.0, 5.0), domain_error);
    CHECK_THROWS_AS(reduction_percent(-2.0, 5.0), domain_error);
}

TEST_CASE("p formatting for reports") {
    CHECK(format_p(0.001953125) == "0.002");
    CHECK(format_p(0.0371) == "0.037");
    CHECK(format_p(1.0) == "1.000");
}

TEST_CASE("median of odd and even lists") {
    CHECK(median({3.0, 1.0, 2.0}) == 2.0);
    CHECK(median({4.0, 1.0, 2.0, 3.0}) == doctest::Approx(2.5));
    CHECK_THROWS_AS(median({}), domain_error);
}
