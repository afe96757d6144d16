#include "exo/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "exo/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace exo::stats {

void StatResult::derive_flags(double alpha_corrected) {
    significant_raw = !undefined_test && p_value < kAlphaRaw;
    significant_corrected = !undefined_test && p_value < alpha_corrected;
}

// ------------------------------------------------------------------
// Tail probabilities
// ------------------------------------------------------------------

double normal_upper_tail(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

namespace {

// Regularized incomplete gamma, series expansion (x < a + 1).
double gamma_p_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    for (int n = 1; n < 500; ++n) {
        term *= x / (a + n);
        sum += term;
        if (std::abs(term) < std::abs(sum) * 1e-16)
            break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Regularized upper incomplete gamma, Lentz continued fraction (x >= a + 1).
double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 500; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny)
            d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny)
            c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16)
            break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

} // namespace

double chi_squared_upper_tail(double x, int df) {
    if (df < 1)
        throw domain_error("chi_squared_upper_tail: df must be >= 1");
    if (x <= 0)
        return 1.0;
    const double a = df / 2.0;
    const double half = x / 2.0;
    return half < a + 1.0 ? 1.0 - gamma_p_series(a, half) : gamma_q_cf(a, half);
}

// ------------------------------------------------------------------
// Wilcoxon signed-rank
// ------------------------------------------------------------------

namespace {

// Ranks in doubled units (mid-ranks of tied magnitudes are half-integers,
// so 2*rank is always an integer and every sum below is exact).
std::vector<long long> doubled_ranks(const std::vector<double>& abs_diffs) {
    const std::size_t n = abs_diffs.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return abs_diffs[a] < abs_diffs[b]; });
    std::vector<long long> r2(n, 0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && abs_diffs[order[j + 1]] == abs_diffs[order[i]])
            ++j;
        // Tied block spans sorted positions [i, j]; mid-rank doubled:
        // 2 * (i+1 + j+1) / 2 = i + j + 2.
        const long long mid2 = static_cast<long long>(i + j + 2);
        for (std::size_t k = i; k <= j; ++k)
            r2[order[k]] = mid2;
        i = j + 1;
    }
    return r2;
}

// Number of sign assignments at least as extreme (in |W+ - mu|) as the
// observed one. All quantities are integers scaled by 4 to keep the
// comparison exact: 4*|W2+ - S2/2| = |4*W2+ - 2*S2|.
std::uint64_t count_extreme(const std::vector<long long>& r2, long long w2_obs, Exec exec) {
    const int n = static_cast<int>(r2.size());
    const long long s2 = std::accumulate(r2.begin(), r2.end(), 0LL);
    const long long obs_dist = std::llabs(4 * w2_obs - 2 * s2);
    const std::uint64_t total = 1ULL << n;
    std::uint64_t count = 0;

    auto count_range = [&](std::uint64_t lo, std::uint64_t hi) {
        std::uint64_t local = 0;
        for (std::uint64_t mask = lo; mask < hi; ++mask) {
            long long w2 = 0;
            std::uint64_t m = mask;
            while (m) {
                const int bit = __builtin_ctzll(m);
                w2 += r2[static_cast<std::size_t>(bit)];
                m &= m - 1;
            }
            if (std::llabs(4 * w2 - 2 * s2) >= obs_dist)
                ++local;
        }
        return local;
    };

    if (exec == Exec::Parallel && n > 14) {
#ifdef _OPENMP
        const int chunks = std::max(1, omp_get_max_threads() * 4);
#else
        const int chunks = 1;
#endif
        std::vector<std::uint64_t> partial(static_cast<std::size_t>(chunks), 0);
#pragma omp parallel for schedule(static)
        for (int k = 0; k < chunks; ++k) {
            const std::uint64_t lo = total * static_cast<std::uint64_t>(k) / chunks;
            const std::uint64_t hi = total * (static_cast<std::uint64_t>(k) + 1) / chunks;
            partial[static_cast<std::size_t>(k)] = count_range(lo, hi);
        }
        for (std::uint64_t p : partial)
            count += p;
    } else {
        count = count_range(0, total);
    }
    return count;
}

} // namespace

StatResult wilcoxon_signed_rank(std::span<const std::pair<double, double>> paired, Exec exec) {
    if (paired.empty())
        throw domain_error("wilcoxon_signed_rank: need at least one pair");
    std::vector<double> abs_diffs;
    std::vector<bool> positive;
    for (const auto& [a, b] : paired) {
        const double d = a - b;
        if (d == 0.0)
            continue; // zero differences are dropped
        abs_diffs.push_back(std::abs(d));
        positive.push_back(d > 0);
    }

    StatResult r;
    r.n_effective = static_cast<int>(abs_diffs.size());
    if (abs_diffs.empty()) {
        r.undefined_test = true;
        r.p_value = 1.0;
        r.statistic = 0.0;
        r.derive_flags();
        return r;
    }

    const std::vector<long long> r2 = doubled_ranks(abs_diffs);
    long long w2_plus = 0;
    long long s2 = 0;
    for (std::size_t i = 0; i < r2.size(); ++i) {
        s2 += r2[i];
        if (positive[i])
            w2_plus += r2[i];
    }
    r.statistic = static_cast<double>(2 * w2_plus - s2) / 2.0; // W+ - W-

    const int n = r.n_effective;
    if (n <= kWilcoxonExactLimit) {
        const std::uint64_t extreme = count_extreme(r2, w2_plus, exec);
        r.p_value = static_cast<double>(extreme) / std::ldexp(1.0, n);
        r.exact = true;
    } else {
        // Normal approximation with tie-exact variance and continuity
        // correction.
        const double w_plus = static_cast<double>(w2_plus) / 2.0;
        const double mu = static_cast<double>(s2) / 4.0;
        double sum_sq = 0.0;
        for (long long v : r2) {
            const double rank = static_cast<double>(v) / 2.0;
            sum_sq += rank * rank;
        }
        const double sigma = std::sqrt(sum_sq / 4.0);
        const double dist = std::abs(w_plus - mu);
        const double z = std::max(0.0, dist - 0.5) / sigma;
        r.p_value = std::min(1.0, 2.0 * normal_upper_tail(z));
        r.exact = false;
    }
    r.derive_flags();
    return r;
}

// ------------------------------------------------------------------
// Friedman
// ------------------------------------------------------------------

namespace {

std::vector<double> row_mid_ranks(const std::vector<double>& row) {
    const std::size_t k = row.size();
    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return row[a] < row[b]; });
    std::vector<double> ranks(k, 0.0);
    std::size_t i = 0;
    while (i < k) {
        std::size_t j = i;
        while (j + 1 < k && row[order[j + 1]] == row[order[i]])
            ++j;
        const double mid = static_cast<double>(i + j + 2) / 2.0;
        for (std::size_t t = i; t <= j; ++t)
            ranks[order[t]] = mid;
        i = j + 1;
    }
    return ranks;
}

} // namespace

StatResult friedman(const std::vector<std::vector<double>>& matrix) {
    const std::size_t n = matrix.size();
    if (n < 2)
        throw domain_error("friedman: need at least 2 subjects");
    const std::size_t k = matrix.front().size();
    if (k < 3)
        throw domain_error("friedman: need at least 3 conditions");
    for (const auto& row : matrix)
        if (row.size() != k)
            throw domain_error("friedman: ragged matrix");

    std::vector<double> col_rank_sums(k, 0.0);
    for (const auto& row : matrix) {
        const std::vector<double> ranks = row_mid_ranks(row);
        for (std::size_t j = 0; j < k; ++j)
            col_rank_sums[j] += ranks[j];
    }
    double sum_sq = 0.0;
    for (double s : col_rank_sums)
        sum_sq += s * s;
    const double nn = static_cast<double>(n);
    const double kk = static_cast<double>(k);
    double stat = 12.0 / (nn * kk * (kk + 1.0)) * sum_sq - 3.0 * nn * (kk + 1.0);
    if (stat < 0 && stat > -1e-9)
        stat = 0.0; // all-tied rounding

    StatResult r;
    r.statistic = stat;
    r.n_effective = static_cast<int>(n);
    r.p_value = chi_squared_upper_tail(stat, static_cast<int>(k) - 1);
    r.exact = false;
    r.derive_flags();
    return r;
}

// ------------------------------------------------------------------
// Corrections, effect size, reduction
// ------------------------------------------------------------------

const char* to_string(BonferroniFlag f) {
    switch (f) {
    case BonferroniFlag::Significant: return "significant";
    case BonferroniFlag::Trend: return "trend";
    default: return "not_significant";
    }
}

std::vector<BonferroniFlag> bonferroni(std::span<const double> p_values, int m) {
    if (m < 1)
        throw domain_error("bonferroni: m must be >= 1");
    const double corrected = kAlphaRaw / static_cast<double>(m);
    std::vector<BonferroniFlag> flags;
    flags.reserve(p_values.size());
    for (double p : p_values) {
        if (p < corrected)
            flags.push_back(BonferroniFlag::Significant);
        else if (p < kAlphaRaw)
            flags.push_back(BonferroniFlag::Trend);
        else
            flags.push_back(BonferroniFlag::NotSignificant);
    }
    return flags;
}

std::optional<double> effect_size_d(std::span<const std::pair<double, double>> paired) {
    if (paired.size() < 2)
        throw domain_error("effect_size_d: need at least 2 pairs");
    const auto n = static_cast<double>(paired.size());
    double mean = 0.0;
    for (const auto& [a, b] : paired)
        mean += a - b;
    mean /= n;
    double ss = 0.0;
    for (const auto& [a, b] : paired) {
        const double d = (a - b) - mean;
        ss += d * d;
    }
    const double sd = std::sqrt(ss / (n - 1.0));
    if (sd == 0.0)
        return std::nullopt;
    return mean / sd;
}

double reduction_percent(double baseline, double condition) {
    if (!(baseline > 0))
        throw domain_error("reduction: baseline must be > 0");
    return 100.0 * (baseline - condition) / baseline;
}

std::string format_p(double p) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", p);
    return buf;
}

double median(std::vector<double> values) {
    if (values.empty())
        throw domain_error("median: empty list");
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

} // namespace exo::stats
