#include "support/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "exo/parallel.hpp"

namespace exo::test {

namespace {

// Recursively walk every sign assignment, counting those whose |W+ - mu|
// is at least the observed distance.
void walk(const std::vector<double>& ranks, std::size_t i, double w_plus, double mu,
          double obs_dist, std::uint64_t& extreme) {
    if (i == ranks.size()) {
        if (std::abs(w_plus - mu) >= obs_dist)
            ++extreme;
        return;
    }
    walk(ranks, i + 1, w_plus + ranks[i], mu, obs_dist, extreme); // positive sign
    walk(ranks, i + 1, w_plus, mu, obs_dist, extreme);            // negative sign
}

} // namespace

double brute_force_wilcoxon_p(std::span<const std::pair<double, double>> paired) {
    std::vector<double> diffs;
    for (const auto& [a, b] : paired)
        if (a - b != 0.0)
            diffs.push_back(a - b);
    if (diffs.empty())
        return 1.0;

    // Mid-ranks of |d|, recomputed independently via a sorted copy.
    std::vector<double> mags(diffs.size());
    std::transform(diffs.begin(), diffs.end(), mags.begin(),
                   [](double d) { return std::abs(d); });
    std::vector<double> sorted = mags;
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> ranks(diffs.size());
    for (std::size_t i = 0; i < mags.size(); ++i) {
        const auto lo = std::lower_bound(sorted.begin(), sorted.end(), mags[i]);
        const auto hi = std::upper_bound(sorted.begin(), sorted.end(), mags[i]);
        const double first = static_cast<double>(lo - sorted.begin()) + 1.0;
        const double last = static_cast<double>(hi - sorted.begin());
        ranks[i] = (first + last) / 2.0;
    }

    double w_plus = 0;
    double total = 0;
    for (std::size_t i = 0; i < diffs.size(); ++i) {
        total += ranks[i];
        if (diffs[i] > 0)
            w_plus += ranks[i];
    }
    const double mu = total / 2.0;
    const double obs_dist = std::abs(w_plus - mu);
    std::uint64_t extreme = 0;
    walk(ranks, 0, 0.0, mu, obs_dist, extreme);
    return static_cast<double>(extreme) / std::ldexp(1.0, static_cast<int>(diffs.size()));
}

double first_order_magnitude_db(double f_hz, double tau_s) {
    const double w = 2.0 * 3.14159265358979323846 * f_hz * tau_s;
    return -10.0 * std::log10(1.0 + w * w);
}

LinearFit linear_fit(std::span<const double> x, std::span<const double> y) {
    const double n = static_cast<double>(x.size());
    const double sx = std::accumulate(x.begin(), x.end(), 0.0);
    const double sy = std::accumulate(y.begin(), y.end(), 0.0);
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
        syy += y[i] * y[i];
    }
    LinearFit f;
    const double denom = n * sxx - sx * sx;
    f.slope = (n * sxy - sx * sy) / denom;
    f.intercept = (sy - f.slope * sx) / n;
    double ss_res = 0;
    const double mean_y = sy / n;
    double ss_tot = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double pred = f.slope * x[i] + f.intercept;
        ss_res += (y[i] - pred) * (y[i] - pred);
        ss_tot += (y[i] - mean_y) * (y[i] - mean_y);
    }
    f.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
    return f;
}

double linear_fit_r2(std::span<const double> x, std::span<const double> y) {
    return linear_fit(x, y).r2;
}

double bilinear_oracle(const std::vector<double>& xs, const std::vector<double>& ys,
                       const std::vector<std::vector<double>>& z, double x, double y) {
    std::size_t i = 0;
    while (i + 2 < xs.size() && xs[i + 1] <= x)
        ++i;
    std::size_t j = 0;
    while (j + 2 < ys.size() && ys[j + 1] <= y)
        ++j;
    const double tx = (x - xs[i]) / (xs[i + 1] - xs[i]);
    const double ty = (y - ys[j]) / (ys[j + 1] - ys[j]);
    return z[i][j] * (1 - tx) * (1 - ty) + z[i + 1][j] * tx * (1 - ty) +
           z[i][j + 1] * (1 - tx) * ty + z[i + 1][j + 1] * tx * ty;
}

double rand_uniform(std::uint64_t seed, std::uint64_t counter, double lo, double hi) {
    return lo + (hi - lo) * exo::uniform01(seed, counter);
}

} // namespace exo::test
