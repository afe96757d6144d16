#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "exo/parallel.hpp"

namespace exo::stats {

inline constexpr double kAlphaRaw = 0.05;
inline constexpr double kAlphaCorrectedM3 = 0.05 / 3.0;

// Paired-test outcome. Significance flags are always derived from p_value
// at construction; they are never stored independently.
struct StatResult {
    double p_value = 1.0;
    double statistic = 0.0;
    std::optional<double> effect_size_d;
    std::optional<double> reduction_percent;
    int n_effective = 0;
    bool undefined_test = false; // e.g. all-zero differences
    bool exact = false;          // enumeration vs. normal approximation
    bool significant_raw = false;
    bool significant_corrected = false;

    void derive_flags(double alpha_corrected = kAlphaCorrectedM3);
};

// Two-tailed Wilcoxon signed-rank test on paired samples (a, b) with
// differences a - b. Zero differences are dropped, tied magnitudes receive
// mid-ranks, and for n <= 25 the p-value is computed by full enumeration of
// the 2^n sign assignments over the observed ranks (the normal
// approximation with continuity correction is used above that). The
// reported statistic is the signed rank sum W+ - W-.
StatResult wilcoxon_signed_rank(std::span<const std::pair<double, double>> paired,
                                Exec exec = Exec::Parallel);

inline constexpr int kWilcoxonExactLimit = 25;

// Friedman rank test over an n-subjects x k-conditions matrix (mid-ranks
// within subject); chi-square statistic with k-1 degrees of freedom.
StatResult friedman(const std::vector<std::vector<double>>& matrix);

enum class BonferroniFlag { Significant, Trend, NotSignificant };

const char* to_string(BonferroniFlag f);

// significant iff p < 0.05/m; trend for 0.05/m <= p < 0.05.
std::vector<BonferroniFlag> bonferroni(std::span<const double> p_values, int m);

// Paired Cohen's d: mean(differences) / sd(differences), sample sd (n-1).
// Positive when the first element of each pair exceeds the second; empty
// for zero-variance differences.
std::optional<double> effect_size_d(std::span<const std::pair<double, double>> paired);

// 100 * (baseline - condition) / baseline. Negative values are meaningful
// (the condition increased activity). Throws domain_error for
// baseline <= 0.
double reduction_percent(double baseline, double condition);

// Reporting convention: p rounded to three decimals ("0.002").
std::string format_p(double p);

// Upper tail of the chi-square distribution (regularized incomplete gamma).
double chi_squared_upper_tail(double x, int df);

// Standard normal upper tail via erfc.
double normal_upper_tail(double z);

double median(std::vector<double> values);

} // namespace exo::stats
