#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rubyeval {

/// Average ranks (ties get the mean of their rank range).
std::vector<double> average_ranks(const std::vector<double>& values);

/// Spearman rank correlation: Pearson correlation of average-ranked data.
/// Throws std::invalid_argument when either side is constant (rank variance
/// is zero) or the lengths differ or are < 2.
double spearman(const std::vector<double>& x, const std::vector<double>& y);

struct PairedSample {
    std::vector<std::string> ids;
    std::vector<double> a;
    std::vector<double> b;
};

struct TTestResult {
    double t = 0;
    int df = 0;
    double p_two_sided = 1;
    double mean_diff = 0;
    double ci95_half_width = 0;
    bool degenerate = false;  // nonzero constant differences: sd = 0, p -> 0
};

/// mean_diff = mean(a) - mean(b); all-zero differences give t = 0, p = 1.
TTestResult paired_t_test(const PairedSample& s, double confidence = 0.95);

/// Regularized incomplete beta function I_x(a, b) (continued fraction).
double incomplete_beta(double a, double b, double x);

/// Two-sided Student-t p-value for a given |t| and df.
double student_t_p_two_sided(double t, int df);

/// Two-sided critical value: |T| exceeds it with probability 1 - confidence.
double t_critical(int df, double confidence);

/// Standard normal quantile for p in (0, 1).
double normal_quantile(double p);

/// Worst-case (p = 0.5) survey sample size with finite population correction.
int sample_size(long long population, double confidence, double margin);

struct Point {
    double x = 0;
    double y = 0;
};

struct RansacRun {
    int size = 0;            // consensus-set size
    double correlation = 0;  // Spearman on the consensus set
};

struct RansacResult {
    std::vector<int> inlier_indices;  // into the input point list
    double subset_correlation = 0;
    double slope = 0;
    double intercept = 0;
    std::vector<RansacRun> runs;
};

/// Repeatedly samples 2 distinct points, fits a line, and keeps the largest
/// consensus set (ties broken by higher inlier Spearman); the final line is
/// refit by least squares on the inliers. Deterministic given the seed.
/// Throws std::runtime_error when every sampled pair is x-degenerate.
RansacResult ransac_consensus(const std::vector<Point>& points, int iterations, double epsilon,
                              std::uint64_t seed);

/// The consensus procedure run `n_runs` times with seeds seed, seed+1, ...;
/// the returned result is the run with the median correlation and carries
/// the per-run (size, correlation) report.
RansacResult ransac_runs(const std::vector<Point>& points, int n_runs, int iterations,
                         double epsilon, std::uint64_t seed);

}  // namespace rubyeval
