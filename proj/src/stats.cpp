#include "rubyeval/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

namespace rubyeval {

std::vector<double> average_ranks(const std::vector<double>& values) {
    std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return values[i] < values[j]; });
    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
        i = j + 1;
    }
    return ranks;
}

namespace {

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
    std::size_t n = x.size();
    double mx = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
    double my = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double dx = x[i] - mx, dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0)
        throw std::invalid_argument("spearman: constant input, rank variance is zero");
    return sxy / std::sqrt(sxx * syy);
}

}  // namespace

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw std::invalid_argument("spearman: length mismatch");
    if (x.size() < 2) throw std::invalid_argument("spearman: need at least 2 observations");
    return pearson(average_ranks(x), average_ranks(y));
}

// --- Student t machinery -----------------------------------------------------

namespace {

// Lentz continued fraction for the incomplete beta function.
double betacf(double a, double b, double x) {
    constexpr int kMaxIter = 300;
    constexpr double kEps = 3.0e-15;
    constexpr double kFpMin = 1.0e-300;

    double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kFpMin) d = kFpMin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kFpMin) d = kFpMin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) break;
    }
    return h;
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                      a * std::log(x) + b * std::log(1.0 - x);
    double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0)) return front * betacf(a, b, x) / a;
    return 1.0 - front * betacf(b, a, 1.0 - x) / b;
}

double student_t_p_two_sided(double t, int df) {
    if (df < 1) throw std::invalid_argument("student_t_p_two_sided: df must be >= 1");
    double at = std::fabs(t);
    double x = df / (df + at * at);
    return incomplete_beta(df / 2.0, 0.5, x);
}

double t_critical(int df, double confidence) {
    if (df < 1) throw std::invalid_argument("t_critical: df must be >= 1");
    if (confidence <= 0.0 || confidence >= 1.0)
        throw std::invalid_argument("t_critical: confidence must be in (0,1)");
    double alpha = 1.0 - confidence;
    double lo = 0.0, hi = 1.0;
    while (student_t_p_two_sided(hi, df) > alpha) hi *= 2.0;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        if (student_t_p_two_sided(mid, df) > alpha)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double normal_quantile(double p) {
    if (p <= 0.0 || p >= 1.0) throw std::invalid_argument("normal_quantile: p must be in (0,1)");
    auto cdf = [](double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); };
    double lo = -40.0, hi = 40.0;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        if (cdf(mid) < p)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

TTestResult paired_t_test(const PairedSample& s, double confidence) {
    std::size_t n = s.a.size();
    if (n != s.b.size() || (!s.ids.empty() && s.ids.size() != n))
        throw std::invalid_argument("paired_t_test: misaligned sample");
    if (n < 2) throw std::invalid_argument("paired_t_test: need at least 2 pairs");

    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = s.a[i] - s.b[i];
    double mean = std::accumulate(d.begin(), d.end(), 0.0) / static_cast<double>(n);
    double ss = 0;
    for (double v : d) ss += (v - mean) * (v - mean);
    double sd = std::sqrt(ss / static_cast<double>(n - 1));

    TTestResult r;
    r.df = static_cast<int>(n) - 1;
    r.mean_diff = mean;
    if (sd == 0.0) {
        if (mean == 0.0) {
            r.t = 0.0;
            r.p_two_sided = 1.0;
        } else {
            r.t = mean > 0 ? std::numeric_limits<double>::infinity()
                           : -std::numeric_limits<double>::infinity();
            r.p_two_sided = 0.0;
            r.degenerate = true;
        }
        r.ci95_half_width = 0.0;
        return r;
    }
    double se = sd / std::sqrt(static_cast<double>(n));
    r.t = mean / se;
    r.p_two_sided = student_t_p_two_sided(r.t, r.df);
    r.ci95_half_width = t_critical(r.df, confidence) * se;
    return r;
}

int sample_size(long long population, double confidence, double margin) {
    if (population < 1) throw std::invalid_argument("sample_size: population must be >= 1");
    if (margin <= 0.0 || margin >= 1.0)
        throw std::invalid_argument("sample_size: margin must be in (0,1)");
    if (confidence <= 0.0 || confidence >= 1.0)
        throw std::invalid_argument("sample_size: confidence must be in (0,1)");
    double z = normal_quantile(0.5 + confidence / 2.0);
    double n0 = z * z * 0.25 / (margin * margin);
    double n = n0 / (1.0 + (n0 - 1.0) / static_cast<double>(population));
    long long result = static_cast<long long>(std::ceil(n));
    if (result > population) result = population;
    if (result < 1) result = 1;
    return static_cast<int>(result);
}

// --- RANSAC -------------------------------------------------------------------

namespace {

double inlier_spearman(const std::vector<Point>& points, const std::vector<int>& idx) {
    if (idx.size() < 2) return 0.0;
    std::vector<double> xs, ys;
    xs.reserve(idx.size());
    ys.reserve(idx.size());
    for (int i : idx) {
        xs.push_back(points[static_cast<std::size_t>(i)].x);
        ys.push_back(points[static_cast<std::size_t>(i)].y);
    }
    try {
        return spearman(xs, ys);
    } catch (const std::invalid_argument&) {
        return 0.0;  // constant consensus set; no usable rank correlation
    }
}

}  // namespace

RansacResult ransac_consensus(const std::vector<Point>& points, int iterations, double epsilon,
                              std::uint64_t seed) {
    if (points.size() < 2) throw std::invalid_argument("ransac: need at least 2 points");
    if (epsilon <= 0.0) throw std::invalid_argument("ransac: epsilon must be positive");

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, points.size() - 1);

    std::vector<int> best;
    double best_corr = 0.0;
    bool found = false;

    for (int it = 0; it < iterations; ++it) {
        std::size_t i = pick(rng), j = pick(rng);
        if (i == j || points[i].x == points[j].x) continue;  // vertical or degenerate
        double a = (points[j].y - points[i].y) / (points[j].x - points[i].x);
        double b = points[i].y - a * points[i].x;

        std::vector<int> inliers;
        for (std::size_t k = 0; k < points.size(); ++k)
            if (std::fabs(points[k].y - (a * points[k].x + b)) <= epsilon)
                inliers.push_back(static_cast<int>(k));
        if (inliers.size() < 2) continue;

        double corr = 0.0;
        bool corr_known = false;
        if (!found || inliers.size() >= best.size()) {
            corr = inlier_spearman(points, inliers);
            corr_known = true;
        }
        if (!found || inliers.size() > best.size() ||
            (inliers.size() == best.size() && corr_known && corr > best_corr)) {
            best = std::move(inliers);
            best_corr = corr;
            found = true;
        }
    }
    if (!found) throw std::runtime_error("ransac: every sampled line was degenerate");

    // least-squares refit on the consensus set
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int k : best) {
        const Point& p = points[static_cast<std::size_t>(k)];
        sx += p.x;
        sy += p.y;
        sxx += p.x * p.x;
        sxy += p.x * p.y;
    }
    double n = static_cast<double>(best.size());
    double denom = n * sxx - sx * sx;

    RansacResult r;
    r.inlier_indices = best;
    r.subset_correlation = best_corr;
    if (denom != 0.0) {
        r.slope = (n * sxy - sx * sy) / denom;
        r.intercept = (sy - r.slope * sx) / n;
    }
    r.runs.push_back(RansacRun{static_cast<int>(best.size()), best_corr});
    return r;
}

RansacResult ransac_runs(const std::vector<Point>& points, int n_runs, int iterations,
                         double epsilon, std::uint64_t seed) {
    if (n_runs < 1) throw std::invalid_argument("ransac_runs: need at least 1 run");
    std::vector<RansacResult> results;
    std::vector<RansacRun> runs;
    for (int i = 0; i < n_runs; ++i) {
        results.push_back(ransac_consensus(points, iterations, epsilon,
                                           seed + static_cast<std::uint64_t>(i)));
        runs.push_back(results.back().runs.front());
    }
    // run with the median correlation (lower index on ties)
    std::vector<int> order(static_cast<std::size_t>(n_runs));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
        return runs[static_cast<std::size_t>(i)].correlation <
               runs[static_cast<std::size_t>(j)].correlation;
    });
    int median = order[static_cast<std::size_t>((n_runs - 1) / 2)];
    RansacResult out = results[static_cast<std::size_t>(median)];
    out.runs = runs;
    return out;
}

}  // namespace rubyeval
