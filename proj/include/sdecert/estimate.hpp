#ifndef SDECERT_ESTIMATE_HPP
#define SDECERT_ESTIMATE_HPP

#include "sdecert/noise_sim.hpp"

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace sdecert {

inline constexpr double kDefaultZ = 1.96;  // 95% score interval

/// Wilson score interval for s successes in n trials.
std::pair<double, double> wilson_interval(long successes, long trials, double z);

/// Monte Carlo frequency with its Wilson 95% interval. Diverged paths count
/// as failures and are tallied separately; params echoes the quantifier
/// constants the estimate was run with.
struct EstimateReport {
    std::string name;
    long trials = 0;
    long successes = 0;
    double p_hat = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    long diverged = 0;
    std::map<std::string, double> params;
};

/// Frequency of sup_t |x(t)| <= c over the grid, for paths started within
/// |x0| <= alpha (checked).
EstimateReport estimate_boundedness(const PathEnsemble& ensemble, double alpha,
                                    double c);

/// Frequency of |x(t)| < k at every grid point. r and the caller's delta
/// discipline are echoed; 1 - p_hat estimates the epsilon of the ball-
/// stability definition.
EstimateReport estimate_ball_stability(const PathEnsemble& ensemble, double k,
                                       double r);

/// Frequency of |x(t)| < k at every grid point with t >= t0 + T, for paths
/// started within |x0| < c (checked). T must lie inside the grid horizon.
EstimateReport estimate_attractivity(const PathEnsemble& ensemble, double k,
                                     double T, double c);

/// Exploratory: frequency of min_t |x(t)| <= tol. No stability claim is
/// attached to this count (see README).
EstimateReport zero_crossing_fraction(const PathEnsemble& ensemble, double tol);

/// Per-path exponential-decay statistics toward the ball of radius r.
struct ExponentReport {
    long trials = 0;
    long diverged = 0;
    long excluded_short_window = 0;  // pre-entry window < 10 grid points
    long fitted = 0;
    long entered = 0;
    double entered_fraction = 0.0;   // entered / (trials - diverged)
    double eps_floor = 0.0;
    double r = 0.0;
    std::vector<double> slopes;          // per fitted path, trial order
    std::optional<double> median_slope;  // absent when no path was fitted
    std::optional<double> p90_slope;
    std::optional<double> mean_entry_time;  // absent when no path entered
};

/// For each path: first entry time into {|x| <= r + eps_floor}, and the
/// least-squares slope of ln(|x(t)| - r) over the pre-entry window (the
/// whole path when it never enters). Windows shorter than 10 points are
/// excluded and counted. Requires |x0| > r.
ExponentReport estimate_exponent(const PathEnsemble& ensemble, double r,
                                 double eps_floor);

/// Simulates sup_{t <= T} [ int g dW - (alpha/2) int |g|^2 ds ] on a grid of
/// step dt and estimates the frequency of exceeding beta. The report carries
/// the bound exp(-alpha beta) in params["bound"], the lower proxy
/// p_hat - (hi - p_hat) in params["lower_proxy"], and params["bound_ok"]
/// (1.0 when the proxy respects the bound).
EstimateReport check_martingale_inequality(
    const std::function<Eigen::VectorXd(double)>& g_fn, double alpha, double beta,
    double T, long trials, std::uint64_t seed, double dt, int threads = 1);

/// 90th-percentile by nearest rank of an unsorted copy.
double percentile_nearest_rank(std::vector<double> values, double q);

} // namespace sdecert

#endif
