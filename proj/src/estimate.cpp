#include "sdecert/estimate.hpp"
#include "sdecert/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace sdecert {

std::pair<double, double> wilson_interval(long successes, long trials, double z) {
    if (trials < 1) throw std::invalid_argument("wilson_interval: trials must be >= 1");
    if (successes < 0 || successes > trials)
        throw std::invalid_argument("wilson_interval: successes out of range");
    if (!(z > 0.0)) throw std::invalid_argument("wilson_interval: z must be > 0");
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = p + z2 / (2.0 * n);
    const double rad = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
    double lo = (center - rad) / denom;
    double hi = (center + rad) / denom;
    lo = std::max(0.0, lo);
    hi = std::min(1.0, hi);
    return {lo, hi};
}

namespace {

EstimateReport frequency_report(std::string name, const PathEnsemble& ensemble,
                                const std::function<bool(const Path&)>& success) {
    EstimateReport rep;
    rep.name = std::move(name);
    rep.trials = ensemble.trials;
    for (const auto& path : ensemble.paths) {
        if (path.diverged) {
            ++rep.diverged;
            continue;  // a diverged path is a failure
        }
        if (success(path)) ++rep.successes;
    }
    rep.p_hat = static_cast<double>(rep.successes) / static_cast<double>(rep.trials);
    std::tie(rep.lo, rep.hi) = wilson_interval(rep.successes, rep.trials, kDefaultZ);
    return rep;
}

} // namespace

EstimateReport estimate_boundedness(const PathEnsemble& ensemble, double alpha,
                                    double c) {
    if (ensemble.x0.norm() > alpha)
        throw std::invalid_argument("estimate_boundedness: |x0| exceeds alpha");
    auto rep = frequency_report("boundedness", ensemble, [c](const Path& p) {
        return p.max_norm() <= c;
    });
    rep.params["alpha"] = alpha;
    rep.params["c"] = c;
    return rep;
}

EstimateReport estimate_ball_stability(const PathEnsemble& ensemble, double k,
                                       double r) {
    if (!(k > r)) throw std::invalid_argument("estimate_ball_stability: need k > r");
    auto rep = frequency_report("ball_stability", ensemble, [k](const Path& p) {
        return p.max_norm() < k;
    });
    rep.params["k"] = k;
    rep.params["r"] = r;
    rep.params["delta"] = ensemble.x0.norm();  // caller's |x0| discipline, echoed
    return rep;
}

EstimateReport estimate_attractivity(const PathEnsemble& ensemble, double k, double T,
                                     double c) {
    if (!(ensemble.x0.norm() < c))
        throw std::invalid_argument("estimate_attractivity: |x0| must be < c");
    const TimeGrid& grid = ensemble.grid;
    if (!(T >= 0.0) || T > grid.horizon() - grid.t0)
        throw std::invalid_argument("estimate_attractivity: T outside grid horizon");
    const double cutoff = grid.t0 + T - 1e-12;
    auto rep = frequency_report("attractivity", ensemble, [&](const Path& p) {
        for (Eigen::Index i = 0; i < p.n_states(); ++i) {
            if (p.grid.time(static_cast<int>(i)) < cutoff) continue;
            if (!(p.state(i).norm() < k)) return false;
        }
        return true;
    });
    rep.params["k"] = k;
    rep.params["T"] = T;
    rep.params["c"] = c;
    return rep;
}

EstimateReport zero_crossing_fraction(const PathEnsemble& ensemble, double tol) {
    if (!(tol >= 0.0)) throw std::invalid_argument("zero_crossing_fraction: tol must be >= 0");
    auto rep = frequency_report("zero_crossing", ensemble, [tol](const Path& p) {
        return p.min_norm() <= tol;
    });
    rep.params["tol"] = tol;
    return rep;
}

double percentile_nearest_rank(std::vector<double> values, double q) {
    if (values.empty())
        throw std::invalid_argument("percentile_nearest_rank: empty input");
    if (!(q > 0.0 && q <= 1.0))
        throw std::invalid_argument("percentile_nearest_rank: q must lie in (0,1]");
    std::sort(values.begin(), values.end());
    const auto rank = static_cast<std::size_t>(
        std::ceil(q * static_cast<double>(values.size())));
    return values[std::max<std::size_t>(rank, 1) - 1];
}

namespace {

// Least-squares slope of y against t.
double fit_slope(const std::vector<double>& t, const std::vector<double>& y) {
    const std::size_t n = t.size();
    const double t_mean = std::accumulate(t.begin(), t.end(), 0.0) / n;
    const double y_mean = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dt = t[i] - t_mean;
        num += dt * (y[i] - y_mean);
        den += dt * dt;
    }
    return num / den;
}

} // namespace

ExponentReport estimate_exponent(const PathEnsemble& ensemble, double r,
                                 double eps_floor) {
    if (!(eps_floor > 0.0))
        throw std::invalid_argument("estimate_exponent: eps_floor must be > 0");
    if (!(ensemble.x0.norm() > r))
        throw std::invalid_argument("estimate_exponent: |x0| must exceed r");

    constexpr std::size_t kMinWindow = 10;

    ExponentReport rep;
    rep.trials = ensemble.trials;
    rep.r = r;
    rep.eps_floor = eps_floor;

    double entry_time_sum = 0.0;
    std::vector<double> ts, ys;
    for (const auto& path : ensemble.paths) {
        if (path.diverged) {
            ++rep.diverged;
            continue;
        }
        // first entry into {|x| <= r + eps_floor}
        Eigen::Index entry = path.n_states();
        for (Eigen::Index i = 0; i < path.n_states(); ++i) {
            if (path.state(i).norm() <= r + eps_floor) {
                entry = i;
                break;
            }
        }
        if (entry < path.n_states()) {
            ++rep.entered;
            entry_time_sum += path.grid.time(static_cast<int>(entry));
        }
        const auto window = static_cast<std::size_t>(entry);  // points before entry
        if (window < kMinWindow) {
            ++rep.excluded_short_window;
            continue;
        }
        ts.clear();
        ys.clear();
        ts.reserve(window);
        ys.reserve(window);
        for (std::size_t i = 0; i < window; ++i) {
            ts.push_back(path.grid.time(static_cast<int>(i)));
            ys.push_back(std::log(
                std::max(path.state(static_cast<Eigen::Index>(i)).norm() - r, eps_floor)));
        }
        rep.slopes.push_back(fit_slope(ts, ys));
        ++rep.fitted;
    }

    const long considered = rep.trials - rep.diverged;
    rep.entered_fraction =
        considered > 0 ? static_cast<double>(rep.entered) / considered : 0.0;
    if (rep.entered > 0) rep.mean_entry_time = entry_time_sum / rep.entered;
    if (!rep.slopes.empty()) {
        rep.median_slope = percentile_nearest_rank(rep.slopes, 0.5);
        rep.p90_slope = percentile_nearest_rank(rep.slopes, 0.9);
    }
    return rep;
}

EstimateReport check_martingale_inequality(
    const std::function<Eigen::VectorXd(double)>& g_fn, double alpha, double beta,
    double T, long trials, std::uint64_t seed, double dt, int threads) {
    if (!(alpha > 0.0) || !(beta > 0.0))
        throw std::invalid_argument("check_martingale_inequality: alpha, beta must be > 0");
    if (!(T > 0.0) || !(dt > 0.0) || dt > T)
        throw std::invalid_argument("check_martingale_inequality: need 0 < dt <= T");
    if (trials < 1)
        throw std::invalid_argument("check_martingale_inequality: trials must be >= 1");
    if (threads < 1) threads = 1;

    const int n_steps = static_cast<int>(std::llround(T / dt));
    const int m = static_cast<int>(g_fn(0.0).size());

    // g on the grid, and the deterministic drift part of the statistic
    std::vector<Eigen::VectorXd> g(static_cast<std::size_t>(n_steps));
    std::vector<double> drift(static_cast<std::size_t>(n_steps));
    for (int i = 0; i < n_steps; ++i) {
        g[i] = g_fn(static_cast<double>(i) * dt);
        if (g[i].size() != m)
            throw std::invalid_argument("check_martingale_inequality: g output size varies");
        drift[i] = 0.5 * alpha * g[i].squaredNorm() * dt;
    }

    std::vector<std::uint8_t> hit(static_cast<std::size_t>(trials), 0);
    auto worker = [&](long begin, long end) {
        for (long trial = begin; trial < end; ++trial) {
            NoiseStream stream{seed, trial, m};
            double mart = 0.0, comp = 0.0, sup = 0.0;  // value at t=0 is 0
            for (int i = 0; i < n_steps; ++i) {
                double inc = 0.0;
                for (int k = 0; k < m; ++k) inc += g[i](k) * stream.increment(i, k, dt);
                mart += inc;
                comp += drift[i];
                sup = std::max(sup, mart - comp);
            }
            hit[static_cast<std::size_t>(trial)] = sup > beta ? 1 : 0;
        }
    };

    const int pool = static_cast<int>(std::min<long>(threads, trials));
    if (pool <= 1) {
        worker(0, trials);
    } else {
        std::vector<std::thread> team;
        const long chunk = (trials + pool - 1) / pool;
        for (int w = 0; w < pool; ++w) {
            const long begin = static_cast<long>(w) * chunk;
            const long end = std::min(trials, begin + chunk);
            if (begin >= end) break;
            team.emplace_back(worker, begin, end);
        }
        for (auto& t : team) t.join();
    }

    EstimateReport rep;
    rep.name = "martingale";
    rep.trials = trials;
    rep.successes = std::accumulate(hit.begin(), hit.end(), 0L);
    rep.p_hat = static_cast<double>(rep.successes) / static_cast<double>(trials);
    std::tie(rep.lo, rep.hi) = wilson_interval(rep.successes, trials, kDefaultZ);
    const double bound = std::exp(-alpha * beta);
    const double lower_proxy = rep.p_hat - (rep.hi - rep.p_hat);
    rep.params["alpha"] = alpha;
    rep.params["beta"] = beta;
    rep.params["T"] = T;
    rep.params["dt"] = dt;
    rep.params["bound"] = bound;
    rep.params["lower_proxy"] = lower_proxy;
    rep.params["bound_ok"] = lower_proxy <= bound ? 1.0 : 0.0;
    return rep;
}

} // namespace sdecert
