#include "sdecert/estimate.hpp"
#include "sdecert/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace sdecert;

namespace {

SdeModel contraction_model() {  // dx = -x dt, no noise
    return make_langevin(-1.0, 0.0);
}

PathEnsemble langevin_ensemble(double x0, double dt, int n_steps, long trials,
                               std::uint64_t seed) {
    return simulate_ensemble(make_langevin(-1.0, 1.0),
                             Eigen::VectorXd::Constant(1, x0), TimeGrid{0.0, dt, n_steps},
                             trials, seed, Scheme::euler_maruyama, 2);
}

} // namespace

TEST_CASE("wilson_interval: boundaries and the hand-computed case") {
    auto [lo0, hi0] = wilson_interval(0, 50, kDefaultZ);
    CHECK(lo0 == 0.0);
    CHECK(hi0 > 0.0);
    auto [lon, hin] = wilson_interval(50, 50, kDefaultZ);
    CHECK(hin == 1.0);
    CHECK(lon < 1.0);
    auto [lo, hi] = wilson_interval(95, 100, 1.96);
    CHECK(lo == doctest::Approx(0.888).epsilon(0.0025));
    CHECK(hi == doctest::Approx(0.978).epsilon(0.0025));
    // same p_hat, ten times the trials: the interval shrinks
    auto [lo10, hi10] = wilson_interval(950, 1000, 1.96);
    CHECK(hi10 - lo10 < hi - lo);
    CHECK_THROWS_AS(wilson_interval(5, 0, 1.96), std::invalid_argument);
    CHECK_THROWS_AS(wilson_interval(6, 5, 1.96), std::invalid_argument);
}

TEST_CASE("wilson interval coverage on a known bernoulli stream") {
    // 100 repetitions of n=150 draws at p=0.3; the interval must cover p
    // at least 93 times
    std::mt19937 gen(2024);
    std::bernoulli_distribution coin(0.3);
    int covered = 0;
    for (int rep = 0; rep < 100; ++rep) {
        long s = 0;
        for (int i = 0; i < 150; ++i) s += coin(gen) ? 1 : 0;
        auto [lo, hi] = wilson_interval(s, 150, 1.96);
        if (lo <= 0.3 && 0.3 <= hi) ++covered;
    }
    CHECK(covered >= 93);
}

TEST_CASE("estimate_boundedness: constant paths") {
    const SdeModel still =
        [] {
            SdeModel m;
            m.d = 1;
            m.m = 1;
            m.label = "still";
            m.drift = [](const Eigen::VectorXd&, double) -> Eigen::VectorXd {
                return Eigen::VectorXd::Zero(1);
            };
            m.diffusion = [](const Eigen::VectorXd&, double) -> Eigen::MatrixXd {
                return Eigen::MatrixXd::Zero(1, 1);
            };
            return m;
        }();
    const auto ens = simulate_ensemble(still, Eigen::VectorXd::Constant(1, 2.0),
                                       TimeGrid{0.0, 0.1, 20}, 50, 3,
                                       Scheme::euler_maruyama);
    const auto exact = estimate_boundedness(ens, 2.0, 2.0);
    CHECK(exact.p_hat == 1.0);
    CHECK(exact.successes == 50);
    const auto zero_c = estimate_boundedness(ens, 2.0, 0.0);
    CHECK(zero_c.p_hat == 0.0);
    CHECK_THROWS_AS(estimate_boundedness(ens, 1.0, 5.0), std::invalid_argument);
}

TEST_CASE("estimate_boundedness: langevin stays within a wide bound") {
    const auto ens = langevin_ensemble(2.0, 1e-2, 1000, 1000, 21);
    const auto rep = estimate_boundedness(ens, 2.0, 6.0);
    CHECK(rep.p_hat >= 0.99);
    CHECK(rep.diverged == 0);
    CHECK(rep.lo <= rep.p_hat);
    CHECK(rep.p_hat <= rep.hi);
}

TEST_CASE("estimate_ball_stability: deterministic cases") {
    const auto ens = simulate_ensemble(contraction_model(),
                                       Eigen::VectorXd::Constant(1, 3.0),
                                       TimeGrid{0.0, 0.01, 500}, 20, 5,
                                       Scheme::euler_maruyama);
    CHECK(estimate_ball_stability(ens, 3.5, 1.0).p_hat == 1.0);  // monotone decay
    CHECK(estimate_ball_stability(ens, 2.0, 1.0).p_hat == 0.0);  // violated at t0
    CHECK_THROWS_AS(estimate_ball_stability(ens, 1.0, 2.0), std::invalid_argument);
}

TEST_CASE("estimate_ball_stability: langevin from a small start") {
    const auto ens = langevin_ensemble(0.5, 1e-2, 1000, 1000, 22);
    const auto rep = estimate_ball_stability(ens, 4.0, std::sqrt(2.0));
    CHECK(rep.p_hat >= 0.99);
    CHECK(rep.params.at("delta") == 0.5);
}

TEST_CASE("estimate_ball_stability: p_hat is nondecreasing in k") {
    const auto ens = langevin_ensemble(1.0, 1e-2, 2000, 500, 23);
    double prev = -1.0;
    for (double k : {1.5, 2.0, 3.0, 4.0, 6.0}) {
        const auto rep = estimate_ball_stability(ens, k, 1.0);
        CHECK(rep.p_hat >= prev);
        prev = rep.p_hat;
    }
}

TEST_CASE("estimate_attractivity: deterministic contraction") {
    const double T = std::log(10.0) + 0.1;
    const auto ens = simulate_ensemble(contraction_model(),
                                       Eigen::VectorXd::Constant(1, 10.0),
                                       TimeGrid{0.0, 1e-3, 3000}, 10, 5,
                                       Scheme::euler_maruyama);
    const auto rep = estimate_attractivity(ens, 1.0, T, 11.0);
    CHECK(rep.p_hat == 1.0);  // 10 e^{-T} < 1
    CHECK_THROWS_AS(estimate_attractivity(ens, 1.0, 100.0, 11.0), std::invalid_argument);
    CHECK_THROWS_AS(estimate_attractivity(ens, 1.0, T, 9.0), std::invalid_argument);
}

TEST_CASE("estimate_attractivity: T=0 coincides with ball stability") {
    const auto ens = langevin_ensemble(1.0, 1e-2, 500, 400, 29);
    const auto att = estimate_attractivity(ens, 2.5, 0.0, 2.0);
    const auto ball = estimate_ball_stability(ens, 2.5, 1.0);
    CHECK(att.successes == ball.successes);
}

TEST_CASE("estimate_attractivity: success set grows with T") {
    const auto ens = langevin_ensemble(4.0, 1e-2, 1000, 500, 31);
    double prev = -1.0;
    for (double T : {0.0, 1.0, 2.0, 5.0}) {
        const auto rep = estimate_attractivity(ens, 3.0, T, 5.0);
        CHECK(rep.p_hat >= prev);
        prev = rep.p_hat;
    }
}

TEST_CASE("estimate_exponent: noiseless decay has identical known slopes") {
    const double dt = 1e-3;
    const auto ens = simulate_ensemble(contraction_model(),
                                       Eigen::VectorXd::Constant(1, 5.0),
                                       TimeGrid{0.0, dt, 4000}, 5, 5,
                                       Scheme::euler_maruyama);
    const auto rep = estimate_exponent(ens, 0.1, 1e-7);
    REQUIRE(rep.fitted == 5);
    // ln(x(t) - r) steepens toward entry; every path is identical and the
    // average log-slope sits below the far-field rate ln(1-dt)/dt
    for (double s : rep.slopes) CHECK(s == rep.slopes.front());
    CHECK(*rep.median_slope < -1.0);
    CHECK(rep.entered == 5);
    CHECK(rep.entered_fraction == 1.0);
}

TEST_CASE("estimate_exponent: pure log-linear decay toward r=0 ball") {
    // with r ~ 0 the fit sees ln x(t) = ln x0 + t ln(1-dt)/dt, slope -1.0005
    const double dt = 1e-3;
    const auto ens = simulate_ensemble(contraction_model(),
                                       Eigen::VectorXd::Constant(1, 5.0),
                                       TimeGrid{0.0, dt, 4000}, 3, 5,
                                       Scheme::euler_maruyama);
    const auto rep = estimate_exponent(ens, 1e-9, 1e-12);
    REQUIRE(rep.fitted == 3);
    const double discrete_rate = std::log(1.0 - dt) / dt;
    CHECK(*rep.median_slope == doctest::Approx(discrete_rate).epsilon(1e-6));
}

TEST_CASE("estimate_exponent: constant path never enters, slope zero") {
    SdeModel still;
    still.d = 1;
    still.m = 1;
    still.label = "still";
    still.drift = [](const Eigen::VectorXd&, double) -> Eigen::VectorXd {
        return Eigen::VectorXd::Zero(1);
    };
    still.diffusion = [](const Eigen::VectorXd&, double) -> Eigen::MatrixXd {
        return Eigen::MatrixXd::Zero(1, 1);
    };
    const double r = 1.0;
    const auto ens = simulate_ensemble(still, Eigen::VectorXd::Constant(1, r + 1.0),
                                       TimeGrid{0.0, 0.1, 100}, 4, 5,
                                       Scheme::euler_maruyama);
    const auto rep = estimate_exponent(ens, r, 1e-6);
    CHECK(rep.entered == 0);
    CHECK(rep.entered_fraction == 0.0);
    REQUIRE(rep.fitted == 4);
    CHECK(*rep.median_slope == 0.0);
    CHECK_FALSE(rep.mean_entry_time.has_value());
}

TEST_CASE("estimate_exponent: immediate entry is excluded with a count") {
    const auto ens = langevin_ensemble(1.5, 1e-2, 100, 20, 37);
    // ball boundary right at the start: pre-entry windows collapse
    const auto rep = estimate_exponent(ens, 1.49, 1e-6);
    CHECK(rep.excluded_short_window > 0);
    CHECK(rep.trials == 20);
    CHECK_THROWS_AS(estimate_exponent(ens, 2.0, 1e-6), std::invalid_argument);
}

TEST_CASE("check_martingale_inequality: zero integrand never exceeds") {
    const auto rep = check_martingale_inequality(
        [](double) -> Eigen::VectorXd { return Eigen::VectorXd::Zero(1); }, 2.0, 1.0,
        1.0, 200, 5, 1e-2);
    CHECK(rep.successes == 0);
    CHECK(rep.params.at("bound") == doctest::Approx(std::exp(-2.0)).epsilon(1e-15));
    CHECK(rep.params.at("bound_ok") == 1.0);
}

TEST_CASE("check_martingale_inequality: g=1 matches the reflection value") {
    // P(sup W(t) - t > 1) = Phi(-2) + e^{-2} Phi(0) = 0.09042
    const double target = rng::normal_cdf(-2.0) + std::exp(-2.0) * 0.5;
    CHECK(target == doctest::Approx(0.09042).epsilon(1e-4));
    const auto rep = check_martingale_inequality(
        [](double) -> Eigen::VectorXd { return Eigen::VectorXd::Ones(1); }, 2.0, 1.0,
        1.0, 2000, 99, 1e-3, 2);
    const double half_width = (rep.hi - rep.lo) / 2.0;
    CHECK(std::abs(rep.p_hat - target) <= 3.0 * half_width);
    CHECK(rep.params.at("bound_ok") == 1.0);
    CHECK(rep.params.at("lower_proxy") <= std::exp(-2.0));
}

TEST_CASE("check_martingale_inequality: reproducible and thread-invariant") {
    auto g = [](double) -> Eigen::VectorXd { return Eigen::VectorXd::Ones(1); };
    const auto a = check_martingale_inequality(g, 2.0, 1.0, 0.5, 500, 7, 1e-2, 1);
    const auto b = check_martingale_inequality(g, 2.0, 1.0, 0.5, 500, 7, 1e-2, 4);
    CHECK(a.successes == b.successes);
    CHECK(a.p_hat == b.p_hat);
}

TEST_CASE("zero_crossing_fraction: langevin crosses, contraction does not") {
    const auto noisy = langevin_ensemble(2.0, 1e-2, 1000, 300, 41);
    const auto crossing = zero_crossing_fraction(noisy, 0.05);
    CHECK(crossing.p_hat > 0.5);  // additive noise drives paths through zero
    const auto det = simulate_ensemble(contraction_model(),
                                       Eigen::VectorXd::Constant(1, 2.0),
                                       TimeGrid{0.0, 0.1, 50}, 10, 5,
                                       Scheme::euler_maruyama);
    CHECK(zero_crossing_fraction(det, 1e-3).p_hat == 0.0);
}

TEST_CASE("estimators are reproducible from (config, seed)") {
    const auto a = langevin_ensemble(1.0, 1e-2, 500, 200, 123);
    const auto b = langevin_ensemble(1.0, 1e-2, 500, 200, 123);
    const auto ra = estimate_ball_stability(a, 3.0, 1.0);
    const auto rb = estimate_ball_stability(b, 3.0, 1.0);
    CHECK(ra.successes == rb.successes);
    CHECK(ra.p_hat == rb.p_hat);
    CHECK(ra.lo == rb.lo);
}

TEST_CASE("diverged paths count as failures and are tallied") {
    SdeModel cubic;
    cubic.d = 1;
    cubic.m = 1;
    cubic.label = "cubic";
    cubic.drift = [](const Eigen::VectorXd& x, double) -> Eigen::VectorXd {
        return Eigen::VectorXd::Constant(1, x(0) * x(0) * x(0));
    };
    cubic.diffusion = [](const Eigen::VectorXd&, double) -> Eigen::MatrixXd {
        return Eigen::MatrixXd::Zero(1, 1);
    };
    const auto ens = simulate_ensemble(cubic, Eigen::VectorXd::Constant(1, 10.0),
                                       TimeGrid{0.0, 0.5, 40}, 8, 5,
                                       Scheme::euler_maruyama);
    REQUIRE(ens.diverged_count() == 8);
    const auto rep = estimate_boundedness(ens, 10.0, 1e9);
    CHECK(rep.diverged == 8);
    CHECK(rep.successes == 0);
    CHECK(rep.p_hat == 0.0);
    const auto exp_rep = estimate_exponent(ens, 1.0, 1e-6);
    CHECK(exp_rep.diverged == 8);
    CHECK(exp_rep.fitted == 0);
    CHECK_FALSE(exp_rep.median_slope.has_value());
}

TEST_CASE("percentile: nearest rank") {
    std::vector<double> v{5.0, 1.0, 3.0, 2.0, 4.0};
    CHECK(percentile_nearest_rank(v, 0.5) == 3.0);
    CHECK(percentile_nearest_rank(v, 0.9) == 5.0);
    CHECK(percentile_nearest_rank(v, 1.0) == 5.0);
    CHECK(percentile_nearest_rank({7.0}, 0.5) == 7.0);
}
