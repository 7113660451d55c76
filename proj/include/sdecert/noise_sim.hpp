#ifndef SDECERT_NOISE_SIM_HPP
#define SDECERT_NOISE_SIM_HPP

#include "sdecert/model.hpp"

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace sdecert {

// States beyond this magnitude (or non-finite) mark a path as diverged.
inline constexpr double kDivergenceBound = 1e12;

struct TimeGrid {
    double t0 = 0.0;
    double dt = 0.0;
    int n_steps = 0;

    void validate() const;
    double time(int i) const { return t0 + static_cast<double>(i) * dt; }
    double horizon() const { return time(n_steps); }
};

/// Addresses one trial's Brownian increments inside a seeded ensemble.
/// Increment i, component k is a pure function of (seed, trial, i, k).
struct NoiseStream {
    std::uint64_t master_seed = 0;
    std::int64_t trial = 0;
    int m = 1;

    // N(0, dt) increment, component k of step i.
    double increment(int step, int k, double dt) const;
    // Auxiliary N(0,1) draw independent of all increments (components >= m).
    double auxiliary_normal(int step, int k) const;
};

/// n_steps increments of m components each, ~ N(0, dt) per component.
std::vector<Eigen::VectorXd> sample_increments(const NoiseStream& stream,
                                               const TimeGrid& grid);

struct Path {
    TimeGrid grid;
    // One state per column: n_steps+1 columns unless diverged (then the
    // finite prefix only). states.col(0) == x0.
    Eigen::MatrixXd states;
    std::int64_t trial = 0;
    std::uint64_t seed = 0;
    bool diverged = false;
    int divergence_step = -1;  // grid index of the first rejected state

    Eigen::Index n_states() const { return states.cols(); }
    Eigen::MatrixXd::ConstColXpr state(Eigen::Index i) const { return states.col(i); }
    double max_norm() const;
    double min_norm() const;
};

enum class Scheme { euler_maruyama, milstein };

const char* scheme_name(Scheme s);
Scheme parse_scheme(const std::string& name);

struct PathEnsemble {
    std::string model_label;
    TimeGrid grid;
    Eigen::VectorXd x0;
    long trials = 0;
    std::uint64_t master_seed = 0;
    Scheme scheme = Scheme::euler_maruyama;
    std::vector<Path> paths;

    long diverged_count() const;
};

/// x + f(x,t) dt + g(x,t) dW.
Eigen::VectorXd euler_maruyama_step(const SdeModel& model, const Eigen::VectorXd& x,
                                    double t, double dt, const Eigen::VectorXd& dW);

/// Euler-Maruyama plus 0.5 g_kk (dg_kk/dx_k) (dW_k^2 - dt) per component;
/// requires a diagonal-noise model. The derivative uses a central finite
/// difference.
Eigen::VectorXd milstein_step(const SdeModel& model, const Eigen::VectorXd& x,
                              double t, double dt, const Eigen::VectorXd& dW);

Path simulate_path(const SdeModel& model, const Eigen::VectorXd& x0,
                   const TimeGrid& grid, const NoiseStream& stream, Scheme scheme);

/// `trials` independent paths (trial indices 0..trials-1). The result is
/// bit-identical for any thread count: each trial's noise is addressed by
/// counter, and paths are assembled by trial index.
PathEnsemble simulate_ensemble(const SdeModel& model, const Eigen::VectorXd& x0,
                               const TimeGrid& grid, long trials,
                               std::uint64_t master_seed, Scheme scheme,
                               int threads = 1);

/// Exact law of the Ornstein-Uhlenbeck solution of dx = alpha x dt + beta dW:
/// mean x0 e^{alpha t}, variance beta^2 (1 - e^{2 alpha t}) / (-2 alpha).
/// Restricted to the stable regime alpha < 0.
struct OuMoments {
    double mean = 0.0;
    double variance = 0.0;
};
OuMoments ou_exact(double alpha, double beta, double x0, double t);

/// Exact one-step OU transition conditionally coupled to a given Brownian
/// increment dW over [t, t+dt]:
///   x' = e^{alpha dt} x + beta * (m_c dW + s_c xi),
/// where m_c dW is the conditional mean of the stochastic integral given dW
/// and xi ~ N(0,1) supplies the independent residual. Driving this with the
/// same increments as an Euler-Maruyama path yields a coupled exact solution
/// for strong-error measurements.
double ou_exact_step(double alpha, double beta, double x, double dt, double dW,
                     double xi);

/// Exact OU path coupled to the increments of `stream` (component 0 carries
/// dW, component 1 the residuals), matching simulate_path's noise addressing
/// for a d=m=1 model.
Path simulate_ou_exact(double alpha, double beta, double x0, const TimeGrid& grid,
                       const NoiseStream& stream);

/// CSV rows `trial,step,t,x_0,...,x_{d-1}`, trial-major then step-minor.
void write_paths_csv(std::ostream& out, const PathEnsemble& ensemble);

/// %.17g formatting used by every CSV writer (round-trip exact).
std::string format_double(double v);

} // namespace sdecert

#endif
