#include "sdecert/noise_sim.hpp"
#include "sdecert/rng.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace sdecert {

void TimeGrid::validate() const {
    if (!(t0 >= 0.0)) throw std::invalid_argument("grid: t0 must be >= 0");
    if (!(dt > 0.0)) throw std::invalid_argument("grid: dt must be > 0");
    if (n_steps < 1) throw std::invalid_argument("grid: n_steps must be >= 1");
}

double NoiseStream::increment(int step, int k, double dt) const {
    return std::sqrt(dt) * rng::normal(master_seed, static_cast<std::uint64_t>(trial),
                                       static_cast<std::uint64_t>(step),
                                       static_cast<std::uint64_t>(k));
}

double NoiseStream::auxiliary_normal(int step, int k) const {
    return rng::normal(master_seed, static_cast<std::uint64_t>(trial),
                       static_cast<std::uint64_t>(step),
                       static_cast<std::uint64_t>(m + k));
}

std::vector<Eigen::VectorXd> sample_increments(const NoiseStream& stream,
                                               const TimeGrid& grid) {
    grid.validate();
    std::vector<Eigen::VectorXd> out(static_cast<std::size_t>(grid.n_steps));
    for (int i = 0; i < grid.n_steps; ++i) {
        Eigen::VectorXd dW(stream.m);
        for (int k = 0; k < stream.m; ++k) dW(k) = stream.increment(i, k, grid.dt);
        out[static_cast<std::size_t>(i)] = std::move(dW);
    }
    return out;
}

double Path::max_norm() const {
    double v = 0.0;
    for (Eigen::Index i = 0; i < states.cols(); ++i)
        v = std::max(v, states.col(i).norm());
    return v;
}

double Path::min_norm() const {
    double v = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < states.cols(); ++i)
        v = std::min(v, states.col(i).norm());
    return v;
}

const char* scheme_name(Scheme s) {
    return s == Scheme::euler_maruyama ? "euler_maruyama" : "milstein";
}

Scheme parse_scheme(const std::string& name) {
    if (name == "euler_maruyama") return Scheme::euler_maruyama;
    if (name == "milstein") return Scheme::milstein;
    throw std::invalid_argument("unknown scheme '" + name +
                                "' (expected euler_maruyama or milstein)");
}

long PathEnsemble::diverged_count() const {
    long n = 0;
    for (const auto& p : paths) n += p.diverged ? 1 : 0;
    return n;
}

Eigen::VectorXd euler_maruyama_step(const SdeModel& model, const Eigen::VectorXd& x,
                                    double t, double dt, const Eigen::VectorXd& dW) {
    if (dW.size() != model.m)
        throw std::invalid_argument("euler_maruyama_step: dW must have length m");
    auto [f, g] = evaluate(model, x, t);
    return x + f * dt + g * dW;
}

Eigen::VectorXd milstein_step(const SdeModel& model, const Eigen::VectorXd& x,
                              double t, double dt, const Eigen::VectorXd& dW) {
    if (!model.diagonal_noise)
        throw std::invalid_argument(
            "milstein_step: model '" + model.label + "' is not declared diagonal-noise");
    Eigen::VectorXd next = euler_maruyama_step(model, x, t, dt, dW);
    for (int k = 0; k < model.d; ++k) {
        const double h = 1e-4 * (1.0 + std::abs(x(k)));
        Eigen::VectorXd xp = x, xm = x;
        xp(k) += h;
        xm(k) -= h;
        const double g_kk = model.diffusion(x, t)(k, k);
        const double dg = (model.diffusion(xp, t)(k, k) - model.diffusion(xm, t)(k, k)) /
                          (2.0 * h);
        next(k) += 0.5 * g_kk * dg * (dW(k) * dW(k) - dt);
    }
    return next;
}

namespace {

bool state_ok(const Eigen::VectorXd& x) {
    return x.allFinite() && x.norm() <= kDivergenceBound;
}

} // namespace

Path simulate_path(const SdeModel& model, const Eigen::VectorXd& x0,
                   const TimeGrid& grid, const NoiseStream& stream, Scheme scheme) {
    grid.validate();
    if (x0.size() != model.d)
        throw std::invalid_argument("simulate_path: x0 must have length d");
    if (stream.m != model.m)
        throw std::invalid_argument("simulate_path: stream.m must equal model.m");

    Path path;
    path.grid = grid;
    path.trial = stream.trial;
    path.seed = stream.master_seed;
    path.states.resize(model.d, grid.n_steps + 1);
    path.states.col(0) = x0;

    Eigen::VectorXd x = x0;
    Eigen::VectorXd dW(model.m);
    int stored = 1;
    for (int i = 0; i < grid.n_steps; ++i) {
        const double t = grid.time(i);
        for (int k = 0; k < model.m; ++k) dW(k) = stream.increment(i, k, grid.dt);
        Eigen::VectorXd next = scheme == Scheme::euler_maruyama
                                   ? euler_maruyama_step(model, x, t, grid.dt, dW)
                                   : milstein_step(model, x, t, grid.dt, dW);
        if (!state_ok(next)) {
            path.diverged = true;
            path.divergence_step = i + 1;
            break;
        }
        path.states.col(stored++) = next;
        x = std::move(next);
    }
    if (stored != grid.n_steps + 1)
        path.states.conservativeResize(Eigen::NoChange, stored);
    return path;
}

PathEnsemble simulate_ensemble(const SdeModel& model, const Eigen::VectorXd& x0,
                               const TimeGrid& grid, long trials,
                               std::uint64_t master_seed, Scheme scheme, int threads) {
    grid.validate();
    if (trials < 1) throw std::invalid_argument("simulate_ensemble: trials must be >= 1");
    if (threads < 1) threads = 1;

    PathEnsemble ens;
    ens.model_label = model.label;
    ens.grid = grid;
    ens.x0 = x0;
    ens.trials = trials;
    ens.master_seed = master_seed;
    ens.scheme = scheme;
    ens.paths.resize(static_cast<std::size_t>(trials));

    auto worker = [&](long begin, long end) {
        for (long trial = begin; trial < end; ++trial) {
            NoiseStream stream{master_seed, trial, model.m};
            ens.paths[static_cast<std::size_t>(trial)] =
                simulate_path(model, x0, grid, stream, scheme);
        }
    };

    const int pool = static_cast<int>(std::min<long>(threads, trials));
    if (pool <= 1) {
        worker(0, trials);
    } else {
        std::vector<std::thread> team;
        team.reserve(static_cast<std::size_t>(pool));
        const long chunk = (trials + pool - 1) / pool;
        for (int w = 0; w < pool; ++w) {
            const long begin = static_cast<long>(w) * chunk;
            const long end = std::min(trials, begin + chunk);
            if (begin >= end) break;
            team.emplace_back(worker, begin, end);
        }
        for (auto& t : team) t.join();
    }
    return ens;
}

OuMoments ou_exact(double alpha, double beta, double x0, double t) {
    if (!(alpha < 0.0))
        throw std::invalid_argument("ou_exact: alpha must be < 0 (stable regime)");
    if (!(t >= 0.0)) throw std::invalid_argument("ou_exact: t must be >= 0");
    OuMoments m;
    m.mean = x0 * std::exp(alpha * t);
    m.variance = beta * beta * (1.0 - std::exp(2.0 * alpha * t)) / (-2.0 * alpha);
    return m;
}

double ou_exact_step(double alpha, double beta, double x, double dt, double dW,
                     double xi) {
    if (!(dt > 0.0)) throw std::invalid_argument("ou_exact_step: dt must be > 0");
    if (alpha == 0.0) return x + beta * dW;  // degenerate: plain Brownian shift
    const double e = std::exp(alpha * dt);
    // regression of int_0^dt e^{alpha(dt-s)} dW_s on dW, plus residual
    const double mean_coeff = std::expm1(alpha * dt) / (alpha * dt);
    const double total_var = std::expm1(2.0 * alpha * dt) / (2.0 * alpha);
    const double resid_var = std::max(0.0, total_var - mean_coeff * mean_coeff * dt);
    return e * x + beta * (mean_coeff * dW + std::sqrt(resid_var) * xi);
}

Path simulate_ou_exact(double alpha, double beta, double x0, const TimeGrid& grid,
                       const NoiseStream& stream) {
    grid.validate();
    if (stream.m != 1)
        throw std::invalid_argument("simulate_ou_exact: stream must have m=1");
    Path path;
    path.grid = grid;
    path.trial = stream.trial;
    path.seed = stream.master_seed;
    path.states.resize(1, grid.n_steps + 1);
    path.states(0, 0) = x0;
    double x = x0;
    for (int i = 0; i < grid.n_steps; ++i) {
        const double dW = stream.increment(i, 0, grid.dt);
        const double xi = stream.auxiliary_normal(i, 0);
        x = ou_exact_step(alpha, beta, x, grid.dt, dW, xi);
        path.states(0, i + 1) = x;
    }
    return path;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_paths_csv(std::ostream& out, const PathEnsemble& ensemble) {
    const int d = static_cast<int>(ensemble.x0.size());
    out << "trial,step,t";
    for (int j = 0; j < d; ++j) out << ",x_" << j;
    out << "\n";
    for (const auto& path : ensemble.paths) {
        for (Eigen::Index i = 0; i < path.n_states(); ++i) {
            out << path.trial << ',' << i << ','
                << format_double(path.grid.time(static_cast<int>(i)));
            for (int j = 0; j < d; ++j)
                out << ',' << format_double(path.states(j, i));
            out << "\n";
        }
    }
}

} // namespace sdecert
