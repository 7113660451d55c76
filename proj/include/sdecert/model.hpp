#ifndef SDECERT_MODEL_HPP
#define SDECERT_MODEL_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace sdecert {

using DriftFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&, double)>;
using DiffusionFn = std::function<Eigen::MatrixXd(const Eigen::VectorXd&, double)>;

// Inequality guard shared by every sampled check: "lhs <= rhs" counts as
// violated only past a relative 1e-12 band, so equality cases at either
// sign of rhs are never flagged by round-off.
inline bool leq_violated(double lhs, double rhs) {
    return lhs > rhs + 1e-12 * (1.0 + std::abs(rhs));
}

/// SDE  dx = f(x,t) dt + g(x,t) dW  with state dimension d and Brownian
/// dimension m. Evaluations must be pure.
struct SdeModel {
    int d = 0;
    int m = 0;
    DriftFn drift;
    DiffusionFn diffusion;
    std::string label;
    // True when d == m and the k-th diffusion column is supported on
    // component k and depends only on x_k (Milstein eligibility).
    bool diagonal_noise = false;
};

/// Drift f(x) = A x + a; k-th diffusion column g_k(x) = B[k] x + b[k].
struct AffineSdeModel {
    Eigen::MatrixXd A;
    Eigen::VectorXd a;
    std::vector<Eigen::MatrixXd> B;
    std::vector<Eigen::VectorXd> b;

    int d() const { return static_cast<int>(A.rows()); }
    int m() const { return static_cast<int>(B.size()); }

    // Shape consistency; throws std::invalid_argument on mismatch.
    void validate() const;

    bool diagonal() const;

    // Smallest C such that |f(x)-f(y)| <= C|x-y| and |g(x)-g(y)|_F <= C|x-y|:
    // max of the spectral norm of A and the operator norm of the stacked
    // map v -> (B_1 v, ..., B_m v), i.e. sqrt(lambda_max(sum_k B_k^T B_k)).
    double lipschitz_constant() const;

    // C such that |f(x)| <= C(1+|x|) and |g(x)|_F <= C(1+|x|).
    double linear_growth_constant() const;

    SdeModel to_model(std::string label) const;
};

/// Langevin equation dx = alpha x dt + beta dW as an affine model (d=m=1).
AffineSdeModel langevin(double alpha, double beta);
SdeModel make_langevin(double alpha, double beta);

/// One recorded inequality breach (or evaluation failure) at a sample point.
struct Violation {
    Eigen::VectorXd x;      // sample state
    Eigen::VectorXd y;      // second state (pair checks only, else empty)
    double t = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    std::string note;       // diagnostic for evaluation failures
};

struct RegularityReport {
    std::string condition;  // "linear-growth" | "lipschitz"
    double C = 0.0;
    long samples = 0;
    long violation_count = 0;
    std::vector<Violation> violations;  // capped at kMaxStoredViolations
    bool passed = false;                // passed <=> violation_count == 0
};

inline constexpr std::size_t kMaxStoredViolations = 64;

/// Deterministic sampler over the annulus {r_min <= |x| <= r_max} times
/// [t_min, t_max]. Even indices come from a Kronecker low-discrepancy
/// sequence, odd indices from the seeded counter generator; point(i) does
/// not depend on any total count.
class DomainSampler {
  public:
    DomainSampler(int d, double r_min, double r_max, double t_min, double t_max,
                  std::uint64_t seed);

    int dimension() const { return d_; }
    double r_min() const { return r_min_; }
    double r_max() const { return r_max_; }
    double t_min() const { return t_min_; }
    double t_max() const { return t_max_; }
    std::uint64_t seed() const { return seed_; }

    std::pair<Eigen::VectorXd, double> point(long i) const;
    // (x, y, t) with x != y, for Lipschitz-type checks.
    std::tuple<Eigen::VectorXd, Eigen::VectorXd, double> pair(long i) const;

    std::string describe() const;

  private:
    Eigen::VectorXd direction(long i, int channel) const;
    double unit_coord(long i, int channel, int j) const;

    int d_;
    double r_min_, r_max_, t_min_, t_max_;
    std::uint64_t seed_;
    std::vector<double> kronecker_alpha_;  // irrational increments per dim
};

/// f(x,t) and g(x,t) with shape checks on both input and output.
std::pair<Eigen::VectorXd, Eigen::MatrixXd>
evaluate(const SdeModel& model, const Eigen::VectorXd& x, double t);

/// Sampled check of |f| <= C(1+|x|) and |g|_F <= C(1+|x|).
RegularityReport check_linear_growth(const SdeModel& model, double C,
                                     const DomainSampler& sampler, long n);

/// Sampled check of |f(x,t)-f(y,t)| <= C|x-y| and the g analogue.
RegularityReport check_lipschitz(const SdeModel& model, double C,
                                 const DomainSampler& sampler, long n);

} // namespace sdecert

#endif
