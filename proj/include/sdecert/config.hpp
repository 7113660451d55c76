#ifndef SDECERT_CONFIG_HPP
#define SDECERT_CONFIG_HPP

#include "sdecert/certify.hpp"
#include "sdecert/estimate.hpp"
#include "sdecert/lyapunov.hpp"
#include "sdecert/model.hpp"
#include "sdecert/noise_sim.hpp"

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace sdecert {

/// Config or schema problem; the message carries the offending field path.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Expectation { none, pass, fail };
const char* expectation_name(Expectation e);

struct RegularityCfg {
    double linear_growth_C = 0.0;
    double lipschitz_C = 0.0;
    long samples = 0;
};

struct ExpCertCfg {
    ExpCertificate cert;
    long samples = 0;
    Expectation expect = Expectation::none;
};

struct KFuncCfg {
    std::string family;  // "power" | "zero"
    double scale = 1.0;
    double exponent = 1.0;

    KFunction build() const;
};

struct RhoCfg {
    std::string family;  // "exp_decay" | "constant"
    double scale = 0.0;
    double rate = 0.0;
    double value = 0.0;

    std::function<double(double)> build() const;
    std::string label() const;
};

struct PracticalCertCfg {
    KFuncCfg mu1, mu2, mu3;
    RhoCfg rho;
    double M = 0.0;
    double t_max = 0.0;
    long samples = 0;
    Expectation expect = Expectation::none;

    PracticalCertificate build() const;
};

struct BoundednessCfg { double alpha = 0.0, c = 0.0; };
struct BallStabilityCfg { double k = 0.0, r = 0.0; };
struct AttractivityCfg { double k = 0.0, T = 0.0, c = 0.0; };
struct ExponentCfg { double r = 0.0, eps_floor = 0.0; };
struct MartingaleCfg {
    double alpha = 0.0, beta = 0.0, T = 0.0, dt = 0.0;
    long trials = 0;
    std::uint64_t seed = 0;
};
struct ZeroCrossingCfg { double tol = 0.0; };

struct ExperimentConfig {
    // model block
    std::string model_kind;  // "langevin" | "affine"
    double alpha = 0.0, beta = 0.0;
    AffineSdeModel affine;

    // lyapunov block
    Eigen::MatrixXd Q;
    double lyap_constant = 0.0;

    TimeGrid grid;

    // ensemble block
    long trials = 0;
    std::uint64_t seed = 0;
    Scheme scheme = Scheme::euler_maruyama;
    Eigen::VectorXd x0;

    // sampler block
    double r_min = 0.0, r_max = 0.0, t_min = 0.0, t_max = 0.0;
    std::uint64_t sampler_seed = 0;

    std::optional<RegularityCfg> regularity;
    std::optional<ExpCertCfg> exp_cert;
    std::optional<PracticalCertCfg> practical_cert;

    std::optional<BoundednessCfg> boundedness;
    std::optional<BallStabilityCfg> ball_stability;
    std::optional<AttractivityCfg> attractivity;
    std::optional<ExponentCfg> exponent;
    std::optional<MartingaleCfg> martingale;
    std::optional<ZeroCrossingCfg> zero_crossing;

    // output block
    std::string out_dir = "out";
    bool paths_csv = false;

    SdeModel build_model() const;
    LyapunovFunction build_lyapunov() const;
    DomainSampler build_sampler() const;

    /// Canonical config with all defaults resolved (echoed into summaries).
    nlohmann::json echo() const;
};

/// Parses and fully validates; throws ConfigError with a field path on any
/// unknown key, type mismatch, or constraint violation.
ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);

/// The shipped reproduction of the worked Langevin example for given
/// alpha < -1/2, with certificate constants p=2, c1=1, c2=2*alpha, c3=0,
/// rho=beta^2+1, gamma=0 and an annulus sampler [r+0.1, 10r].
nlohmann::json langevin_demo_config(double alpha, double beta, std::uint64_t seed);

} // namespace sdecert

#endif
