#ifndef SDECERT_CERTIFY_HPP
#define SDECERT_CERTIFY_HPP

#include "sdecert/lyapunov.hpp"
#include "sdecert/model.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace sdecert {

/// Comparison function of class K (continuous, nondecreasing, mu(0)=0) or
/// K-infinity (additionally unbounded). The class is declared; sampled
/// checks probe the declaration.
struct KFunction {
    enum class Cls { K, Kinf };
    std::string name;
    std::function<double(double)> mu;
    Cls declared = Cls::K;
};

KFunction k_power(double scale, double exponent);  // mu(s) = scale * s^exponent
KFunction k_zero();                                // mu = 0, class K

/// Hypotheses of the practical-stability certificate:
///   mu1(|x|) <= V(x,t) <= mu2(|x|),
///   LV(x,t) <= rho(t) - mu3(|x|),
/// with rho continuous nonnegative, rho(t) -> 0 and integral rho <= M.
struct PracticalCertificate {
    KFunction mu1, mu2, mu3;
    std::function<double(double)> rho;
    std::string rho_label;
    double M = 0.0;

    void validate() const;  // declared classes and M > 0
};

/// Constants of the exponential certificate:
///   c1 |x|^p <= V(x,t),
///   LV(x,t) <= c2 V(x,t) + rho,
///   |V_x(x,t) g(x,t)|^2 >= c3 V(x,t)^2 + gamma,
/// with p >= 1 integer, c1 >= 1, rho >= c1, c3 >= 0, gamma >= 0.
struct ExpCertificate {
    int p = 1;
    double c1 = 1.0;
    double c2 = 0.0;
    double c3 = 0.0;
    double rho = 1.0;
    double gamma = 0.0;

    void validate() const;
};

/// Radius of the attracting ball: (rho / c1)^(1/p); >= 1 since rho >= c1.
double radius(const ExpCertificate& cert);

/// Bound on the pathwise exponent: -(c3 - 2(c2 + 1)) / 2.
double decay_rate(const ExpCertificate& cert);

/// True when c3 > 2(c2 + 1): the rate bound is strictly negative.
bool stable_flag(const ExpCertificate& cert);

struct ConditionResult {
    long checked = 0;
    long violation_count = 0;
    std::vector<Violation> examples;  // capped at kMaxStoredViolations
};

/// Outcome of a sampled certificate check. The inequalities are verified on
/// the sampled domain only; `domain` records what was covered.
struct CertificateReport {
    std::string kind;  // "exp" | "practical"
    std::string domain;
    long samples = 0;
    std::map<std::string, ConditionResult> conditions;
    bool passed = false;
    // exp kind only:
    std::optional<double> radius;
    std::optional<double> rate_bound;
    std::optional<bool> stable;

    long total_violations() const;
};

CertificateReport check_exp_certificate(const LyapunovFunction& V,
                                        const SdeModel& model,
                                        const ExpCertificate& cert,
                                        const DomainSampler& sampler, long n);

/// Checks the sandwich and generator bounds on n sampled points, rho's decay
/// (rho(t_max) <= 1e-3 rho(0) + 1e-9) and its integral over [0, t_max]
/// against M (composite Simpson, 1e4 panels), and the sampled class
/// invariants of mu1..mu3.
CertificateReport check_practical_certificate(const LyapunovFunction& V,
                                              const SdeModel& model,
                                              const PracticalCertificate& cert,
                                              const DomainSampler& sampler, long n,
                                              double t_max);

/// Sampled probe of one KFunction's declared class; empty result = consistent.
std::vector<Violation> check_k_function(const KFunction& kf);

/// Composite Simpson rule with an even number of panels.
double simpson_integral(const std::function<double(double)>& f, double a, double b,
                        int panels);

} // namespace sdecert

#endif
