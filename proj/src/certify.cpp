#include "sdecert/certify.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace sdecert {

KFunction k_power(double scale, double exponent) {
    if (!(scale > 0.0) || !(exponent > 0.0))
        throw std::invalid_argument("k_power: scale and exponent must be > 0")
            ;
    std::ostringstream name;
    name << scale << "*s^" << exponent;
    return {name.str(), [scale, exponent](double s) { return scale * std::pow(s, exponent); },
            KFunction::Cls::Kinf};
}

KFunction k_zero() {
    return {"0", [](double) { return 0.0; }, KFunction::Cls::K};
}

void PracticalCertificate::validate() const {
    if (mu1.declared != KFunction::Cls::Kinf)
        throw std::invalid_argument("practical certificate: mu1 must be declared K-infinity");
    if (mu2.declared != KFunction::Cls::Kinf)
        throw std::invalid_argument("practical certificate: mu2 must be declared K-infinity");
    if (!(M > 0.0))
        throw std::invalid_argument("practical certificate: M must be > 0");
    if (!rho) throw std::invalid_argument("practical certificate: rho function missing");
}

void ExpCertificate::validate() const {
    if (p < 1) throw std::invalid_argument("exp certificate: p must be a positive integer");
    if (!(c1 >= 1.0)) throw std::invalid_argument("exp certificate: c1 must be >= 1");
    if (!(rho >= c1)) throw std::invalid_argument("exp certificate: rho must be >= c1");
    if (!(c3 >= 0.0)) throw std::invalid_argument("exp certificate: c3 must be >= 0");
    if (!(gamma >= 0.0)) throw std::invalid_argument("exp certificate: gamma must be >= 0");
}

double radius(const ExpCertificate& cert) {
    cert.validate();
    return std::pow(cert.rho / cert.c1, 1.0 / static_cast<double>(cert.p));
}

double decay_rate(const ExpCertificate& cert) {
    cert.validate();
    return -(cert.c3 - 2.0 * (cert.c2 + 1.0)) / 2.0;
}

bool stable_flag(const ExpCertificate& cert) {
    cert.validate();
    return cert.c3 > 2.0 * (cert.c2 + 1.0);
}

long CertificateReport::total_violations() const {
    long n = 0;
    for (const auto& [name, cond] : conditions) n += cond.violation_count;
    return n;
}

namespace {

void record(ConditionResult& cond, Violation v) {
    ++cond.violation_count;
    if (cond.examples.size() < kMaxStoredViolations) cond.examples.push_back(std::move(v));
}

void finish(CertificateReport& report) {
    report.passed = report.total_violations() == 0;
}

} // namespace

std::vector<Violation> check_k_function(const KFunction& kf) {
    std::vector<Violation> out;
    auto flag = [&](double r, double lhs, double rhs, const std::string& note) {
        Violation v;
        v.t = r;  // probe argument
        v.lhs = lhs;
        v.rhs = rhs;
        v.note = note;
        out.push_back(std::move(v));
    };
    const double at_zero = kf.mu(0.0);
    if (std::abs(at_zero) > 1e-12) flag(0.0, at_zero, 0.0, "mu(0) != 0");
    const double probes[] = {0.0, 1e-6, 1e-3, 0.1, 0.5, 1.0, 2.0, 10.0, 1e3, 1e6};
    double prev = at_zero;
    for (std::size_t i = 1; i < std::size(probes); ++i) {
        const double cur = kf.mu(probes[i]);
        if (leq_violated(prev, cur)) flag(probes[i], prev, cur, "not nondecreasing");
        prev = cur;
    }
    if (kf.declared == KFunction::Cls::Kinf) {
        // growth probe at r=1e6: unbounded families must dominate their
        // value at 1 by three orders of magnitude
        const double far = kf.mu(1e6);
        const double near = kf.mu(1.0);
        const double required = 1e3 * std::max(near, 1e-9);
        if (far < required) flag(1e6, far, required, "K-infinity growth probe failed");
    }
    return out;
}

double simpson_integral(const std::function<double(double)>& f, double a, double b,
                        int panels) {
    if (panels < 2 || panels % 2 != 0)
        throw std::invalid_argument("simpson_integral: panels must be even and >= 2");
    const double h = (b - a) / panels;
    double sum = f(a) + f(b);
    for (int i = 1; i < panels; ++i) sum += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    return sum * h / 3.0;
}

CertificateReport check_exp_certificate(const LyapunovFunction& V,
                                        const SdeModel& model,
                                        const ExpCertificate& cert,
                                        const DomainSampler& sampler, long n) {
    cert.validate();
    if (n < 1) throw std::invalid_argument("check_exp_certificate: n must be >= 1");

    CertificateReport report;
    report.kind = "exp";
    report.domain = sampler.describe();
    report.samples = n;
    report.radius = radius(cert);
    report.rate_bound = decay_rate(cert);
    report.stable = stable_flag(cert);

    auto& lower = report.conditions["value-lower-bound"];
    auto& gen = report.conditions["generator-bound"];
    auto& noise = report.conditions["noise-lower-bound"];
    auto& eval = report.conditions["evaluation"];

    for (long i = 0; i < n; ++i) {
        auto [x, t] = sampler.point(i);
        try {
            const double v = V.value(x, t);
            const double lv = generator(V, model, x, t);
            const double dn = diffusion_gradient_norm_sq(V, model, x, t);

            ++lower.checked;
            const double lhs1 = cert.c1 * std::pow(x.norm(), cert.p);
            if (leq_violated(lhs1, v)) record(lower, {x, {}, t, lhs1, v, ""});

            ++gen.checked;
            const double rhs2 = cert.c2 * v + cert.rho;
            if (leq_violated(lv, rhs2)) record(gen, {x, {}, t, lv, rhs2, ""});

            ++noise.checked;
            const double lhs3 = cert.c3 * v * v + cert.gamma;
            if (leq_violated(lhs3, dn)) record(noise, {x, {}, t, lhs3, dn, ""});
        } catch (const std::exception& e) {
            ++eval.checked;
            record(eval, {x, {}, t, 0.0, 0.0, e.what()});
        }
    }
    finish(report);
    return report;
}

CertificateReport check_practical_certificate(const LyapunovFunction& V,
                                              const SdeModel& model,
                                              const PracticalCertificate& cert,
                                              const DomainSampler& sampler, long n,
                                              double t_max) {
    cert.validate();
    if (n < 1) throw std::invalid_argument("check_practical_certificate: n must be >= 1");
    if (!(t_max > 0.0))
        throw std::invalid_argument("check_practical_certificate: t_max must be > 0");

    CertificateReport report;
    report.kind = "practical";
    report.domain = sampler.describe();
    report.samples = n;

    for (const auto& [label, kf] :
         {std::pair<const char*, const KFunction*>{"mu1-class", &cert.mu1},
          {"mu2-class", &cert.mu2},
          {"mu3-class", &cert.mu3}}) {
        auto& cond = report.conditions[label];
        cond.checked = 1;
        for (auto& v : check_k_function(*kf)) record(cond, std::move(v));
    }

    auto& lower = report.conditions["sandwich-lower"];
    auto& upper = report.conditions["sandwich-upper"];
    auto& gen = report.conditions["generator-bound"];
    auto& eval = report.conditions["evaluation"];

    for (long i = 0; i < n; ++i) {
        auto [x, t] = sampler.point(i);
        try {
            const double v = V.value(x, t);
            const double lv = generator(V, model, x, t);
            const double r = x.norm();

            ++lower.checked;
            const double m1 = cert.mu1.mu(r);
            if (leq_violated(m1, v)) record(lower, {x, {}, t, m1, v, ""});

            ++upper.checked;
            const double m2 = cert.mu2.mu(r);
            if (leq_violated(v, m2)) record(upper, {x, {}, t, v, m2, ""});

            ++gen.checked;
            const double rhs = cert.rho(t) - cert.mu3.mu(r);
            if (leq_violated(lv, rhs)) record(gen, {x, {}, t, lv, rhs, ""});
        } catch (const std::exception& e) {
            ++eval.checked;
            record(eval, {x, {}, t, 0.0, 0.0, e.what()});
        }
    }

    auto& decay = report.conditions["rho-decay"];
    decay.checked = 1;
    const double rho0 = cert.rho(0.0);
    const double rho_end = cert.rho(t_max);
    if (leq_violated(rho_end, 1e-3 * rho0 + 1e-9))
        record(decay, {{}, {}, t_max, rho_end, 1e-3 * rho0 + 1e-9, "rho does not vanish"});

    auto& nonneg = report.conditions["rho-nonnegative"];
    auto& integral = report.conditions["rho-integral"];
    nonneg.checked = 1;
    integral.checked = 1;
    double min_rho = rho0;
    double min_rho_t = 0.0;
    const double quad = simpson_integral(
        [&](double t) {
            const double v = cert.rho(t);
            if (v < min_rho) {
                min_rho = v;
                min_rho_t = t;
            }
            return v;
        },
        0.0, t_max, 10000);
    if (min_rho < -1e-12)
        record(nonneg, {{}, {}, min_rho_t, 0.0, min_rho, "rho negative"});
    if (leq_violated(quad, cert.M))
        record(integral, {{}, {}, t_max, quad, cert.M, "integral of rho exceeds M"});

    finish(report);
    return report;
}

} // namespace sdecert
