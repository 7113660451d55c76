#include "sdecert/certify.hpp"

#include <doctest.h>

#include <cmath>

using namespace sdecert;

namespace {

ExpCertificate langevin_cert(double alpha, double beta) {
    ExpCertificate cert;
    cert.p = 2;
    cert.c1 = 1.0;
    cert.c2 = 2.0 * alpha;
    cert.c3 = 0.0;
    cert.rho = beta * beta + 1.0;
    cert.gamma = 0.0;
    return cert;
}

LyapunovFunction v_squared() {
    return make_quadratic(Eigen::MatrixXd::Identity(1, 1));
}

} // namespace

TEST_CASE("radius: worked values") {
    CHECK(radius(langevin_cert(-1.0, 1.0)) ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));

    ExpCertificate unit;
    unit.p = 2;
    unit.c1 = 1.5;
    unit.rho = 1.5;
    CHECK(radius(unit) == 1.0);

    ExpCertificate cube;
    cube.p = 3;
    cube.c1 = 1.0;
    cube.rho = 8.0;
    CHECK(radius(cube) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("radius: invalid certificates are rejected") {
    ExpCertificate bad = langevin_cert(-1.0, 1.0);
    bad.c1 = 0.5;
    CHECK_THROWS_AS(radius(bad), std::invalid_argument);
    bad = langevin_cert(-1.0, 1.0);
    bad.rho = 0.9;  // below c1
    CHECK_THROWS_AS(radius(bad), std::invalid_argument);
    bad = langevin_cert(-1.0, 1.0);
    bad.gamma = -0.1;
    CHECK_THROWS_AS(radius(bad), std::invalid_argument);
    bad = langevin_cert(-1.0, 1.0);
    bad.p = 0;
    CHECK_THROWS_AS(radius(bad), std::invalid_argument);
}

TEST_CASE("decay_rate: worked values and the stability threshold") {
    const ExpCertificate lang = langevin_cert(-1.0, 1.0);
    CHECK(decay_rate(lang) == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(stable_flag(lang));  // 0 > 2(-2+1) = -2

    ExpCertificate boundary = lang;
    boundary.c2 = -0.5;
    boundary.c3 = 2.0 * (boundary.c2 + 1.0);
    CHECK(decay_rate(boundary) == 0.0);
    CHECK_FALSE(stable_flag(boundary));

    ExpCertificate other = lang;
    other.c2 = 0.0;
    other.c3 = 4.0;
    CHECK(decay_rate(other) == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(stable_flag(other));
}

TEST_CASE("radius and decay_rate are monotone in their constants") {
    ExpCertificate base = langevin_cert(-1.0, 1.0);
    double prev = radius(base);
    for (double rho : {2.5, 3.0, 5.0, 11.0}) {
        ExpCertificate c = base;
        c.rho = rho;
        CHECK(radius(c) >= prev);
        prev = radius(c);
    }
    prev = radius(base);
    for (double c1 : {1.1, 1.3, 1.7, 2.0}) {
        ExpCertificate c = base;
        c.c1 = c1;
        CHECK(radius(c) <= prev);
        prev = radius(c);
    }
    prev = decay_rate(base);
    for (double c3 : {0.5, 1.0, 2.0}) {
        ExpCertificate c = base;
        c.c3 = c3;
        CHECK(decay_rate(c) < prev);
        prev = decay_rate(c);
    }
    prev = decay_rate(base);
    for (double c2 : {-1.5, -1.0, 0.0}) {
        ExpCertificate c = base;
        c.c2 = c2;
        CHECK(decay_rate(c) > prev);
        prev = decay_rate(c);
    }
}

TEST_CASE("check_exp_certificate: the langevin certificate passes") {
    const SdeModel m = make_langevin(-1.0, 1.0);
    const DomainSampler sampler(1, 1.5, 10.0, 0.0, 10.0, 5);
    const auto report = check_exp_certificate(v_squared(), m, langevin_cert(-1.0, 1.0),
                                              sampler, 2000);
    CHECK(report.passed);
    CHECK(report.total_violations() == 0);
    CHECK(*report.radius == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(*report.rate_bound == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(*report.stable);
    CHECK(report.samples == 2000);
}

TEST_CASE("check_exp_certificate: c2 too strong fails everywhere") {
    const SdeModel m = make_langevin(-1.0, 1.0);
    const DomainSampler sampler(1, 1.5, 10.0, 0.0, 10.0, 5);
    ExpCertificate cert = langevin_cert(-1.0, 1.0);
    cert.c2 = -3.0;
    const auto report = check_exp_certificate(v_squared(), m, cert, sampler, 500);
    CHECK_FALSE(report.passed);
    const auto& gen = report.conditions.at("generator-bound");
    // 2 alpha x^2 + beta^2 > -3 x^2 + 2 for every |x| > 1
    CHECK(gen.violation_count == 500);
    // spot-check the recorded arithmetic at one sample
    const auto& v = gen.examples.front();
    const double x = v.x(0);
    CHECK(v.lhs == doctest::Approx(-2.0 * x * x + 1.0).epsilon(1e-12));
    CHECK(v.rhs == doctest::Approx(-3.0 * x * x + 2.0).epsilon(1e-12));
}

TEST_CASE("check_exp_certificate: gamma=1 fails only near the origin") {
    const SdeModel m = make_langevin(-1.0, 1.0);
    ExpCertificate cert = langevin_cert(-1.0, 1.0);
    cert.gamma = 1.0;
    // |V_x g|^2 = 4 x^2 < 1 = c3 V^2 + gamma wherever |x| < 0.5
    const DomainSampler inner(1, 0.0, 0.4, 0.0, 10.0, 5);
    const auto failing = check_exp_certificate(v_squared(), m, cert, inner, 300);
    CHECK_FALSE(failing.passed);
    CHECK(failing.conditions.at("noise-lower-bound").violation_count > 0);

    const DomainSampler outer(1, 1.5, 10.0, 0.0, 10.0, 5);
    const auto passing = check_exp_certificate(v_squared(), m, cert, outer, 300);
    CHECK(passing.passed);
}

TEST_CASE("check_exp_certificate: violations shrink with the sample prefix") {
    const SdeModel m = make_langevin(-1.0, 1.0);
    ExpCertificate cert = langevin_cert(-1.0, 1.0);
    cert.c2 = -2.2;  // fails on part of the annulus only
    const DomainSampler sampler(1, 0.5, 4.0, 0.0, 10.0, 19);
    const auto full = check_exp_certificate(v_squared(), m, cert, sampler, 800);
    const auto half = check_exp_certificate(v_squared(), m, cert, sampler, 400);
    CHECK(half.total_violations() <= full.total_violations());
    if (full.passed) CHECK(half.passed);
}

TEST_CASE("langevin family certificate passes for alpha < -1/2, any beta") {
    for (double alpha : {-0.51, -0.75, -1.0, -3.0}) {
        for (double beta : {0.0, 0.3, 1.0, 2.5}) {
            const SdeModel m = make_langevin(alpha, beta);
            const ExpCertificate cert = langevin_cert(alpha, beta);
            const double r = radius(cert);
            const DomainSampler sampler(1, r + 0.1, 10.0 * r, 0.0, 20.0,
                                        static_cast<std::uint64_t>(beta * 100 + 7));
            const auto report =
                check_exp_certificate(v_squared(), m, cert, sampler, 400);
            CHECK(report.passed);
            CHECK(*report.stable);  // c3 = 0 > 4 alpha + 2
        }
    }
}

TEST_CASE("check_practical_certificate: honest violations for the imperfect bound") {
    // mu1 = mu2 = mu3 = s^2 and rho(t) = (beta^2+1) e^{-t}: the generator
    // bound fails where x^2 < 1 - 2 e^{-t}
    const SdeModel m = make_langevin(-1.0, 1.0);
    PracticalCertificate cert;
    cert.mu1 = k_power(1.0, 2.0);
    cert.mu2 = k_power(1.0, 2.0);
    cert.mu3 = k_power(1.0, 2.0);
    cert.rho = [](double t) { return 2.0 * std::exp(-t); };
    cert.rho_label = "2*exp(-t)";
    cert.M = 2.0;
    const DomainSampler sampler(1, 0.1, 3.0, 0.0, 10.0, 29);
    const auto report =
        check_practical_certificate(v_squared(), m, cert, sampler, 2000, 10.0);
    CHECK_FALSE(report.passed);
    const auto& gen = report.conditions.at("generator-bound");
    CHECK(gen.violation_count > 0);
    for (const auto& v : gen.examples) {
        const double x = v.x(0);
        CHECK(x * x < 1.0 - 2.0 * std::exp(-v.t) + 1e-9);
    }
    // sandwich holds with equality throughout
    CHECK(report.conditions.at("sandwich-lower").violation_count == 0);
    CHECK(report.conditions.at("sandwich-upper").violation_count == 0);
    CHECK(report.conditions.at("rho-decay").violation_count == 0);
    CHECK(report.conditions.at("rho-integral").violation_count == 0);
}

TEST_CASE("check_practical_certificate: zero dynamics pass") {
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
    PracticalCertificate cert;
    cert.mu1 = k_power(1.0, 2.0);
    cert.mu2 = k_power(1.0, 2.0);
    cert.mu3 = k_zero();
    cert.rho = [](double) { return 0.0; };
    cert.rho_label = "0";
    cert.M = 1.0;
    const DomainSampler sampler(1, 0.0, 5.0, 0.0, 10.0, 7);
    const auto report =
        check_practical_certificate(v_squared(), m, cert, sampler, 400, 10.0);
    CHECK(report.passed);
}

TEST_CASE("check_practical_certificate: constant rho breaks decay and integral") {
    const SdeModel m = make_langevin(-1.0, 0.0);
    PracticalCertificate cert;
    cert.mu1 = k_power(1.0, 2.0);
    cert.mu2 = k_power(1.0, 2.0);
    cert.mu3 = k_zero();
    cert.rho = [](double) { return 1.0; };
    cert.rho_label = "1";
    cert.M = 1.0;
    const DomainSampler sampler(1, 1.0, 2.0, 0.0, 10.0, 7);
    const auto report =
        check_practical_certificate(v_squared(), m, cert, sampler, 100, 10.0);
    CHECK_FALSE(report.passed);
    const auto& integral = report.conditions.at("rho-integral");
    REQUIRE(integral.violation_count == 1);
    CHECK(integral.examples.front().lhs == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(integral.examples.front().rhs == 1.0);
    CHECK(report.conditions.at("rho-decay").violation_count == 1);
}

TEST_CASE("k-function probes") {
    CHECK(check_k_function(k_power(1.0, 2.0)).empty());
    CHECK(check_k_function(k_power(0.5, 1.0)).empty());
    CHECK(check_k_function(k_zero()).empty());

    // bounded function declared K-infinity: growth probe must flag it
    KFunction bounded{"atan", [](double s) { return std::atan(s); },
                      KFunction::Cls::Kinf};
    const auto violations = check_k_function(bounded);
    REQUIRE_FALSE(violations.empty());
    CHECK(violations.front().note == "K-infinity growth probe failed");

    // mu(0) != 0
    KFunction offset{"1+s", [](double s) { return 1.0 + s; }, KFunction::Cls::K};
    CHECK_FALSE(check_k_function(offset).empty());

    // decreasing somewhere
    KFunction dipping{"dip", [](double s) { return s < 1.0 ? s : 2.0 - s; },
                      KFunction::Cls::K};
    CHECK_FALSE(check_k_function(dipping).empty());
}

TEST_CASE("simpson quadrature") {
    const double flat = simpson_integral([](double) { return 1.0; }, 0.0, 10.0, 10000);
    CHECK(flat == doctest::Approx(10.0).epsilon(1e-14));
    const double decay =
        simpson_integral([](double t) { return std::exp(-t); }, 0.0, 10.0, 10000);
    CHECK(decay == doctest::Approx(1.0 - std::exp(-10.0)).epsilon(1e-12));
    CHECK_THROWS_AS(simpson_integral([](double) { return 1.0; }, 0.0, 1.0, 3),
                    std::invalid_argument);
}

TEST_CASE("practical certificate validation") {
    PracticalCertificate cert;
    cert.mu1 = k_power(1.0, 2.0);
    cert.mu2 = k_zero();  // not K-infinity
    cert.mu3 = k_zero();
    cert.rho = [](double) { return 0.0; };
    cert.M = 1.0;
    CHECK_THROWS_AS(cert.validate(), std::invalid_argument);
    cert.mu2 = k_power(1.0, 2.0);
    cert.M = 0.0;
    CHECK_THROWS_AS(cert.validate(), std::invalid_argument);
    cert.M = 1.0;
    cert.validate();
}
