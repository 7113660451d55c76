#include "sdecert/model.hpp"
#include "sdecert/rng.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace sdecert {

void AffineSdeModel::validate() const {
    const auto dd = A.rows();
    if (A.cols() != dd) throw std::invalid_argument("affine model: A must be square");
    if (a.size() != dd) throw std::invalid_argument("affine model: a must have length d");
    if (B.size() != b.size())
        throw std::invalid_argument("affine model: B and b must have the same count");
    if (B.empty()) throw std::invalid_argument("affine model: at least one noise column required");
    for (std::size_t k = 0; k < B.size(); ++k) {
        if (B[k].rows() != dd || B[k].cols() != dd)
            throw std::invalid_argument("affine model: B[k] must be d x d");
        if (b[k].size() != dd)
            throw std::invalid_argument("affine model: b[k] must have length d");
    }
}

bool AffineSdeModel::diagonal() const {
    if (d() != m()) return false;
    for (int k = 0; k < m(); ++k) {
        for (int i = 0; i < d(); ++i) {
            for (int j = 0; j < d(); ++j) {
                // column k may touch row k only, through x_k only
                if (B[k](i, j) != 0.0 && !(i == k && j == k)) return false;
            }
            if (i != k && b[k](i) != 0.0) return false;
        }
    }
    return true;
}

double AffineSdeModel::lipschitz_constant() const {
    validate();
    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(d(), d());
    for (const auto& Bk : B) gram += Bk.transpose() * Bk;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
    const double g_norm = std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
    const double a_norm = svd.singularValues().size() > 0 ? svd.singularValues()(0) : 0.0;
    return std::max(a_norm, g_norm);
}

double AffineSdeModel::linear_growth_constant() const {
    validate();
    double b_sq = 0.0;
    for (const auto& bk : b) b_sq += bk.squaredNorm();
    const double lip = lipschitz_constant();
    return std::max({lip, a.norm(), std::sqrt(b_sq)});
}

SdeModel AffineSdeModel::to_model(std::string label) const {
    validate();
    SdeModel model;
    model.d = d();
    model.m = m();
    model.label = std::move(label);
    model.diagonal_noise = diagonal();
    const AffineSdeModel self = *this;  // captured by value: models are shareable
    model.drift = [self](const Eigen::VectorXd& x, double) -> Eigen::VectorXd {
        return self.A * x + self.a;
    };
    model.diffusion = [self](const Eigen::VectorXd& x, double) -> Eigen::MatrixXd {
        Eigen::MatrixXd g(self.d(), self.m());
        for (int k = 0; k < self.m(); ++k) g.col(k) = self.B[k] * x + self.b[k];
        return g;
    };
    return model;
}

AffineSdeModel langevin(double alpha, double beta) {
    AffineSdeModel aff;
    aff.A = Eigen::MatrixXd::Constant(1, 1, alpha);
    aff.a = Eigen::VectorXd::Zero(1);
    aff.B = {Eigen::MatrixXd::Zero(1, 1)};
    aff.b = {Eigen::VectorXd::Constant(1, beta)};
    return aff;
}

SdeModel make_langevin(double alpha, double beta) {
    return langevin(alpha, beta).to_model("langevin");
}

std::pair<Eigen::VectorXd, Eigen::MatrixXd>
evaluate(const SdeModel& model, const Eigen::VectorXd& x, double t) {
    if (x.size() != model.d) {
        std::ostringstream os;
        os << "evaluate: state has length " << x.size() << ", model '" << model.label
           << "' expects d=" << model.d;
        throw std::invalid_argument(os.str());
    }
    Eigen::VectorXd f = model.drift(x, t);
    Eigen::MatrixXd g = model.diffusion(x, t);
    if (f.size() != model.d)
        throw std::logic_error("evaluate: drift output length differs from d");
    if (g.rows() != model.d || g.cols() != model.m)
        throw std::logic_error("evaluate: diffusion output shape differs from d x m");
    return {std::move(f), std::move(g)};
}

// --- DomainSampler ---------------------------------------------------------

namespace {

// Root of x^(n+1) = x + 1: the generalized golden ratio behind the R_d
// Kronecker sequence.
double plastic_root(int n) {
    double x = 1.5;
    for (int it = 0; it < 64; ++it) x = std::pow(1.0 + x, 1.0 / (n + 1));
    return x;
}

double frac(double v) { return v - std::floor(v); }

} // namespace

DomainSampler::DomainSampler(int d, double r_min, double r_max, double t_min,
                             double t_max, std::uint64_t seed)
    : d_(d), r_min_(r_min), r_max_(r_max), t_min_(t_min), t_max_(t_max), seed_(seed) {
    if (d < 1) throw std::invalid_argument("sampler: dimension must be >= 1");
    if (!(r_min >= 0.0) || !(r_max >= r_min))
        throw std::invalid_argument("sampler: need 0 <= r_min <= r_max");
    if (!(t_min >= 0.0) || !(t_max >= t_min))
        throw std::invalid_argument("sampler: need 0 <= t_min <= t_max");
    // dims: radius + d direction coords + time, twice (two channels for pairs)
    const int dims = 2 * (d + 2);
    const double phi = plastic_root(dims);
    kronecker_alpha_.resize(dims);
    double p = 1.0;
    for (int j = 0; j < dims; ++j) {
        p /= phi;
        kronecker_alpha_[j] = p;
    }
}

double DomainSampler::unit_coord(long i, int channel, int j) const {
    const int dim = channel * (d_ + 2) + j;
    if (i % 2 == 0) {
        const long k = i / 2 + 1;
        return frac(0.5 + static_cast<double>(k) * kronecker_alpha_[dim]);
    }
    const long k = i / 2;
    return rng::uniform01(seed_, static_cast<std::uint64_t>(k),
                          static_cast<std::uint64_t>(channel),
                          static_cast<std::uint64_t>(j));
}

Eigen::VectorXd DomainSampler::direction(long i, int channel) const {
    Eigen::VectorXd v(d_);
    for (int j = 0; j < d_; ++j) {
        double u = unit_coord(i, channel, 1 + j);
        u = std::min(std::max(u, 1e-12), 1.0 - 1e-12);
        v(j) = rng::inverse_normal_cdf(u);
    }
    const double norm = v.norm();
    if (norm < 1e-300) {
        v.setZero();
        v(0) = 1.0;
        return v;
    }
    return v / norm;
}

std::pair<Eigen::VectorXd, double> DomainSampler::point(long i) const {
    const double u_r = unit_coord(i, 0, 0);
    const double radius = r_min_ + (r_max_ - r_min_) * u_r;
    const double u_t = unit_coord(i, 0, d_ + 1);
    const double t = t_min_ + (t_max_ - t_min_) * u_t;
    return {radius * direction(i, 0), t};
}

std::tuple<Eigen::VectorXd, Eigen::VectorXd, double> DomainSampler::pair(long i) const {
    auto [x, t] = point(i);
    const double u_r = unit_coord(i, 1, 0);
    const double radius = r_min_ + (r_max_ - r_min_) * u_r;
    Eigen::VectorXd y = radius * direction(i, 1);
    if ((x - y).norm() == 0.0) {
        y(0) += 1e-9 * (1.0 + std::abs(y(0)));
    }
    return {std::move(x), std::move(y), t};
}

std::string DomainSampler::describe() const {
    std::ostringstream os;
    os << "annulus " << r_min_ << " <= |x| <= " << r_max_ << " (d=" << d_ << "), t in ["
       << t_min_ << ", " << t_max_ << "], seed " << seed_;
    return os.str();
}

// --- regularity checks ------------------------------------------------------

namespace {

void record(RegularityReport& report, Violation v) {
    ++report.violation_count;
    if (report.violations.size() < kMaxStoredViolations)
        report.violations.push_back(std::move(v));
}

} // namespace

RegularityReport check_linear_growth(const SdeModel& model, double C,
                                     const DomainSampler& sampler, long n) {
    if (n < 1) throw std::invalid_argument("check_linear_growth: n must be >= 1");
    if (!(C > 0.0)) throw std::invalid_argument("check_linear_growth: C must be > 0");
    RegularityReport report;
    report.condition = "linear-growth";
    report.C = C;
    report.samples = n;
    for (long i = 0; i < n; ++i) {
        auto [x, t] = sampler.point(i);
        auto [f, g] = evaluate(model, x, t);
        const double bound = C * (1.0 + x.norm());
        if (leq_violated(f.norm(), bound))
            record(report, {x, {}, t, f.norm(), bound, "drift"});
        if (leq_violated(g.norm(), bound))  // Frobenius norm
            record(report, {x, {}, t, g.norm(), bound, "diffusion"});
    }
    report.passed = report.violation_count == 0;
    return report;
}

RegularityReport check_lipschitz(const SdeModel& model, double C,
                                 const DomainSampler& sampler, long n) {
    if (n < 1) throw std::invalid_argument("check_lipschitz: n must be >= 1");
    if (!(C > 0.0)) throw std::invalid_argument("check_lipschitz: C must be > 0");
    RegularityReport report;
    report.condition = "lipschitz";
    report.C = C;
    report.samples = n;
    for (long i = 0; i < n; ++i) {
        auto [x, y, t] = sampler.pair(i);
        auto [fx, gx] = evaluate(model, x, t);
        auto [fy, gy] = evaluate(model, y, t);
        const double bound = C * (x - y).norm();
        if (leq_violated((fx - fy).norm(), bound))
            record(report, {x, y, t, (fx - fy).norm(), bound, "drift"});
        if (leq_violated((gx - gy).norm(), bound))
            record(report, {x, y, t, (gx - gy).norm(), bound, "diffusion"});
    }
    report.passed = report.violation_count == 0;
    return report;
}

} // namespace sdecert
