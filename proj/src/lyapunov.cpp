#include "sdecert/lyapunov.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace sdecert {

LyapunovFunction make_quadratic(const Eigen::MatrixXd& Q, double c0) {
    if (Q.rows() != Q.cols())
        throw std::invalid_argument("make_quadratic: Q must be square");
    if (!Q.isApprox(Q.transpose(), 1e-12))
        throw std::invalid_argument("make_quadratic: Q must be symmetric");
    if (!(c0 >= 0.0))
        throw std::invalid_argument("make_quadratic: constant must be >= 0");
    LyapunovFunction V;
    V.label = "quadratic";
    V.value = [Q, c0](const Eigen::VectorXd& x, double) {
        return x.dot(Q * x) + c0;
    };
    V.time_deriv = [](const Eigen::VectorXd&, double) { return 0.0; };
    V.gradient = [Q](const Eigen::VectorXd& x, double) -> Eigen::VectorXd {
        return 2.0 * (Q * x);
    };
    V.hessian = [Q](const Eigen::VectorXd&, double) -> Eigen::MatrixXd {
        return 2.0 * Q;
    };
    return V;
}

namespace {

void check_point(const LyapunovFunction& V, const Eigen::VectorXd& x, double t,
                 double v, const Eigen::MatrixXd& hess) {
    if (!(v >= 0.0)) {
        std::ostringstream os;
        os << "Lyapunov '" << V.label << "': V(x,t)=" << v << " < 0 at |x|=" << x.norm()
           << ", t=" << t;
        throw std::domain_error(os.str());
    }
    if ((hess - hess.transpose()).cwiseAbs().maxCoeff() > 1e-9)
        throw std::domain_error("Lyapunov '" + V.label +
                                "': Hessian asymmetric beyond 1e-9");
}

} // namespace

double generator(const LyapunovFunction& V, const SdeModel& model,
                 const Eigen::VectorXd& x, double t) {
    auto [f, g] = evaluate(model, x, t);
    const double v = V.value(x, t);
    const Eigen::MatrixXd hess = V.hessian(x, t);
    check_point(V, x, t, v, hess);
    const double vt = V.time_deriv(x, t);
    const Eigen::VectorXd grad = V.gradient(x, t);
    const double trace_term = 0.5 * (g.transpose() * hess * g).trace();
    return vt + grad.dot(f) + trace_term;
}

double diffusion_gradient_norm_sq(const LyapunovFunction& V, const SdeModel& model,
                                  const Eigen::VectorXd& x, double t) {
    auto [f, g] = evaluate(model, x, t);
    (void)f;
    const Eigen::VectorXd row = g.transpose() * V.gradient(x, t);  // (V_x g)^T
    return row.squaredNorm();
}

namespace {

double rel_error(double fd, double analytic) {
    if (fd == analytic) return 0.0;
    return std::abs(fd - analytic) / std::max(std::abs(analytic), 1e-3);
}

} // namespace

DerivativeValidation validate_derivatives(
    const LyapunovFunction& V,
    const std::vector<std::pair<Eigen::VectorXd, double>>& points, double h_base) {
    if (points.empty())
        throw std::invalid_argument("validate_derivatives: points must be nonempty");
    if (!(h_base > 0.0))
        throw std::invalid_argument("validate_derivatives: h must be > 0");

    DerivativeValidation report;
    report.points = static_cast<long>(points.size());

    for (const auto& [x, t_raw] : points) {
        const int d = static_cast<int>(x.size());

        const double ht = h_base * (1.0 + std::abs(t_raw));
        const double t = std::max(t_raw, ht);  // keep t - ht >= 0
        const double fd_t = (V.value(x, t + ht) - V.value(x, t - ht)) / (2.0 * ht);
        report.max_rel_time_deriv =
            std::max(report.max_rel_time_deriv, rel_error(fd_t, V.time_deriv(x, t)));

        const Eigen::VectorXd grad = V.gradient(x, t);
        const Eigen::MatrixXd hess = V.hessian(x, t);
        Eigen::VectorXd h(d);
        for (int j = 0; j < d; ++j) h(j) = h_base * (1.0 + std::abs(x(j)));

        for (int j = 0; j < d; ++j) {
            Eigen::VectorXd xp = x, xm = x;
            xp(j) += h(j);
            xm(j) -= h(j);
            const double fd = (V.value(xp, t) - V.value(xm, t)) / (2.0 * h(j));
            report.max_rel_gradient =
                std::max(report.max_rel_gradient, rel_error(fd, grad(j)));
        }

        const double v0 = V.value(x, t);
        for (int i = 0; i < d; ++i) {
            for (int j = i; j < d; ++j) {
                double fd;
                if (i == j) {
                    Eigen::VectorXd xp = x, xm = x;
                    xp(i) += h(i);
                    xm(i) -= h(i);
                    fd = (V.value(xp, t) - 2.0 * v0 + V.value(xm, t)) / (h(i) * h(i));
                } else {
                    Eigen::VectorXd xpp = x, xpm = x, xmp = x, xmm = x;
                    xpp(i) += h(i); xpp(j) += h(j);
                    xpm(i) += h(i); xpm(j) -= h(j);
                    xmp(i) -= h(i); xmp(j) += h(j);
                    xmm(i) -= h(i); xmm(j) -= h(j);
                    fd = (V.value(xpp, t) - V.value(xpm, t) - V.value(xmp, t) +
                          V.value(xmm, t)) /
                         (4.0 * h(i) * h(j));
                }
                report.max_rel_hessian =
                    std::max(report.max_rel_hessian, rel_error(fd, hess(i, j)));
            }
        }
    }

    report.passed = report.max_rel_time_deriv <= kDerivativeRelTol &&
                    report.max_rel_gradient <= kDerivativeRelTol &&
                    report.max_rel_hessian <= kDerivativeRelTol;
    return report;
}

} // namespace sdecert
