#ifndef SDECERT_LYAPUNOV_HPP
#define SDECERT_LYAPUNOV_HPP

#include "sdecert/model.hpp"

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

namespace sdecert {

/// Candidate function V in C^{2,1} with user-supplied derivatives. The
/// derivatives are the primary path; finite differences only validate them.
struct LyapunovFunction {
    std::function<double(const Eigen::VectorXd&, double)> value;      // V >= 0
    std::function<double(const Eigen::VectorXd&, double)> time_deriv; // dV/dt
    std::function<Eigen::VectorXd(const Eigen::VectorXd&, double)> gradient;
    std::function<Eigen::MatrixXd(const Eigen::VectorXd&, double)> hessian;
    // Optional closed form of the generator for consistency checks.
    std::function<double(const Eigen::VectorXd&, double, const SdeModel&)> analytic_generator;
    std::string label;
};

/// V(x,t) = x^T Q x + c0 with symmetric Q and c0 >= 0.
LyapunovFunction make_quadratic(const Eigen::MatrixXd& Q, double c0 = 0.0);

/// Generator along the model's dynamics:
///   LV = V_t + V_x f + (1/2) trace(g^T V_xx g).
/// Enforces V >= 0 and Hessian symmetry (1e-9 absolute) at the point.
double generator(const LyapunovFunction& V, const SdeModel& model,
                 const Eigen::VectorXd& x, double t);

/// |V_x(x,t) g(x,t)|^2, the squared norm of the noise row vector.
double diffusion_gradient_norm_sq(const LyapunovFunction& V, const SdeModel& model,
                                  const Eigen::VectorXd& x, double t);

struct DerivativeValidation {
    long points = 0;
    double max_rel_time_deriv = 0.0;
    double max_rel_gradient = 0.0;
    double max_rel_hessian = 0.0;
    bool passed = false;  // all three maxima <= 1e-5
};

inline constexpr double kDerivativeRelTol = 1e-5;

/// Central finite differences against the supplied derivatives. The
/// relative error divides by max(|analytic|, 1e-3), so the 1e-5 threshold
/// amounts to |fd - analytic| <= max(1e-5 |analytic|, 1e-8). Time
/// derivatives are evaluated at max(t, h) to stay inside t >= 0.
DerivativeValidation validate_derivatives(
    const LyapunovFunction& V,
    const std::vector<std::pair<Eigen::VectorXd, double>>& points,
    double h_base = 1e-4);

} // namespace sdecert

#endif
