#pragma once

#include <functional>

#include <Eigen/Dense>

namespace lbmlift {

struct FixedPointResult {
  Eigen::VectorXd x;
  /// Infinity norm of x - g(x) at the returned x.
  double residual = 0.0;
  int iterations = 0;
  /// Number of calls to g.
  long evaluations = 0;
  bool converged = false;
};

using FixedPointMap = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;
/// Forward-difference perturbation for coordinate k at x.
using PerturbationRule = std::function<double(const Eigen::VectorXd& x, Eigen::Index k)>;

/// x <- g(x) until |x - g(x)|_inf <= tol.
FixedPointResult picard_fixed_point(const FixedPointMap& g, Eigen::VectorXd x0, double tol, int max_iter);

/// Newton on r(x) = x - g(x) with a dense forward-difference Jacobian
/// (one extra evaluation of g per coordinate). Stops when |r|_inf <= tol,
/// so the returned residual is always a fresh certificate. On failure the
/// iterate with the smallest residual is returned. At least min_iter
/// Newton updates are taken before the residual test applies.
FixedPointResult newton_fixed_point(const FixedPointMap& g, Eigen::VectorXd x0, double tol, int max_iter,
                                    const PerturbationRule& eps, int min_iter = 0);

}  // namespace lbmlift
