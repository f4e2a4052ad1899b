#include "lbmlift/fixed_point.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace lbmlift {

FixedPointResult picard_fixed_point(const FixedPointMap& g, Eigen::VectorXd x0, double tol, int max_iter) {
  FixedPointResult res;
  res.x = std::move(x0);
  res.residual = std::numeric_limits<double>::infinity();
  for (int it = 0; it <= max_iter; ++it) {
    Eigen::VectorXd gx = g(res.x);
    ++res.evaluations;
    res.residual = (res.x - gx).lpNorm<Eigen::Infinity>();
    if (res.residual <= tol) {
      res.converged = true;
      break;
    }
    if (it == max_iter) break;
    res.x = std::move(gx);
    ++res.iterations;
  }
  return res;
}

FixedPointResult newton_fixed_point(const FixedPointMap& g, Eigen::VectorXd x0, double tol, int max_iter,
                                    const PerturbationRule& eps, int min_iter) {
  const Eigen::Index n = x0.size();
  FixedPointResult res;
  res.x = std::move(x0);
  res.residual = std::numeric_limits<double>::infinity();

  Eigen::VectorXd best = res.x;
  double best_residual = std::numeric_limits<double>::infinity();
  Eigen::MatrixXd jac(n, n);

  for (int it = 0; it <= max_iter; ++it) {
    const Eigen::VectorXd r = res.x - g(res.x);
    ++res.evaluations;
    const double norm = r.lpNorm<Eigen::Infinity>();
    if (!std::isfinite(norm)) break;
    if (norm < best_residual || it <= min_iter) {
      best_residual = norm;
      best = res.x;
    }
    if (norm <= tol && it >= min_iter) {
      res.converged = true;
      break;
    }
    if (it == max_iter) break;

    for (Eigen::Index k = 0; k < n; ++k) {
      Eigen::VectorXd xp = res.x;
      const double h = eps(res.x, k);
      xp[k] += h;
      const Eigen::VectorXd rp = xp - g(xp);
      ++res.evaluations;
      jac.col(k) = (rp - r) / h;
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(jac);
    res.x -= lu.solve(r);
    ++res.iterations;
  }
  res.x = best;
  res.residual = best_residual;
  return res;
}

}  // namespace lbmlift
