#include "lbmlift/lift_analytic.hpp"

#include <stdexcept>
#include <string>

namespace lbmlift {

LiftCoefficients analytic_coefficients(const LbmParams& params, int order) {
  params.validate();
  if (order < 0 || order > 3)
    throw std::invalid_argument("analytic_coefficients: order " + std::to_string(order) + " not in 0..3");
  LiftCoefficients coeffs(params);
  if (order == 0) return coeffs;
  if (params.velocity_set != VelocitySetId::D1Q3)
    throw std::invalid_argument("analytic_coefficients: closed forms exist only for D1Q3");
  if (params.has_advection())
    throw std::invalid_argument("analytic_coefficients: closed forms exist only without advection");

  const VelocitySet& set = params.set();
  const double w = params.omega;
  const double dx = params.dx;
  if (w == 0.0) throw std::invalid_argument("analytic_coefficients: omega = 0");

  std::vector<double> alpha(3), beta(3), delta(3);
  for (int i = 0; i < 3; ++i) {
    const double c = set.direction(i)[0];
    alpha[i] = -c * dx / (3.0 * w);
    beta[i] = -dx * dx * (w - 2.0) * (3.0 * c * c - 2.0) / (18.0 * w * w);
    // Third-order term of the exact slow manifold of the lattice scheme.
    delta[i] = c * (w * w - 2.0 * w + 2.0) * dx * dx * dx / (18.0 * w * w * w);
  }
  coeffs.add_spatial({1, 0}, alpha);
  if (order >= 2) coeffs.add_spatial({2, 0}, beta);
  if (order >= 3) coeffs.add_spatial({3, 0}, delta);
  return coeffs;
}

}  // namespace lbmlift
