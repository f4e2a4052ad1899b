#pragma once

#include "lbmlift/coefficients.hpp"
#include "lbmlift/lattice.hpp"

namespace lbmlift {

/// Closed-form Chapman-Enskog coefficients of the diffusive D1Q3 model up to
/// the given spatial order (0..3). Order 0 is the equilibrium itself and is
/// available for any velocity set and advection.
LiftCoefficients analytic_coefficients(const LbmParams& params, int order);

}  // namespace lbmlift
