#pragma once

#include <optional>

#include "lbmlift/field.hpp"
#include "lbmlift/lattice.hpp"

namespace lbmlift {

/// Constrained Runs settings. m is the smoothness order: the (m+1)-th time
/// derivative of the non-conserved moments is driven to zero.
struct CrConfig {
  int m = 0;
  double tol = 1e-13;
  int max_iter = 200;
  /// Scaled by max(1, |v|_inf).
  double jacobian_eps = 1e-7;
  /// Half-width of the local window used when lifting single ghost points.
  /// Defaults to 4 + 3m.
  std::optional<int> locality;

  int window_half_width() const { return locality ? *locality : 4 + 3 * m; }
  void validate() const;
};

/// Where the CR runs happen. In frozen_rim mode the outermost x layer holds
/// fixed equilibrium populations and only interior moments are unknown.
enum class CrDomain { periodic, frozen_rim };

/// One CR application: assemble f from (rho0, phi, xi), take m+1 free LBM
/// steps and extrapolate phi and xi back to t = 0 with the order-m backward
/// formula v' = sum_{j=1}^{m+1} (-1)^(j+1) C(m+1, j) v(j dt). The returned
/// field carries rho0 as its density.
MomentField cr_map(const DensityField& rho0, const MomentField& v, const CrConfig& cfg, const LbmParams& params,
                   CrDomain domain = CrDomain::periodic);

struct CrResult {
  DistributionField f;
  int iterations = 0;
  long lbm_steps = 0;
  bool converged = false;
  /// |v - cr_map(v)|_inf at the returned moments.
  double residual = 0.0;
};

/// Fixed point of cr_map from the equilibrium moments of rho0: Picard for
/// m = 0, Newton with a dense forward-difference Jacobian otherwise. On
/// non-convergence the best iterate is returned with converged = false.
CrResult cr_lift(const DensityField& rho0, const CrConfig& cfg, const LbmParams& params,
                 CrDomain domain = CrDomain::periodic);

/// CR lift of the single node x of a periodic 1D density, computed on a
/// window of cfg.window_half_width() nodes on each side with a frozen rim.
struct CrPointLift {
  std::array<double, 3> f{};
  int iterations = 0;
  long lbm_steps = 0;
  bool converged = false;
};

CrPointLift cr_lift_point(const DensityField& rho, int x, const CrConfig& cfg, const LbmParams& params);

}  // namespace lbmlift
