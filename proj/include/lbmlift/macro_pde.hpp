#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "lbmlift/field.hpp"
#include "lbmlift/lattice.hpp"
#include "lbmlift/stencil.hpp"

namespace lbmlift {

struct PdeTerm {
  DerivSpec spec;
  double coeff = 0.0;
};

/// rho_t = -a . grad rho + D lap rho + sum_extra coeff * D_spec rho.
/// Analytic PDEs have no extra terms; extracted PDEs may carry the higher
/// order part of the expansion there.
struct MacroPde {
  std::array<double, 2> advection{0.0, 0.0};
  double diffusion = 0.0;
  std::vector<PdeTerm> extra;

  bool diffusion_positive() const { return diffusion > 0.0; }
  /// Widest stencil half-width among all terms (1 for plain advection-diffusion).
  int stencil_half_width() const;
  std::string describe() const;
};

/// a = params.advection, D = (c_s^2 / c^2)(1/omega - 1/2) dx^2 / dt.
MacroPde analytic_pde(const LbmParams& params);

/// Diffusion number, Courant number and plain-language warnings for the
/// explicit scheme; empty warnings when nu <= 1/(2d) and the Courant number is <= 1.
struct FtcsStability {
  double diffusion_number = 0.0;
  double courant_number = 0.0;
  std::vector<std::string> warnings;
};

FtcsStability ftcs_stability(const MacroPde& pde, double dx, double dt, int dimension);

/// Width of the caller-filled ghost frame for ghost-fed FTCS steps. Axes
/// without ghosts are periodic.
struct FtcsGhosts {
  int width = 1;
  bool x = true;
  bool y = false;
};

/// Forward Euler with central differences:
///   rho' = rho + dt (-a . grad rho + D lap rho + extra terms).
/// In ghost-fed mode ghost nodes are copied unchanged and must be at least
/// stencil_half_width() wide.
DensityField ftcs_step(const DensityField& rho, const MacroPde& pde, double dx, double dt,
                       Boundary boundary = Boundary::periodic, std::optional<FtcsGhosts> ghosts = std::nullopt);

}  // namespace lbmlift
