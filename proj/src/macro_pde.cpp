#include "lbmlift/macro_pde.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "lbmlift/coefficients.hpp"

namespace lbmlift {

int MacroPde::stencil_half_width() const {
  int h = 1;
  for (const auto& t : extra) {
    h = std::max(h, central_stencil(t.spec.x_order).half_width);
    h = std::max(h, central_stencil(t.spec.y_order).half_width);
  }
  return h;
}

std::string MacroPde::describe() const {
  std::ostringstream os;
  os << "a = (" << format_double(advection[0]) << ", " << format_double(advection[1])
     << "), D = " << format_double(diffusion);
  for (const auto& t : extra) os << ", " << t.spec.key() << ": " << format_double(t.coeff);
  return os.str();
}

MacroPde analytic_pde(const LbmParams& params) {
  params.validate();
  MacroPde pde;
  pde.advection = params.advection;
  const double cs2 = params.set().sound_speed_sq_factor();
  pde.diffusion = params.omega == 0.0 ? std::numeric_limits<double>::infinity()
                                      : cs2 * (1.0 / params.omega - 0.5) * params.dx * params.dx / params.dt;
  return pde;
}

FtcsStability ftcs_stability(const MacroPde& pde, double dx, double dt, int dimension) {
  FtcsStability s;
  s.diffusion_number = pde.diffusion * dt / (dx * dx);
  s.courant_number = (std::abs(pde.advection[0]) + std::abs(pde.advection[1])) * dt / dx;
  const double limit = 0.5 / dimension;
  if (s.diffusion_number > limit) {
    s.warnings.push_back("diffusion number " + format_double(s.diffusion_number) + " exceeds " +
                         format_double(limit));
  }
  if (s.courant_number > 1.0)
    s.warnings.push_back("Courant number " + format_double(s.courant_number) + " exceeds 1");
  if (!pde.diffusion_positive()) s.warnings.push_back("diffusion coefficient is not positive");
  return s;
}

DensityField ftcs_step(const DensityField& rho, const MacroPde& pde, double dx, double dt, Boundary boundary,
                       std::optional<FtcsGhosts> ghosts) {
  if (!(dx > 0.0) || !(dt > 0.0)) throw std::invalid_argument("ftcs_step: dx and dt must be > 0");
  if (boundary == Boundary::ghost_fed && !ghosts)
    throw std::invalid_argument("ftcs_step: ghost-fed boundary requires ghost densities");
  const Shape s = rho.shape();
  const bool two_d = s.ny > 1;
  const int hw = pde.stencil_half_width();
  int gx = 0, gy = 0;
  if (boundary == Boundary::ghost_fed) {
    if (ghosts->width < hw)
      throw std::invalid_argument("ftcs_step: ghost width " + std::to_string(ghosts->width) +
                                  " is narrower than the stencil half-width " + std::to_string(hw));
    gx = ghosts->x ? ghosts->width : 0;
    gy = ghosts->y && two_d ? ghosts->width : 0;
    if (s.nx <= 2 * gx || (two_d && s.ny <= 2 * gy)) throw std::invalid_argument("ftcs_step: no interior nodes");
  }
  if (s.nx < 3 || (two_d && s.ny < 3)) throw std::invalid_argument("ftcs_step: grid too small");

  const auto wrap = [](int i, int n) { return i < 0 ? i + n : (i >= n ? i - n : i); };
  const double ax = pde.advection[0] * dt / (2.0 * dx);
  const double ay = pde.advection[1] * dt / (2.0 * dx);
  const double nu = pde.diffusion * dt / (dx * dx);

  DensityField out = rho;
  for (int y = gy; y < s.ny - gy; ++y) {
    const int ym = wrap(y - 1, s.ny), yp = wrap(y + 1, s.ny);
    for (int x = gx; x < s.nx - gx; ++x) {
      const int xm = wrap(x - 1, s.nx), xp = wrap(x + 1, s.nx);
      const double c = rho(x, y);
      double d = nu * ((rho(xm, y) - c) + (rho(xp, y) - c)) - ax * (rho(xp, y) - rho(xm, y));
      if (two_d) d += nu * ((rho(x, ym) - c) + (rho(x, yp) - c)) - ay * (rho(x, yp) - rho(x, ym));
      out(x, y) = c + d;
    }
  }
  for (const auto& t : pde.extra) {
    if (t.coeff == 0.0) continue;
    if (t.spec.y_order > 0 && !two_d) throw std::invalid_argument("ftcs_step: y term on a 1D field");
    for (int y = gy; y < s.ny - gy; ++y)
      for (int x = gx; x < s.nx - gx; ++x) out(x, y) += dt * t.coeff * derivative_at(rho, t.spec, dx, x, y);
  }
  return out;
}

}  // namespace lbmlift
