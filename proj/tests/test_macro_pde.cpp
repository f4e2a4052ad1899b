#include <doctest.h>

#include <cmath>
#include <numbers>

#include "lbmlift/macro_pde.hpp"
#include "support.hpp"

using namespace lbmlift;
using lbmlift::testing::diffusion_1d;
using lbmlift::testing::diffusion_2d;

TEST_CASE("analytic PDE of the test models has unit diffusion") {
  CHECK(analytic_pde(diffusion_1d()).diffusion == doctest::Approx(1.0).epsilon(1e-14));
  for (int n : {100, 200}) {
    CHECK(analytic_pde(diffusion_2d(VelocitySetId::D2Q5, n)).diffusion == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(analytic_pde(diffusion_2d(VelocitySetId::D2Q9, n)).diffusion == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(diffusion_2d(VelocitySetId::D2Q5).omega == doctest::Approx(2 / 1.24).epsilon(1e-14));
  CHECK(diffusion_2d(VelocitySetId::D2Q9).omega == doctest::Approx(2 / 1.024).epsilon(1e-14));
  CHECK(analytic_pde(diffusion_1d(0.66)).advection[0] == 0.66);
  CHECK(analytic_pde(diffusion_1d()).stencil_half_width() == 1);
}

TEST_CASE("FTCS multiplies a Fourier mode by its amplification factor") {
  const int n = 64;
  const double dx = 0.1, dt = 0.002;
  MacroPde pde;
  pde.diffusion = 0.8;
  pde.advection = {1.5, 0.0};
  const int k = 5;
  const double kx = 2 * std::numbers::pi * k / n;
  DensityField rho(Shape{n, 1});
  for (int x = 0; x < n; ++x) rho(x) = std::cos(kx * x);
  const DensityField out = ftcs_step(rho, pde, dx, dt);
  const double nu = pde.diffusion * dt / (dx * dx);
  const double g = 1.0 - 4.0 * nu * std::sin(kx / 2) * std::sin(kx / 2);
  const double s = pde.advection[0] * dt / dx * std::sin(kx);
  for (int x = 0; x < n; ++x) CHECK(out(x) == doctest::Approx(g * std::cos(kx * x) + s * std::sin(kx * x)).epsilon(1e-13));
}

TEST_CASE("FTCS preserves uniform fields and periodic mass") {
  const LbmParams p = diffusion_2d(VelocitySetId::D2Q9, 40, {1.0, 0.5});
  MacroPde pde = analytic_pde(p);
  pde.extra.push_back({{2, 2}, 1e-4});
  const DensityField flat(Shape{40, 40}, 1.7);
  CHECK(lbmlift::testing::max_abs_diff(ftcs_step(flat, pde, p.dx, p.dt).values(), flat.values()) == 0.0);
  const DensityField g = gaussian_density(Shape{40, 40}, p.dx);
  CHECK(total_mass(ftcs_step(g, pde, p.dx, p.dt)) == doctest::Approx(total_mass(g)).epsilon(1e-13));
}

TEST_CASE("ghost-fed FTCS") {
  MacroPde pde;
  pde.diffusion = 1.0;
  DensityField rho(Shape{10, 1});
  for (int x = 0; x < 10; ++x) rho(x) = x * x;
  CHECK_THROWS_AS(ftcs_step(rho, pde, 1.0, 0.1, Boundary::ghost_fed), std::invalid_argument);
  const DensityField out = ftcs_step(rho, pde, 1.0, 0.1, Boundary::ghost_fed, FtcsGhosts{});
  CHECK(out(0) == rho(0));
  CHECK(out(9) == rho(9));
  for (int x = 1; x < 9; ++x) CHECK(out(x) == doctest::Approx(rho(x) + 0.2));
  pde.extra.push_back({{4, 0}, 1.0});
  CHECK(pde.stencil_half_width() == 2);
  CHECK_THROWS_AS(ftcs_step(rho, pde, 1.0, 0.1, Boundary::ghost_fed, FtcsGhosts{}), std::invalid_argument);
  CHECK_NOTHROW(ftcs_step(rho, pde, 1.0, 0.1, Boundary::ghost_fed, FtcsGhosts{2}));
}

TEST_CASE("stability report") {
  const LbmParams p = diffusion_1d();
  const FtcsStability ok = ftcs_stability(analytic_pde(p), p.dx, p.dt, 1);
  CHECK(ok.diffusion_number == doctest::Approx(0.4));
  CHECK(ok.warnings.empty());
  MacroPde bad;
  bad.diffusion = -1.0;
  bad.advection = {100.0, 0.0};
  CHECK(ftcs_stability(bad, 0.05, 1e-3, 1).warnings.size() == 2);
  bad.diffusion = 2.0;
  CHECK(ftcs_stability(bad, 0.05, 1e-3, 2).warnings.size() == 2);
  CHECK(!analytic_pde(p).describe().empty());
}
