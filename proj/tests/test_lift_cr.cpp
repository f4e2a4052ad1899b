#include <doctest.h>

#include "lbmlift/lift_cr.hpp"
#include "support.hpp"

using namespace lbmlift;
using lbmlift::testing::diffusion_1d;
using lbmlift::testing::rel;

TEST_CASE("cr_map keeps the density") {
  const LbmParams p = diffusion_1d();
  const DensityField rho = gaussian_density(Shape{200, 1}, p.dx);
  MomentField v = moments(equilibrium(rho, p));
  for (int m = 0; m <= 3; ++m) {
    CrConfig cfg;
    cfg.m = m;
    const MomentField out = cr_map(rho, v, cfg, p);
    CHECK(lbmlift::testing::max_abs_diff(out.rho.values(), rho.values()) == 0.0);
  }
}

TEST_CASE("constant CR lift is stationary over one LBM step") {
  const LbmParams p = diffusion_1d();
  const DensityField rho = restrict_density(lbmlift::testing::reference_state(p));
  const CrResult r = cr_lift(rho, CrConfig{}, p);
  REQUIRE(r.converged);
  CHECK(r.residual <= 1e-13);
  CHECK(r.lbm_steps >= r.iterations);
  const MomentField before = moments(r.f);
  const MomentField after = moments(stream_collide(r.f, p));
  CHECK(lbmlift::testing::max_abs_diff(before.phi, after.phi) <= 1e-12);
  CHECK(lbmlift::testing::max_abs_diff(before.xi, after.xi) <= 1e-12);
}

TEST_CASE("CR restrict-then-lift errors") {
  const LbmParams p = diffusion_1d();
  const DistributionField fc = lbmlift::testing::reference_state(p);
  const DensityField rho = restrict_density(fc);
  CrConfig c0;
  CHECK(rel(l2_distance(cr_lift(rho, c0, p).f, fc), 0.0010) <= 0.10);
  CrConfig c1;
  c1.m = 1;
  const CrResult r1 = cr_lift(rho, c1, p);
  CHECK(r1.converged);
  CHECK(r1.lbm_steps % 2 == 0);
  CHECK(rel(l2_distance(r1.f, fc), 1.3578e-6) <= 0.10);
}

TEST_CASE("local CR lift agrees with the periodic lift") {
  const LbmParams p = diffusion_1d();
  const DensityField rho = restrict_density(lbmlift::testing::reference_state(p));
  for (int m = 0; m <= 3; ++m) {
    CrConfig cfg;
    cfg.m = m;
    const CrResult full = cr_lift(rho, cfg, p);
    for (int x : {0, 100, 137}) {
      const CrPointLift pt = cr_lift_point(rho, x, cfg, p);
      CAPTURE(m);
      CHECK(pt.converged);
      CHECK(pt.lbm_steps >= (m + 1) * pt.iterations);
      double sum = 0.0;
      for (int i = 0; i < 3; ++i) {
        CHECK(std::abs(pt.f[i] - full.f.at(i, x)) <= 2e-7);
        sum += pt.f[i];
      }
      CHECK(sum == doctest::Approx(rho(x)).epsilon(1e-14));
    }
  }
}

TEST_CASE("CR configuration checks") {
  CrConfig c;
  c.m = 4;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = CrConfig{};
  c.locality = 0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  CHECK(CrConfig{}.window_half_width() == 4);
  const LbmParams p2 = lbmlift::testing::diffusion_2d(VelocitySetId::D2Q5, 20);
  CHECK_THROWS_AS(cr_lift(DensityField(Shape{20, 20}, 1.0), CrConfig{}, p2), std::invalid_argument);
}
