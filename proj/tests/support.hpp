#pragma once

#include <cmath>
#include <span>

#include "lbmlift/hybrid.hpp"
#include "lbmlift/lattice.hpp"

namespace lbmlift::testing {

/// D1Q3 on L = 10, n = 200, dt = 1e-3, D = 1.
inline LbmParams diffusion_1d(double advection = 0.0) {
  LbmParams p;
  p.dx = 0.05;
  p.dt = 1e-3;
  p.omega = 10.0 / 11.0;
  p.advection = {advection, 0.0};
  return p;
}

/// D2Q5 (dt = 1e-4) or D2Q9 (dt = 1e-5) at n cells per axis on L = 10, omega chosen for D = 1.
inline LbmParams diffusion_2d(VelocitySetId set, int n = 200, std::array<double, 2> advection = {0.0, 0.0}) {
  LbmParams p;
  p.velocity_set = set;
  p.dx = 10.0 / n;
  p.dt = set == VelocitySetId::D2Q5 ? 1e-4 : 1e-5;
  const double cs2 = p.set().sound_speed_sq_factor();
  p.omega = 1.0 / (p.dt / (cs2 * p.dx * p.dx) + 0.5);
  p.advection = advection;
  return p;
}

/// The 1000-step reference state f_c of the restrict-then-lift benchmarks.
inline DistributionField reference_state(const LbmParams& p, int n = 200, int steps = 1000) {
  DistributionField f = equilibrium(gaussian_density(Shape{n, 1}, p.dx), p);
  DistributionField tmp;
  for (int s = 0; s < steps; ++s) {
    stream_collide_into(f, p, Boundary::periodic, std::nullopt, tmp);
    std::swap(f, tmp);
  }
  return f;
}

inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

inline double rel(double value, double expected) { return std::abs(value - expected) / std::abs(expected); }

}  // namespace lbmlift::testing
