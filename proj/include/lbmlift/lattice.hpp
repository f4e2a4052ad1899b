#pragma once

#include <array>
#include <optional>
#include <vector>

#include "lbmlift/field.hpp"
#include "lbmlift/velocity_set.hpp"

namespace lbmlift {

/// BGK lattice Boltzmann model parameters.
struct LbmParams {
  VelocitySetId velocity_set = VelocitySetId::D1Q3;
  double dx = 0.05;
  double dt = 0.001;
  double omega = 1.0;
  /// Uniform advection velocity in physical units (only the first
  /// `dimension` components are used).
  std::array<double, 2> advection{0.0, 0.0};

  const VelocitySet& set() const { return VelocitySet::get(velocity_set); }
  int dimension() const { return set().dimension(); }
  int q() const { return set().q(); }
  double lattice_speed() const { return dx / dt; }
  bool has_advection() const { return advection[0] != 0.0 || advection[1] != 0.0; }

  /// Throws std::invalid_argument on dx <= 0, dt <= 0, omega outside [0, 2]
  /// or non-finite advection.
  void validate() const;

  friend bool operator==(const LbmParams&, const LbmParams&) = default;
};

/// Per-direction factor e_i such that f_i^eq = e_i * rho. For zero advection
/// this is the weight w_i; otherwise the second-order polynomial equilibrium
///   e_i = w_i (1 + v_i.a / cs^2 + (v_i.a)^2 / (2 cs^4) - a^2 / (2 cs^2)),
/// with v_i = c_i dx/dt, which satisfies sum e_i = 1 and sum v_i e_i = a.
std::vector<double> equilibrium_factors(const LbmParams& params);

DistributionField equilibrium(const DensityField& rho, const LbmParams& params);

enum class Boundary { periodic, ghost_fed };

/// Which axes carry a width-1 ghost rim in ghost-fed mode. Axes without a rim
/// are periodic.
struct GhostRim {
  bool x = true;
  bool y = false;
};

/// One BGK stream-collide step:
///   f_i(x + c_i dx, t + dt) = (1 - omega) f_i(x, t) + omega f_i^eq(x, t).
///
/// In ghost-fed mode the outermost layer of `f` along each rimmed axis holds
/// caller-supplied ghost distributions. Ghost nodes are collided and streamed
/// into the interior; their values are copied unchanged to the output.
DistributionField stream_collide(const DistributionField& f, const LbmParams& params,
                                 Boundary boundary = Boundary::periodic,
                                 std::optional<GhostRim> rim = std::nullopt);

/// Allocation-free variant; `out` is resized when its shape differs.
void stream_collide_into(const DistributionField& f, const LbmParams& params, Boundary boundary,
                         std::optional<GhostRim> rim, DistributionField& out);

/// Zeroth moment per node.
DensityField restrict_density(const DistributionField& f);

/// D1Q3 moments (rho, phi, xi) with phi = sum c_i f_i and xi = 1/2 sum c_i^2 f_i,
/// using dimensionless velocities.
struct MomentField {
  DensityField rho;
  std::vector<double> phi;
  std::vector<double> xi;
};

MomentField moments(const DistributionField& f);
DistributionField from_moments(const MomentField& m);

/// sum over nodes and directions.
double total_mass(const DistributionField& f);
double total_mass(const DensityField& rho);

/// Flat Euclidean norm of the difference over all nodes and directions.
double l2_distance(const DistributionField& a, const DistributionField& b);

}  // namespace lbmlift
