#include "lbmlift/lattice.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace lbmlift {

void LbmParams::validate() const {
  if (!(dx > 0.0) || !std::isfinite(dx)) throw std::invalid_argument("LbmParams: dx must be > 0");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("LbmParams: dt must be > 0");
  if (!(omega >= 0.0 && omega <= 2.0))
    throw std::invalid_argument("LbmParams: omega must lie in [0, 2], got " + std::to_string(omega));
  if (!std::isfinite(advection[0]) || !std::isfinite(advection[1]))
    throw std::invalid_argument("LbmParams: advection must be finite");
  if (dimension() == 1 && advection[1] != 0.0)
    throw std::invalid_argument("LbmParams: 1D velocity set with nonzero y advection");
}

std::vector<double> equilibrium_factors(const LbmParams& params) {
  const VelocitySet& set = params.set();
  std::vector<double> e(set.weights());
  if (!params.has_advection()) return e;

  const double c = params.lattice_speed();
  const double cs2 = set.sound_speed_sq_factor() * c * c;
  const double a2 = params.advection[0] * params.advection[0] + params.advection[1] * params.advection[1];
  for (int i = 0; i < set.q(); ++i) {
    const auto& ci = set.direction(i);
    const double va = c * (ci[0] * params.advection[0] + ci[1] * params.advection[1]);
    e[i] *= 1.0 + va / cs2 + va * va / (2.0 * cs2 * cs2) - a2 / (2.0 * cs2);
  }
  return e;
}

namespace {

void check_shape(const Shape& shape, const LbmParams& params) {
  if (shape.nx < 1 || shape.ny < 1) throw std::invalid_argument("empty grid");
  if (params.dimension() == 1 && shape.ny != 1)
    throw std::invalid_argument("1D velocity set " + std::string(to_string(params.velocity_set)) +
                                " on a grid with ny = " + std::to_string(shape.ny));
}

}  // namespace

DistributionField equilibrium(const DensityField& rho, const LbmParams& params) {
  check_shape(rho.shape(), params);
  const auto e = equilibrium_factors(params);
  DistributionField f(rho.shape(), params.q());
  for (int i = 0; i < params.q(); ++i) {
    auto plane = f.plane(i);
    for (std::size_t n = 0; n < rho.size(); ++n) plane[n] = e[i] * rho[n];
  }
  return f;
}

void stream_collide_into(const DistributionField& f, const LbmParams& params, Boundary boundary,
                         std::optional<GhostRim> rim, DistributionField& out) {
  const VelocitySet& set = params.set();
  if (f.q() != set.q()) throw std::invalid_argument("stream_collide: q mismatch");
  check_shape(f.shape(), params);
  if (boundary == Boundary::ghost_fed && !rim)
    throw std::invalid_argument("stream_collide: ghost-fed boundary requires a ghost rim");

  const Shape s = f.shape();
  const bool rim_x = boundary == Boundary::ghost_fed && rim->x;
  const bool rim_y = boundary == Boundary::ghost_fed && rim->y && set.dimension() == 2;
  if ((rim_x && s.nx < 3) || (rim_y && s.ny < 3))
    throw std::invalid_argument("stream_collide: ghost-fed grid too small for a rim");

  if (out.shape() != s || out.q() != f.q()) out = DistributionField(s, f.q());

  const std::size_t nodes = s.nodes();
  std::vector<double> rho(nodes, 0.0);
  for (int i = 0; i < set.q(); ++i) {
    auto p = f.plane(i);
    for (std::size_t n = 0; n < nodes; ++n) rho[n] += p[n];
  }

  const auto e = equilibrium_factors(params);
  const double w = params.omega;
  const int x0 = rim_x ? 1 : 0, x1 = rim_x ? s.nx - 1 : s.nx;
  const int y0 = rim_y ? 1 : 0, y1 = rim_y ? s.ny - 1 : s.ny;

  for (int i = 0; i < set.q(); ++i) {
    const auto& c = set.direction(i);
    auto src = f.plane(i);
    auto dst = out.plane(i);
    if (rim_x || rim_y) std::copy(src.begin(), src.end(), dst.begin());
    for (int y = y0; y < y1; ++y) {
      int ys = y - c[1];
      if (ys < 0) ys += s.ny;
      else if (ys >= s.ny) ys -= s.ny;
      for (int x = x0; x < x1; ++x) {
        int xs = x - c[0];
        if (xs < 0) xs += s.nx;
        else if (xs >= s.nx) xs -= s.nx;
        const std::size_t from = s.index(xs, ys);
        dst[s.index(x, y)] = (1.0 - w) * src[from] + w * e[i] * rho[from];
      }
    }
  }
}

DistributionField stream_collide(const DistributionField& f, const LbmParams& params, Boundary boundary,
                                 std::optional<GhostRim> rim) {
  DistributionField out;
  stream_collide_into(f, params, boundary, rim, out);
  return out;
}

DensityField restrict_density(const DistributionField& f) {
  DensityField rho(f.shape());
  for (int i = 0; i < f.q(); ++i) {
    auto p = f.plane(i);
    for (std::size_t n = 0; n < f.nodes(); ++n) rho[n] += p[n];
  }
  return rho;
}

MomentField moments(const DistributionField& f) {
  if (f.q() != 3 || f.shape().ny != 1) throw std::invalid_argument("moments: D1Q3 field required");
  const std::size_t n = f.nodes();
  MomentField m{DensityField(f.shape()), std::vector<double>(n), std::vector<double>(n)};
  auto fp = f.plane(0), f0 = f.plane(1), fm = f.plane(2);
  for (std::size_t k = 0; k < n; ++k) {
    m.rho[k] = fp[k] + f0[k] + fm[k];
    m.phi[k] = fp[k] - fm[k];
    m.xi[k] = 0.5 * (fp[k] + fm[k]);
  }
  return m;
}

DistributionField from_moments(const MomentField& m) {
  const std::size_t n = m.rho.size();
  if (m.phi.size() != n || m.xi.size() != n || m.rho.shape().ny != 1)
    throw std::invalid_argument("from_moments: D1Q3 moment field required");
  DistributionField f(m.rho.shape(), 3);
  auto fp = f.plane(0), f0 = f.plane(1), fm = f.plane(2);
  for (std::size_t k = 0; k < n; ++k) {
    fp[k] = m.xi[k] + 0.5 * m.phi[k];
    f0[k] = m.rho[k] - 2.0 * m.xi[k];
    fm[k] = m.xi[k] - 0.5 * m.phi[k];
  }
  return f;
}

double total_mass(const DistributionField& f) {
  double s = 0.0;
  for (double v : f.values()) s += v;
  return s;
}

double total_mass(const DensityField& rho) {
  double s = 0.0;
  for (double v : rho.values()) s += v;
  return s;
}

double l2_distance(const DistributionField& a, const DistributionField& b) {
  if (a.shape() != b.shape() || a.q() != b.q()) throw std::invalid_argument("l2_distance: shape mismatch");
  double s = 0.0;
  auto av = a.values(), bv = b.values();
  for (std::size_t k = 0; k < av.size(); ++k) {
    const double d = av[k] - bv[k];
    s += d * d;
  }
  return std::sqrt(s);
}

}  // namespace lbmlift
