#include "lbmlift/lift_cr.hpp"

#include <stdexcept>
#include <string>

#include "lbmlift/fixed_point.hpp"

namespace lbmlift {

void CrConfig::validate() const {
  if (m < 0 || m > 3) throw std::invalid_argument("CrConfig: m must lie in 0..3, got " + std::to_string(m));
  if (!(tol > 0.0)) throw std::invalid_argument("CrConfig: tol must be > 0");
  if (max_iter < 1) throw std::invalid_argument("CrConfig: max_iter must be >= 1");
  if (!(jacobian_eps > 0.0)) throw std::invalid_argument("CrConfig: jacobian_eps must be > 0");
  if (locality && *locality < 1) throw std::invalid_argument("CrConfig: locality must be >= 1");
}

namespace {

void require_d1q3(const LbmParams& params, const Shape& shape) {
  if (params.velocity_set != VelocitySetId::D1Q3) throw std::invalid_argument("Constrained Runs require D1Q3");
  if (shape.ny != 1) throw std::invalid_argument("Constrained Runs require a 1D grid");
}

// (-1)^(j+1) C(m+1, j) for j = 1..m+1.
std::vector<double> extrapolation_weights(int m) {
  std::vector<double> w(m + 1);
  double binom = 1.0;
  for (int j = 1; j <= m + 1; ++j) {
    binom = binom * (m + 2 - j) / j;
    w[j - 1] = (j % 2 == 1 ? 1.0 : -1.0) * binom;
  }
  return w;
}

std::pair<int, int> active_range(const Shape& s, CrDomain domain) {
  return domain == CrDomain::periodic ? std::pair{0, s.nx} : std::pair{1, s.nx - 1};
}

}  // namespace

MomentField cr_map(const DensityField& rho0, const MomentField& v, const CrConfig& cfg, const LbmParams& params,
                   CrDomain domain) {
  require_d1q3(params, rho0.shape());
  if (v.phi.size() != rho0.size() || v.xi.size() != rho0.size())
    throw std::invalid_argument("cr_map: moment and density sizes differ");
  if (domain == CrDomain::frozen_rim && rho0.shape().nx < 3)
    throw std::invalid_argument("cr_map: frozen rim needs at least 3 nodes");

  DistributionField f = from_moments({rho0, v.phi, v.xi});
  Boundary boundary = Boundary::periodic;
  std::optional<GhostRim> rim;
  if (domain == CrDomain::frozen_rim) {
    const auto e = equilibrium_factors(params);
    const int last = rho0.shape().nx - 1;
    for (int i = 0; i < 3; ++i) {
      f.at(i, 0) = e[i] * rho0(0);
      f.at(i, last) = e[i] * rho0(last);
    }
    boundary = Boundary::ghost_fed;
    rim = GhostRim{};
  }

  const auto w = extrapolation_weights(cfg.m);
  DistributionField acc(f.shape(), f.q());
  DistributionField next;
  for (int j = 0; j <= cfg.m; ++j) {
    stream_collide_into(f, params, boundary, rim, next);
    std::swap(f, next);
    auto a = acc.values();
    auto fv = f.values();
    for (std::size_t k = 0; k < a.size(); ++k) a[k] += w[j] * fv[k];
  }
  MomentField out = moments(acc);
  out.rho = rho0;
  return out;
}

CrResult cr_lift(const DensityField& rho0, const CrConfig& cfg, const LbmParams& params, CrDomain domain) {
  cfg.validate();
  params.validate();
  require_d1q3(params, rho0.shape());

  MomentField eq = moments(equilibrium(rho0, params));
  const auto [lo, hi] = active_range(rho0.shape(), domain);
  if (hi <= lo) throw std::invalid_argument("cr_lift: no unknowns");
  const Eigen::Index n = 2 * static_cast<Eigen::Index>(hi - lo);

  auto unpack = [&](const Eigen::VectorXd& x) {
    MomentField m = eq;
    for (int j = lo; j < hi; ++j) {
      m.phi[j] = x[2 * (j - lo)];
      m.xi[j] = x[2 * (j - lo) + 1];
    }
    return m;
  };
  auto pack = [&](const MomentField& m) {
    Eigen::VectorXd x(n);
    for (int j = lo; j < hi; ++j) {
      x[2 * (j - lo)] = m.phi[j];
      x[2 * (j - lo) + 1] = m.xi[j];
    }
    return x;
  };
  FixedPointMap g = [&](const Eigen::VectorXd& x) { return pack(cr_map(rho0, unpack(x), cfg, params, domain)); };

  FixedPointResult fp;
  if (cfg.m == 0) {
    fp = picard_fixed_point(g, pack(eq), cfg.tol, cfg.max_iter);
  } else {
    const double eps_rule = cfg.jacobian_eps;
    fp = newton_fixed_point(g, pack(eq), cfg.tol, cfg.max_iter, [eps_rule](const Eigen::VectorXd& x, Eigen::Index) {
      return eps_rule * std::max(1.0, x.lpNorm<Eigen::Infinity>());
    });
  }

  CrResult res;
  MomentField v = unpack(fp.x);
  res.f = from_moments(v);
  res.iterations = fp.iterations;
  res.lbm_steps = fp.evaluations * (cfg.m + 1);
  res.converged = fp.converged;
  res.residual = fp.residual;
  return res;
}

CrPointLift cr_lift_point(const DensityField& rho, int x, const CrConfig& cfg, const LbmParams& params) {
  require_d1q3(params, rho.shape());
  const int h = cfg.window_half_width();
  const int nx = rho.shape().nx;
  // Window nodes -h-1..h+1 around x; the outermost two form the frozen rim.
  DensityField local(Shape{2 * h + 3, 1});
  for (int j = 0; j < 2 * h + 3; ++j) {
    int g = (x - h - 1 + j) % nx;
    if (g < 0) g += nx;
    local(j) = rho(g);
  }
  CrResult r = cr_lift(local, cfg, params, CrDomain::frozen_rim);
  CrPointLift out;
  for (int i = 0; i < 3; ++i) out.f[i] = r.f.at(i, h + 1);
  out.iterations = r.iterations;
  out.lbm_steps = r.lbm_steps;
  out.converged = r.converged;
  return out;
}

}  // namespace lbmlift
