#include "lbmlift/lifter.hpp"

#include <stdexcept>
#include <vector>

#include "lbmlift/lift_analytic.hpp"

namespace lbmlift {

CoefficientLifter::CoefficientLifter(LiftCoefficients coeffs, std::string name, long training_steps)
    : coeffs_(coeffs.spatial_only()), name_(std::move(name)), training_steps_(training_steps) {}

DistributionField CoefficientLifter::lift_field(const DensityField& rho, const LbmParams& params,
                                                StepCounter*) const {
  return apply_lift(rho, coeffs_, params);
}

void CoefficientLifter::lift_column(const DensityField& rho, int x, const LbmParams& params, DistributionField& out,
                                    int out_x, StepCounter* counter) const {
  const int q = params.q();
  std::vector<double> f(q);
  for (int y = 0; y < rho.shape().ny; ++y) {
    lift_at(rho, coeffs_, params, x, y, f);
    for (int i = 0; i < q; ++i) out.at(i, out_x, y) = f[i];
  }
  if (counter) counter->ghost_lifts += rho.shape().ny;
}

CrLifter::CrLifter(CrConfig cfg) : cfg_(cfg) { cfg_.validate(); }

std::string CrLifter::name() const {
  static const char* names[] = {"cr_constant", "cr_linear", "cr_quadratic", "cr_cubic"};
  return names[cfg_.m];
}

DistributionField CrLifter::lift_field(const DensityField& rho, const LbmParams& params, StepCounter* counter) const {
  CrResult r = cr_lift(rho, cfg_, params);
  if (counter) {
    counter->lbm_steps_init_lift += r.lbm_steps;
    if (!r.converged) ++counter->unconverged_lifts;
  }
  return std::move(r.f);
}

void CrLifter::lift_column(const DensityField& rho, int x, const LbmParams& params, DistributionField& out,
                           int out_x, StepCounter* counter) const {
  if (rho.shape().ny != 1) throw std::invalid_argument("Constrained Runs lifting is 1D only");
  const CrPointLift r = cr_lift_point(rho, x, cfg_, params);
  for (int i = 0; i < 3; ++i) out.at(i, out_x) = r.f[i];
  if (counter) {
    counter->lbm_steps_ghost_lift += r.lbm_steps;
    counter->ghost_lift_iterations += r.iterations;
    ++counter->ghost_lifts;
    if (!r.converged) ++counter->unconverged_lifts;
  }
}

LifterPtr make_equilibrium_lifter(const LbmParams& params) {
  return std::make_shared<CoefficientLifter>(LiftCoefficients(params), "equilibrium");
}

LifterPtr make_analytic_lifter(const LbmParams& params, int order) {
  if (order == 0) return make_equilibrium_lifter(params);
  return std::make_shared<CoefficientLifter>(analytic_coefficients(params, order), "ce_order" + std::to_string(order));
}

LifterPtr make_cr_lifter(const CrConfig& cfg) { return std::make_shared<CrLifter>(cfg); }

LifterPtr make_nce_lifter(const NceTrainConfig& cfg, const LbmParams& params) {
  NceTrainResult r = train_coefficients(cfg, params);
  if (!r.converged)
    throw std::runtime_error("numerical Chapman-Enskog training did not converge (residual " +
                             std::to_string(r.residual) + ")");
  return std::make_shared<CoefficientLifter>(std::move(r.coeffs),
                                             "nce_R" + std::to_string(cfg.spatial_order) + "_m" + std::to_string(cfg.m),
                                             r.lbm_steps);
}

LifterPtr make_coefficient_lifter(LiftCoefficients coeffs, std::string name, long training_steps) {
  return std::make_shared<CoefficientLifter>(std::move(coeffs), std::move(name), training_steps);
}

}  // namespace lbmlift
