#pragma once

#include <memory>
#include <string>

#include "lbmlift/coefficients.hpp"
#include "lbmlift/lattice.hpp"
#include "lbmlift/lift_cr.hpp"
#include "lbmlift/lift_nce.hpp"

namespace lbmlift {

/// Extra LBM work spent on lifting, on top of the simulation itself.
struct StepCounter {
  long lbm_steps_training = 0;
  long lbm_steps_init_lift = 0;
  long lbm_steps_ghost_lift = 0;
  long ghost_lifts = 0;
  long ghost_lift_iterations = 0;
  /// Iterative lifts that stopped at max_iter; their best iterate was used.
  long unconverged_lifts = 0;

  long total_extra() const { return lbm_steps_training + lbm_steps_init_lift + lbm_steps_ghost_lift; }
  double steps_per_ghost_lift() const {
    return ghost_lifts == 0 ? 0.0 : static_cast<double>(lbm_steps_ghost_lift) / static_cast<double>(ghost_lifts);
  }
};

/// Maps a density to distribution functions.
class LiftingOperator {
 public:
  virtual ~LiftingOperator() = default;
  virtual std::string name() const = 0;
  /// LBM steps spent once when the operator was built.
  virtual long training_steps() const { return 0; }

  /// Lift of a periodic density over the whole grid.
  virtual DistributionField lift_field(const DensityField& rho, const LbmParams& params,
                                       StepCounter* counter = nullptr) const = 0;

  /// Lift every node of column x of the periodic density `rho` into column
  /// out_x of `out`; counted as one ghost lift per node.
  virtual void lift_column(const DensityField& rho, int x, const LbmParams& params, DistributionField& out,
                           int out_x, StepCounter* counter = nullptr) const = 0;
};

using LifterPtr = std::shared_ptr<const LiftingOperator>;

/// Finite-difference expansion lifters (equilibrium, analytic or trained).
class CoefficientLifter final : public LiftingOperator {
 public:
  CoefficientLifter(LiftCoefficients coeffs, std::string name, long training_steps = 0);

  std::string name() const override { return name_; }
  long training_steps() const override { return training_steps_; }
  const LiftCoefficients& coefficients() const { return coeffs_; }

  DistributionField lift_field(const DensityField& rho, const LbmParams& params,
                               StepCounter* counter = nullptr) const override;
  void lift_column(const DensityField& rho, int x, const LbmParams& params, DistributionField& out, int out_x,
                   StepCounter* counter = nullptr) const override;

 private:
  LiftCoefficients coeffs_;
  std::string name_;
  long training_steps_ = 0;
};

/// Constrained Runs: periodic fixed point for whole fields, local windows
/// with a frozen rim for single columns.
class CrLifter final : public LiftingOperator {
 public:
  explicit CrLifter(CrConfig cfg);

  std::string name() const override;
  const CrConfig& config() const { return cfg_; }

  DistributionField lift_field(const DensityField& rho, const LbmParams& params,
                               StepCounter* counter = nullptr) const override;
  void lift_column(const DensityField& rho, int x, const LbmParams& params, DistributionField& out, int out_x,
                   StepCounter* counter = nullptr) const override;

 private:
  CrConfig cfg_;
};

LifterPtr make_equilibrium_lifter(const LbmParams& params);
LifterPtr make_analytic_lifter(const LbmParams& params, int order);
LifterPtr make_cr_lifter(const CrConfig& cfg);
/// Trains the expansion and keeps the training cost.
LifterPtr make_nce_lifter(const NceTrainConfig& cfg, const LbmParams& params);
LifterPtr make_coefficient_lifter(LiftCoefficients coeffs, std::string name, long training_steps = 0);

}  // namespace lbmlift
