#pragma once

#include <functional>
#include <vector>

#include "lbmlift/field.hpp"
#include "lbmlift/lattice.hpp"
#include "lbmlift/lifter.hpp"
#include "lbmlift/macro_pde.hpp"

namespace lbmlift {

/// Periodic domain of n cells per axis split along x: the PDE owns columns
/// 0..split, the LBM owns split+1..n-1. In 2D both parts span the full
/// (periodic) y range.
struct HybridSpec {
  int n = 200;
  int split = 100;
  LbmParams params;
  MacroPde pde;
  LifterPtr lifter;
  DensityField initial;
  /// Initialises the full-domain reference LBM; null uses `lifter`.
  LifterPtr reference_lifter;

  Shape shape() const { return params.dimension() == 1 ? Shape{n, 1} : Shape{n, n}; }
  int lbm_columns() const { return n - 1 - split; }
  void validate() const;
};

/// f_lbm has n - split + 1 columns: local column 0 is the ghost at global
/// column split, local n - split the ghost at global column n (= 0).
struct HybridState {
  DensityField rho_pde;
  DistributionField f_lbm;
  long t = 0;
};

HybridState init_hybrid(const HybridSpec& spec, StepCounter* counter = nullptr);

/// Density over the full domain: PDE values and restricted LBM values.
DensityField hybrid_density(const HybridState& state, const HybridSpec& spec);

/// Ghost exchange from time-t data on both sides, then one FTCS step and one
/// stream-collide step.
void hybrid_step(HybridState& state, const HybridSpec& spec, StepCounter* counter = nullptr);

HybridState run_hybrid(const HybridSpec& spec, int steps, StepCounter* counter = nullptr);

struct HybridComparison {
  /// Per step 1..steps.
  std::vector<double> max_error;
  std::vector<double> l2_error;
  /// |rho_hybrid - rho_LBM| at the steps listed in field_steps.
  std::vector<int> field_steps;
  std::vector<DensityField> fields;
  DensityField final_error;
};

/// Runs the hybrid model and a full-domain periodic LBM, initialised with the
/// same lifter, side by side. Error fields are kept every `field_every`
/// steps (0 keeps only the last).
HybridComparison compare_to_reference(const HybridSpec& spec, int steps, StepCounter* counter = nullptr,
                                      int field_every = 0);

/// exp(-|x - c|^2) on a grid of spacing dx, centred in the domain.
DensityField gaussian_density(Shape shape, double dx);

}  // namespace lbmlift
