#pragma once

#include <functional>
#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "lbmlift/coefficients.hpp"
#include "lbmlift/lattice.hpp"
#include "lbmlift/macro_pde.hpp"

namespace lbmlift {

/// Test density as a function of position measured from the start of the
/// test domain.
using TestDensity = std::function<double(double x, double y)>;

/// Settings of the numerical Chapman-Enskog trainer.
struct NceTrainConfig {
  /// Highest spatial derivative order R of the expansion (1..6).
  int spatial_order = 2;
  /// Smoothness order of the extrapolation inside one coefficient update.
  int m = 1;
  /// Number of cells n_test of the test domain per axis.
  int test_cells = 60;
  /// Physical length of the test domain; 0 means test_cells * dx.
  double test_length = 0.0;
  /// Indices into the test domain (per axis in 2D). Empty selects evenly
  /// spaced probes 10, 20, ... (closer when the domain is short).
  std::vector<int> probe_indices;
  double newton_tol = 1e-11;
  int max_newton_iter = 20;
  /// Newton updates taken before the residual test applies; the first
  /// update from zero carries the finite-difference Jacobian error.
  int min_newton_iter = 2;
  /// Scaled by max(1, |a_k|) per coordinate.
  double jacobian_eps = 1e-8;
  /// Test densities. Empty selects sum_{k=1}^{R} u^k / k! with u = x in 1D,
  /// and in 2D the R+1 directional variants u = x cos(t_j) + y sin(t_j),
  /// t_j = j pi / (R+1).
  std::vector<TestDensity> test_densities;
  /// LBM steps used to estimate d rho / dt in the augmentation (forward
  /// difference over steps+1 snapshots).
  int time_steps = 1;
  /// Systems with a larger 2-norm condition number are rejected.
  double max_condition = 1e12;

  /// Buffer cells added on each side of the test domain.
  int buffer() const { return m + 3; }
  std::vector<int> probes() const;
  void validate(const LbmParams& params) const;
};

/// The periodic test problem: buffered test grid, test densities, probe
/// nodes and the derivative matrix B (rows: density x probe, columns: terms).
class NceProblem {
 public:
  NceProblem(NceTrainConfig cfg, LbmParams params);

  const NceTrainConfig& config() const { return cfg_; }
  const LbmParams& params() const { return params_; }
  const std::vector<DerivSpec>& terms() const { return terms_; }
  const Eigen::MatrixXd& derivative_matrix() const { return b_; }
  double condition_number() const { return condition_; }
  int unknowns() const { return static_cast<int>(terms_.size()) * params_.q(); }
  long lbm_steps() const { return steps_; }

  /// One coefficient update: lift each test density, take m+1 free LBM
  /// steps, extrapolate back to t = 0, restore the density through the rest
  /// population and solve B x_i = (f_i - f_i^eq) at the probes.
  LiftCoefficients h_map(const LiftCoefficients& coeffs);

  Eigen::VectorXd pack(const LiftCoefficients& coeffs) const;
  LiftCoefficients unpack(const Eigen::VectorXd& x) const;

  /// Lifted test states and the LBM steps taken from them.
  std::vector<DistributionField> lift_tests(const LiftCoefficients& coeffs) const;
  DistributionField step(const DistributionField& f);
  double probe_value(const DensityField& rho, int row) const;
  const std::vector<DensityField>& densities() const { return rho_; }
  int rows() const { return static_cast<int>(b_.rows()); }
  int probe_node(int row) const;

 private:
  NceTrainConfig cfg_;
  LbmParams params_;
  Shape shape_;
  std::vector<DerivSpec> terms_;
  std::vector<DensityField> rho_;
  std::vector<std::size_t> probe_nodes_;
  Eigen::MatrixXd b_;
  std::unique_ptr<Eigen::ColPivHouseholderQR<Eigen::MatrixXd>> qr_;
  double condition_ = 0.0;
  long steps_ = 0;
};

LiftCoefficients h_map(const LiftCoefficients& coeffs, const NceTrainConfig& cfg, const LbmParams& params);

struct NceTrainResult {
  LiftCoefficients coeffs;
  int iterations = 0;
  long lbm_steps = 0;
  bool converged = false;
  /// |a - h_map(a)|_inf at the returned coefficients.
  double residual = 0.0;
  double condition_number = 0.0;
};

/// Newton on r(a) = a - h_map(a) from a = 0.
NceTrainResult train_coefficients(const NceTrainConfig& cfg, const LbmParams& params);

/// Probe system with the time-derivative column appended:
///   [B | rho_t] (a_i ; gamma_i) = f_i - f_i^eq   for every velocity i.
struct LinearLiftSystem {
  Eigen::MatrixXd block;
  std::vector<Eigen::VectorXd> rhs;
  std::vector<DerivSpec> terms;
  double sigma_min = 0.0;
  double sigma_max = 0.0;
  /// Right singular vector of sigma_min.
  Eigen::VectorXd null_vector;
  /// Number of singular values below 1e-8 sigma_max, counting the columns
  /// in excess of rows.
  int nullity = 0;

  /// Block-diagonal expansion over velocities with unknowns laid out
  /// velocity-major (terms then gamma for each velocity).
  Eigen::MatrixXd dense_matrix() const;
  Eigen::VectorXd dense_rhs() const;
};

struct TimeAugmentation {
  LiftCoefficients coeffs;
  LinearLiftSystem system;
  long lbm_steps = 0;
};

/// Adds the time-derivative vector gamma. The enlarged system is singular
/// (rho_t is itself a combination of the spatial columns), so gamma is fixed
/// to the leading BGK value -(dt/omega) f_i^eq / rho and the spatial vectors
/// are re-solved by least squares.
TimeAugmentation augment_time_derivative(const LiftCoefficients& coeffs, const NceTrainConfig& cfg,
                                         const LbmParams& params);

enum class ExtractionMode { summation, nullspace };

/// Summation: sum the expansion over velocities, p_k = -sum_i a_ik / sum_i gamma_i.
/// Nullspace: p_k = -n_k / n_gamma from the null vector of the system.
/// rho_t = sum_k p_k D_k rho is returned as a MacroPde with a = -p(first
/// derivatives), D = p(xx) and the remaining terms as extras.
MacroPde extract_pde(const LiftCoefficients& coeffs_with_time, ExtractionMode mode,
                     const LinearLiftSystem* system = nullptr);

/// The raw rate coefficients p_k in the order of `terms`.
std::vector<double> extract_rates(const LiftCoefficients& coeffs_with_time, ExtractionMode mode,
                                  const LinearLiftSystem* system = nullptr);

}  // namespace lbmlift
