#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lbmlift/hybrid.hpp"
#include "lbmlift/lattice.hpp"
#include "lbmlift/lifter.hpp"
#include "lbmlift/lift_cr.hpp"
#include "lbmlift/lift_nce.hpp"

namespace lbmlift {

enum class ExperimentKind { lift_bench, hybrid, train, cost };

std::string_view to_string(ExperimentKind kind);

/// Flat `key = value` configuration with `#` comments.
class ConfigFile {
 public:
  static ConfigFile parse(std::istream& in, const std::string& origin = "<config>");
  static ConfigFile load(const std::filesystem::path& path);

  /// Applies a `key=value` override.
  void set(const std::string& assignment);
  bool has(const std::string& key) const { return values_.count(key) > 0; }
  std::optional<std::string> get(const std::string& key) const;
  const std::map<std::string, std::string>& values() const { return values_; }
  int line_of(const std::string& key) const;
  const std::string& origin() const { return origin_; }

 private:
  std::string origin_;
  std::map<std::string, std::string> values_;
  std::map<std::string, int> lines_;
};

enum class LifterKind { equilibrium, analytic, cr, nce, file };
enum class ReferenceInit { manifold, same };

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::lift_bench;
  LbmParams params;
  int n = 200;
  double length = 10.0;
  int reference_steps = 1000;

  LifterKind lifter = LifterKind::equilibrium;
  int analytic_order = 2;
  CrConfig cr;
  NceTrainConfig nce;
  std::string coefficients_path;

  bool extracted_pde = false;
  ExtractionMode extraction = ExtractionMode::summation;
  int steps = 200;
  std::optional<int> split;
  ReferenceInit reference = ReferenceInit::manifold;
  int field_every = 0;

  static ExperimentConfig from(const ConfigFile& file);
  int split_index() const { return split ? *split : n / 2; }
  Shape shape() const { return params.dimension() == 1 ? Shape{n, 1} : Shape{n, n}; }
};

/// Builds the configured lifting operator. NCE training cost is carried by
/// the returned operator.
LifterPtr build_lifter(const ExperimentConfig& cfg);
std::string lifter_label(const ExperimentConfig& cfg);

/// Reference f_c after cfg.reference_steps periodic LBM steps from the
/// equilibrium of the initial Gaussian.
DistributionField lift_bench_reference(const ExperimentConfig& cfg);

/// |lift(restrict(f_c)) - f_c| in the flat 2-norm.
double lift_restrict_error(const ExperimentConfig& cfg);
double lift_restrict_error(const ExperimentConfig& cfg, const LiftingOperator& lifter,
                           const DistributionField& reference);

/// The lifter used to start the reference LBM on the slow manifold.
LifterPtr manifold_reference_lifter(const LbmParams& params);

HybridSpec build_hybrid_spec(const ExperimentConfig& cfg, LifterPtr lifter);

/// Writes the experiment's CSV / text artifacts into `out_dir` and a short
/// summary to `log`.
void run_experiment(const ExperimentConfig& cfg, const std::filesystem::path& out_dir, std::ostream& log);

}  // namespace lbmlift
