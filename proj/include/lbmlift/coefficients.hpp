#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lbmlift/field.hpp"
#include "lbmlift/lattice.hpp"
#include "lbmlift/stencil.hpp"

namespace lbmlift {

/// The model parameters a set of expansion coefficients was derived for.
struct ParamsFingerprint {
  VelocitySetId velocity_set = VelocitySetId::D1Q3;
  double omega = 0.0;
  double dx = 0.0;
  double dt = 0.0;
  std::array<double, 2> advection{0.0, 0.0};

  static ParamsFingerprint of(const LbmParams& p) {
    return {p.velocity_set, p.omega, p.dx, p.dt, p.advection};
  }
  bool matches(const LbmParams& p) const { return *this == of(p); }
  friend bool operator==(const ParamsFingerprint&, const ParamsFingerprint&) = default;
};

/// One term of the expansion f_i = f_i^eq + sum_terms c_i * D rho, where D is
/// a spatial derivative or, for time terms, d rho / dt.
struct LiftTerm {
  DerivSpec spec{};
  bool time = false;
  std::vector<double> coeffs;

  std::string key() const { return time ? std::string("t1") : spec.key(); }
  double sum() const;

  friend bool operator==(const LiftTerm&, const LiftTerm&) = default;
};

class LiftCoefficients {
 public:
  LiftCoefficients() = default;
  explicit LiftCoefficients(const LbmParams& params);
  LiftCoefficients(ParamsFingerprint fp, int q);

  const ParamsFingerprint& fingerprint() const { return fingerprint_; }
  int q() const { return q_; }
  const std::vector<LiftTerm>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  /// Throws on duplicates, wrong vector length or non-finite entries.
  void add_spatial(DerivSpec spec, std::vector<double> coeffs);
  void add_time(std::vector<double> coeffs);

  const LiftTerm* find(DerivSpec spec) const;
  const LiftTerm* time_term() const;
  bool has_time_term() const { return time_term() != nullptr; }
  /// Highest total order among spatial terms (0 if none).
  int spatial_order() const;

  /// Copy without the time term.
  LiftCoefficients spatial_only() const;

  /// Throws std::invalid_argument unless the fingerprint matches params.
  void check_params(const LbmParams& params) const;

  void write(std::ostream& os) const;
  static LiftCoefficients read(std::istream& is);
  void save(const std::string& path) const;
  static LiftCoefficients load(const std::string& path);

  friend bool operator==(const LiftCoefficients&, const LiftCoefficients&) = default;

 private:
  void add(LiftTerm term);

  ParamsFingerprint fingerprint_;
  int q_ = 0;
  std::vector<LiftTerm> terms_;
};

/// Periodic lift f = f^eq(rho) + sum_terms coeffs x D rho over the whole
/// field. Time terms are rejected.
DistributionField apply_lift(const DensityField& rho, const LiftCoefficients& coeffs, const LbmParams& params);

/// The same lift evaluated at one node (periodic stencils), written to out[0..q).
void lift_at(const DensityField& rho, const LiftCoefficients& coeffs, const LbmParams& params, int x, int y,
             std::span<double> out);

/// Shortest round-trip decimal for a double.
std::string format_double(double v);
double parse_double(const std::string& text);

}  // namespace lbmlift
