#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace lbmlift {

enum class VelocitySetId { D1Q3, D2Q5, D2Q9 };

std::string_view to_string(VelocitySetId id);
VelocitySetId velocity_set_from_string(std::string_view name);

/// Discrete velocity stencil of a DdQq lattice.
///
/// Directions are dimensionless lattice vectors; the physical velocity of
/// direction i is c_i * dx / dt. The rest direction (c = 0) is always present
/// and its index is exposed through rest_index().
class VelocitySet {
 public:
  static const VelocitySet& d1q3();
  static const VelocitySet& d2q5();
  static const VelocitySet& d2q9();
  static const VelocitySet& get(VelocitySetId id);

  VelocitySetId id() const { return id_; }
  int dimension() const { return dimension_; }
  int q() const { return static_cast<int>(directions_.size()); }
  const std::array<int, 2>& direction(int i) const { return directions_[i]; }
  double weight(int i) const { return weights_[i]; }
  const std::vector<double>& weights() const { return weights_; }
  /// c_s^2 / c^2 with c = dx/dt.
  double sound_speed_sq_factor() const { return cs2_factor_; }
  int rest_index() const { return rest_; }

 private:
  VelocitySet(VelocitySetId id, int dimension, std::vector<std::array<int, 2>> directions,
              std::vector<double> weights, double cs2_factor);

  VelocitySetId id_;
  int dimension_;
  std::vector<std::array<int, 2>> directions_;
  std::vector<double> weights_;
  double cs2_factor_;
  int rest_ = 0;
};

}  // namespace lbmlift
