#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "lbmlift/field.hpp"

namespace lbmlift {

inline constexpr int kMaxDerivativeOrder = 6;

/// Partial derivative d^(x_order + y_order) / dx^x_order dy^y_order.
struct DerivSpec {
  int x_order = 0;
  int y_order = 0;

  static DerivSpec along(int axis, int order) { return axis == 0 ? DerivSpec{order, 0} : DerivSpec{0, order}; }
  static DerivSpec mixed(int x_order, int y_order) { return {x_order, y_order}; }

  int total_order() const { return x_order + y_order; }
  /// Throws std::invalid_argument for negative orders, zero total order or
  /// total order above kMaxDerivativeOrder.
  void validate() const;
  /// "x2", "y1", "x1y3".
  std::string key() const;
  static DerivSpec from_key(const std::string& key);

  friend bool operator==(const DerivSpec&, const DerivSpec&) = default;
  friend auto operator<=>(const DerivSpec&, const DerivSpec&) = default;
};

/// All derivatives of total order 1..max_order in a d-dimensional expansion,
/// ordered by total order and then by decreasing x order.
std::vector<DerivSpec> expansion_terms(int dimension, int max_order);

/// Minimal-width second-order central stencil for d^k/dx^k (unscaled by dx).
/// weights[j] applies to offset j - half_width.
struct CentralStencil {
  int half_width = 0;
  std::array<double, 2 * kMaxDerivativeOrder + 1> weights{};
};

const CentralStencil& central_stencil(int order);

enum class StencilMode { periodic, interior_only };

/// Tensor-product central difference of rho. In interior_only mode nodes
/// closer than the stencil half-width to a non-periodic edge are set to NaN;
/// both axes are treated as bounded there.
DensityField spatial_derivative(const DensityField& rho, DerivSpec spec, double dx,
                                StencilMode mode = StencilMode::periodic);

/// Same stencil evaluated at a single node with periodic wrap.
double derivative_at(const DensityField& rho, DerivSpec spec, double dx, int x, int y = 0);

/// Finite-difference weights for the derivative of order `order` at `x0`
/// from samples at `nodes` (Fornberg's recursion).
std::vector<double> fd_weights(double x0, std::span<const double> nodes, int order);

/// Forward difference estimate of the order-th time derivative at the first
/// snapshot, using every snapshot supplied (accuracy n - order).
DensityField time_derivative_forward(std::span<const DensityField> snapshots, int order, double dt);

}  // namespace lbmlift
