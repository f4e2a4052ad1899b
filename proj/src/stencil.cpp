#include "lbmlift/stencil.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace lbmlift {

void DerivSpec::validate() const {
  if (x_order < 0 || y_order < 0) throw std::invalid_argument("DerivSpec: negative order");
  if (total_order() < 1) throw std::invalid_argument("DerivSpec: total order must be >= 1");
  if (total_order() > kMaxDerivativeOrder)
    throw std::invalid_argument("DerivSpec: total order " + std::to_string(total_order()) + " exceeds " +
                                std::to_string(kMaxDerivativeOrder));
}

std::string DerivSpec::key() const {
  std::string k;
  if (x_order > 0) k += "x" + std::to_string(x_order);
  if (y_order > 0) k += "y" + std::to_string(y_order);
  return k;
}

DerivSpec DerivSpec::from_key(const std::string& key) {
  DerivSpec s;
  std::size_t pos = 0;
  bool any = false;
  while (pos < key.size()) {
    const char axis = key[pos++];
    std::size_t end = pos;
    while (end < key.size() && std::isdigit(static_cast<unsigned char>(key[end]))) ++end;
    if (end == pos || (axis != 'x' && axis != 'y')) throw std::invalid_argument("bad derivative key '" + key + "'");
    const int order = std::stoi(key.substr(pos, end - pos));
    (axis == 'x' ? s.x_order : s.y_order) += order;
    pos = end;
    any = true;
  }
  if (!any) throw std::invalid_argument("empty derivative key");
  s.validate();
  return s;
}

std::vector<DerivSpec> expansion_terms(int dimension, int max_order) {
  if (dimension < 1 || dimension > 2) throw std::invalid_argument("expansion_terms: dimension must be 1 or 2");
  if (max_order < 0 || max_order > kMaxDerivativeOrder)
    throw std::invalid_argument("expansion_terms: order out of range");
  std::vector<DerivSpec> terms;
  for (int k = 1; k <= max_order; ++k) {
    if (dimension == 1) {
      terms.push_back({k, 0});
    } else {
      for (int kx = k; kx >= 0; --kx) terms.push_back({kx, k - kx});
    }
  }
  return terms;
}

namespace {

CentralStencil make(int half, std::initializer_list<double> w) {
  CentralStencil s;
  s.half_width = half;
  int j = 0;
  for (double v : w) s.weights[j++] = v;
  return s;
}

const std::array<CentralStencil, kMaxDerivativeOrder + 1> kStencils = {
    make(0, {1.0}),
    make(1, {-0.5, 0.0, 0.5}),
    make(1, {1.0, -2.0, 1.0}),
    make(2, {-0.5, 1.0, 0.0, -1.0, 0.5}),
    make(2, {1.0, -4.0, 6.0, -4.0, 1.0}),
    make(3, {-0.5, 2.0, -2.5, 0.0, 2.5, -2.0, 0.5}),
    make(3, {1.0, -6.0, 15.0, -20.0, 15.0, -6.0, 1.0}),
};

inline int wrap(int i, int n) {
  i %= n;
  return i < 0 ? i + n : i;
}

// Applies the 1D stencil of `order` along `axis`. Nodes whose stencil leaves
// the grid become NaN unless `periodic`.
DensityField apply_axis(const DensityField& rho, int axis, int order, double dx, bool periodic) {
  if (order == 0) return rho;
  const CentralStencil& st = kStencils[order];
  const Shape s = rho.shape();
  const int n = axis == 0 ? s.nx : s.ny;
  if (n < order + 2)
    throw std::invalid_argument("spatial_derivative: " + std::to_string(n) + " points along axis " +
                                std::to_string(axis) + " is too few for order " + std::to_string(order));
  const double scale = 1.0 / std::pow(dx, order);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  DensityField out(s);
  for (int y = 0; y < s.ny; ++y) {
    for (int x = 0; x < s.nx; ++x) {
      const int pos = axis == 0 ? x : y;
      if (!periodic && (pos < st.half_width || pos >= n - st.half_width)) {
        out(x, y) = nan;
        continue;
      }
      // Differences against the centre value keep constant fields exactly flat.
      const double centre = rho(x, y);
      double acc = 0.0;
      for (int j = -st.half_width; j <= st.half_width; ++j) {
        const double w = st.weights[j + st.half_width];
        if (w == 0.0) continue;
        const int q = wrap(pos + j, n);
        acc += w * ((axis == 0 ? rho(q, y) : rho(x, q)) - centre);
      }
      out(x, y) = acc * scale;
    }
  }
  return out;
}

}  // namespace

const CentralStencil& central_stencil(int order) {
  if (order < 0 || order > kMaxDerivativeOrder)
    throw std::invalid_argument("central_stencil: order " + std::to_string(order) + " unsupported");
  return kStencils[order];
}

DensityField spatial_derivative(const DensityField& rho, DerivSpec spec, double dx, StencilMode mode) {
  spec.validate();
  if (!(dx > 0.0)) throw std::invalid_argument("spatial_derivative: dx must be > 0");
  if (spec.y_order > 0 && rho.shape().ny == 1)
    throw std::invalid_argument("spatial_derivative: y derivative of a 1D field");
  const bool periodic = mode == StencilMode::periodic;
  DensityField d = apply_axis(rho, 0, spec.x_order, dx, periodic);
  return apply_axis(d, 1, spec.y_order, dx, periodic);
}

double derivative_at(const DensityField& rho, DerivSpec spec, double dx, int x, int y) {
  spec.validate();
  const Shape s = rho.shape();
  if (s.nx < spec.x_order + 2 || (spec.y_order > 0 && s.ny < spec.y_order + 2))
    throw std::invalid_argument("derivative_at: grid too small");
  const CentralStencil& sx = kStencils[spec.x_order];
  const CentralStencil& sy = kStencils[spec.y_order];
  const double centre = rho(x, y);
  double acc = 0.0;
  for (int jy = -sy.half_width; jy <= sy.half_width; ++jy) {
    const double wy = sy.weights[jy + sy.half_width];
    if (wy == 0.0) continue;
    const int yy = wrap(y + jy, s.ny);
    for (int jx = -sx.half_width; jx <= sx.half_width; ++jx) {
      const double wx = sx.weights[jx + sx.half_width];
      if (wx == 0.0) continue;
      acc += wx * wy * (rho(wrap(x + jx, s.nx), yy) - centre);
    }
  }
  return acc / std::pow(dx, spec.total_order());
}

std::vector<double> fd_weights(double x0, std::span<const double> nodes, int order) {
  const int n = static_cast<int>(nodes.size());
  if (order < 0 || n < order + 1) throw std::invalid_argument("fd_weights: need at least order + 1 nodes");
  // c[j][k]: weight of node j for derivative k.
  std::vector<std::vector<double>> c(n, std::vector<double>(order + 1, 0.0));
  c[0][0] = 1.0;
  double c1 = 1.0;
  double c4 = nodes[0] - x0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, order);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = nodes[i] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = nodes[i] - nodes[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (int j = 0; j < n; ++j) w[j] = c[j][order];
  return w;
}

DensityField time_derivative_forward(std::span<const DensityField> snapshots, int order, double dt) {
  if (order < 1) throw std::invalid_argument("time_derivative_forward: order must be >= 1");
  if (static_cast<int>(snapshots.size()) < order + 1)
    throw std::invalid_argument("time_derivative_forward: " + std::to_string(snapshots.size()) +
                                " snapshots are too few for order " + std::to_string(order));
  if (!(dt > 0.0)) throw std::invalid_argument("time_derivative_forward: dt must be > 0");
  const Shape s = snapshots[0].shape();
  for (const auto& snap : snapshots)
    if (snap.shape() != s) throw std::invalid_argument("time_derivative_forward: snapshot shapes differ");

  std::vector<double> t(snapshots.size());
  for (std::size_t j = 0; j < t.size(); ++j) t[j] = static_cast<double>(j);
  const auto w = fd_weights(0.0, t, order);
  const double scale = 1.0 / std::pow(dt, order);

  DensityField out(s);
  for (std::size_t j = 1; j < snapshots.size(); ++j) {
    for (std::size_t n = 0; n < out.size(); ++n) out[n] += w[j] * (snapshots[j][n] - snapshots[0][n]);
  }
  for (std::size_t n = 0; n < out.size(); ++n) out[n] *= scale;
  return out;
}

}  // namespace lbmlift
