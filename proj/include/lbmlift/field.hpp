#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace lbmlift {

/// Rectangular grid extent. One-dimensional grids have ny == 1.
struct Shape {
  int nx = 0;
  int ny = 1;

  std::size_t nodes() const { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }
  std::size_t index(int x, int y = 0) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(nx) + static_cast<std::size_t>(x);
  }
  friend bool operator==(const Shape&, const Shape&) = default;
};

/// Scalar value per grid node (particle density rho).
class DensityField {
 public:
  DensityField() = default;
  explicit DensityField(Shape shape, double fill = 0.0)
      : shape_(shape), values_(shape.nodes(), fill) {}
  DensityField(Shape shape, std::vector<double> values) : shape_(shape), values_(std::move(values)) {
    if (values_.size() != shape_.nodes()) throw std::invalid_argument("DensityField: size mismatch");
  }

  const Shape& shape() const { return shape_; }
  std::size_t size() const { return values_.size(); }

  double& operator()(int x, int y = 0) { return values_[shape_.index(x, y)]; }
  double operator()(int x, int y = 0) const { return values_[shape_.index(x, y)]; }
  double& operator[](std::size_t n) { return values_[n]; }
  double operator[](std::size_t n) const { return values_[n]; }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }

 private:
  Shape shape_;
  std::vector<double> values_;
};

/// Per-node vector of q distribution values, stored direction-major
/// (structure of arrays) so that streaming is a shift of one contiguous plane.
class DistributionField {
 public:
  DistributionField() = default;
  DistributionField(Shape shape, int q, double fill = 0.0)
      : shape_(shape), q_(q), values_(shape.nodes() * static_cast<std::size_t>(q), fill) {}

  const Shape& shape() const { return shape_; }
  int q() const { return q_; }
  std::size_t nodes() const { return shape_.nodes(); }

  double& operator()(int i, std::size_t node) { return values_[static_cast<std::size_t>(i) * nodes() + node]; }
  double operator()(int i, std::size_t node) const {
    return values_[static_cast<std::size_t>(i) * nodes() + node];
  }
  double& at(int i, int x, int y = 0) { return (*this)(i, shape_.index(x, y)); }
  double at(int i, int x, int y = 0) const { return (*this)(i, shape_.index(x, y)); }

  std::span<double> plane(int i) { return {values_.data() + static_cast<std::size_t>(i) * nodes(), nodes()}; }
  std::span<const double> plane(int i) const {
    return {values_.data() + static_cast<std::size_t>(i) * nodes(), nodes()};
  }
  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }

 private:
  Shape shape_;
  int q_ = 0;
  std::vector<double> values_;
};

}  // namespace lbmlift
