#include <doctest.h>

#include <cmath>
#include <numbers>

#include "lbmlift/stencil.hpp"

using namespace lbmlift;

namespace {

DensityField sample(Shape s, double dx, double (*fn)(double, double)) {
  DensityField rho(s);
  for (int y = 0; y < s.ny; ++y)
    for (int x = 0; x < s.nx; ++x) rho(x, y) = fn(x * dx, y * dx);
  return rho;
}

double factorial(int k) { return k <= 1 ? 1.0 : k * factorial(k - 1); }

}  // namespace

TEST_CASE("central stencils differentiate x^k exactly") {
  const double dx = 0.1;
  for (int k = 1; k <= kMaxDerivativeOrder; ++k) {
    DensityField rho(Shape{30, 1});
    for (int x = 0; x < 30; ++x) rho(x) = std::pow(x * dx - 1.3, k);
    const DensityField d = spatial_derivative(rho, {k, 0}, dx, StencilMode::interior_only);
    const int h = central_stencil(k).half_width;
    CHECK(std::isnan(d(h - 1)));
    CHECK(std::isnan(d(30 - h)));
    for (int x = h; x < 30 - h; ++x) CHECK(d(x) == doctest::Approx(factorial(k)).epsilon(1e-6));
  }
}

TEST_CASE("stencils are second-order accurate") {
  for (int k = 1; k <= kMaxDerivativeOrder; ++k) {
    double err[2];
    for (int level = 0; level < 2; ++level) {
      const int n = 64 << level;
      const double dx = 2 * std::numbers::pi / n;
      DensityField rho(Shape{n, 1});
      for (int x = 0; x < n; ++x) rho(x) = std::sin(x * dx);
      const DensityField d = spatial_derivative(rho, {k, 0}, dx);
      err[level] = 0;
      for (int x = 0; x < n; ++x) err[level] = std::max(err[level], std::abs(d(x) - std::sin(x * dx + k * std::numbers::pi / 2)));
    }
    CHECK(err[0] / err[1] == doctest::Approx(4.0).epsilon(0.02));
  }
}

TEST_CASE("constant fields have exactly zero derivatives") {
  const DensityField rho(Shape{12, 9}, 0.1 + 0.2);
  for (const DerivSpec& s : expansion_terms(2, 6)) {
    if (s.x_order + 2 > 12 || s.y_order + 2 > 9) continue;
    const DensityField d = spatial_derivative(rho, s, 0.37);
    for (double v : d.values()) CHECK(v == 0.0);
  }
}

TEST_CASE("mixed derivatives and pointwise evaluation") {
  const double dx = 0.2;
  const DensityField rho = sample(Shape{10, 10}, dx, [](double x, double y) { return x * x * y + 3 * x * y; });
  const DensityField dxy = spatial_derivative(rho, {1, 1}, dx, StencilMode::interior_only);
  for (int y = 1; y < 9; ++y)
    for (int x = 1; x < 9; ++x) {
      CHECK(dxy(x, y) == doctest::Approx(2 * x * dx + 3).epsilon(1e-12));
      CHECK(derivative_at(rho, {1, 1}, dx, x, y) == doctest::Approx(dxy(x, y)).epsilon(1e-14));
    }
  const DensityField wave = sample(Shape{16, 12}, dx, [](double x, double y) { return std::sin(x) * std::cos(2 * y); });
  const DensityField d = spatial_derivative(wave, {2, 1}, dx);
  CHECK(derivative_at(wave, {2, 1}, dx, 0, 11) == doctest::Approx(d(0, 11)).epsilon(1e-13));
  CHECK(derivative_at(wave, {2, 1}, dx, 15, 0) == doctest::Approx(d(15, 0)).epsilon(1e-13));
}

TEST_CASE("derivative keys and expansion terms") {
  CHECK(DerivSpec{2, 0}.key() == "x2");
  CHECK(DerivSpec{1, 3}.key() == "x1y3");
  CHECK(DerivSpec::from_key("x1y3") == DerivSpec{1, 3});
  CHECK(DerivSpec::from_key("y4") == DerivSpec{0, 4});
  CHECK_THROWS_AS(DerivSpec::from_key("z2"), std::invalid_argument);
  CHECK_THROWS_AS(DerivSpec::from_key("x"), std::invalid_argument);
  CHECK_THROWS_AS(DerivSpec::from_key("x7"), std::invalid_argument);
  CHECK(expansion_terms(1, 6).size() == 6);
  CHECK(expansion_terms(2, 4).size() == 14);
  CHECK(expansion_terms(2, 2) == std::vector<DerivSpec>{{1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}});
  CHECK_THROWS_AS(spatial_derivative(DensityField(Shape{5, 1}), {0, 1}, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(spatial_derivative(DensityField(Shape{5, 1}), {4, 0}, 0.1), std::invalid_argument);
}

TEST_CASE("Fornberg weights") {
  const std::vector<double> three{0, 1, 2};
  const auto w = fd_weights(0.0, three, 1);
  CHECK(w[0] == doctest::Approx(-1.5));
  CHECK(w[1] == doctest::Approx(2.0));
  CHECK(w[2] == doctest::Approx(-0.5));
  const std::vector<double> centred{-1, 0, 1};
  const auto w2 = fd_weights(0.0, centred, 2);
  CHECK(w2 == std::vector<double>{1.0, -2.0, 1.0});
  CHECK_THROWS_AS(fd_weights(0.0, centred, 3), std::invalid_argument);
}

TEST_CASE("forward time derivative is exact for matching polynomials") {
  const double dt = 0.01;
  std::vector<DensityField> snaps;
  for (int j = 0; j < 3; ++j) {
    const double t = j * dt;
    snaps.emplace_back(Shape{2, 1}, std::vector<double>{1 + 2 * t + 5 * t * t, -t * t});
  }
  const DensityField d = time_derivative_forward(snaps, 1, dt);
  CHECK(d(0) == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(d(1) == doctest::Approx(0.0).scale(1.0).epsilon(1e-10));
  const DensityField d2 = time_derivative_forward(snaps, 2, dt);
  CHECK(d2(0) == doctest::Approx(10.0).epsilon(1e-8));
  CHECK_THROWS_AS(time_derivative_forward(std::span(snaps).first(1), 1, dt), std::invalid_argument);
}
