#include "lbmlift/hybrid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace lbmlift {

namespace {

inline int wrap(int i, int n) {
  i %= n;
  return i < 0 ? i + n : i;
}

}  // namespace

void HybridSpec::validate() const {
  params.validate();
  if (!lifter) throw std::invalid_argument("HybridSpec: no lifting operator");
  if (n < 4) throw std::invalid_argument("HybridSpec: n must be >= 4");
  if (split < 1 || split > n - 3)
    throw std::invalid_argument("HybridSpec: split " + std::to_string(split) + " must lie in 1.." +
                                std::to_string(n - 3) + " so that both subdomains keep two or more cells");
  if (initial.shape() != shape()) throw std::invalid_argument("HybridSpec: initial density has the wrong shape");
  const int hw = pde.stencil_half_width();
  if (hw > split + 1 || hw > lbm_columns())
    throw std::invalid_argument("HybridSpec: PDE stencil is wider than a subdomain");
}

HybridState init_hybrid(const HybridSpec& spec, StepCounter* counter) {
  spec.validate();
  const Shape s = spec.shape();
  const int q = spec.params.q();
  if (counter) counter->lbm_steps_training += spec.lifter->training_steps();

  HybridState st;
  st.rho_pde = DensityField(Shape{spec.split + 1, s.ny});
  for (int y = 0; y < s.ny; ++y)
    for (int x = 0; x <= spec.split; ++x) st.rho_pde(x, y) = spec.initial(x, y);

  const DistributionField full = spec.lifter->lift_field(spec.initial, spec.params, counter);
  const int width = spec.n - spec.split + 1;
  st.f_lbm = DistributionField(Shape{width, s.ny}, q);
  for (int i = 0; i < q; ++i)
    for (int y = 0; y < s.ny; ++y)
      for (int lx = 0; lx < width; ++lx) st.f_lbm.at(i, lx, y) = full.at(i, wrap(spec.split + lx, spec.n), y);
  return st;
}

DensityField hybrid_density(const HybridState& state, const HybridSpec& spec) {
  const Shape s = spec.shape();
  DensityField rho(s);
  const int q = spec.params.q();
  for (int y = 0; y < s.ny; ++y) {
    for (int x = 0; x <= spec.split; ++x) rho(x, y) = state.rho_pde(x, y);
    for (int x = spec.split + 1; x < spec.n; ++x) {
      const int lx = x - spec.split;
      double r = 0.0;
      for (int i = 0; i < q; ++i) r += state.f_lbm.at(i, lx, y);
      rho(x, y) = r;
    }
  }
  return rho;
}

void hybrid_step(HybridState& state, const HybridSpec& spec, StepCounter* counter) {
  const DensityField rho = hybrid_density(state, spec);
  const Shape s = spec.shape();

  // LBM ghosts from the lifted concatenated density.
  spec.lifter->lift_column(rho, spec.split, spec.params, state.f_lbm, 0, counter);
  spec.lifter->lift_column(rho, 0, spec.params, state.f_lbm, spec.n - spec.split, counter);

  // PDE ghosts from the restricted LBM density.
  const int g = spec.pde.stencil_half_width();
  DensityField padded(Shape{spec.split + 1 + 2 * g, s.ny});
  for (int y = 0; y < s.ny; ++y)
    for (int px = 0; px < padded.shape().nx; ++px) padded(px, y) = rho(wrap(px - g, spec.n), y);
  const DensityField next = ftcs_step(padded, spec.pde, spec.params.dx, spec.params.dt, Boundary::ghost_fed,
                                      FtcsGhosts{g, true, false});
  for (int y = 0; y < s.ny; ++y)
    for (int x = 0; x <= spec.split; ++x) state.rho_pde(x, y) = next(x + g, y);

  state.f_lbm = stream_collide(state.f_lbm, spec.params, Boundary::ghost_fed, GhostRim{true, false});
  ++state.t;
}

HybridState run_hybrid(const HybridSpec& spec, int steps, StepCounter* counter) {
  HybridState st = init_hybrid(spec, counter);
  for (int k = 0; k < steps; ++k) hybrid_step(st, spec, counter);
  return st;
}

HybridComparison compare_to_reference(const HybridSpec& spec, int steps, StepCounter* counter, int field_every) {
  if (steps < 1) throw std::invalid_argument("compare_to_reference: steps must be >= 1");
  HybridState st = init_hybrid(spec, counter);
  const LiftingOperator& ref_lifter = spec.reference_lifter ? *spec.reference_lifter : *spec.lifter;
  DistributionField ref = ref_lifter.lift_field(spec.initial, spec.params);
  DistributionField scratch;

  HybridComparison out;
  for (int k = 1; k <= steps; ++k) {
    hybrid_step(st, spec, counter);
    stream_collide_into(ref, spec.params, Boundary::periodic, std::nullopt, scratch);
    std::swap(ref, scratch);

    const DensityField hyb = hybrid_density(st, spec);
    const DensityField lbm = restrict_density(ref);
    DensityField err(hyb.shape());
    double mx = 0.0, sq = 0.0;
    for (std::size_t n = 0; n < err.size(); ++n) {
      err[n] = std::abs(hyb[n] - lbm[n]);
      mx = std::max(mx, err[n]);
      sq += err[n] * err[n];
    }
    out.max_error.push_back(mx);
    out.l2_error.push_back(std::sqrt(sq));
    if ((field_every > 0 && k % field_every == 0) || (k == steps && (field_every <= 0 || k % field_every != 0))) {
      out.field_steps.push_back(k);
      out.fields.push_back(err);
    }
    if (k == steps) out.final_error = std::move(err);
  }
  return out;
}

DensityField gaussian_density(Shape shape, double dx) {
  DensityField rho(shape);
  const double cx = 0.5 * shape.nx * dx, cy = 0.5 * shape.ny * dx;
  for (int y = 0; y < shape.ny; ++y) {
    for (int x = 0; x < shape.nx; ++x) {
      const double ex = x * dx - cx;
      const double ey = shape.ny == 1 ? 0.0 : y * dx - cy;
      rho(x, y) = std::exp(-(ex * ex + ey * ey));
    }
  }
  return rho;
}

}  // namespace lbmlift
