#include "lbmlift/lift_nce.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "lbmlift/fixed_point.hpp"
#include "lbmlift/stencil.hpp"

namespace lbmlift {

namespace {

constexpr int kStencilPad = 3;

double factorial(int k) {
  double f = 1.0;
  for (int j = 2; j <= k; ++j) f *= j;
  return f;
}

std::vector<TestDensity> default_densities(int dimension, int order) {
  auto poly = [order](double u) {
    double s = 0.0, p = 1.0;
    for (int k = 1; k <= order; ++k) {
      p *= u;
      s += p / factorial(k);
    }
    return s;
  };
  if (dimension == 1) return {[poly](double x, double) { return poly(x); }};
  // A single polynomial gives identical columns for all derivatives of top
  // order; R+1 directions make them independent.
  std::vector<TestDensity> family;
  for (int j = 0; j <= order; ++j) {
    const double theta = j * std::numbers::pi / (order + 1);
    const double c = std::cos(theta), s = std::sin(theta);
    family.push_back([poly, c, s](double x, double y) { return poly(c * x + s * y); });
  }
  return family;
}

}  // namespace

std::vector<int> NceTrainConfig::probes() const {
  if (!probe_indices.empty()) return probe_indices;
  const int spacing = std::max(1, std::min(10, test_cells / (spatial_order + 1)));
  std::vector<int> p;
  for (int j = 0; j < spatial_order; ++j) p.push_back(spacing * (j + 1));
  return p;
}

void NceTrainConfig::validate(const LbmParams& params) const {
  params.validate();
  if (spatial_order < 1 || spatial_order > kMaxDerivativeOrder)
    throw std::invalid_argument("NceTrainConfig: spatial order must lie in 1.." + std::to_string(kMaxDerivativeOrder));
  if (m < 0 || m > 3) throw std::invalid_argument("NceTrainConfig: m must lie in 0..3");
  if (test_cells < 1) throw std::invalid_argument("NceTrainConfig: test_cells must be >= 1");
  if (test_length != 0.0 && std::abs(test_length - test_cells * params.dx) > 1e-9 * std::max(1.0, test_length))
    throw std::invalid_argument("NceTrainConfig: test_length " + std::to_string(test_length) +
                                " is inconsistent with test_cells * dx = " + std::to_string(test_cells * params.dx));
  if (!(newton_tol > 0.0)) throw std::invalid_argument("NceTrainConfig: newton_tol must be > 0");
  if (max_newton_iter < 1) throw std::invalid_argument("NceTrainConfig: max_newton_iter must be >= 1");
  if (min_newton_iter < 0 || min_newton_iter > max_newton_iter)
    throw std::invalid_argument("NceTrainConfig: min_newton_iter must lie in 0..max_newton_iter");
  if (!(jacobian_eps > 0.0)) throw std::invalid_argument("NceTrainConfig: jacobian_eps must be > 0");
  if (time_steps < 1) throw std::invalid_argument("NceTrainConfig: time_steps must be >= 1");

  const auto p = probes();
  for (int idx : p) {
    if (idx < buffer() || idx > test_cells - 1 - buffer())
      throw std::invalid_argument("NceTrainConfig: probe " + std::to_string(idx) + " lies within " +
                                  std::to_string(buffer()) + " cells of the test-domain edge");
  }
  const int dim = params.dimension();
  const std::size_t n_dens = test_densities.empty() ? (dim == 1 ? 1 : spatial_order + 1) : test_densities.size();
  const std::size_t rows = n_dens * (dim == 1 ? p.size() : p.size() * p.size());
  const std::size_t cols = expansion_terms(dim, spatial_order).size();
  if (rows < cols)
    throw std::invalid_argument("NceTrainConfig: " + std::to_string(rows) + " probe rows for " +
                                std::to_string(cols) + " expansion terms");
}

NceProblem::NceProblem(NceTrainConfig cfg, LbmParams params) : cfg_(std::move(cfg)), params_(params) {
  cfg_.validate(params_);
  const int dim = params_.dimension();
  terms_ = expansion_terms(dim, cfg_.spatial_order);

  const int off = cfg_.buffer() + kStencilPad;
  const int n = cfg_.test_cells + 2 * off;
  shape_ = dim == 1 ? Shape{n, 1} : Shape{n, n};

  const auto funcs = cfg_.test_densities.empty() ? default_densities(dim, cfg_.spatial_order) : cfg_.test_densities;
  for (const auto& fn : funcs) {
    DensityField rho(shape_);
    for (int y = 0; y < shape_.ny; ++y)
      for (int x = 0; x < shape_.nx; ++x)
        rho(x, y) = fn((x - off) * params_.dx, dim == 1 ? 0.0 : (y - off) * params_.dx);
    rho_.push_back(std::move(rho));
  }

  const auto p = cfg_.probes();
  if (dim == 1) {
    for (int idx : p) probe_nodes_.push_back(shape_.index(off + idx, 0));
  } else {
    for (int iy : p)
      for (int ix : p) probe_nodes_.push_back(shape_.index(off + ix, off + iy));
  }

  b_.resize(static_cast<Eigen::Index>(rho_.size() * probe_nodes_.size()), static_cast<Eigen::Index>(terms_.size()));
  for (int row = 0; row < b_.rows(); ++row) {
    const std::size_t node = probe_nodes_[row % probe_nodes_.size()];
    const DensityField& rho = rho_[row / probe_nodes_.size()];
    const int x = static_cast<int>(node % shape_.nx), y = static_cast<int>(node / shape_.nx);
    for (std::size_t k = 0; k < terms_.size(); ++k) b_(row, k) = derivative_at(rho, terms_[k], params_.dx, x, y);
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(b_);
  const auto& sv = svd.singularValues();
  const double smin = sv[sv.size() - 1];
  condition_ = smin > 0.0 ? sv[0] / smin : std::numeric_limits<double>::infinity();
  if (!(condition_ <= cfg_.max_condition))
    throw std::runtime_error("NCE probe system is singular or ill-conditioned (condition number " +
                             std::to_string(condition_) + "); check the test density and probe placement");
  qr_ = std::make_unique<Eigen::ColPivHouseholderQR<Eigen::MatrixXd>>(b_);
}

int NceProblem::probe_node(int row) const { return static_cast<int>(probe_nodes_[row % probe_nodes_.size()]); }

double NceProblem::probe_value(const DensityField& rho, int row) const { return rho[probe_node(row)]; }

Eigen::VectorXd NceProblem::pack(const LiftCoefficients& coeffs) const {
  const int q = params_.q();
  Eigen::VectorXd x = Eigen::VectorXd::Zero(unknowns());
  for (const auto& t : coeffs.terms()) {
    if (t.time) continue;
    bool found = false;
    for (std::size_t k = 0; k < terms_.size(); ++k) {
      if (terms_[k] == t.spec) {
        for (int i = 0; i < q; ++i) x[static_cast<Eigen::Index>(k) * q + i] = t.coeffs[i];
        found = true;
      }
    }
    if (!found) throw std::invalid_argument("NCE: coefficient term " + t.key() + " is outside the expansion");
  }
  return x;
}

LiftCoefficients NceProblem::unpack(const Eigen::VectorXd& x) const {
  const int q = params_.q();
  LiftCoefficients c(params_);
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    std::vector<double> v(q);
    for (int i = 0; i < q; ++i) v[i] = x[static_cast<Eigen::Index>(k) * q + i];
    c.add_spatial(terms_[k], std::move(v));
  }
  return c;
}

std::vector<DistributionField> NceProblem::lift_tests(const LiftCoefficients& coeffs) const {
  coeffs.check_params(params_);
  std::vector<DistributionField> out;
  for (const auto& rho : rho_) out.push_back(apply_lift(rho, coeffs.spatial_only(), params_));
  return out;
}

DistributionField NceProblem::step(const DistributionField& f) {
  ++steps_;
  return stream_collide(f, params_);
}

LiftCoefficients NceProblem::h_map(const LiftCoefficients& coeffs) {
  const int q = params_.q();
  const int m = cfg_.m;
  const int rest = params_.set().rest_index();
  const auto e = equilibrium_factors(params_);

  // (-1)^(j+1) C(m+1, j)
  std::vector<double> w(m + 1);
  double binom = 1.0;
  for (int j = 1; j <= m + 1; ++j) {
    binom = binom * (m + 2 - j) / j;
    w[j - 1] = (j % 2 == 1 ? 1.0 : -1.0) * binom;
  }

  Eigen::MatrixXd rhs(b_.rows(), q);
  const auto lifted = lift_tests(coeffs);
  const int per = static_cast<int>(probe_nodes_.size());
  for (std::size_t d = 0; d < lifted.size(); ++d) {
    DistributionField f = lifted[d];
    DistributionField acc(f.shape(), q);
    for (int j = 0; j <= m; ++j) {
      f = step(f);
      auto a = acc.values();
      auto fv = f.values();
      for (std::size_t k = 0; k < a.size(); ++k) a[k] += w[j] * fv[k];
    }
    for (int p = 0; p < per; ++p) {
      const std::size_t node = probe_nodes_[p];
      const double rho = rho_[d][node];
      double sum = 0.0;
      for (int i = 0; i < q; ++i) sum += acc(i, node);
      const int row = static_cast<int>(d) * per + p;
      for (int i = 0; i < q; ++i) {
        double fi = acc(i, node);
        if (i == rest) fi += rho - sum;
        rhs(row, i) = fi - e[i] * rho;
      }
    }
  }

  const Eigen::MatrixXd x = qr_->solve(rhs);
  LiftCoefficients out(params_);
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    std::vector<double> v(q);
    for (int i = 0; i < q; ++i) v[i] = x(static_cast<Eigen::Index>(k), i);
    out.add_spatial(terms_[k], std::move(v));
  }
  return out;
}

LiftCoefficients h_map(const LiftCoefficients& coeffs, const NceTrainConfig& cfg, const LbmParams& params) {
  NceProblem problem(cfg, params);
  return problem.h_map(coeffs);
}

NceTrainResult train_coefficients(const NceTrainConfig& cfg, const LbmParams& params) {
  NceProblem problem(cfg, params);
  FixedPointMap g = [&](const Eigen::VectorXd& x) { return problem.pack(problem.h_map(problem.unpack(x))); };
  const double eps = cfg.jacobian_eps;
  FixedPointResult fp =
      newton_fixed_point(g, Eigen::VectorXd::Zero(problem.unknowns()), cfg.newton_tol, cfg.max_newton_iter,
                         [eps](const Eigen::VectorXd& x, Eigen::Index k) { return eps * std::max(1.0, std::abs(x[k])); },
                         cfg.min_newton_iter);
  NceTrainResult res;
  res.coeffs = problem.unpack(fp.x);
  res.iterations = fp.iterations;
  res.lbm_steps = problem.lbm_steps();
  res.converged = fp.converged;
  res.residual = fp.residual;
  res.condition_number = problem.condition_number();
  return res;
}

Eigen::MatrixXd LinearLiftSystem::dense_matrix() const {
  const Eigen::Index r = block.rows(), c = block.cols();
  const Eigen::Index q = static_cast<Eigen::Index>(rhs.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(q * r, q * c);
  for (Eigen::Index i = 0; i < q; ++i) m.block(i * r, i * c, r, c) = block;
  return m;
}

Eigen::VectorXd LinearLiftSystem::dense_rhs() const {
  const Eigen::Index r = block.rows();
  Eigen::VectorXd v(r * static_cast<Eigen::Index>(rhs.size()));
  for (std::size_t i = 0; i < rhs.size(); ++i) v.segment(static_cast<Eigen::Index>(i) * r, r) = rhs[i];
  return v;
}

TimeAugmentation augment_time_derivative(const LiftCoefficients& coeffs, const NceTrainConfig& cfg,
                                         const LbmParams& params) {
  NceProblem problem(cfg, params);
  const LiftCoefficients spatial = coeffs.spatial_only();
  problem.pack(spatial);  // rejects terms outside the expansion
  const int q = params.q();
  const auto e = equilibrium_factors(params);
  const Eigen::Index rows = problem.rows();
  const Eigen::Index nterms = static_cast<Eigen::Index>(problem.terms().size());
  const int per = static_cast<int>(rows / static_cast<Eigen::Index>(problem.densities().size()));

  LinearLiftSystem sys;
  sys.terms = problem.terms();
  sys.block.resize(rows, nterms + 1);
  sys.block.leftCols(nterms) = problem.derivative_matrix();
  sys.rhs.assign(q, Eigen::VectorXd(rows));

  const auto lifted = problem.lift_tests(spatial);
  for (std::size_t d = 0; d < lifted.size(); ++d) {
    std::vector<DensityField> snaps{restrict_density(lifted[d])};
    DistributionField f = lifted[d];
    for (int s = 0; s < cfg.time_steps; ++s) {
      f = problem.step(f);
      snaps.push_back(restrict_density(f));
    }
    const DensityField rho_t = time_derivative_forward(snaps, 1, params.dt);
    for (int p = 0; p < per; ++p) {
      const Eigen::Index row = static_cast<Eigen::Index>(d) * per + p;
      const int node = problem.probe_node(static_cast<int>(row));
      sys.block(row, nterms) = rho_t[node];
      const double rho = problem.densities()[d][node];
      for (int i = 0; i < q; ++i) sys.rhs[i][row] = lifted[d](i, node) - e[i] * rho;
    }
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(sys.block, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  sys.sigma_max = sv[0];
  const bool wide = sys.block.rows() < sys.block.cols();
  sys.sigma_min = wide ? 0.0 : sv[sv.size() - 1];
  sys.null_vector = svd.matrixV().col(sys.block.cols() - 1);
  sys.nullity = static_cast<int>(std::max<Eigen::Index>(0, sys.block.cols() - sys.block.rows()));
  for (Eigen::Index k = 0; k < sv.size(); ++k)
    if (sv[k] < 1e-8 * sys.sigma_max) ++sys.nullity;
  if (sys.block.col(nterms).lpNorm<Eigen::Infinity>() == 0.0)
    throw std::runtime_error("augment_time_derivative: the test densities do not change in time");

  // gamma_i = -(dt/omega) f_i^eq / rho; spatial vectors re-solved against it.
  std::vector<double> gamma(q);
  for (int i = 0; i < q; ++i) gamma[i] = -(params.dt / params.omega) * e[i];
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(problem.derivative_matrix());
  TimeAugmentation out{LiftCoefficients(params), std::move(sys), 0};
  std::vector<std::vector<double>> spatial_new(nterms, std::vector<double>(q));
  for (int i = 0; i < q; ++i) {
    const Eigen::VectorXd x = qr.solve(out.system.rhs[i] - gamma[i] * out.system.block.col(nterms));
    for (Eigen::Index k = 0; k < nterms; ++k) spatial_new[k][i] = x[k];
  }
  for (Eigen::Index k = 0; k < nterms; ++k) out.coeffs.add_spatial(problem.terms()[k], spatial_new[k]);
  out.coeffs.add_time(gamma);
  out.lbm_steps = problem.lbm_steps();
  return out;
}

std::vector<double> extract_rates(const LiftCoefficients& coeffs, ExtractionMode mode, const LinearLiftSystem* system) {
  std::vector<double> p;
  if (mode == ExtractionMode::summation) {
    const LiftTerm* gamma = coeffs.time_term();
    if (!gamma) throw std::invalid_argument("extract_pde: summation mode needs the time-derivative term");
    const double sg = gamma->sum();
    double scale = 0.0;
    for (double g : gamma->coeffs) scale = std::max(scale, std::abs(g));
    if (std::abs(sg) <= 1e-12 * scale || sg == 0.0)
      throw std::runtime_error("extract_pde: sum of the time-derivative coefficients vanishes");
    for (const auto& t : coeffs.terms())
      if (!t.time) p.push_back(-t.sum() / sg);
    return p;
  }
  if (!system) throw std::invalid_argument("extract_pde: nullspace mode needs the linear system");
  if (system->nullity != 1)
    throw std::runtime_error("extract_pde: nullspace dimension is " + std::to_string(system->nullity) + ", not 1");
  const Eigen::VectorXd& n = system->null_vector;
  const double nt = n[n.size() - 1];
  if (nt == 0.0) throw std::runtime_error("extract_pde: null vector has no time component");
  for (Eigen::Index k = 0; k + 1 < n.size(); ++k) p.push_back(-n[k] / nt);
  return p;
}

MacroPde extract_pde(const LiftCoefficients& coeffs, ExtractionMode mode, const LinearLiftSystem* system) {
  const auto rates = extract_rates(coeffs, mode, system);
  std::vector<DerivSpec> specs;
  if (mode == ExtractionMode::summation) {
    for (const auto& t : coeffs.terms())
      if (!t.time) specs.push_back(t.spec);
  } else {
    specs = system->terms;
  }
  MacroPde pde;
  double dyy = 0.0;
  bool has_dyy = false;
  for (std::size_t k = 0; k < specs.size(); ++k) {
    const DerivSpec s = specs[k];
    if (s == DerivSpec{1, 0}) pde.advection[0] = -rates[k];
    else if (s == DerivSpec{0, 1}) pde.advection[1] = -rates[k];
    else if (s == DerivSpec{2, 0}) pde.diffusion = rates[k];
    else if (s == DerivSpec{0, 2}) dyy = rates[k], has_dyy = true;
  }
  if (has_dyy && dyy != pde.diffusion) pde.extra.push_back({{0, 2}, dyy - pde.diffusion});
  for (std::size_t k = 0; k < specs.size(); ++k) {
    const DerivSpec s = specs[k];
    if (s.total_order() == 1 || s == DerivSpec{2, 0} || s == DerivSpec{0, 2}) continue;
    pde.extra.push_back({s, rates[k]});
  }
  return pde;
}

}  // namespace lbmlift
