#include "lbmlift/experiment.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "lbmlift/coefficients.hpp"
#include "lbmlift/lift_analytic.hpp"

namespace lbmlift {

std::string_view to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::lift_bench: return "lift_bench";
    case ExperimentKind::hybrid: return "hybrid";
    case ExperimentKind::train: return "train";
    case ExperimentKind::cost: return "cost";
  }
  return "?";
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

const std::set<std::string> kKnownKeys = {
    "kind",          "velocity_set",   "n",          "length",        "dt",           "omega",
    "diffusion",     "advection",      "reference_steps", "lifter",   "analytic.order", "cr.m",
    "cr.tol",        "cr.max_iter",    "cr.jacobian_eps", "cr.locality", "nce.order",  "nce.m",
    "nce.test_cells", "nce.probes",    "nce.newton_tol", "nce.max_iter", "nce.min_iter", "nce.jacobian_eps",
    "nce.time_steps", "coefficients",  "pde",        "pde.mode",      "steps",        "split",
    "reference",     "field_every",
};

}  // namespace

ConfigFile ConfigFile::parse(std::istream& in, const std::string& origin) {
  ConfigFile cfg;
  cfg.origin_ = origin;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(origin + ":" + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!kKnownKeys.count(key))
      throw std::invalid_argument(origin + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    if (cfg.values_.count(key))
      throw std::invalid_argument(origin + ":" + std::to_string(lineno) + ": duplicate key '" + key + "'");
    cfg.values_[key] = value;
    cfg.lines_[key] = lineno;
  }
  return cfg;
}

ConfigFile ConfigFile::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config " + path.string());
  return parse(in, path.string());
}

void ConfigFile::set(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw std::invalid_argument("override '" + assignment + "' is not key=value");
  const std::string key = trim(assignment.substr(0, eq));
  if (!kKnownKeys.count(key)) throw std::invalid_argument("override: unknown key '" + key + "'");
  values_[key] = trim(assignment.substr(eq + 1));
  lines_[key] = 0;
}

std::optional<std::string> ConfigFile::get(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

int ConfigFile::line_of(const std::string& key) const {
  auto it = lines_.find(key);
  return it == lines_.end() ? 0 : it->second;
}

namespace {

struct Reader {
  const ConfigFile& file;

  [[noreturn]] void fail(const std::string& key, const std::string& what) const {
    const int line = file.line_of(key);
    throw std::invalid_argument(file.origin() + (line > 0 ? ":" + std::to_string(line) : std::string()) + ": " +
                                key + ": " + what);
  }

  std::optional<std::string> raw(const std::string& key) const { return file.get(key); }

  double number(const std::string& key, double fallback) const {
    auto v = raw(key);
    if (!v) return fallback;
    try {
      return parse_double(*v);
    } catch (const std::invalid_argument&) {
      fail(key, "'" + *v + "' is not a number");
    }
  }

  int integer(const std::string& key, int fallback) const {
    auto v = raw(key);
    if (!v) return fallback;
    std::size_t used = 0;
    int out = 0;
    try {
      out = std::stoi(*v, &used);
    } catch (const std::exception&) {
      fail(key, "'" + *v + "' is not an integer");
    }
    if (used != v->size()) fail(key, "'" + *v + "' is not an integer");
    return out;
  }

  std::vector<double> numbers(const std::string& key) const {
    std::vector<double> out;
    auto v = raw(key);
    if (!v) return out;
    std::istringstream in(*v);
    std::string tok;
    while (in >> tok) {
      try {
        out.push_back(parse_double(tok));
      } catch (const std::invalid_argument&) {
        fail(key, "'" + tok + "' is not a number");
      }
    }
    return out;
  }

  template <class T>
  T choice(const std::string& key, T fallback, std::initializer_list<std::pair<const char*, T>> options) const {
    auto v = raw(key);
    if (!v) return fallback;
    std::string allowed;
    for (const auto& [name, value] : options) {
      if (*v == name) return value;
      allowed += allowed.empty() ? name : std::string(", ") + name;
    }
    fail(key, "'" + *v + "' is not one of " + allowed);
  }
};

}  // namespace

ExperimentConfig ExperimentConfig::from(const ConfigFile& file) {
  Reader r{file};
  ExperimentConfig c;
  c.kind = r.choice<ExperimentKind>("kind", ExperimentKind::lift_bench,
                                    {{"lift_bench", ExperimentKind::lift_bench},
                                     {"hybrid", ExperimentKind::hybrid},
                                     {"train", ExperimentKind::train},
                                     {"train_only", ExperimentKind::train},
                                     {"cost", ExperimentKind::cost},
                                     {"cost_table", ExperimentKind::cost}});
  if (auto v = r.raw("velocity_set")) {
    try {
      c.params.velocity_set = velocity_set_from_string(*v);
    } catch (const std::invalid_argument& e) {
      r.fail("velocity_set", e.what());
    }
  }
  c.n = r.integer("n", c.n);
  c.length = r.number("length", c.length);
  if (c.n < 4) r.fail("n", "must be >= 4");
  if (!(c.length > 0.0)) r.fail("length", "must be > 0");
  c.params.dx = c.length / c.n;
  c.params.dt = r.number("dt", 1e-3);

  const auto adv = r.numbers("advection");
  if (adv.size() > 2) r.fail("advection", "expects one or two components");
  if (!adv.empty()) c.params.advection = {adv[0], adv.size() > 1 ? adv[1] : 0.0};

  if (file.has("omega") && file.has("diffusion")) r.fail("diffusion", "give either omega or diffusion, not both");
  if (file.has("diffusion")) {
    // D = (c_s^2/c^2)(1/omega - 1/2) dx^2/dt solved for omega.
    const double d = r.number("diffusion", 1.0);
    const double cs2 = c.params.set().sound_speed_sq_factor();
    c.params.omega = 1.0 / (d * c.params.dt / (cs2 * c.params.dx * c.params.dx) + 0.5);
  } else {
    c.params.omega = r.number("omega", 10.0 / 11.0);
  }
  try {
    c.params.validate();
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(file.origin() + ": " + e.what());
  }

  c.reference_steps = r.integer("reference_steps", c.reference_steps);
  if (c.reference_steps < 0) r.fail("reference_steps", "must be >= 0");

  c.lifter = r.choice<LifterKind>("lifter", LifterKind::equilibrium,
                                  {{"equilibrium", LifterKind::equilibrium},
                                   {"analytic", LifterKind::analytic},
                                   {"cr", LifterKind::cr},
                                   {"nce", LifterKind::nce},
                                   {"file", LifterKind::file}});
  c.analytic_order = r.integer("analytic.order", c.analytic_order);
  c.cr.m = r.integer("cr.m", c.cr.m);
  c.cr.tol = r.number("cr.tol", c.cr.tol);
  c.cr.max_iter = r.integer("cr.max_iter", c.cr.max_iter);
  c.cr.jacobian_eps = r.number("cr.jacobian_eps", c.cr.jacobian_eps);
  if (file.has("cr.locality")) c.cr.locality = r.integer("cr.locality", 0);

  c.nce.spatial_order = r.integer("nce.order", c.nce.spatial_order);
  c.nce.m = r.integer("nce.m", c.nce.m);
  c.nce.test_cells = r.integer("nce.test_cells", c.nce.test_cells);
  for (double p : r.numbers("nce.probes")) c.nce.probe_indices.push_back(static_cast<int>(p));
  c.nce.newton_tol = r.number("nce.newton_tol", c.nce.newton_tol);
  c.nce.max_newton_iter = r.integer("nce.max_iter", c.nce.max_newton_iter);
  c.nce.min_newton_iter = r.integer("nce.min_iter", c.nce.min_newton_iter);
  c.nce.jacobian_eps = r.number("nce.jacobian_eps", c.nce.jacobian_eps);
  c.nce.time_steps = r.integer("nce.time_steps", c.nce.time_steps);
  c.coefficients_path = r.raw("coefficients").value_or("");

  c.extracted_pde = r.choice<bool>("pde", false, {{"analytic", false}, {"extracted", true}});
  c.extraction = r.choice<ExtractionMode>("pde.mode", ExtractionMode::summation,
                                          {{"summation", ExtractionMode::summation},
                                           {"nullspace", ExtractionMode::nullspace}});
  c.steps = r.integer("steps", c.steps);
  if (c.steps < 1) r.fail("steps", "must be >= 1");
  if (file.has("split")) c.split = r.integer("split", 0);
  c.reference = r.choice<ReferenceInit>("reference", ReferenceInit::manifold,
                                        {{"manifold", ReferenceInit::manifold}, {"same", ReferenceInit::same}});
  c.field_every = r.integer("field_every", c.field_every);

  try {
    if (c.lifter == LifterKind::cr) c.cr.validate();
    if (c.lifter == LifterKind::nce || c.kind == ExperimentKind::train || c.extracted_pde) c.nce.validate(c.params);
    if (c.lifter == LifterKind::file && c.coefficients_path.empty())
      throw std::invalid_argument("lifter = file needs 'coefficients'");
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(file.origin() + ": " + e.what());
  }
  return c;
}

LifterPtr build_lifter(const ExperimentConfig& cfg) {
  switch (cfg.lifter) {
    case LifterKind::equilibrium: return make_equilibrium_lifter(cfg.params);
    case LifterKind::analytic: return make_analytic_lifter(cfg.params, cfg.analytic_order);
    case LifterKind::cr: return make_cr_lifter(cfg.cr);
    case LifterKind::nce: return make_nce_lifter(cfg.nce, cfg.params);
    case LifterKind::file: {
      LiftCoefficients c = LiftCoefficients::load(cfg.coefficients_path);
      c.check_params(cfg.params);
      return make_coefficient_lifter(std::move(c), "file");
    }
  }
  throw std::logic_error("unknown lifter kind");
}

std::string lifter_label(const ExperimentConfig& cfg) {
  switch (cfg.lifter) {
    case LifterKind::equilibrium: return "equilibrium";
    case LifterKind::analytic: return "ce_order" + std::to_string(cfg.analytic_order);
    case LifterKind::cr: return "cr_m" + std::to_string(cfg.cr.m);
    case LifterKind::nce: return "nce_R" + std::to_string(cfg.nce.spatial_order) + "_m" + std::to_string(cfg.nce.m);
    case LifterKind::file: return "file";
  }
  return "?";
}

DistributionField lift_bench_reference(const ExperimentConfig& cfg) {
  DistributionField f = equilibrium(gaussian_density(cfg.shape(), cfg.params.dx), cfg.params);
  DistributionField scratch;
  for (int s = 0; s < cfg.reference_steps; ++s) {
    stream_collide_into(f, cfg.params, Boundary::periodic, std::nullopt, scratch);
    std::swap(f, scratch);
  }
  return f;
}

double lift_restrict_error(const ExperimentConfig& cfg, const LiftingOperator& lifter,
                           const DistributionField& reference) {
  const DistributionField f = lifter.lift_field(restrict_density(reference), cfg.params);
  return l2_distance(f, reference);
}

double lift_restrict_error(const ExperimentConfig& cfg) {
  const LifterPtr lifter = build_lifter(cfg);
  return lift_restrict_error(cfg, *lifter, lift_bench_reference(cfg));
}

LifterPtr manifold_reference_lifter(const LbmParams& params) {
  NceTrainConfig nce;
  nce.spatial_order = params.dimension() == 1 ? 6 : 4;
  nce.m = params.dimension() == 1 ? 3 : 2;
  return make_nce_lifter(nce, params);
}

HybridSpec build_hybrid_spec(const ExperimentConfig& cfg, LifterPtr lifter) {
  HybridSpec spec;
  spec.n = cfg.n;
  spec.split = cfg.split_index();
  spec.params = cfg.params;
  spec.lifter = std::move(lifter);
  spec.initial = gaussian_density(cfg.shape(), cfg.params.dx);
  if (cfg.extracted_pde) {
    const NceTrainResult trained = train_coefficients(cfg.nce, cfg.params);
    const TimeAugmentation aug = augment_time_derivative(trained.coeffs, cfg.nce, cfg.params);
    spec.pde = extract_pde(aug.coeffs, cfg.extraction, &aug.system);
  } else {
    spec.pde = analytic_pde(cfg.params);
  }
  if (cfg.reference == ReferenceInit::manifold) spec.reference_lifter = manifold_reference_lifter(cfg.params);
  return spec;
}

namespace {

std::ofstream open_csv(const std::filesystem::path& dir, const std::string& name) {
  std::ofstream out(dir / name);
  if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
  return out;
}

void write_params(std::ostream& os, const ExperimentConfig& cfg) {
  os << to_string(cfg.params.velocity_set) << ',' << format_double(cfg.params.omega) << ','
     << format_double(cfg.params.dx) << ',' << format_double(cfg.params.dt) << ',' << cfg.n << ','
     << format_double(cfg.params.advection[0]) << ',' << format_double(cfg.params.advection[1]);
}

void run_lift_bench(const ExperimentConfig& cfg, const std::filesystem::path& dir, std::ostream& log) {
  const double err = lift_restrict_error(cfg);
  auto out = open_csv(dir, "lift_bench.csv");
  out << "lifter,velocity_set,omega,dx,dt,n,advection_x,advection_y,reference_steps,error\n";
  out << lifter_label(cfg) << ',';
  write_params(out, cfg);
  out << ',' << cfg.reference_steps << ',' << format_double(err) << '\n';
  log << lifter_label(cfg) << ": |f - f_c| = " << format_double(err) << '\n';
}

void run_train(const ExperimentConfig& cfg, const std::filesystem::path& dir, std::ostream& log) {
  const NceTrainResult r = train_coefficients(cfg.nce, cfg.params);
  const TimeAugmentation aug = augment_time_derivative(r.coeffs, cfg.nce, cfg.params);
  const MacroPde pde = extract_pde(aug.coeffs, cfg.extraction, &aug.system);
  r.coeffs.save((dir / "coefficients.txt").string());
  auto out = open_csv(dir, "train.csv");
  out << "order,m,iterations,converged,residual,condition_number,lbm_steps_training,lbm_steps_time,"
         "advection_x,advection_y,diffusion,sigma_min,sigma_max\n";
  out << cfg.nce.spatial_order << ',' << cfg.nce.m << ',' << r.iterations << ',' << (r.converged ? 1 : 0) << ','
      << format_double(r.residual) << ',' << format_double(r.condition_number) << ',' << r.lbm_steps << ','
      << aug.lbm_steps << ',' << format_double(pde.advection[0]) << ',' << format_double(pde.advection[1]) << ','
      << format_double(pde.diffusion) << ',' << format_double(aug.system.sigma_min) << ','
      << format_double(aug.system.sigma_max) << '\n';
  log << "trained R=" << cfg.nce.spatial_order << " m=" << cfg.nce.m << " in " << r.iterations
      << " Newton iterations, " << r.lbm_steps << " LBM steps" << (r.converged ? "" : " (NOT converged)") << '\n'
      << "extracted PDE: " << pde.describe() << '\n';
}

void run_hybrid_experiment(const ExperimentConfig& cfg, const std::filesystem::path& dir, std::ostream& log) {
  const HybridSpec spec = build_hybrid_spec(cfg, build_lifter(cfg));
  for (const auto& w : ftcs_stability(spec.pde, cfg.params.dx, cfg.params.dt, cfg.params.dimension()).warnings)
    log << "warning: " << w << '\n';
  StepCounter counter;
  const HybridComparison cmp = compare_to_reference(spec, cfg.steps, &counter, cfg.field_every);

  auto summary = open_csv(dir, "hybrid_summary.csv");
  summary << "step,max_error,l2_error\n";
  for (std::size_t k = 0; k < cmp.max_error.size(); ++k)
    summary << k + 1 << ',' << format_double(cmp.max_error[k]) << ',' << format_double(cmp.l2_error[k]) << '\n';

  const bool two_d = spec.params.dimension() == 2;
  auto fields = open_csv(dir, "hybrid_errors.csv");
  fields << (two_d ? "step,x,y,abs_error\n" : "step,x,abs_error\n");
  for (std::size_t f = 0; f < cmp.fields.size(); ++f) {
    const DensityField& e = cmp.fields[f];
    for (int y = 0; y < e.shape().ny; ++y) {
      for (int x = 0; x < e.shape().nx; ++x) {
        fields << cmp.field_steps[f] << ',' << x << ',';
        if (two_d) fields << y << ',';
        fields << format_double(e(x, y)) << '\n';
      }
    }
  }
  log << lifter_label(cfg) << " hybrid, " << cfg.steps << " steps: max error " << format_double(cmp.max_error.back())
      << ", l2 error " << format_double(cmp.l2_error.back()) << '\n';
}

void run_cost(const ExperimentConfig& cfg, const std::filesystem::path& dir, std::ostream& log) {
  const LifterPtr lifter = build_lifter(cfg);
  HybridSpec spec;
  spec.n = cfg.n;
  spec.split = cfg.split_index();
  spec.params = cfg.params;
  spec.lifter = lifter;
  spec.pde = analytic_pde(cfg.params);
  spec.initial = gaussian_density(cfg.shape(), cfg.params.dx);
  StepCounter c;
  run_hybrid(spec, cfg.steps, &c);

  const long ghost_points = 2L * cfg.shape().ny;
  auto out = open_csv(dir, "cost.csv");
  out << "lifter,steps,ghost_points,lbm_steps_training,lbm_steps_init_lift,lbm_steps_ghost_lift,ghost_lifts,"
         "lbm_steps_per_lift,ghost_lift_iterations,unconverged_lifts,total_extra\n";
  out << lifter_label(cfg) << ',' << cfg.steps << ',' << ghost_points << ',' << c.lbm_steps_training << ','
      << c.lbm_steps_init_lift << ',' << c.lbm_steps_ghost_lift << ',' << c.ghost_lifts << ','
      << format_double(c.steps_per_ghost_lift()) << ',' << c.ghost_lift_iterations << ',' << c.unconverged_lifts
      << ',' << c.total_extra() << '\n';
  log << lifter_label(cfg) << ": " << c.total_extra() << " extra LBM steps (" << c.lbm_steps_training
      << " training, " << c.lbm_steps_init_lift << " initial lift, " << c.lbm_steps_ghost_lift << " ghost lifts)\n";
}

}  // namespace

void run_experiment(const ExperimentConfig& cfg, const std::filesystem::path& out_dir, std::ostream& log) {
  std::filesystem::create_directories(out_dir);
  switch (cfg.kind) {
    case ExperimentKind::lift_bench: run_lift_bench(cfg, out_dir, log); break;
    case ExperimentKind::train: run_train(cfg, out_dir, log); break;
    case ExperimentKind::hybrid: run_hybrid_experiment(cfg, out_dir, log); break;
    case ExperimentKind::cost: run_cost(cfg, out_dir, log); break;
  }
}

}  // namespace lbmlift
