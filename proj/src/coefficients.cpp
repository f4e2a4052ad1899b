#include "lbmlift/coefficients.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace lbmlift {

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& text) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  while (first < last && std::isspace(static_cast<unsigned char>(*first))) ++first;
  while (last > first && std::isspace(static_cast<unsigned char>(last[-1]))) --last;
  if (first < last && *first == '+') ++first;
  auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last) throw std::invalid_argument("not a number: '" + text + "'");
  return v;
}

double LiftTerm::sum() const {
  double s = 0.0;
  for (double c : coeffs) s += c;
  return s;
}

LiftCoefficients::LiftCoefficients(const LbmParams& params)
    : fingerprint_(ParamsFingerprint::of(params)), q_(params.q()) {}

LiftCoefficients::LiftCoefficients(ParamsFingerprint fp, int q) : fingerprint_(fp), q_(q) {}

void LiftCoefficients::add(LiftTerm term) {
  if (static_cast<int>(term.coeffs.size()) != q_)
    throw std::invalid_argument("LiftCoefficients: term " + term.key() + " has " +
                                std::to_string(term.coeffs.size()) + " entries, expected " + std::to_string(q_));
  for (double c : term.coeffs)
    if (!std::isfinite(c)) throw std::invalid_argument("LiftCoefficients: non-finite entry in " + term.key());
  for (const auto& t : terms_)
    if (t.key() == term.key()) throw std::invalid_argument("LiftCoefficients: duplicate term " + term.key());
  terms_.push_back(std::move(term));
}

void LiftCoefficients::add_spatial(DerivSpec spec, std::vector<double> coeffs) {
  spec.validate();
  if (VelocitySet::get(fingerprint_.velocity_set).dimension() == 1 && spec.y_order > 0)
    throw std::invalid_argument("LiftCoefficients: y derivative for a 1D velocity set");
  add({spec, false, std::move(coeffs)});
}

void LiftCoefficients::add_time(std::vector<double> coeffs) { add({DerivSpec{}, true, std::move(coeffs)}); }

const LiftTerm* LiftCoefficients::find(DerivSpec spec) const {
  for (const auto& t : terms_)
    if (!t.time && t.spec == spec) return &t;
  return nullptr;
}

const LiftTerm* LiftCoefficients::time_term() const {
  for (const auto& t : terms_)
    if (t.time) return &t;
  return nullptr;
}

int LiftCoefficients::spatial_order() const {
  int k = 0;
  for (const auto& t : terms_)
    if (!t.time) k = std::max(k, t.spec.total_order());
  return k;
}

LiftCoefficients LiftCoefficients::spatial_only() const {
  LiftCoefficients out(fingerprint_, q_);
  for (const auto& t : terms_)
    if (!t.time) out.terms_.push_back(t);
  return out;
}

void LiftCoefficients::check_params(const LbmParams& params) const {
  if (!fingerprint_.matches(params))
    throw std::invalid_argument(
        "LiftCoefficients: coefficients were derived for different (omega, dx, dt, velocity set, advection)");
}

void LiftCoefficients::write(std::ostream& os) const {
  os << "velocity_set = " << to_string(fingerprint_.velocity_set) << '\n';
  os << "omega = " << format_double(fingerprint_.omega) << '\n';
  os << "dx = " << format_double(fingerprint_.dx) << '\n';
  os << "dt = " << format_double(fingerprint_.dt) << '\n';
  os << "advection = " << format_double(fingerprint_.advection[0]) << ' ' << format_double(fingerprint_.advection[1])
     << '\n';
  for (const auto& t : terms_) {
    os << "term." << t.key() << " =";
    for (double c : t.coeffs) os << ' ' << format_double(c);
    os << '\n';
  }
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<double> parse_list(const std::string& text) {
  std::istringstream in(text);
  std::vector<double> v;
  std::string tok;
  while (in >> tok) v.push_back(parse_double(tok));
  return v;
}

}  // namespace

LiftCoefficients LiftCoefficients::read(std::istream& is) {
  ParamsFingerprint fp;
  bool have_set = false;
  std::vector<std::pair<std::string, std::vector<double>>> raw;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("coefficients line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      if (key == "velocity_set") {
        fp.velocity_set = velocity_set_from_string(value);
        have_set = true;
      } else if (key == "omega") {
        fp.omega = parse_double(value);
      } else if (key == "dx") {
        fp.dx = parse_double(value);
      } else if (key == "dt") {
        fp.dt = parse_double(value);
      } else if (key == "advection") {
        const auto a = parse_list(value);
        if (a.empty() || a.size() > 2) throw std::invalid_argument("advection needs 1 or 2 values");
        fp.advection = {a[0], a.size() > 1 ? a[1] : 0.0};
      } else if (key.rfind("term.", 0) == 0) {
        raw.emplace_back(key.substr(5), parse_list(value));
      } else {
        throw std::invalid_argument("unknown key '" + key + "'");
      }
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("coefficients line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (!have_set) throw std::invalid_argument("coefficients: missing velocity_set");
  LiftCoefficients c(fp, VelocitySet::get(fp.velocity_set).q());
  for (auto& [key, values] : raw) {
    if (key == "t1") c.add_time(std::move(values));
    else c.add_spatial(DerivSpec::from_key(key), std::move(values));
  }
  return c;
}

void LiftCoefficients::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write(out);
}

LiftCoefficients LiftCoefficients::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  return read(in);
}

DistributionField apply_lift(const DensityField& rho, const LiftCoefficients& coeffs, const LbmParams& params) {
  coeffs.check_params(params);
  DistributionField f = equilibrium(rho, params);
  for (const auto& t : coeffs.terms()) {
    if (t.time) throw std::invalid_argument("apply_lift: time-derivative terms cannot be lifted from a density");
    const DensityField d = spatial_derivative(rho, t.spec, params.dx, StencilMode::periodic);
    for (int i = 0; i < f.q(); ++i) {
      const double c = t.coeffs[i];
      if (c == 0.0) continue;
      auto plane = f.plane(i);
      for (std::size_t n = 0; n < d.size(); ++n) plane[n] += c * d[n];
    }
  }
  return f;
}

void lift_at(const DensityField& rho, const LiftCoefficients& coeffs, const LbmParams& params, int x, int y,
             std::span<double> out) {
  coeffs.check_params(params);
  const auto e = equilibrium_factors(params);
  const double r = rho(x, y);
  for (int i = 0; i < params.q(); ++i) out[i] = e[i] * r;
  for (const auto& t : coeffs.terms()) {
    if (t.time) throw std::invalid_argument("lift_at: time-derivative terms cannot be lifted from a density");
    const double d = derivative_at(rho, t.spec, params.dx, x, y);
    for (int i = 0; i < params.q(); ++i) out[i] += t.coeffs[i] * d;
  }
}

}  // namespace lbmlift
