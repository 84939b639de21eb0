#include "puridyn/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <sstream>

#include "puridyn/errors.hpp"
#include "puridyn/io.hpp"
#include "puridyn/purity.hpp"

namespace puridyn {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct RawEntry {
  std::string value;
  int line = 0;
};

struct Diagnostics {
  std::vector<ConfigDiagnostic> list;

  void add(int line, const std::string& msg) { list.push_back({line, msg}); }
  void check() const {
    if (!list.empty()) throw ConfigError(list);
  }
};

class KeyMap {
 public:
  explicit KeyMap(std::map<std::string, RawEntry> entries) : entries_(std::move(entries)) {}

  bool has(const std::string& key) const { return entries_.count(key) != 0; }

  // Every accessor marks the key as consumed so leftovers can be reported
  // as unknown keys afterwards.
  std::optional<RawEntry> take(const std::string& key) {
    auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    consumed_.insert(consumed_.end(), key);
    RawEntry e = it->second;
    entries_.erase(it);
    return e;
  }

  const std::map<std::string, RawEntry>& remaining() const { return entries_; }

 private:
  std::map<std::string, RawEntry> entries_;
  std::vector<std::string> consumed_;
};

double parse_double(const RawEntry& e, const std::string& key, Diagnostics& diag,
                    double fallback) {
  const std::string v = trim(e.value);
  char* end = nullptr;
  const double x = std::strtod(v.c_str(), &end);
  if (v.empty() || end != v.c_str() + v.size() || !std::isfinite(x)) {
    diag.add(e.line, key + ": malformed number '" + v + "'");
    return fallback;
  }
  return x;
}

long long parse_int(const RawEntry& e, const std::string& key, Diagnostics& diag,
                    long long fallback) {
  const std::string v = trim(e.value);
  std::size_t pos = 0;
  long long x = 0;
  bool ok = !v.empty();
  try {
    x = std::stoll(v, &pos);
  } catch (...) {
    ok = false;
  }
  if (!ok || pos != v.size()) {
    diag.add(e.line, key + ": malformed integer '" + v + "'");
    return fallback;
  }
  return x;
}

void read_double(KeyMap& keys, const std::string& key, double& dst, Diagnostics& diag) {
  if (auto e = keys.take(key)) dst = parse_double(*e, key, diag, dst);
}

void read_string(KeyMap& keys, const std::string& key, std::string& dst) {
  if (auto e = keys.take(key)) dst = trim(e->value);
}

}  // namespace

ScenarioConfig parse_config(const std::string& text) {
  Diagnostics diag;
  std::map<std::string, RawEntry> entries;

  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto hash = raw.find('#');
    std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      diag.add(lineno, "expected 'key = value', got '" + line + "'");
      continue;
    }
    std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      diag.add(lineno, "empty key");
      continue;
    }
    // Shorthand for the two tagged specs.
    if (key == "initial_state") key = "initial_state.kind";
    if (key == "potential") key = "potential.kind";
    if (entries.count(key)) {
      diag.add(lineno, "duplicate key '" + key + "'");
      continue;
    }
    entries[key] = RawEntry{value, lineno};
  }

  KeyMap keys(std::move(entries));
  ScenarioConfig c;

  // grid
  int grid_n_line = 0;
  if (auto e = keys.take("grid.n")) {
    grid_n_line = e->line;
    const long long n = parse_int(*e, "grid.n", diag, 0);
    if (n > 0) c.grid.n = static_cast<std::size_t>(n);
  } else {
    diag.add(0, "missing required key grid.n");
  }
  int grid_len_line = 0;
  if (auto e = keys.take("grid.length")) {
    grid_len_line = e->line;
    c.grid.length = parse_double(*e, "grid.length", diag, 0.0);
  } else {
    diag.add(0, "missing required key grid.length");
  }

  // phys
  read_double(keys, "phys.hbar", c.phys.hbar, diag);
  read_double(keys, "phys.mass_x", c.phys.mass_x, diag);
  read_double(keys, "phys.mass_y", c.phys.mass_y, diag);

  // initial state
  int state_kind_line = 0;
  if (auto e = keys.take("initial_state.kind")) {
    state_kind_line = e->line;
    const std::string v = trim(e->value);
    if (v == "product_gaussian") c.initial_state.kind = StateKind::product_gaussian;
    else if (v == "double_gaussian") c.initial_state.kind = StateKind::double_gaussian;
    else if (v == "schmidt_two_term") c.initial_state.kind = StateKind::schmidt_two_term;
    else diag.add(e->line, "initial_state.kind: unknown kind '" + v + "'");
  } else {
    diag.add(0, "missing required key initial_state.kind");
  }
  read_double(keys, "initial_state.sigma_x", c.initial_state.sigma_x, diag);
  read_double(keys, "initial_state.sigma_y", c.initial_state.sigma_y, diag);
  read_double(keys, "initial_state.center_x", c.initial_state.center_x, diag);
  read_double(keys, "initial_state.center_y", c.initial_state.center_y, diag);
  read_double(keys, "initial_state.momentum_x", c.initial_state.momentum_x, diag);
  read_double(keys, "initial_state.momentum_y", c.initial_state.momentum_y, diag);
  read_double(keys, "initial_state.a", c.initial_state.a, diag);
  read_double(keys, "initial_state.b", c.initial_state.b, diag);
  int lambda_line = 0;
  if (auto e = keys.take("initial_state.lambda0")) {
    lambda_line = e->line;
    c.initial_state.lambda0 = parse_double(*e, "initial_state.lambda0", diag,
                                           c.initial_state.lambda0);
  }
  int mode_line = 0;
  if (auto e = keys.take("initial_state.mode0")) {
    mode_line = e->line;
    c.initial_state.mode0 = static_cast<int>(parse_int(*e, "initial_state.mode0", diag, 0));
  }
  if (auto e = keys.take("initial_state.mode1")) {
    mode_line = e->line;
    c.initial_state.mode1 = static_cast<int>(parse_int(*e, "initial_state.mode1", diag, 1));
  }
  read_double(keys, "initial_state.mode_scale", c.initial_state.mode_scale, diag);

  // potential
  if (auto e = keys.take("potential.kind")) {
    const std::string v = trim(e->value);
    if (v == "none") c.potential.kind = PotentialSpecKind::none;
    else if (v == "separable") c.potential.kind = PotentialSpecKind::separable;
    else if (v == "bilinear") c.potential.kind = PotentialSpecKind::bilinear;
    else if (v == "gaussian_coupling") c.potential.kind = PotentialSpecKind::gaussian_coupling;
    else diag.add(e->line, "potential.kind: unknown kind '" + v + "'");
  }
  int pot_line = 0;
  if (auto e = keys.take("potential.f_kind")) {
    pot_line = e->line;
    c.potential.f_kind = trim(e->value);
  }
  if (auto e = keys.take("potential.g_kind")) {
    pot_line = e->line;
    c.potential.g_kind = trim(e->value);
  }
  read_double(keys, "potential.f_scale", c.potential.f_scale, diag);
  read_double(keys, "potential.g_scale", c.potential.g_scale, diag);
  read_double(keys, "potential.kappa", c.potential.kappa, diag);
  read_double(keys, "potential.v0", c.potential.v0, diag);
  int width_line = 0;
  if (auto e = keys.take("potential.width")) {
    width_line = e->line;
    c.potential.width = parse_double(*e, "potential.width", diag, c.potential.width);
  }

  // evolution
  int dt_line = 0;
  if (auto e = keys.take("evolution.dt")) {
    dt_line = e->line;
    c.evolution.dt = parse_double(*e, "evolution.dt", diag, 0.0);
  } else {
    diag.add(0, "missing required key evolution.dt");
  }
  int steps_line = 0;
  if (auto e = keys.take("evolution.steps")) {
    steps_line = e->line;
    const long long s = parse_int(*e, "evolution.steps", diag, -1);
    if (s >= 0) c.evolution.steps = static_cast<std::size_t>(s);
  } else {
    diag.add(0, "missing required key evolution.steps");
  }
  int record_line = 0;
  bool record_given = false;
  if (auto e = keys.take("evolution.record_every")) {
    record_line = e->line;
    record_given = true;
    const long long r = parse_int(*e, "evolution.record_every", diag, 0);
    if (r > 0) c.evolution.record_every = static_cast<std::size_t>(r);
    else diag.add(e->line, "evolution.record_every must be positive");
  }

  // outputs
  read_string(keys, "outputs.timeseries_path", c.outputs.timeseries_path);
  read_string(keys, "outputs.report_path", c.outputs.report_path);
  read_string(keys, "outputs.dump_path", c.outputs.dump_path);
  int dump_line = 0;
  if (auto e = keys.take("outputs.dump_every")) {
    dump_line = e->line;
    const long long d = parse_int(*e, "outputs.dump_every", diag, 0);
    if (d >= 0) c.outputs.dump_every = static_cast<std::size_t>(d);
    else diag.add(e->line, "outputs.dump_every must be non-negative");
  }

  for (const auto& [key, entry] : keys.remaining()) {
    diag.add(entry.line, "unknown key '" + key + "'");
  }

  // Range validation, tagged with the line of the offending key.
  if (grid_n_line > 0 && c.grid.n > 0) {
    if (c.grid.n % 2 != 0) diag.add(grid_n_line, "grid.n must be even");
    else if (c.grid.n < 8) diag.add(grid_n_line, "grid.n must be at least 8");
  }
  if (grid_len_line > 0 && !(c.grid.length > 0.0)) {
    diag.add(grid_len_line, "grid.length must be positive");
  }
  if (c.phys.hbar <= 0.0 || c.phys.mass_x <= 0.0 || c.phys.mass_y <= 0.0) {
    diag.add(0, "phys parameters must be strictly positive");
  }
  // lambda0 is range-checked whenever it appears, not only for the kind
  // that consumes it; an out-of-range weight is a mistake either way.
  if (lambda_line > 0 || c.initial_state.kind == StateKind::schmidt_two_term) {
    if (!(c.initial_state.lambda0 > 0.0 && c.initial_state.lambda0 < 1.0)) {
      diag.add(lambda_line, "initial_state.lambda0 must lie in (0, 1)");
    }
  }
  if (c.initial_state.kind == StateKind::schmidt_two_term) {
    if (c.initial_state.mode0 == c.initial_state.mode1 || c.initial_state.mode0 < 0 ||
        c.initial_state.mode1 < 0) {
      diag.add(mode_line, "initial_state mode indices must be distinct and non-negative");
    }
  }
  if (c.initial_state.kind == StateKind::double_gaussian) {
    if (!(c.initial_state.a > 0.0 && c.initial_state.b > 0.0)) {
      diag.add(state_kind_line, "double_gaussian widths a and b must be positive");
    }
  }
  if (c.initial_state.kind == StateKind::product_gaussian) {
    if (!(c.initial_state.sigma_x > 0.0 && c.initial_state.sigma_y > 0.0)) {
      diag.add(state_kind_line, "product_gaussian sigmas must be positive");
    }
  }
  if (c.potential.kind == PotentialSpecKind::separable) {
    if (c.potential.f_kind != "harmonic" || c.potential.g_kind != "harmonic") {
      diag.add(pot_line, "separable potential kinds: only 'harmonic' is defined");
    }
  }
  if (c.potential.kind == PotentialSpecKind::gaussian_coupling && !(c.potential.width > 0.0)) {
    diag.add(width_line, "potential.width must be positive");
  }
  if (dt_line > 0 && !(c.evolution.dt > 0.0)) {
    diag.add(dt_line, "evolution.dt must be positive");
  }
  if (steps_line > 0 && c.evolution.steps == 0) {
    diag.add(steps_line, "evolution.steps must be at least 1");
  }
  if (!record_given) {
    c.evolution.record_every = std::max<std::size_t>(1, std::min<std::size_t>(10, c.evolution.steps));
  } else if (c.evolution.steps > 0 && c.evolution.record_every > c.evolution.steps) {
    diag.add(record_line, "evolution.record_every must not exceed evolution.steps");
  }
  if (c.outputs.dump_every > 0 && c.outputs.dump_path.empty()) {
    diag.add(dump_line, "outputs.dump_path required when outputs.dump_every is set");
  }

  diag.check();
  return c;
}

namespace {

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

const char* state_kind_name(StateKind k) {
  switch (k) {
    case StateKind::product_gaussian: return "product_gaussian";
    case StateKind::double_gaussian: return "double_gaussian";
    case StateKind::schmidt_two_term: return "schmidt_two_term";
  }
  return "?";
}

const char* potential_kind_name(PotentialSpecKind k) {
  switch (k) {
    case PotentialSpecKind::none: return "none";
    case PotentialSpecKind::separable: return "separable";
    case PotentialSpecKind::bilinear: return "bilinear";
    case PotentialSpecKind::gaussian_coupling: return "gaussian_coupling";
  }
  return "?";
}

}  // namespace

std::string render_config(const ScenarioConfig& c) {
  std::ostringstream out;
  out << "grid.n = " << c.grid.n << "\n";
  out << "grid.length = " << fmt(c.grid.length) << "\n";
  out << "phys.hbar = " << fmt(c.phys.hbar) << "\n";
  out << "phys.mass_x = " << fmt(c.phys.mass_x) << "\n";
  out << "phys.mass_y = " << fmt(c.phys.mass_y) << "\n";
  out << "initial_state.kind = " << state_kind_name(c.initial_state.kind) << "\n";
  out << "initial_state.sigma_x = " << fmt(c.initial_state.sigma_x) << "\n";
  out << "initial_state.sigma_y = " << fmt(c.initial_state.sigma_y) << "\n";
  out << "initial_state.center_x = " << fmt(c.initial_state.center_x) << "\n";
  out << "initial_state.center_y = " << fmt(c.initial_state.center_y) << "\n";
  out << "initial_state.momentum_x = " << fmt(c.initial_state.momentum_x) << "\n";
  out << "initial_state.momentum_y = " << fmt(c.initial_state.momentum_y) << "\n";
  out << "initial_state.a = " << fmt(c.initial_state.a) << "\n";
  out << "initial_state.b = " << fmt(c.initial_state.b) << "\n";
  out << "initial_state.lambda0 = " << fmt(c.initial_state.lambda0) << "\n";
  out << "initial_state.mode0 = " << c.initial_state.mode0 << "\n";
  out << "initial_state.mode1 = " << c.initial_state.mode1 << "\n";
  out << "initial_state.mode_scale = " << fmt(c.initial_state.mode_scale) << "\n";
  out << "potential.kind = " << potential_kind_name(c.potential.kind) << "\n";
  out << "potential.f_kind = " << c.potential.f_kind << "\n";
  out << "potential.g_kind = " << c.potential.g_kind << "\n";
  out << "potential.f_scale = " << fmt(c.potential.f_scale) << "\n";
  out << "potential.g_scale = " << fmt(c.potential.g_scale) << "\n";
  out << "potential.kappa = " << fmt(c.potential.kappa) << "\n";
  out << "potential.v0 = " << fmt(c.potential.v0) << "\n";
  out << "potential.width = " << fmt(c.potential.width) << "\n";
  out << "evolution.dt = " << fmt(c.evolution.dt) << "\n";
  out << "evolution.steps = " << c.evolution.steps << "\n";
  out << "evolution.record_every = " << c.evolution.record_every << "\n";
  out << "outputs.timeseries_path = " << c.outputs.timeseries_path << "\n";
  out << "outputs.report_path = " << c.outputs.report_path << "\n";
  out << "outputs.dump_path = " << c.outputs.dump_path << "\n";
  out << "outputs.dump_every = " << c.outputs.dump_every << "\n";
  return out.str();
}

namespace {

// Gaussian envelopes are summed over the 3x3 nearest periodic images so the
// state is smooth across the torus seam; remoter images are below machine
// precision for any state that passes the edge gate.
double periodized_gaussian(double x, double center, double sigma, double length) {
  double s = 0.0;
  for (int p = -1; p <= 1; ++p) {
    const double u = x + static_cast<double>(p) * length - center;
    s += std::exp(-u * u / (4.0 * sigma * sigma));
  }
  return s;
}

double hermite_poly(int m, double z) {
  double h0 = 1.0;
  if (m == 0) return h0;
  double h1 = 2.0 * z;
  for (int k = 1; k < m; ++k) {
    const double h2 = 2.0 * z * h1 - 2.0 * static_cast<double>(k) * h0;
    h0 = h1;
    h1 = h2;
  }
  return h1;
}

double periodized_hermite(int m, double x, double scale, double length) {
  double s = 0.0;
  for (int p = -1; p <= 1; ++p) {
    const double z = (x + static_cast<double>(p) * length) / scale;
    s += hermite_poly(m, z) * std::exp(-0.5 * z * z);
  }
  return s;
}

std::vector<cplx> orthonormal_mode(const Grid& g, int m, double scale,
                                   const std::vector<cplx>* against) {
  const std::size_t n = g.n;
  std::vector<cplx> u(n);
  for (std::size_t i = 0; i < n; ++i) {
    u[i] = periodized_hermite(m, g.coord(i), scale, g.length);
  }
  if (against) {
    cplx ip{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) ip += std::conj((*against)[i]) * u[i];
    ip *= g.spacing;
    for (std::size_t i = 0; i < n; ++i) u[i] -= ip * (*against)[i];
  }
  double nrm = 0.0;
  for (const cplx& z : u) nrm += std::norm(z);
  nrm = std::sqrt(nrm * g.spacing);
  if (!(nrm > 1e-12)) throw NumericalAbort("Schmidt mode collapsed on this grid");
  for (cplx& z : u) z /= nrm;
  return u;
}

double edge_ratio(const Field2C& psi) {
  const std::size_t n = psi.n();
  double edge = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    edge = std::max(edge, std::abs(psi.at(0, k)));
    edge = std::max(edge, std::abs(psi.at(k, 0)));
  }
  return edge / norm_linf(psi);
}

double round_to_admissible(double momentum, double length) {
  const double two_pi = 2.0 * std::numbers::pi;
  return two_pi * std::round(momentum * length / two_pi) / length;
}

}  // namespace

Field2C build_initial_state(const InitialStateSpec& spec, const Grid& grid,
                            std::string* edge_warning) {
  Field2C psi(grid);
  switch (spec.kind) {
    case StateKind::product_gaussian: {
      const double kx = round_to_admissible(spec.momentum_x, grid.length);
      const double ky = round_to_admissible(spec.momentum_y, grid.length);
      psi = Field2C::from_function(grid, [&](double x, double y) {
        const double env = periodized_gaussian(x, spec.center_x, spec.sigma_x, grid.length) *
                           periodized_gaussian(y, spec.center_y, spec.sigma_y, grid.length);
        return std::polar(env, kx * x + ky * y);
      });
      break;
    }
    case StateKind::double_gaussian: {
      const double a = spec.a;
      const double b = spec.b;
      psi = Field2C::from_function(grid, [&](double x, double y) {
        double s = 0.0;
        for (int p = -1; p <= 1; ++p) {
          for (int q = -1; q <= 1; ++q) {
            const double u = x + static_cast<double>(p) * grid.length;
            const double w = y + static_cast<double>(q) * grid.length;
            s += std::exp(-(u + w) * (u + w) / (4.0 * b * b) -
                          (u - w) * (u - w) / (4.0 * a * a));
          }
        }
        return cplx{s, 0.0};
      });
      break;
    }
    case StateKind::schmidt_two_term: {
      const std::vector<cplx> u0 = orthonormal_mode(grid, spec.mode0, spec.mode_scale, nullptr);
      const std::vector<cplx> u1 = orthonormal_mode(grid, spec.mode1, spec.mode_scale, &u0);
      const double w0 = std::sqrt(spec.lambda0);
      const double w1 = std::sqrt(1.0 - spec.lambda0);
      for (std::size_t i = 0; i < grid.n; ++i) {
        for (std::size_t j = 0; j < grid.n; ++j) {
          psi.at(i, j) = w0 * u0[i] * u0[j] + w1 * u1[i] * u1[j];
        }
      }
      break;
    }
  }

  const double ratio = edge_ratio(psi);
  if (ratio > 1e-8) {
    // Gaussian-tail extrapolation of the length that would push the edge
    // amplitude down to 1e-8 of the maximum.
    const double needed =
        grid.length * std::sqrt(std::log(1e8) / std::max(std::log(1.0 / ratio), 1e-3));
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "edge amplitude %.2e of max exceeds 1e-8; grid length >= %.3g would fit",
                  ratio, needed);
    if (ratio > 1e-5) throw NumericalAbort(buf);
    if (edge_warning) *edge_warning = buf;
  }

  normalize(psi);
  return psi;
}

Potential build_potential(const PotentialSpec& spec, const Grid& grid) {
  switch (spec.kind) {
    case PotentialSpecKind::none:
      return make_zero_potential(grid);
    case PotentialSpecKind::separable: {
      const double fs = spec.f_scale;
      const double gs = spec.g_scale;
      return make_potential(grid, PotentialKind::separable,
                            [fs, gs](double x, double y) { return fs * x * x + gs * y * y; });
    }
    case PotentialSpecKind::bilinear: {
      const double k = spec.kappa;
      return make_potential(grid, PotentialKind::bilinear,
                            [k](double x, double y) { return k * x * y; });
    }
    case PotentialSpecKind::gaussian_coupling: {
      const double v0 = spec.v0;
      const double w = spec.width;
      return make_potential(grid, PotentialKind::gaussian_coupling, [v0, w](double x, double y) {
        const double d = x - y;
        return v0 * std::exp(-d * d / (w * w));
      });
    }
  }
  throw InvalidArgument("unhandled potential kind");
}

ScenarioResult run_scenario(const ScenarioConfig& config) {
  const Grid grid = make_grid(config.grid.n, config.grid.length);
  validate(config.phys);

  ScenarioResult result;
  std::string warning;
  const Field2C psi0 = build_initial_state(config.initial_state, grid, &warning);
  if (!warning.empty()) result.warnings.push_back(warning);
  const Potential v = build_potential(config.potential, grid);

  const bool residuals_feasible = grid.n <= Field4C::dense_limit;
  const bool interacting = config.potential.kind != PotentialSpecKind::none;
  if (residuals_feasible) {
    result.initial_report = interacting ? residual_interacting(psi0, v, config.phys)
                                        : residual_free(psi0, config.phys);
  } else {
    result.warnings.push_back("continuity residuals skipped: n exceeds the dense limit");
  }

  const double dt = config.evolution.dt;
  std::size_t dump_counter = 0;
  std::size_t row_counter = 0;
  Field2C last = psi0;
  auto observe = [&](double t, const Field2C& psi) {
    TimeSeriesRow row;
    row.t = t;
    const SchmidtSpectrum spec = schmidt_spectrum(psi);
    row.purity = purity_from_rho(reduced_density(psi));
    row.schmidt_number = spec.schmidt_number();
    row.concurrence = concurrence(row.purity);
    row.imag_total = purity_from_density(purity_density_view(psi)).imag();
    row.norm = norm_l2(psi);
    const PurityRate rate = purity_rate_check(psi, v, config.phys, dt);
    row.purity_rate_lhs = rate.lhs;
    row.purity_rate_rhs = rate.rhs;
    result.rows.push_back(row);

    if (config.outputs.dump_every > 0 &&
        row_counter % config.outputs.dump_every == 0) {
      char suffix[32];
      std::snprintf(suffix, sizeof suffix, ".%06zu", dump_counter++);
      write_field_dump(psi, config.outputs.dump_path + suffix);
    }
    ++row_counter;
    last = psi;
  };

  last = evolve(psi0, v, config.phys, config.evolution, observe);

  if (residuals_feasible) {
    result.final_report = interacting ? residual_interacting(last, v, config.phys)
                                      : residual_free(last, config.phys);
  }

  if (!config.outputs.timeseries_path.empty()) {
    write_timeseries(result.rows, config.outputs.timeseries_path);
  }
  if (!config.outputs.report_path.empty()) {
    write_report(result, config.outputs.report_path);
  }
  return result;
}

}  // namespace puridyn
