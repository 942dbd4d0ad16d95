#include "sch/config.hpp"

#include <cmath>

#include "sch/io.hpp"

namespace sch {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  std::size_t b = s.find_last_not_of(" \t\r");
  if (a == std::string::npos) return "";
  return s.substr(a, b - a + 1);
}

double parse_num(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("malformed value for " + key + ": " + value);
  }
}

int parse_int(const std::string& key, const std::string& value) {
  const double v = parse_num(key, value);
  const int i = static_cast<int>(std::llround(v));
  if (std::fabs(v - i) > 1e-12) throw ConfigError(key + " must be an integer, got " + value);
  return i;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "on" || value == "true" || value == "1") return true;
  if (value == "off" || value == "false" || value == "0") return false;
  throw ConfigError("malformed value for " + key + ": " + value);
}

} // namespace

int parse_eps_k(const std::string& token) {
  const std::size_t slash = token.find('/');
  if (slash != std::string::npos) {
    const std::string num = trim(token.substr(0, slash));
    const std::string den = trim(token.substr(slash + 1));
    if (num != "1") throw ConfigError("eps must be 1/k, got " + token);
    const int k = parse_int("eps", den);
    if (k < 1) throw ConfigError("eps must be 1/k with k >= 1, got " + token);
    return k;
  }
  const double v = parse_num("eps", token);
  if (!(v > 0.0) || v > 1.0) throw ConfigError("eps must lie in (0,1], got " + token);
  const double kd = 1.0 / v;
  const int k = static_cast<int>(std::llround(kd));
  if (std::fabs(kd - k) > 1e-9) throw ConfigError("eps must be the reciprocal of an integer, got " + token);
  return k;
}

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig cfg;
  std::size_t pos = 0;
  int lineno = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) eol = text.size();
    std::string line = trim(text.substr(pos, eol - pos));
    pos = eol + 1;
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key=value, got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (value.empty())
      throw ConfigError("line " + std::to_string(lineno) + ": empty value for " + key);

    try {
      if (key == "command") {
        if (value != "cell" && value != "micro" && value != "macro" && value != "unfold" &&
            value != "sweep")
          throw ConfigError("unknown command: " + value);
        cfg.command = value;
      } else if (key == "geometry") {
        cfg.geometry = CellGeometry::parse(value);
      } else if (key == "eps") {
        cfg.eps_k.clear();
        std::size_t p = 0;
        while (p <= value.size()) {
          std::size_t comma = value.find(',', p);
          if (comma == std::string::npos) comma = value.size();
          const std::string token = trim(value.substr(p, comma - p));
          if (!token.empty()) cfg.eps_k.push_back(parse_eps_k(token));
          p = comma + 1;
        }
        if (cfg.eps_k.empty()) throw ConfigError("eps list is empty");
      } else if (key == "N") {
        cfg.N = parse_int(key, value);
      } else if (key == "lambda") {
        cfg.lambda = parse_num(key, value);
      } else if (key == "mu") {
        cfg.mu = parse_num(key, value);
      } else if (key == "S") {
        cfg.S = parse_num(key, value);
      } else if (key == "dt") {
        cfg.dt = parse_num(key, value);
      } else if (key == "T") {
        cfg.T = parse_num(key, value);
      } else if (key == "stride") {
        cfg.stride = parse_int(key, value);
      } else if (key == "dual_stride") {
        cfg.dual_stride = parse_int(key, value);
      } else if (key == "seed") {
        cfg.seed = static_cast<std::uint64_t>(std::stoull(value));
      } else if (key == "c0") {
        cfg.c0 = value;
      } else if (key == "stokes") {
        cfg.stokes_on = parse_bool(key, value);
      } else if (key == "convention") {
        cfg.convention = sigma_convention_from_string(value);
      } else if (key == "orientation") {
        cfg.orientation = orientation_from_string(value);
      } else if (key == "sigma_bar") {
        cfg.sigma_bar = parse_num(key, value);
      } else if (key == "coefficients") {
        cfg.coefficients = value;
      } else if (key == "snapshot") {
        cfg.snapshot = value;
      } else if (key == "field") {
        if (value != "c" && value != "w" && value != "p")
          throw ConfigError("field must be c, w or p, got " + value);
        cfg.field = value;
      } else if (key == "extension") {
        if (value != "zero" && value != "cellavg")
          throw ConfigError("extension must be zero or cellavg, got " + value);
        cfg.extension = value;
      } else if (key == "alpha") {
        cfg.alpha = parse_num(key, value);
      } else if (key == "beta") {
        cfg.beta = parse_num(key, value);
      } else if (key == "gamma") {
        cfg.gamma = parse_num(key, value);
      } else if (key == "exponent_override") {
        cfg.exponent_override = parse_bool(key, value);
      } else if (key == "tol") {
        cfg.tol = parse_num(key, value);
      } else {
        throw ConfigError("unknown key: " + key);
      }
    } catch (const ConfigError& err) {
      throw ConfigError("line " + std::to_string(lineno) + ": " + err.what());
    }
  }
  return cfg;
}

void ExperimentConfig::require(const std::string& key_name, bool present) const {
  if (!present)
    throw ConfigError("command '" + command + "' needs the key '" + key_name + "'");
}

MicroParams ExperimentConfig::micro_params() const {
  MicroParams p;
  p.n_cell = N;
  p.lambda = lambda;
  p.mu = mu;
  p.S = S;
  p.dt = dt;
  p.T = T;
  p.snapshot_stride = stride;
  p.dual_stride = dual_stride;
  p.stokes_on = stokes_on;
  p.alpha = alpha;
  p.beta = beta;
  p.gamma = gamma;
  p.exponent_override = exponent_override;
  if (tol > 0.0) {
    p.ch_solver.tol = tol;
    p.stokes_solver.tol = tol;
  }
  return p;
}

MacroParams ExperimentConfig::macro_params(const EffectiveCoefficients& coeffs) const {
  MacroParams p;
  p.n = N;
  p.lambda = lambda;
  p.mu = mu;
  p.S = S;
  p.dt = dt;
  p.T = T;
  p.snapshot_stride = stride;
  p.orientation = orientation;
  p.coeffs = coeffs;
  if (sigma_bar) {
    p.has_sigma_override = true;
    p.sigma_bar_override = *sigma_bar;
  }
  if (tol > 0.0) {
    p.ch_solver.tol = tol;
    p.darcy_solver.tol = tol;
  }
  return p;
}

} // namespace sch
