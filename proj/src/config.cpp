#include "modsplit/config.hpp"

#include "modsplit/models.hpp"

#include <fmt/format.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace modsplit {
namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Drops a trailing comment that is not inside a string.
std::string_view strip_comment(std::string_view s) {
  bool quoted = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '"') quoted = !quoted;
    if (s[i] == '#' && !quoted) return s.substr(0, i);
  }
  return s;
}

double parse_number(std::string_view s, std::size_t line) {
  std::string clean;
  for (char c : s)
    if (c != '_') clean += c;
  if (!clean.empty() && clean.front() == '+') clean.erase(0, 1);
  double x = 0.0;
  const char* end = clean.data() + clean.size();
  auto [ptr, ec] = std::from_chars(clean.data(), end, x);
  if (clean.empty() || ec != std::errc() || ptr != end)
    throw ConfigError(fmt::format("config line {}: '{}' is not a number", line, s));
  return x;
}

ConfigValue parse_value(std::string_view s, std::size_t line) {
  if (s.empty()) throw ConfigError(fmt::format("config line {}: missing value", line));
  if (s == "true") return true;
  if (s == "false") return false;
  if (s.front() == '"') {
    if (s.size() < 2 || s.back() != '"') throw ConfigError(fmt::format("config line {}: unterminated string", line));
    return std::string(s.substr(1, s.size() - 2));
  }
  if (s.front() == '[') {
    if (s.back() != ']') throw ConfigError(fmt::format("config line {}: unterminated array", line));
    std::vector<double> out;
    std::string_view body = trim(s.substr(1, s.size() - 2));
    while (!body.empty()) {
      const auto comma = body.find(',');
      const auto item = trim(body.substr(0, comma));
      if (!item.empty()) out.push_back(parse_number(item, line));
      else if (comma != std::string_view::npos) throw ConfigError(fmt::format("config line {}: empty array item", line));
      if (comma == std::string_view::npos) break;
      body = trim(body.substr(comma + 1));
    }
    return out;
  }
  return parse_number(s, line);
}

const char* type_name(const ConfigValue& v) {
  switch (v.index()) {
    case 0: return "boolean";
    case 1: return "number";
    case 2: return "string";
    default: return "array";
  }
}

template <class T>
const T& expect(const std::string& key, const ConfigValue& v, const char* wanted) {
  if (const T* x = std::get_if<T>(&v)) return *x;
  throw ConfigError(fmt::format("config key '{}' must be a {}, got a {}", key, wanted, type_name(v)));
}

long integral(const std::string& key, const ConfigValue& v) {
  const double x = expect<double>(key, v, "number");
  if (x != std::floor(x) || std::abs(x) > 9e15) throw ConfigError(fmt::format("config key '{}' must be an integer", key));
  return static_cast<long>(x);
}

std::vector<long> integral_list(const std::string& key, const ConfigValue& v) {
  std::vector<long> out;
  for (double x : expect<std::vector<double>>(key, v, "array")) out.push_back(integral(key, x));
  return out;
}

}  // namespace

std::map<std::string, ConfigValue> parse_flat_toml(std::string_view text) {
  std::map<std::string, ConfigValue> out;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto raw = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++lineno;
    const auto line = trim(strip_comment(raw));
    if (line.empty()) continue;
    if (line.front() == '[') throw ConfigError(fmt::format("config line {}: tables are not supported", lineno));
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(fmt::format("config line {}: expected key = value", lineno));
    const std::string key(trim(line.substr(0, eq)));
    if (key.empty()) throw ConfigError(fmt::format("config line {}: empty key", lineno));
    if (out.count(key)) throw ConfigError(fmt::format("config line {}: duplicate key '{}'", lineno, key));
    out.emplace(key, parse_value(trim(line.substr(eq + 1)), lineno));
  }
  return out;
}

SchemeConfig ExperimentConfig::scheme() const {
  SchemeConfig c;
  c.order = order;
  c.tau = tau;
  c.push_tol = push_tol;
  c.push_max_iter = push_max_iter;
  return c;
}

void ExperimentConfig::validate() const {
  const auto& m = model.name;
  if (m != "harmonic" && m != "quadratic" && m != "quartic" && m != "fpu")
    throw ConfigError("unknown model '" + m + "' (expected harmonic, quadratic, quartic or fpu)");
  scheme().validate();
  if (steps < 0) throw ConfigError("steps must be non-negative");
  if (sample_stride < 1) throw ConfigError("sample_stride must be positive");
  if (output.empty()) throw ConfigError("output must not be empty");
  if (!(t_end > 0.0)) throw ConfigError("t_end must be positive");
  if (!(sample_dt > 0.0)) throw ConfigError("sample_dt must be positive");
  for (double t : taus)
    if (!(t > 0.0)) throw ConfigError("taus must be positive");
  for (int n : orders)
    if (!is_supported_order(n)) throw ConfigError(fmt::format("unsupported order {} in orders", n));
  for (long d : d_list)
    if (d < 2) throw ConfigError("d_list entries must be at least 2");
  if (q0.size() != p0.size()) throw ConfigError("q0 and p0 must have equal length");
  if (!(reference.tau_ref > 0.0)) throw ConfigError("tau_ref must be positive");
  if (model.name == "fpu") {
    if (model.d < 2) throw ConfigError("fpu needs d >= 2");
    if (!(model.energy >= 0.0)) throw ConfigError("energy must be non-negative");
  }
}

ExperimentConfig parse_config(std::string_view text, ExperimentConfig c) {
  for (const auto& [key, v] : parse_flat_toml(text)) {
    if (key == "model") c.model.name = expect<std::string>(key, v, "string");
    else if (key == "order") c.order = static_cast<int>(integral(key, v));
    else if (key == "tau") c.tau = expect<double>(key, v, "number");
    else if (key == "steps") c.steps = integral(key, v);
    else if (key == "sample_stride") c.sample_stride = integral(key, v);
    else if (key == "output") c.output = expect<std::string>(key, v, "string");
    else if (key == "seed") {
      const long s = integral(key, v);
      if (s < 0) throw ConfigError("seed must be non-negative");
      c.seed = static_cast<std::uint64_t>(s);
    } else if (key == "full_state") c.full_state = expect<bool>(key, v, "boolean");
    else if (key == "push_tol") c.push_tol = expect<double>(key, v, "number");
    else if (key == "push_max_iter") c.push_max_iter = static_cast<int>(integral(key, v));
    else if (key == "precision") {
      const auto& p = expect<std::string>(key, v, "string");
      if (p == "standard") c.precision = Precision::standard;
      else if (p == "extended") c.precision = Precision::extended;
      else throw ConfigError("precision must be \"standard\" or \"extended\"");
    } else if (key == "t_end") c.t_end = expect<double>(key, v, "number");
    else if (key == "sample_dt") c.sample_dt = expect<double>(key, v, "number");
    else if (key == "taus") c.taus = expect<std::vector<double>>(key, v, "array");
    else if (key == "orders") {
      c.orders.clear();
      for (long n : integral_list(key, v)) c.orders.push_back(static_cast<int>(n));
    } else if (key == "d_list") c.d_list = integral_list(key, v);
    else if (key == "q0") c.q0 = expect<std::vector<double>>(key, v, "array");
    else if (key == "p0") c.p0 = expect<std::vector<double>>(key, v, "array");
    else if (key == "tau_ref") c.reference.tau_ref = expect<double>(key, v, "number");
    else if (key == "d") {
      const long d = integral(key, v);
      if (d < 1) throw ConfigError("d must be positive");
      c.model.d = static_cast<std::size_t>(d);
    } else if (key == "alpha") c.model.alpha = expect<double>(key, v, "number");
    else if (key == "beta") c.model.beta = expect<double>(key, v, "number");
    else if (key == "omega2") c.model.omega2 = expect<double>(key, v, "number");
    else if (key == "periodic") c.model.periodic = expect<bool>(key, v, "boolean");
    else if (key == "energy") c.model.energy = expect<double>(key, v, "number");
    else if (key == "mode") c.model.mode = static_cast<int>(integral(key, v));
    else if (key == "stiffness") c.model.stiffness = expect<std::vector<double>>(key, v, "array");
    else if (key == "mass_diag") c.model.mass_diag = expect<std::vector<double>>(key, v, "array");
    else throw ConfigError("unknown config key '" + key + "'");
  }
  c.reference.precision = c.precision;
  return c;
}

ExperimentConfig load_config(const std::string& path, ExperimentConfig base) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot read config " + path);
  std::stringstream ss;
  ss << is.rdbuf();
  return parse_config(ss.str(), std::move(base));
}

std::unique_ptr<HamiltonianModel> build_model(const ModelSpec& spec) {
  if (spec.name == "harmonic") return std::make_unique<QuadraticModel>(QuadraticModel::harmonic());
  if (spec.name == "quartic") return std::make_unique<QuarticOscillator>();
  if (spec.name == "fpu") return std::make_unique<FPUChain>(FPUParams{spec.d, spec.omega2, spec.alpha, spec.beta, spec.periodic});
  if (spec.name == "quadratic") {
    const std::size_t n = spec.mass_diag.empty() ? static_cast<std::size_t>(std::lround(std::sqrt(spec.stiffness.size())))
                                                 : spec.mass_diag.size();
    if (n == 0 || spec.stiffness.size() != n * n)
      throw ConfigError("quadratic model: stiffness must list n*n entries (row-major)");
    Matrix k(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) k(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = spec.stiffness[i * n + j];
    MassStructure mass = spec.mass_diag.empty()
                             ? MassStructure::identity(n)
                             : MassStructure::diagonal(Eigen::Map<const Vector>(spec.mass_diag.data(), static_cast<Eigen::Index>(n)));
    return std::make_unique<QuadraticModel>(std::move(mass), std::move(k));
  }
  throw ConfigError("unknown model '" + spec.name + "'");
}

PhaseState initial_state(const ExperimentConfig& config, const HamiltonianModel& model) {
  const auto n = static_cast<Eigen::Index>(model.dim());
  if (!config.q0.empty() || !config.p0.empty()) {
    if (config.q0.size() != model.dim() || config.p0.size() != model.dim())
      throw ConfigError("q0 and p0 must both be given with the model dimension");
    return {Eigen::Map<const Vector>(config.q0.data(), n), Eigen::Map<const Vector>(config.p0.data(), n)};
  }
  if (const auto* fpu = dynamic_cast<const FPUChain*>(&model))
    return fpu_initial_state(*fpu, config.model.energy, config.model.mode);
  Vector p = Vector::Zero(n);
  p[0] = 1.0;
  return {Vector::Zero(n), std::move(p)};
}

}  // namespace modsplit
