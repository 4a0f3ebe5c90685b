#include "tvk/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace tvk {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

// ---------------------------------------------------------------------------
// monotone cubic interpolation (Fritsch-Carlson), flat extrapolation

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  const size_t n = x_.size();
  if (n < 2 || y_.size() != n) throw Error("table needs >= 2 points");
  for (size_t i = 1; i < n; ++i)
    if (!(x_[i] > x_[i - 1])) throw Error("table abscissae must increase");

  std::vector<double> d(n - 1);
  for (size_t i = 0; i + 1 < n; ++i) d[i] = (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]);
  m_.assign(n, 0.0);
  m_[0] = d[0];
  m_[n - 1] = d[n - 2];
  for (size_t i = 1; i + 1 < n; ++i)
    m_[i] = (d[i - 1] * d[i] > 0.0) ? 0.5 * (d[i - 1] + d[i]) : 0.0;
  for (size_t i = 0; i + 1 < n; ++i) {
    if (d[i] == 0.0) {
      m_[i] = m_[i + 1] = 0.0;
      continue;
    }
    const double a = m_[i] / d[i], b = m_[i + 1] / d[i];
    const double s = a * a + b * b;
    if (s > 9.0) {
      const double tau = 3.0 / std::sqrt(s);
      m_[i] = tau * a * d[i];
      m_[i + 1] = tau * b * d[i];
    }
  }
}

double MonotoneCubic::operator()(double x) const {
  if (x <= x_.front()) return y_.front();
  if (x >= x_.back()) return y_.back();
  size_t i = std::upper_bound(x_.begin(), x_.end(), x) - x_.begin() - 1;
  const double h = x_[i + 1] - x_[i];
  const double t = (x - x_[i]) / h;
  const double t2 = t * t, t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * y_[i] + (t3 - 2 * t2 + t) * h * m_[i] +
         (-2 * t3 + 3 * t2) * y_[i + 1] + (t3 - t2) * h * m_[i + 1];
}

// ---------------------------------------------------------------------------

namespace {

const std::set<std::string> kKnownKeys = {
    "grid.x_left", "grid.x_right", "grid.n",
    "coefficients.gamma", "coefficients.gamma_c0", "coefficients.gamma_c1",
    "coefficients.gamma_value", "coefficients.gamma_table",
    "coefficients.a", "coefficients.a_base", "coefficients.a_amp",
    "coefficients.a_rate", "coefficients.a_value",
    "coefficients.f", "coefficients.f_scale", "coefficients.f_alpha",
    "coefficients.f_table",
    "coefficients.c_gamma", "coefficients.C_gamma", "coefficients.C_f",
    "coefficients.alpha", "coefficients.D",
    "initial.u0", "initial.u0_amp", "initial.u0_mode", "initial.u0_value",
    "initial.v0", "initial.v0_amp", "initial.v0_mode", "initial.v0_value",
    "initial.theta0", "initial.theta0_amp", "initial.theta0_mode",
    "initial.theta0_value",
    "run.scenario", "run.T", "run.dt", "run.sample_stride",
    "run.snapshot_stride", "run.blowup_threshold",
    "checks.p", "checks.q", "checks.r", "checks.K",
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double to_number(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw Error("unparsable number for key '" + key + "': " + v);
  }
}

int to_int(const std::string& key, const std::string& v) {
  const double d = to_number(key, v);
  if (d != std::floor(d)) throw Error("key '" + key + "' must be an integer");
  return static_cast<int>(d);
}

using KeyMap = std::map<std::string, std::string>;

KeyMap parse_keys(const std::string& text) {
  KeyMap keys;
  std::istringstream is(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw Error("malformed section header: " + line);
      section = trim(line.substr(1, line.size() - 2));
      if (section != "grid" && section != "coefficients" && section != "initial" &&
          section != "run" && section != "checks")
        throw Error("unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw Error("expected key=value, got: " + line);
    if (section.empty()) throw Error("key outside any section: " + line);
    const std::string key = section + "." + trim(line.substr(0, eq));
    if (!kKnownKeys.count(key)) throw Error("unknown key '" + key + "'");
    keys[key] = trim(line.substr(eq + 1));
  }
  return keys;
}

ScalarFn parse_table(const std::string& key, const std::string& text) {
  std::vector<double> xs, ys;
  std::istringstream is(text);
  std::string item;
  while (std::getline(is, item, ';')) {
    item = trim(item);
    if (item.empty()) continue;
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw Error("table entry needs z:value in '" + key + "'");
    xs.push_back(to_number(key, trim(item.substr(0, colon))));
    ys.push_back(to_number(key, trim(item.substr(colon + 1))));
  }
  MonotoneCubic interp(std::move(xs), std::move(ys));
  return [interp](double z) { return interp(z); };
}

ScalarFn make_profile(const KeyMap& keys, const std::string& base, double domain_left,
                      double domain_len, const ScalarFn& fallback) {
  auto get = [&](const std::string& suffix, double dflt) {
    const auto it = keys.find("initial." + base + suffix);
    return it == keys.end() ? dflt : to_number(base + suffix, it->second);
  };
  const auto it = keys.find("initial." + base);
  if (it == keys.end()) return fallback;
  const std::string& name = it->second;
  if (name == "zero") return [](double) { return 0.0; };
  if (name == "constant") {
    const double v = get("_value", 0.0);
    return [v](double) { return v; };
  }
  if (name == "cosine") {
    const double amp = get("_amp", 1.0);
    const double mode = get("_mode", 1.0);
    return [=](double x) {
      return amp * std::cos(mode * kPi * (x - domain_left) / domain_len);
    };
  }
  if (name == "one_plus_cos_sq") {
    return [=](double x) {
      const double c = std::cos(kPi * (x - domain_left) / domain_len);
      return 1.0 + c * c;
    };
  }
  throw Error("unknown initial profile '" + name + "' for " + base);
}

SimConfig scenario_by_name(const std::string& name) {
  if (name == "standard") return scenarios::standard();
  if (name == "standard_static_a") return scenarios::standard_static_a();
  if (name == "decoupled") return scenarios::decoupled();
  if (name == "alpha09") return scenarios::alpha09();
  throw Error("unknown scenario '" + name + "'");
}

SimConfig build_config(const KeyMap& keys) {
  SimConfig cfg;
  const auto scen = keys.find("run.scenario");
  cfg = scen != keys.end() ? scenario_by_name(scen->second) : scenarios::standard();

  auto num = [&](const char* key, double dflt) {
    const auto it = keys.find(key);
    return it == keys.end() ? dflt : to_number(key, it->second);
  };
  auto integer = [&](const char* key, int dflt) {
    const auto it = keys.find(key);
    return it == keys.end() ? dflt : to_int(key, it->second);
  };
  auto str = [&](const char* key) -> const std::string* {
    const auto it = keys.find(key);
    return it == keys.end() ? nullptr : &it->second;
  };

  cfg.x_left = num("grid.x_left", cfg.x_left);
  cfg.x_right = num("grid.x_right", cfg.x_right);
  cfg.n = integer("grid.n", cfg.n);
  if (cfg.n < 8) throw Error("n below minimum 8");
  if (!(cfg.x_left < cfg.x_right)) throw Error("invalid configuration: empty domain");

  CoefficientSet& c = cfg.coeffs;
  if (const auto* g = str("coefficients.gamma")) {
    if (*g == "saturating_gamma") {
      const double c0 = num("coefficients.gamma_c0", 1.0);
      const double c1 = num("coefficients.gamma_c1", 0.5);
      c.gamma = [=](double z) { return c0 - c1 / (1.0 + z); };
    } else if (*g == "constant") {
      const double v = num("coefficients.gamma_value", 1.0);
      c.gamma = [v](double) { return v; };
    } else if (*g == "table") {
      const auto* tab = str("coefficients.gamma_table");
      if (!tab) throw Error("gamma=table requires gamma_table");
      c.gamma = parse_table("gamma_table", *tab);
    } else {
      throw Error("unknown gamma function '" + *g + "'");
    }
  }
  if (const auto* a = str("coefficients.a")) {
    if (*a == "sinusoidal_a") {
      const double base = num("coefficients.a_base", 2.0);
      const double amp = num("coefficients.a_amp", 1.0);
      const double rate = num("coefficients.a_rate", 1.0);
      const double xl = cfg.x_left, len = cfg.x_right - cfg.x_left;
      c.a = [=](double x, double t) {
        return base + amp * std::sin(kPi * (x - xl) / len) * std::exp(-rate * t);
      };
    } else if (*a == "constant") {
      const double v = num("coefficients.a_value", 1.0);
      c.a = [v](double, double) { return v; };
    } else {
      throw Error("unknown stiffness function '" + *a + "'");
    }
  }
  if (const auto* f = str("coefficients.f")) {
    if (*f == "power_f") {
      const double scale = num("coefficients.f_scale", 2.0);
      const double fa = num("coefficients.f_alpha", 0.5);
      c.f = [=](double z) { return scale * (std::pow(1.0 + z, fa) - 1.0); };
    } else if (*f == "zero") {
      c.f = [](double) { return 0.0; };
    } else if (*f == "table") {
      const auto* tab = str("coefficients.f_table");
      if (!tab) throw Error("f=table requires f_table");
      c.f = parse_table("f_table", *tab);
    } else {
      throw Error("unknown coupling function '" + *f + "'");
    }
  }
  c.c_gamma = num("coefficients.c_gamma", c.c_gamma);
  c.C_gamma = num("coefficients.C_gamma", c.C_gamma);
  c.C_f = num("coefficients.C_f", c.C_f);
  c.alpha = num("coefficients.alpha", c.alpha);
  c.D = num("coefficients.D", c.D);

  const double xl = cfg.x_left, len = cfg.x_right - cfg.x_left;
  cfg.init.u0 = make_profile(keys, "u0", xl, len, cfg.init.u0);
  cfg.init.u0t = make_profile(keys, "v0", xl, len, cfg.init.u0t);
  cfg.init.theta0 = make_profile(keys, "theta0", xl, len, cfg.init.theta0);

  cfg.T = num("run.T", cfg.T);
  cfg.dt = num("run.dt", cfg.dt);
  cfg.sample_stride = integer("run.sample_stride", cfg.sample_stride);
  cfg.snapshot_stride = integer("run.snapshot_stride", cfg.snapshot_stride);
  cfg.blowup_threshold = num("run.blowup_threshold", cfg.blowup_threshold);

  cfg.checks.p = num("checks.p", cfg.checks.p);
  cfg.checks.q = num("checks.q", cfg.checks.q);
  cfg.checks.r = num("checks.r", cfg.checks.r);
  cfg.checks.K = integer("checks.K", cfg.checks.K);

  cfg.validate();

  // hypothesis-violating constants flag the set as outside the theorem but
  // stay runnable; full sampled validation decides
  const ValidationReport rep = validate_coefficients(c);
  if (!rep.pass()) {
    c.outside_theorem = true;
    for (const auto& chk : rep.checks)
      if (!chk.passed) {
        c.violated_hypothesis = chk.tag;
        break;
      }
  } else {
    c.outside_theorem = false;
    c.violated_hypothesis.clear();
  }
  return cfg;
}

}  // namespace

SimConfig parse_config_text(const std::string& text,
                            const std::vector<std::string>& overrides) {
  KeyMap keys = parse_keys(text);
  for (const std::string& ov : overrides) {
    const auto eq = ov.find('=');
    if (eq == std::string::npos) throw Error("override must look like section.key=value");
    const std::string key = trim(ov.substr(0, eq));
    if (!kKnownKeys.count(key)) throw Error("unknown key '" + key + "'");
    keys[key] = trim(ov.substr(eq + 1));
  }
  return build_config(keys);
}

SimConfig parse_config(const std::string& path, const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), overrides);
}

// ---------------------------------------------------------------------------

namespace scenarios {

SimConfig standard() {
  SimConfig cfg;
  cfg.n = 256;
  cfg.coeffs.gamma = [](double z) { return 1.0 - 0.5 / (1.0 + z); };
  cfg.coeffs.a = [](double x, double t) {
    return 2.0 + std::sin(kPi * x) * std::exp(-t);
  };
  cfg.coeffs.f = [](double z) { return 2.0 * (std::sqrt(1.0 + z) - 1.0); };
  cfg.coeffs.c_gamma = 0.49;
  cfg.coeffs.C_gamma = 1.01;
  cfg.coeffs.C_f = 2.0;
  cfg.coeffs.alpha = 0.5;
  cfg.coeffs.D = 1.0;
  cfg.init.u0 = [](double x) { return std::cos(kPi * x); };
  cfg.init.u0t = [](double) { return 0.0; };
  cfg.init.theta0 = [](double x) {
    const double c = std::cos(kPi * x);
    return 1.0 + c * c;
  };
  cfg.T = 5.0;
  cfg.dt = 2.5e-4;
  return cfg;
}

SimConfig standard_static_a() {
  SimConfig cfg = standard();
  cfg.coeffs.a = [](double x, double) { return 2.0 + std::sin(kPi * x); };
  return cfg;
}

SimConfig decoupled() {
  SimConfig cfg = standard();
  cfg.coeffs.gamma = [](double) { return 1.0; };
  cfg.coeffs.a = [](double, double) { return 1.0; };
  cfg.coeffs.f = [](double) { return 0.0; };
  cfg.init.theta0 = [](double) { return 0.0; };
  cfg.T = 1.0;
  cfg.dt = 0.0;  // default 0.25*dx
  return cfg;
}

SimConfig alpha09() {
  SimConfig cfg = standard();
  cfg.coeffs.f = [](double z) { return 2.0 * (std::pow(1.0 + z, 0.9) - 1.0); };
  cfg.coeffs.alpha = 0.9;
  cfg.coeffs.outside_theorem = true;
  cfg.coeffs.violated_hypothesis = "hyp-alpha";
  return cfg;
}

}  // namespace scenarios

}  // namespace tvk
