#include "lcflow/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <vector>

namespace lcflow {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

double parse_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  const char* first = v.data();
  const char* last = v.data() + v.size();
  if (!v.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc() || ptr != last || v.empty()) throw ConfigError("malformed number for " + key + ": '" + v + "'");
  return out;
}

template <typename Int>
Int parse_int(const std::string& key, const std::string& v) {
  Int out{};
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || v.empty()) {
    throw ConfigError("malformed integer for " + key + ": '" + v + "'");
  }
  return out;
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ConfigError("malformed boolean for " + key + ": '" + v + "'");
}

using Setter = std::function<void(RunConfig&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = [] {
    std::map<std::string, Setter> t;
    auto dbl = [&t](const std::string& k, double RunConfig::*m) {
      t[k] = [k, m](RunConfig& c, const std::string& v) { c.*m = parse_double(k, v); };
    };
    auto coef = [&t](const std::string& k, double Coefficients::*m) {
      t[k] = [k, m](RunConfig& c, const std::string& v) { c.coeffs.*m = parse_double(k, v); };
    };
    t["grid.n"] = [](RunConfig& c, const std::string& v) { c.n = parse_int<int>("grid.n", v); };
    coef("coefficients.nu", &Coefficients::nu);
    coef("coefficients.l1", &Coefficients::l1);
    coef("coefficients.l2", &Coefficients::l2);
    coef("coefficients.l3", &Coefficients::l3);
    coef("coefficients.l4", &Coefficients::l4);
    coef("coefficients.a", &Coefficients::a);
    coef("coefficients.b", &Coefficients::b);
    coef("coefficients.c", &Coefficients::c);
    coef("coefficients.xi", &Coefficients::xi);
    coef("coefficients.delta", &Coefficients::delta);
    t["coefficients.k_reg"] = [](RunConfig& c, const std::string& v) {
      c.coeffs.k_reg = parse_int<int>("coefficients.k_reg", v);
    };
    t["coefficients.allow_isotropic"] = [](RunConfig& c, const std::string& v) {
      c.coeffs.allow_isotropic = parse_bool("coefficients.allow_isotropic", v);
    };
    dbl("time.dt", &RunConfig::dt);
    dbl("time.t_end", &RunConfig::t_end);
    t["init.seed"] = [](RunConfig& c, const std::string& v) { c.init.seed = parse_int<std::uint64_t>("init.seed", v); };
    t["init.q_linf"] = [](RunConfig& c, const std::string& v) { c.init.q_linf = parse_double("init.q_linf", v); };
    t["init.max_mode"] = [](RunConfig& c, const std::string& v) { c.init.max_mode = parse_int<int>("init.max_mode", v); };
    t["init.u_mode"] = [](RunConfig& c, const std::string& v) { c.init.u_mode = parse_int<int>("init.u_mode", v); };
    t["init.u_amp"] = [](RunConfig& c, const std::string& v) { c.init.u_amp = parse_double("init.u_amp", v); };
    t["thresholds.k1"] = [](RunConfig& c, const std::string& v) { c.thresholds.k1 = parse_double("thresholds.k1", v); };
    t["thresholds.k2"] = [](RunConfig& c, const std::string& v) { c.thresholds.k2 = parse_double("thresholds.k2", v); };
    t["thresholds.c_star"] = [](RunConfig& c, const std::string& v) {
      c.thresholds.c_star = parse_double("thresholds.c_star", v);
    };
    t["output.dir"] = [](RunConfig& c, const std::string& v) {
      if (v.empty()) throw ConfigError("output.dir must not be empty");
      c.output.dir = v;
    };
    t["output.stride"] = [](RunConfig& c, const std::string& v) { c.output.stride = parse_int<int>("output.stride", v); };
    t["numerics.dealias"] = [](RunConfig& c, const std::string& v) {
      c.numerics.dealias = parse_bool("numerics.dealias", v);
    };
    t["numerics.cfl_max"] = [](RunConfig& c, const std::string& v) {
      if (v == "none") {
        c.numerics.cfl_max.reset();
      } else {
        c.numerics.cfl_max = parse_double("numerics.cfl_max", v);
      }
    };
    return t;
  }();
  return table;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  if (ec != std::errc()) throw std::runtime_error("format_double failed");
  return std::string(buf, ptr);
}

void apply_setting(RunConfig& c, const std::string& dotted_key, const std::string& value) {
  const auto& t = setters();
  const auto it = t.find(dotted_key);
  if (it == t.end()) throw ConfigError("unknown key " + dotted_key);
  it->second(c, value);
}

void validate_config(const RunConfig& c) {
  try {
    GridSpec g(c.n);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("grid.n: ") + e.what());
  }
  if (!(c.dt > 0.0)) throw ConfigError("time.dt must be positive");
  if (!(c.t_end > 0.0)) throw ConfigError("time.t_end must be positive");
  if (c.coeffs.delta < 0.0) throw ConfigError("coefficients.delta must be non-negative");
  if (c.coeffs.delta > 0.0 && (c.coeffs.k_reg < 4 || c.coeffs.k_reg % 2 != 0)) {
    throw ConfigError("coefficients.k_reg must be an even integer >= 4 when delta > 0");
  }
  if (c.init.q_linf < 0.0) throw ConfigError("init.q_linf must be non-negative");
  if (c.init.max_mode < 0 || 3 * c.init.max_mode >= c.n) {
    throw ConfigError("init.max_mode must satisfy 0 <= max_mode < n/3");
  }
  if (c.init.u_mode < 1) throw ConfigError("init.u_mode must be positive");
  if (c.output.stride < 1) throw ConfigError("output.stride must be >= 1");
  if (c.numerics.cfl_max && !(*c.numerics.cfl_max > 0.0)) throw ConfigError("numerics.cfl_max must be positive");
}

RunConfig parse_config(std::string_view text) {
  RunConfig c;
  std::set<std::string> sections;
  std::set<std::string> seen;
  std::string section;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("line " + std::to_string(line_no) + ": malformed section header");
      section = trim(std::string_view(line).substr(1, line.size() - 2));
      sections.insert(section);
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    if (section.empty()) throw ConfigError("line " + std::to_string(line_no) + ": key outside of a section");
    const std::string key = section + "." + trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (!seen.insert(key).second) throw ConfigError("duplicate key " + key);
    apply_setting(c, key, value);
  }
  for (const char* s : {"grid", "time"}) {
    if (!sections.count(s)) throw ConfigError(std::string("missing required section [") + s + "]");
  }
  for (const char* k : {"grid.n", "time.dt", "time.t_end"}) {
    if (!seen.count(k)) throw ConfigError(std::string("missing required key ") + k);
  }
  validate_config(c);
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read config " + path.string());
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

std::string write_config(const RunConfig& c) {
  std::ostringstream o;
  const auto& k = c.coeffs;
  o << "[grid]\n"
    << "n = " << c.n << "\n\n"
    << "[coefficients]\n"
    << "nu = " << format_double(k.nu) << "\n"
    << "l1 = " << format_double(k.l1) << "\n"
    << "l2 = " << format_double(k.l2) << "\n"
    << "l3 = " << format_double(k.l3) << "\n"
    << "l4 = " << format_double(k.l4) << "\n"
    << "a = " << format_double(k.a) << "\n"
    << "b = " << format_double(k.b) << "\n"
    << "c = " << format_double(k.c) << "\n"
    << "xi = " << format_double(k.xi) << "\n"
    << "delta = " << format_double(k.delta) << "\n"
    << "k_reg = " << k.k_reg << "\n"
    << "allow_isotropic = " << (k.allow_isotropic ? "true" : "false") << "\n\n"
    << "[time]\n"
    << "dt = " << format_double(c.dt) << "\n"
    << "t_end = " << format_double(c.t_end) << "\n\n"
    << "[init]\n"
    << "seed = " << c.init.seed << "\n"
    << "q_linf = " << format_double(c.init.q_linf) << "\n"
    << "max_mode = " << c.init.max_mode << "\n"
    << "u_mode = " << c.init.u_mode << "\n"
    << "u_amp = " << format_double(c.init.u_amp) << "\n\n"
    << "[thresholds]\n"
    << "k1 = " << format_double(c.thresholds.k1) << "\n"
    << "k2 = " << format_double(c.thresholds.k2) << "\n"
    << "c_star = " << format_double(c.thresholds.c_star) << "\n\n"
    << "[output]\n"
    << "dir = " << c.output.dir << "\n"
    << "stride = " << c.output.stride << "\n\n"
    << "[numerics]\n"
    << "dealias = " << (c.numerics.dealias ? "true" : "false") << "\n"
    << "cfl_max = " << (c.numerics.cfl_max ? format_double(*c.numerics.cfl_max) : std::string("none")) << "\n";
  return o.str();
}

int effective_max_mode(const RunConfig& c) { return c.init.max_mode > 0 ? c.init.max_mode : c.n / 8; }

StepperConfig stepper_config(const RunConfig& c) {
  StepperConfig s;
  s.dt = c.dt;
  s.scheme = Scheme::imex1;
  s.dealias_enabled = c.numerics.dealias;
  s.cfl_guard = c.numerics.cfl_max;
  return s;
}

SimulationState initial_state(const RunConfig& c, const Spectral& sp) {
  const GridSpec& g = sp.grid();
  QTensorField q(g);
  if (c.init.q_linf > 0.0) q = random_initial_q(sp, c.init.seed, effective_max_mode(c), c.init.q_linf);
  VelocityField u(g);
  if (c.init.u_amp != 0.0) u = taylor_green(g, c.init.u_mode, c.init.u_amp);
  return SimulationState(0.0, std::move(u), std::move(q));
}

}  // namespace lcflow
