#include "lcflow/commands.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <future>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>

#include "lcflow/diagnostics.hpp"
#include "lcflow/io.hpp"

namespace lcflow {

namespace fs = std::filesystem;

fs::path output_directory(const RunConfig& c) {
  const fs::path dir(c.output.dir);
  if (const char* root = std::getenv(kOutputRootEnv); root != nullptr && *root != '\0') {
    return fs::path(root) / dir.relative_path();
  }
  return dir;
}

namespace {

std::string snapshot_name(std::size_t step) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "step_%07zu", step);
  return buf;
}

}  // namespace

int cmd_run(const RunConfig& c, std::ostream& log) {
  const GridSpec grid(c.n);
  try {
    require_valid(c.coeffs);
  } catch (const std::invalid_argument& e) {
    log << "config error: " << e.what() << "\n";
    return kExitConfigError;
  }
  const StepperConfig sc = stepper_config(c);
  const Spectral sp(grid, sc.dealias_enabled);
  const SimulationState init = initial_state(c, sp);

  const fs::path dir = output_directory(c);
  fs::create_directories(dir / "snapshots");
  {
    std::ofstream cfg(dir / "config.ini");
    cfg << write_config(c);
  }

  const Observer snap = [&](const SimulationState& s, const EnergyLedger&) {
    const auto step = static_cast<std::size_t>(std::llround((s.t - init.t) / sc.dt));
    write_snapshot(dir / "snapshots" / snapshot_name(step), s);
  };

  try {
    const RunResult r = run(init, c.coeffs, sc, c.t_end, snap, c.output.stride);
    write_series_csv(dir / "series.csv", r.series);
    double max_q = 0.0;
    for (double v : r.q_linf) max_q = std::max(max_q, v);
    const EnergyResidual res = energy_law_residual(r.ledgers, r.times, sc.dt);
    log << "steps " << r.steps << ", t = " << format_double(r.final_state.t) << "\n"
        << "max ||Q||_inf = " << format_double(max_q) << "\n"
        << "sum |r_n| = " << format_double(res.cumulative_abs) << "\n"
        << "output: " << dir.string() << "\n";
    return kExitOk;
  } catch (const RunError& e) {
    write_series_csv(dir / "series.csv", e.partial().series);
    log << (e.blow_up() ? "blow-up: " : "step refused: ") << e.what() << "\n";
    return kExitBlowUp;
  }
}

nlohmann::json verify_report(const RunConfig& c, int identity_seeds) {
  using nlohmann::json;
  json checks = json::array();
  json failed = json::array();
  auto add = [&](const std::string& name, bool passed, bool skipped, double value, double tol,
                 const std::string& detail) {
    checks.push_back({{"name", name},
                      {"passed", skipped ? true : passed},
                      {"skipped", skipped},
                      {"value", value},
                      {"tolerance", tol},
                      {"detail", detail}});
    if (!skipped && !passed) failed.push_back(name);
  };

  const GridSpec grid(c.n);
  const Spectral sp(grid, c.numerics.dealias);
  const int mm = effective_max_mode(c);
  const bool l4_zero = c.coeffs.l4 == 0.0;

  const DerivedConstants d = validate_coefficients(c.coeffs);
  std::string violations;
  for (const auto& v : d.violations) violations += (violations.empty() ? "" : ",") + v;
  add("coefficients", d.ok(), false, static_cast<double>(d.violations.size()), 0.0, violations);

  json thresholds = nullptr;
  if (l4_zero) {
    add("threshold_arithmetic", true, true, 0.0, 0.0, "L4 = 0: thresholds unconstrained");
  } else {
    try {
      const ThresholdReport t = eta_thresholds(c.coeffs, c.thresholds.k1, c.thresholds.k2, c.thresholds.c_star);
      const double sq = (d.zeta / c.coeffs.l4) * (d.zeta / c.coeffs.l4);
      const bool ok = t.eta_global > 0.0 && t.eta_coercive > 0.0 && t.eta_dependence > 0.0 &&
                      t.eta_coercive < t.eta_max_principle && t.eta_dependence <= sq / 64.0;
      add("threshold_arithmetic", ok, false, t.eta_max_principle, 0.0,
          "eta_coercive < eta_max_principle, eta_dependence <= (zeta/L4)^2/64");
      thresholds = {{"eta_global", t.eta_global},
                    {"eta_max_principle", t.eta_max_principle},
                    {"eta_coercive", t.eta_coercive},
                    {"eta_dependence", t.eta_dependence},
                    {"a_lower_global", t.a_lower_global},
                    {"a_lower_max_principle", t.a_lower_max_principle},
                    {"a_lower_coercive", t.a_lower_coercive},
                    {"a_lower_dependence", t.a_lower_dependence}};
    } catch (const std::invalid_argument& e) {
      add("threshold_arithmetic", false, false, 0.0, 0.0, e.what());
    }
  }

  const double q_amp = c.init.q_linf > 0.0 ? c.init.q_linf : 0.6;
  const QTensorField q = random_initial_q(sp, c.init.seed, mm, q_amp);
  {
    const VariationalReport v = variational_oracle(q, c.coeffs, 8, 1e-5, c.init.seed, mm);
    add("variational", v.max_defect <= 1e-6, false, v.max_defect, 1e-6, "central difference at eps=1e-5");
    const double d3 = variational_oracle(q, c.coeffs, 8, 1e-3, c.init.seed, mm).max_defect;
    const double d4 = variational_oracle(q, c.coeffs, 8, 1e-4, c.init.seed, mm).max_defect;
    const double slope = std::log10(d3 / d4);
    add("variational_order", std::abs(slope - 2.0) <= 0.2, false, slope, 0.2, "defect order in eps, target 2");
  }
  if (l4_zero) {
    add("variational_l4", true, true, 0.0, 1e-6, "L4 = 0");
  } else {
    Coefficients only_l4{};
    only_l4.l1 = only_l4.l2 = only_l4.l3 = 0.0;
    only_l4.a = only_l4.b = only_l4.c = 0.0;
    only_l4.l4 = c.coeffs.l4;
    const VariationalReport v = variational_oracle(q, only_l4, 8, 1e-5, c.init.seed, mm);
    add("variational_l4", v.max_defect <= 1e-6, false, v.max_defect, 1e-6, "cubic L4 term alone");
  }

  {
    std::mt19937_64 rng(c.init.seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
      const double q11 = uni(rng), q12 = uni(rng), q22 = uni(rng);
      const double m11 = uni(rng), m12 = uni(rng), m22 = uni(rng);
      const Mat2 qm{{q11, q12, q12, q22}};
      const Mat2 mm2{{m11, m12, m12, m22}};
      const Mat2 gu{{uni(rng), uni(rng), uni(rng), uni(rng)}};
      const CancellationResult r = cancellation_check(qm, mm2, gu);
      worst = std::max(worst, r.defect / std::max(std::abs(r.lhs), 1.0));
    }
    add("cancellation", worst <= 1e-12, false, worst, 1e-12, "1000 random (Q, M, grad u) triples");
  }

  IdentitySuiteOptions opts;
  opts.n = c.n;
  opts.seeds = identity_seeds;
  opts.first_seed = c.init.seed;
  opts.max_mode = mm;
  opts.q_linf = q_amp;
  opts.dealias = c.numerics.dealias;
  opts.coeffs = c.coeffs;
  const IdentityReport rep = identity_suite(opts);
  for (const IdentityCheck& ch : rep.checks) add(ch.name, ch.passed, ch.skipped, ch.value, ch.tolerance, ch.detail);

  return {{"passed", failed.empty()}, {"failed", failed}, {"checks", checks}, {"thresholds", thresholds}};
}

int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const nlohmann::json rep = verify_report(c);
  out << rep.dump(2) << "\n";
  if (!rep.at("passed").get<bool>()) {
    for (const auto& name : rep.at("failed")) err << "check failed: " << name.get<std::string>() << "\n";
    return kExitCheckFailed;
  }
  return kExitOk;
}

namespace {

void fill_orders(ConvergenceTable& t) {
  for (std::size_t k = 0; k < t.rows.size(); ++k) {
    if (k == 0) {
      t.rows[k].order = std::numeric_limits<double>::quiet_NaN();
      continue;
    }
    const auto& a = t.rows[k - 1];
    const auto& b = t.rows[k];
    t.rows[k].order = std::log(a.error / b.error) / std::log(a.parameter / b.parameter);
    if (!(b.error < a.error)) t.monotone = false;
  }
}

ConvergenceTable converge_dt(const RunConfig& c) {
  const GridSpec g(8);  // the field is spatially constant, so the smallest grid suffices
  const double q1 = c.init.q_linf / std::sqrt(2.0);
  const auto ref = homogeneous_q_reference(q1, 0.0, c.coeffs, c.t_end);

  ConvergenceTable t{"dt", {}, true};
  std::vector<std::future<ConvergenceRow>> jobs;
  for (int level = 0; level < 4; ++level) {
    jobs.push_back(std::async(std::launch::async, [&, level] {
      StepperConfig sc = stepper_config(c);
      sc.dt = c.dt / std::ldexp(1.0, level);
      sc.cfl_guard.reset();
      const Integrator integ(g, c.coeffs, sc);
      QTensorField q(ScalarField(g, q1), ScalarField(g, 0.0));
      SimulationState s(0.0, VelocityField(g), std::move(q));
      const std::size_t steps = step_count(0.0, c.t_end, sc.dt);
      for (std::size_t n = 0; n < steps; ++n) s = integ.step(s).next;
      return ConvergenceRow{sc.dt, std::abs(s.q.q1[0] - ref.first) / std::abs(ref.first), 0.0};
    }));
  }
  for (auto& j : jobs) t.rows.push_back(j.get());
  fill_orders(t);
  return t;
}

ConvergenceTable converge_delta(const RunConfig& c) {
  const GridSpec g(c.n);
  const StepperConfig sc = stepper_config(c);
  const Spectral sp(g, sc.dealias_enabled);
  const SimulationState init = initial_state(c, sp);
  const double delta0 = c.coeffs.delta > 0.0 ? c.coeffs.delta : 1e-2;
  Coefficients ref = c.coeffs;
  ref.delta = 0.0;

  ConvergenceTable t{"delta", {}, true};
  std::vector<std::future<ConvergenceRow>> jobs;
  for (int level = 0; level < 4; ++level) {
    jobs.push_back(std::async(std::launch::async, [&, level] {
      Coefficients k = c.coeffs;
      k.delta = delta0 / std::pow(4.0, level);
      return ConvergenceRow{k.delta, velocity_gap(init, k, ref, sc, c.t_end), 0.0};
    }));
  }
  for (auto& j : jobs) t.rows.push_back(j.get());
  fill_orders(t);
  return t;
}

ConvergenceTable converge_eps(const RunConfig& c) {
  const GridSpec g(c.n);
  const StepperConfig sc = stepper_config(c);
  const Spectral sp(g, sc.dealias_enabled);
  const SimulationState base = initial_state(c, sp);
  QTensorField dir = random_initial_q(sp, c.init.seed + 7919, effective_max_mode(c), 1.0);
  dir *= 1.0 / sp.norm(dir, NormKind::L2);

  ConvergenceTable t{"eps", {}, true};
  std::vector<std::future<ConvergenceRow>> jobs;
  for (double eps : {1e-2, 1e-3, 1e-4}) {
    jobs.push_back(std::async(std::launch::async, [&, eps] {
      SimulationState pert = base;
      pert.q += eps * dir;
      const double m0 = continuous_dependence_metric(pert, base, sp).value;
      const double m1 = dependence_after(pert, base, c.coeffs, sc, c.t_end).value;
      return ConvergenceRow{m0, m1, 0.0};
    }));
  }
  for (auto& j : jobs) t.rows.push_back(j.get());
  fill_orders(t);
  return t;
}

}  // namespace

ConvergenceTable converge(const RunConfig& c, const std::string& axis) {
  require_valid(c.coeffs);
  if (axis == "dt") return converge_dt(c);
  if (axis == "delta") return converge_delta(c);
  if (axis == "eps") return converge_eps(c);
  throw ConfigError("unknown convergence axis '" + axis + "' (expected dt, delta or eps)");
}

std::string convergence_csv(const ConvergenceTable& t) {
  std::ostringstream o;
  o << "parameter,error,order\n";
  for (const auto& r : t.rows) {
    o << format_double(r.parameter) << ',' << format_double(r.error) << ',';
    if (!std::isnan(r.order)) o << format_double(r.order);
    o << "\n";
  }
  return o.str();
}

int cmd_converge(const RunConfig& c, const std::string& axis, std::ostream& out, std::ostream& err) {
  ConvergenceTable t;
  try {
    t = converge(c, axis);
  } catch (const RunError& e) {
    err << "blow-up: " << e.what() << "\n";
    return kExitBlowUp;
  } catch (const BlowUpError& e) {
    err << "blow-up: " << e.what() << "\n";
    return kExitBlowUp;
  } catch (const CflViolation& e) {
    err << "step refused: " << e.what() << "\n";
    return kExitBlowUp;
  }
  out << convergence_csv(t);
  if (!t.monotone) {
    err << "non-monotone error ladder on axis " << axis << "\n";
    return kExitCheckFailed;
  }
  return kExitOk;
}

int cmd_sweep(const RunConfig& c, const std::string& key, const std::vector<std::string>& values, std::ostream& out,
              std::ostream& err) {
  if (values.empty()) throw ConfigError("sweep needs at least one value");
  std::vector<RunConfig> configs;
  for (const auto& v : values) {
    RunConfig rc = c;
    apply_setting(rc, key, v);
    validate_config(rc);
    rc.output.dir = (fs::path(c.output.dir) / (key + "=" + v)).string();
    configs.push_back(std::move(rc));
  }

  struct Outcome {
    int code;
    std::string log;
  };
  std::vector<std::future<Outcome>> jobs;
  for (const auto& rc : configs) {
    jobs.push_back(std::async(std::launch::async, [&rc] {
      std::ostringstream log;
      const int code = cmd_run(rc, log);
      return Outcome{code, log.str()};
    }));
  }

  out << "value,exit_code,dir\n";
  int worst = kExitOk;
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    const Outcome o = jobs[k].get();
    out << values[k] << ',' << o.code << ',' << output_directory(configs[k]).string() << "\n";
    if (o.code != kExitOk) err << key << "=" << values[k] << ": " << o.log;
    worst = std::max(worst, o.code);
  }
  return worst;
}

}  // namespace lcflow
