#include "lcflow/dynamics.hpp"

#include <cmath>
#include <string>

#include "lcflow/derivatives.hpp"
#include "lcflow/stress.hpp"

namespace lcflow {

CflViolation::CflViolation(double t, double courant)
    : std::runtime_error("CFL guard violated at t=" + std::to_string(t) +
                         " (courant=" + std::to_string(courant) + ")"),
      t_(t),
      courant_(courant) {}

BlowUpError::BlowUpError(double t)
    : std::runtime_error("non-finite field values at t=" + std::to_string(t)), t_(t) {}

RunError::RunError(const std::string& what, double t, RunResult partial, bool blow_up)
    : std::runtime_error(what), t_(t), partial_(std::move(partial)), blow_up_(blow_up) {}

TensorField velocity_gradient(const VelocityField& u, const Spectral& sp) {
  TensorField g(u.grid());
  for (int i = 0; i < 2; ++i) {
    auto grad = sp.gradient(u[i]);
    g(i, 0) = std::move(grad[0]);
    g(i, 1) = std::move(grad[1]);
  }
  return g;
}

Kinematics split_gradient(const TensorField& grad_u) {
  const TensorField gt = transpose(grad_u);
  return {0.5 * (grad_u - gt), 0.5 * (grad_u + gt)};
}

Kinematics vorticity_and_strain(const VelocityField& u, const Spectral& sp) {
  return split_gradient(velocity_gradient(u, sp));
}

TensorField rotation_commutator(const QTensorField& q, const TensorField& omega) {
  TensorField out(q.grid());
  for (std::size_t p = 0; p < q.q1.size(); ++p) {
    const Mat2 qm = q.assemble(p);
    const Mat2 w = omega.at(p);
    out.set(p, qm * w - w * qm);
  }
  return out;
}

TensorField corotational_transport(const VelocityField& u, const QTensorField& q, const Spectral& sp) {
  const GridSpec& g = q.grid();
  const Kinematics kin = vorticity_and_strain(u, sp);
  const auto g1 = sp.gradient(q.q1);
  const auto g2 = sp.gradient(q.q2);
  ScalarField adv1(g);
  ScalarField adv2(g);
  for (std::size_t p = 0; p < adv1.size(); ++p) {
    adv1[p] = u.u1[p] * g1[0][p] + u.u2[p] * g1[1][p];
    adv2[p] = u.u1[p] * g2[0][p] + u.u2[p] * g2[1][p];
  }
  TensorField out = QTensorField(adv1, adv2).to_tensor();
  out += rotation_commutator(q, kin.omega);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out(i, j) = sp.filter(out(i, j));
  return out;
}

TensorField shape_tensor_s(const TensorField& grad_u, const QTensorField& q, double xi) {
  require_same_grid(grad_u.grid(), q.grid(), "shape_tensor_s");
  const Kinematics kin = split_gradient(grad_u);
  if (xi == 0.0) {
    TensorField out(q.grid());
    for (std::size_t p = 0; p < q.q1.size(); ++p) {
      const Mat2 qm = q.assemble(p);
      const Mat2 w = kin.omega.at(p);
      out.set(p, w * qm - qm * w);
    }
    return out;
  }
  TensorField out(q.grid());
  const Mat2 half_id = 0.5 * Mat2::identity();
  for (std::size_t p = 0; p < q.q1.size(); ++p) {
    const Mat2 qm = q.assemble(p);
    const Mat2 qp = qm + half_id;
    const Mat2 a = kin.strain.at(p);
    const Mat2 w = kin.omega.at(p);
    const double tr_qgu = trace(qm * grad_u.at(p));
    out.set(p, (xi * a + w) * qp + qp * (xi * a - w) - (2.0 * xi * tr_qgu) * qp);
  }
  return out;
}

Integrator::Integrator(GridSpec grid, Coefficients coeffs, StepperConfig config)
    : grid_(grid), coeffs_(coeffs), config_(config), sp_(grid, config.dealias_enabled) {
  const DerivedConstants d = require_valid(coeffs_);
  if (coeffs_.xi != 0.0) {
    throw std::invalid_argument("time stepping supports only the co-rotational case xi = 0");
  }
  if (!(config_.dt > 0.0)) throw std::invalid_argument("dt must be positive");
  zeta_ = d.zeta;

  const int n = grid.n();
  const int nh = n / 2 + 1;
  inv_u_.resize(static_cast<std::size_t>(n) * nh);
  inv_q_.resize(inv_u_.size());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < nh; ++j) {
      const double kk = sp_.k_squared(i, j);
      double damp = coeffs_.nu * kk;
      if (coeffs_.delta > 0.0) damp += coeffs_.delta * std::pow(kk, coeffs_.k_reg);
      inv_u_[static_cast<std::size_t>(i) * nh + j] = 1.0 / (1.0 + config_.dt * damp);
      inv_q_[static_cast<std::size_t>(i) * nh + j] = 1.0 / (1.0 + config_.dt * zeta_ * kk);
    }
  }
}

EnergyLedger Integrator::ledger(const SimulationState& s) const {
  return energy_ledger(s.u, s.q, coeffs_, sp_);
}

StepOutput Integrator::step(const SimulationState& s) const {
  EnergyLedger unused;
  return step(s, unused);
}

StepOutput Integrator::step(const SimulationState& s, EnergyLedger& ledger_before) const {
  require_same_grid(grid_, s.grid(), "Integrator::step");
  const double dt = config_.dt;

  if (config_.cfl_guard) {
    const double umax = std::max(max_abs(s.u.u1), max_abs(s.u.u2));
    const double courant = umax * dt / grid_.dx();
    if (courant > *config_.cfl_guard) throw CflViolation(s.t, courant);
  }

  const TensorDerivatives dq = TensorDerivatives::of(s.q, sp_, true);
  const TensorField remainder = constrained_field_remainder(dq, coeffs_, sp_);
  TensorField constrained = remainder;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      axpy(zeta_, dq.dd[0][0](i, j), constrained(i, j));
      axpy(zeta_, dq.dd[1][1](i, j), constrained(i, j));
    }
  ledger_before = energy_ledger(s.u, s.q, constrained, coeffs_, sp_);

  // Q-update: explicit remainder minus transport, implicit zeta Lap Q
  const TensorField transport = corotational_transport(s.u, s.q, sp_);
  const QTensorField rhs_q = traceless_symmetric_part(remainder - transport);

  auto implicit_update = [&](const ScalarField& old, const ScalarField& rhs, const std::vector<double>& inv) {
    SpectralField a = sp_.forward(old);
    const SpectralField b = sp_.forward(rhs);
    for (std::size_t m = 0; m < a.size(); ++m) a.data()[m] = (a.data()[m] + dt * b.data()[m]) * inv[m];
    return sp_.inverse(a);
  };

  QTensorField q_next(implicit_update(s.q.q1, rhs_q.q1, inv_q_), implicit_update(s.q.q2, rhs_q.q2, inv_q_));

  // momentum flux -u (x) u + sigma_a + sigma_s, then its divergence
  StressField flux = sigma_a(s.q, constrained, sp_);
  flux += sigma_s(dq, coeffs_, sp_);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) flux(i, j) -= sp_.mul(s.u[i], s.u[j]);
  const VelocityField forcing = stress_divergence(flux, sp_);

  const LerayResult split = sp_.leray_project(forcing);
  VelocityField u_next(implicit_update(s.u.u1, split.solenoidal.u1, inv_u_),
                       implicit_update(s.u.u2, split.solenoidal.u2, inv_u_));
  u_next = sp_.leray_project(u_next).solenoidal;

  const double t_next = s.t + dt;
  if (!all_finite(q_next.q1) || !all_finite(q_next.q2) || !all_finite(u_next.u1) || !all_finite(u_next.u2)) {
    throw BlowUpError(t_next);
  }
  return {SimulationState(t_next, std::move(u_next), std::move(q_next)), split.gradient};
}

StepOutput step(const SimulationState& s, const Coefficients& c, const StepperConfig& config) {
  return Integrator(s.grid(), c, config).step(s);
}

std::size_t step_count(double t0, double t_end, double dt) {
  if (!(t_end > t0)) throw std::invalid_argument("t_end must exceed the initial time");
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  const double ratio = (t_end - t0) / dt;
  return static_cast<std::size_t>(std::ceil(ratio - 1e-9));
}

RunResult run(const SimulationState& initial, const Coefficients& c, const StepperConfig& config,
              double t_end, const Observer& observer, int stride) {
  if (stride < 1) throw std::invalid_argument("observer stride must be >= 1");
  const Integrator integrator(initial.grid(), c, config);
  const Spectral& sp = integrator.spectral();
  const std::size_t n_steps = step_count(initial.t, t_end, config.dt);

  RunResult result{{}, {}, {}, {}, {}, initial, 0};
  SimulationState state = initial;
  double cumulative = 0.0;

  auto record_row = [&](const SimulationState& st, const EnergyLedger& led) {
    result.series.push_back({st.t, led, cumulative, st.q.linf(), sp.norm(st.u, NormKind::L2)});
    if (observer) observer(st, led);
  };

  EnergyLedger led_now;
  for (std::size_t n = 0; n < n_steps; ++n) {
    StepOutput out = [&] {
      try {
        return integrator.step(state, led_now);
      } catch (const BlowUpError& e) {
        result.final_state = state;
        throw RunError(e.what(), e.time(), result, true);
      } catch (const CflViolation& e) {
        result.final_state = state;
        throw RunError(e.what(), e.time(), result, false);
      }
    }();
    if (n == 0) {
      result.ledgers.push_back(led_now);
      result.q_linf.push_back(state.q.linf());
      result.times.push_back(state.t);
      record_row(state, led_now);
    } else {
      // ledger of the state reached by the previous step, completing r_{n-1}
      const double r = led_now.total - result.ledgers.back().total +
                       config.dt * result.ledgers.back().dissipation();
      result.step_residuals.push_back(r);
      cumulative += r;
      result.ledgers.push_back(led_now);
      result.q_linf.push_back(state.q.linf());
      result.times.push_back(state.t);
      if (n % static_cast<std::size_t>(stride) == 0) record_row(state, led_now);
    }
    out.next.t = initial.t + static_cast<double>(n + 1) * config.dt;
    state = std::move(out.next);
  }

  const EnergyLedger led_final = integrator.ledger(state);
  const double r = led_final.total - result.ledgers.back().total + config.dt * result.ledgers.back().dissipation();
  result.step_residuals.push_back(r);
  cumulative += r;
  result.ledgers.push_back(led_final);
  result.q_linf.push_back(state.q.linf());
  result.times.push_back(state.t);
  record_row(state, led_final);

  result.final_state = state;
  result.steps = n_steps;
  return result;
}

}  // namespace lcflow
