#ifndef LCFLOW_DYNAMICS_HPP
#define LCFLOW_DYNAMICS_HPP

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "lcflow/energetics.hpp"
#include "lcflow/field.hpp"
#include "lcflow/spectral.hpp"
#include "lcflow/tensor.hpp"

namespace lcflow {

struct SimulationState {
  double t = 0.0;
  VelocityField u;
  QTensorField q;

  SimulationState(double time, VelocityField vel, QTensorField order)
      : t(time), u(std::move(vel)), q(std::move(order)) {}

  const GridSpec& grid() const { return q.grid(); }
};

enum class Scheme { imex1 };

struct StepperConfig {
  double dt = 1e-3;
  Scheme scheme = Scheme::imex1;
  bool dealias_enabled = true;
  /// Maximum allowed ||u||_inf dt / dx; unchecked when empty.
  std::optional<double> cfl_guard;
};

struct StepOutput {
  SimulationState next;
  /// Curl-free part removed from the momentum forcing by the projection (discrete grad P).
  VelocityField pressure_gradient;
};

class CflViolation : public std::runtime_error {
 public:
  CflViolation(double t, double courant);
  double time() const { return t_; }
  double courant() const { return courant_; }

 private:
  double t_;
  double courant_;
};

class BlowUpError : public std::runtime_error {
 public:
  explicit BlowUpError(double t);
  double time() const { return t_; }

 private:
  double t_;
};

/// Velocity gradient with (grad u)_ij = d_j u_i.
TensorField velocity_gradient(const VelocityField& u, const Spectral& sp);

struct Kinematics {
  TensorField omega;   ///< (grad u - grad u^T)/2
  TensorField strain;  ///< (grad u + grad u^T)/2
};

Kinematics vorticity_and_strain(const VelocityField& u, const Spectral& sp);
Kinematics split_gradient(const TensorField& grad_u);

/// Pointwise Q omega - omega Q, unfiltered.
TensorField rotation_commutator(const QTensorField& q, const TensorField& omega);

/// u . grad Q + Q omega - omega Q, filtered. Traceless and symmetric.
TensorField corotational_transport(const VelocityField& u, const QTensorField& q, const Spectral& sp);

/// S(grad u, Q) = (xi A + omega)(Q + I/2) + (Q + I/2)(xi A - omega) - 2 xi (Q + I/2) tr(Q grad u).
/// For xi = 0 this is exactly omega Q - Q omega.
TensorField shape_tensor_s(const TensorField& grad_u, const QTensorField& q, double xi);

/// First-order IMEX integrator. Implicit in Fourier space: nu Lap u, delta (-Lap)^k u and
/// zeta Lap Q. Everything else (advection, corotational transport, L4 and bulk terms,
/// stress divergence) is explicit. The velocity update is Leray-projected.
class Integrator {
 public:
  /// Throws std::invalid_argument for invalid coefficients, kappa <= 0, xi != 0 or dt <= 0.
  Integrator(GridSpec grid, Coefficients coeffs, StepperConfig config);

  const Spectral& spectral() const { return sp_; }
  const Coefficients& coefficients() const { return coeffs_; }
  const StepperConfig& config() const { return config_; }

  StepOutput step(const SimulationState& s) const;

  /// Same step, also returning the ledger of the input state computed from shared work.
  StepOutput step(const SimulationState& s, EnergyLedger& ledger_before) const;

  EnergyLedger ledger(const SimulationState& s) const;

 private:
  GridSpec grid_;
  Coefficients coeffs_;
  StepperConfig config_;
  Spectral sp_;
  double zeta_;
  std::vector<double> inv_u_;  // 1 / (1 + dt (nu |k|^2 + delta |k|^2k))
  std::vector<double> inv_q_;  // 1 / (1 + dt zeta |k|^2)
};

StepOutput step(const SimulationState& s, const Coefficients& c, const StepperConfig& config);

struct SeriesRow {
  double t = 0.0;
  EnergyLedger ledger;
  /// Cumulative energy-law residual up to t.
  double residual = 0.0;
  double q_linf = 0.0;
  double u_l2 = 0.0;
};

struct RunResult {
  std::vector<SeriesRow> series;      ///< every `stride` steps, plus t0 and the final step
  std::vector<double> step_residuals;  ///< r_n for every step
  std::vector<EnergyLedger> ledgers;   ///< ledger at every step, t0 included
  std::vector<double> q_linf;          ///< ||Q||_inf at every step, t0 included
  std::vector<double> times;
  SimulationState final_state;
  std::size_t steps = 0;
};

using Observer = std::function<void(const SimulationState&, const EnergyLedger&)>;

/// Raised when a step fails; carries the partial result up to the last finite state.
class RunError : public std::runtime_error {
 public:
  RunError(const std::string& what, double t, RunResult partial, bool blow_up);
  double time() const { return t_; }
  const RunResult& partial() const { return partial_; }
  bool blow_up() const { return blow_up_; }

 private:
  double t_;
  RunResult partial_;
  bool blow_up_;
};

/// Number of steps needed to reach t_end from t0.
std::size_t step_count(double t0, double t_end, double dt);

/// Advances to t_end, calling the observer at t0, every `stride` steps and at the final step.
RunResult run(const SimulationState& initial, const Coefficients& c, const StepperConfig& config,
              double t_end, const Observer& observer = {}, int stride = 1);

}  // namespace lcflow

#endif  // LCFLOW_DYNAMICS_HPP
