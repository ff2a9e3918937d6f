#ifndef LCFLOW_DIAGNOSTICS_HPP
#define LCFLOW_DIAGNOSTICS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lcflow/derivatives.hpp"
#include "lcflow/dynamics.hpp"
#include "lcflow/energetics.hpp"
#include "lcflow/field.hpp"
#include "lcflow/spectral.hpp"
#include "lcflow/stress.hpp"

namespace lcflow {

// ---------------------------------------------------------------- thresholds

struct ThresholdReport {
  /// True when L4 = 0: every threshold is +inf and no lower bound on a applies.
  bool unconstrained = false;
  double eta_global = 0.0;         ///< min{K1 (kappa/L4)^2, K2 (zeta/|L4|) sqrt(nu)}
  double eta_max_principle = 0.0;  ///< (zeta/L4)^2 / 9, preserved by the flow
  double eta_coercive = 0.0;       ///< (zeta/L4)^2 / 121
  double eta_dependence = 0.0;     ///< min{sqrt(nu)/(16 C*) zeta/|L4|, (zeta/L4)^2 / 64}
  double a_lower_global = 0.0;     ///< -c eta for each eta above
  double a_lower_max_principle = 0.0;
  double a_lower_coercive = 0.0;
  double a_lower_dependence = 0.0;
};

inline constexpr double kDefaultK1 = 1.0 / 121.0;
inline constexpr double kDefaultK2 = 1.0 / 121.0;
inline constexpr double kDefaultCStar = 1.0;

/// Throws std::invalid_argument unless zeta > 0, nu > 0 and k1, k2, c_star > 0.
ThresholdReport eta_thresholds(const Coefficients& c, double k1 = kDefaultK1, double k2 = kDefaultK2,
                               double c_star = kDefaultCStar);

// ---------------------------------------------------------------- pointwise cancellation

struct CancellationResult {
  double lhs = 0.0;  ///< (QM - MQ) : grad u
  double rhs = 0.0;  ///< (Q omega - omega Q) : M
  double defect = 0.0;
};

/// Throws std::invalid_argument if q or m is not symmetric.
CancellationResult cancellation_check(const Mat2& q, const Mat2& m, const Mat2& grad_u);

// ---------------------------------------------------------------- maximum principle

struct MaxPrincipleVerdict {
  bool pass = true;
  std::optional<double> first_violation_time;
  double max_value = 0.0;
  double bound = 0.0;  ///< sqrt(eta) (1 + tol)
};

inline constexpr double kMaxPrincipleTol = 1e-3;

/// Throws std::invalid_argument on an empty series or mismatched lengths.
MaxPrincipleVerdict max_principle_monitor(const std::vector<double>& times, const std::vector<double>& q_linf,
                                          double eta, double tol = kMaxPrincipleTol);

// ---------------------------------------------------------------- energy law

struct EnergyResidual {
  std::vector<double> per_step;  ///< r_n
  double cumulative_abs = 0.0;   ///< sum |r_n|
  double signed_sum = 0.0;       ///< sum r_n
  double max_abs = 0.0;
};

/// r_n = E(t_{n+1}) - E(t_n) + dt D(t_n) from ledgers sampled every step.
/// Throws std::invalid_argument when times and ledgers differ in length or dt <= 0.
EnergyResidual energy_law_residual(const std::vector<EnergyLedger>& ledgers, const std::vector<double>& times,
                                   double dt);

/// Largest violation of E(t_{n+1}) <= E(t_n) + |r_n|; <= 0 means the total energy never rose beyond it.
double energy_increase_excess(const std::vector<EnergyLedger>& ledgers, const EnergyResidual& res);

// ---------------------------------------------------------------- continuous dependence

struct DependenceMetric {
  double value = 0.0;
  double velocity_part = 0.0;  ///< ||(-Lap + I)^{-1}(u1 - u2)||_{H1}^2
  double q_part = 0.0;         ///< ||Q1 - Q2||_{L2}^2
};

DependenceMetric continuous_dependence_metric(const SimulationState& s1, const SimulationState& s2,
                                              const Spectral& sp);
DependenceMetric continuous_dependence_metric(const VelocityField& du, const QTensorField& dq, const Spectral& sp);

// ---------------------------------------------------------------- variational oracle

struct VariationalReport {
  double max_defect = 0.0;
  std::vector<double> defects;
  std::vector<double> finite_difference;
  std::vector<double> analytic;
};

/// Central difference of the free energy along random symmetric band-limited directions
/// (trace included) against <-H, dQ>. Relative defect per direction.
/// Throws std::invalid_argument for eps outside [1e-6, 1e-3].
VariationalReport variational_oracle(const QTensorField& q, const Coefficients& c, int n_directions, double eps,
                                     std::uint64_t seed = 1, int max_mode = 0);

/// Random symmetric (not necessarily traceless) tensor field, unit L2 norm.
TensorField random_symmetric_direction(const Spectral& sp, std::uint64_t seed, int max_mode);

// ---------------------------------------------------------------- identity suite

using SigmaSFunction = std::function<StressField(const TensorDerivatives&, const Coefficients&, const Spectral&)>;

struct IdentityCheck {
  std::string name;
  double value = 0.0;  ///< worst measured defect (or LHS/RHS margin for inequalities)
  double tolerance = 0.0;
  bool passed = true;
  bool skipped = false;
  std::string detail;
};

struct IdentityReport {
  std::vector<IdentityCheck> checks;
  bool all_passed() const;
  const IdentityCheck& find(const std::string& name) const;
};

/// Generic coefficients with every elastic constant active, used by the identity suite.
Coefficients identity_suite_coefficients();

struct IdentitySuiteOptions {
  int n = 64;
  int seeds = 200;
  std::uint64_t first_seed = 1;
  int max_mode = 0;  ///< 0 selects n/8
  double q_linf = 0.6;
  bool dealias = true;
  Coefficients coeffs = identity_suite_coefficients();
  /// Replacement for sigma_s, used to check that the duality test detects a broken stress.
  SigmaSFunction sigma_s_override;
};

inline constexpr double kCollapseTol = 1e-10;
inline constexpr double kDualityTol = 1e-8;
inline constexpr double kPairingTol = 1e-8;

/// Per-seed pieces of the suite, exposed for the tests.
double collapse_defect(const QTensorField& q, const Spectral& sp);
/// Relative defect of  int u_i d_j sigma_s_ij = - int H_el : (u . grad Q).
double sigma_s_duality_defect(const QTensorField& q, const VelocityField& u, const Coefficients& c,
                              const Spectral& sp, const SigmaSFunction& sigma = {});
/// Relative defect of  int u_i d_j sigma_a_ij = - int (Q omega - omega Q) : X.
double sigma_a_pairing_defect(const QTensorField& q, const VelocityField& u, const Coefficients& c,
                              const Spectral& sp);

struct InterpolationSample {
  double lhs = 0.0;  ///< ||grad f||_{L4}^2 with ||g||_{L4}^4 = int sum_j |d_j f|^4
  double rhs = 0.0;  ///< 3 ||f||_inf ||Lap f||_{L2}
  bool holds() const { return lhs <= rhs; }
};

InterpolationSample interpolation_sample(const ScalarField& f, const Spectral& sp);

IdentityReport identity_suite(const IdentitySuiteOptions& opts);

// ---------------------------------------------------------------- paired runs

/// max over steps of ||u_a - u_b||_{L2} for two runs from the same initial state.
double velocity_gap(const SimulationState& initial, const Coefficients& ca, const Coefficients& cb,
                    const StepperConfig& config, double t_end);

/// Dependence metric between two runs with different initial data, evaluated at t_end.
DependenceMetric dependence_after(const SimulationState& a, const SimulationState& b, const Coefficients& c,
                                  const StepperConfig& config, double t_end);

// ---------------------------------------------------------------- references

/// Spatially constant Q with u = 0 evolves by dq/dt = -(a + 2c |q|^2) q.
/// Classical RK4 with `substeps` steps over [0, t].
std::pair<double, double> homogeneous_q_reference(double q1, double q2, const Coefficients& c, double t,
                                                  int substeps = 100000);

}  // namespace lcflow

#endif  // LCFLOW_DIAGNOSTICS_HPP
