#include <cmath>
#include <numbers>

#include "doctest.h"
#include "lcflow/diagnostics.hpp"
#include "lcflow/dynamics.hpp"

using namespace lcflow;

namespace {

constexpr double kPi = std::numbers::pi;

// Closed form for dq/dt = -(a + 2c|q|^2) q: s = |q|^2 obeys a Bernoulli equation.
double logistic_radius_sq(double s0, double a, double c, double t) {
  if (a == 0.0) return 1.0 / (1.0 / s0 + 4.0 * c * t);
  const double y = (1.0 / s0 + 2.0 * c / a) * std::exp(2.0 * a * t) - 2.0 * c / a;
  return 1.0 / y;
}

SimulationState random_state(const Spectral& sp, std::uint64_t seed, double q_linf, double u_scale) {
  const int mm = sp.grid().n() / 8;
  return SimulationState(0.0, u_scale * random_solenoidal_velocity(sp, seed, mm),
                         random_initial_q(sp, seed, mm, q_linf));
}

}  // namespace

TEST_CASE("vorticity and strain of a shear") {
  const GridSpec g(32);
  const Spectral sp(g);
  VelocityField u(g);
  for (int i = 0; i < g.n(); ++i)
    for (int j = 0; j < g.n(); ++j) u.u1(i, j) = std::sin(2 * kPi * g.coord(j));
  const Kinematics k = vorticity_and_strain(u, sp);
  for (int j = 0; j < g.n(); j += 5) {
    const double expect = kPi * std::cos(2 * kPi * g.coord(j));
    CHECK(k.omega(0, 1)(3, j) == doctest::Approx(expect).epsilon(1e-12));
    CHECK(k.strain(0, 1)(3, j) == doctest::Approx(expect).epsilon(1e-12));
  }

  const VelocityField r = random_solenoidal_velocity(sp, 1, 4);
  const TensorField grad = velocity_gradient(r, sp);
  const Kinematics kr = vorticity_and_strain(r, sp);
  CHECK(max_abs(kr.strain + kr.omega - grad) <= 1e-15 * max_abs(grad));
  CHECK(max_abs(trace(kr.strain)) <= 1e-12);
}

TEST_CASE("corotational transport") {
  const GridSpec g(32);
  const Spectral sp(g);
  const QTensorField q = random_initial_q(sp, 2, 4, 0.5);
  CHECK(max_abs(corotational_transport(VelocityField(g), q, sp)) == 0.0);

  const VelocityField u = random_solenoidal_velocity(sp, 3, 4);
  const QTensorField k(ScalarField(g, 0.3), ScalarField(g, -0.2));
  const Kinematics kin = vorticity_and_strain(u, sp);
  const TensorField t = corotational_transport(u, k, sp);
  CHECK(max_abs(t - rotation_commutator(k, kin.omega)) <= 1e-13);

  const TensorField tr = corotational_transport(u, q, sp);
  CHECK(max_trace(tr) <= 1e-14);
  CHECK(max_asymmetry(tr) <= 1e-14);

  CHECK(std::abs(pairing(rotation_commutator(q, kin.omega), q.to_tensor())) <= 1e-10);
}

TEST_CASE("shape tensor") {
  const GridSpec g(16);
  const Spectral sp(g);
  const VelocityField u = random_solenoidal_velocity(sp, 5, 2);
  const QTensorField q = random_initial_q(sp, 5, 2, 0.4);
  const TensorField grad = velocity_gradient(u, sp);
  const Kinematics kin = split_gradient(grad);

  const TensorField s0 = shape_tensor_s(grad, q, 0.0);
  CHECK(s0 == -1.0 * rotation_commutator(q, kin.omega));
  CHECK(max_abs(shape_tensor_s(grad, QTensorField(g), 0.0)) == 0.0);
  CHECK(max_abs(shape_tensor_s(grad, QTensorField(g), 1.0) - kin.strain) <= 1e-13);
}

TEST_CASE("constant Q without flow follows the homogeneous ODE") {
  const GridSpec g(8);
  Coefficients c;
  c.a = -0.3;
  c.c = 1.0;
  StepperConfig sc;
  sc.dt = 1e-4;
  const double q10 = 0.3;
  const double q20 = 0.1;
  const SimulationState s0(0.0, VelocityField(g), QTensorField(ScalarField(g, q10), ScalarField(g, q20)));
  const RunResult r = run(s0, c, sc, 0.1);
  CHECK(r.steps == 1000);
  CHECK(max_abs(r.final_state.u.u1) == 0.0);
  CHECK(max_abs(r.final_state.u.u2) == 0.0);

  const double s = logistic_radius_sq(q10 * q10 + q20 * q20, c.a, c.c, 0.1);
  const double scale = std::sqrt(s / (q10 * q10 + q20 * q20));
  CHECK(r.final_state.q.q1[0] == doctest::Approx(q10 * scale).epsilon(1e-3));
  CHECK(r.final_state.q.q2[0] == doctest::Approx(q20 * scale).epsilon(1e-3));

  // the RK4 reference agrees with the closed form
  const auto ref = homogeneous_q_reference(q10, q20, c, 0.1);
  CHECK(ref.first == doctest::Approx(q10 * scale).epsilon(1e-12));
  CHECK(ref.second == doctest::Approx(q20 * scale).epsilon(1e-12));
}

TEST_CASE("isotropic state is stable for a > 0") {
  const GridSpec g(8);
  Coefficients c;
  c.a = 0.5;
  StepperConfig sc;
  sc.dt = 1e-2;
  const SimulationState s0(0.0, VelocityField(g), QTensorField(ScalarField(g, 0.05), ScalarField(g, 0.02)));
  const RunResult r = run(s0, c, sc, 1.0);
  for (std::size_t k = 1; k < r.q_linf.size(); ++k) CHECK(r.q_linf[k] < r.q_linf[k - 1]);
  // linear decay exp(-a t), up to the cubic term and the first-order step
  CHECK(r.q_linf.back() / r.q_linf.front() == doctest::Approx(std::exp(-c.a)).epsilon(0.01));
}

TEST_CASE("step keeps u divergence free, conserves the mean and reports a curl-free pressure gradient") {
  const GridSpec g(32);
  const Spectral sp(g);
  const Coefficients c;
  StepperConfig sc;
  sc.dt = 1e-3;
  SimulationState s = random_state(sp, 7, 0.6, 1.0);
  s.u.u1 += ScalarField(g, 0.25);
  const Integrator integ(g, c, sc);
  for (int n = 0; n < 5; ++n) {
    const StepOutput out = integ.step(s);
    CHECK(out.next.t == doctest::Approx(s.t + sc.dt).epsilon(1e-15));
    CHECK(out.next.t > s.t);
    CHECK(sp.max_divergence_mode(out.next.u) <= 1e-12 * sp.norm(out.next.u, NormKind::L2));
    CHECK(std::abs(integrate(out.next.u.u1) - integrate(s.u.u1)) <= 1e-12);
    CHECK(std::abs(integrate(out.next.u.u2) - integrate(s.u.u2)) <= 1e-12);
    const VelocityField& gp = out.pressure_gradient;
    const ScalarField curl = sp.derivative(gp.u2, {1, 0}) - sp.derivative(gp.u1, {0, 1});
    CHECK(max_abs(curl) <= 1e-12 * std::max(1.0, sp.norm(gp, NormKind::H1)));
    s = out.next;
  }
}

TEST_CASE("zero data stays zero") {
  const GridSpec g(16);
  StepperConfig sc;
  sc.dt = 1e-3;
  const SimulationState s0(0.0, VelocityField(g), QTensorField(g));
  const RunResult r = run(s0, Coefficients{}, sc, 0.01);
  for (double v : r.step_residuals) CHECK(v == 0.0);
  CHECK(r.final_state.q == QTensorField(g));
}

TEST_CASE("step errors") {
  const GridSpec g(16);
  const Spectral sp(g);
  Coefficients c;
  StepperConfig sc;
  sc.dt = 1e-3;
  const SimulationState s = random_state(sp, 1, 0.3, 1.0);

  Coefficients bad = c;
  bad.l1 = -1.0;
  CHECK_THROWS_AS(Integrator(g, bad, sc), std::invalid_argument);
  Coefficients xi = c;
  xi.xi = 0.5;
  CHECK_THROWS_AS(Integrator(g, xi, sc), std::invalid_argument);
  StepperConfig zero_dt = sc;
  zero_dt.dt = 0.0;
  CHECK_THROWS_AS(Integrator(g, c, zero_dt), std::invalid_argument);

  StepperConfig guarded = sc;
  guarded.cfl_guard = 1e-6;
  CHECK_THROWS_AS(step(s, c, guarded), CflViolation);

  SimulationState nan_state = s;
  nan_state.q.q1[3] = std::nan("");
  CHECK_THROWS_AS(step(nan_state, c, sc), BlowUpError);
}

TEST_CASE("run bookkeeping") {
  const GridSpec g(16);
  const Spectral sp(g);
  const Coefficients c;
  StepperConfig sc;
  sc.dt = 1e-3;
  const SimulationState s0 = random_state(sp, 2, 0.5, 0.5);

  int calls = 0;
  const RunResult r = run(s0, c, sc, s0.t + 10 * sc.dt, [&](const SimulationState&, const EnergyLedger&) { ++calls; }, 5);
  CHECK(r.steps == 10);
  CHECK(r.series.size() == 3);
  CHECK(calls == 3);
  CHECK(r.series.front().t == 0.0);
  CHECK(r.series.back().t == doctest::Approx(10 * sc.dt));
  CHECK(r.ledgers.size() == 11);
  CHECK(r.step_residuals.size() == 10);

  const RunResult again = run(s0, c, sc, s0.t + 10 * sc.dt, {}, 5);
  for (std::size_t k = 0; k < r.series.size(); ++k) {
    CHECK(r.series[k].ledger.total == again.series[k].ledger.total);
    CHECK(r.series[k].residual == again.series[k].residual);
  }
  CHECK(r.final_state.q == again.final_state.q);
  CHECK(r.final_state.u == again.final_state.u);

  CHECK_THROWS_AS(run(s0, c, sc, 0.0), std::invalid_argument);
  CHECK(step_count(0.0, 1.0, 1e-3) == 1000);
  CHECK(step_count(0.0, 0.25, 5e-4) == 500);
}

TEST_CASE("blow-up carries the partial series") {
  const GridSpec g(32);
  const Spectral sp(g);
  Coefficients c;
  c.a = -50.0;  // far outside the small-data regime
  c.l4 = 4.0;
  StepperConfig sc;
  sc.dt = 0.05;
  const SimulationState s0 = random_state(sp, 1, 3.0, 20.0);
  bool threw = false;
  try {
    run(s0, c, sc, 100.0);
  } catch (const RunError& e) {
    threw = true;
    CHECK(e.blow_up());
    CHECK_FALSE(e.partial().series.empty());
    CHECK(e.time() > 0.0);
  }
  CHECK(threw);
}

TEST_CASE("regularised and plain runs differ and approach each other") {
  const GridSpec g(32);
  const Spectral sp(g);
  Coefficients c0;
  StepperConfig sc;
  sc.dt = 5e-4;
  const SimulationState s0(0.0, taylor_green(g, 1, 1.0), random_initial_q(sp, 1, 4, 0.6));
  Coefficients ca = c0;
  ca.delta = 1e-3;
  Coefficients cb = c0;
  cb.delta = 2.5e-4;
  const double gap_a = velocity_gap(s0, ca, c0, sc, 0.02);
  const double gap_b = velocity_gap(s0, cb, c0, sc, 0.02);
  CHECK(gap_a > 0.0);
  CHECK(gap_b < gap_a);
}
