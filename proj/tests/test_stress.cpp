#include <cmath>
#include <numbers>

#include "doctest.h"
#include "lcflow/diagnostics.hpp"
#include "lcflow/stress.hpp"

using namespace lcflow;

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST_CASE("sigma_a of commuting and anticommuting pairs") {
  const GridSpec g(8);
  const Spectral sp(g);
  const QTensorField q(ScalarField(g, 0.4), ScalarField(g, -0.2));
  CHECK(max_abs(sigma_a(q, 3.0 * q.to_tensor(), sp)) <= 1e-15);

  const QTensorField q1(ScalarField(g, 1.0), ScalarField(g, 0.0));
  const QTensorField m(ScalarField(g, 0.0), ScalarField(g, 1.0));
  const StressField s = sigma_a(q1, m.to_tensor(), sp);
  CHECK(s(0, 0)[0] == 0.0);
  CHECK(s(0, 1)[0] == doctest::Approx(2.0));
  CHECK(s(1, 0)[0] == doctest::Approx(-2.0));
  CHECK(s(1, 1)[0] == 0.0);
}

TEST_CASE("sigma_a is antisymmetric") {
  const GridSpec g(32);
  const Spectral sp(g);
  const QTensorField q = random_initial_q(sp, 1, 4, 0.5);
  const StressField s = sigma_a(q, constrained_field(q, identity_suite_coefficients(), sp), sp);
  CHECK(max_abs(s + transpose(s)) <= 1e-12);
}

TEST_CASE("sigma_s vanishes without gradients") {
  const GridSpec g(16);
  const Spectral sp(g);
  const Coefficients c = identity_suite_coefficients();
  CHECK(max_abs(sigma_s(QTensorField(g), c, sp)) == 0.0);
  CHECK(max_abs(sigma_s(QTensorField(ScalarField(g, 0.3), ScalarField(g, 0.1)), c, sp)) == 0.0);
}

TEST_CASE("sigma_s for a single L1 mode") {
  const GridSpec g(32);
  const Spectral sp(g);
  Coefficients c;
  c.l1 = 1.0;
  c.l2 = c.l3 = c.l4 = 0.0;
  QTensorField q(g);
  for (int i = 0; i < g.n(); ++i)
    for (int j = 0; j < g.n(); ++j) q.q1(i, j) = std::sin(2 * kPi * g.coord(i));
  const StressField s = sigma_s(q, c, sp);
  double worst = 0.0;
  for (int i = 0; i < g.n(); ++i) {
    const double cx = std::cos(2 * kPi * g.coord(i));
    worst = std::max(worst, std::abs(s(0, 0)(i, 3) + 4 * 4 * kPi * kPi * cx * cx));
  }
  CHECK(worst <= 1e-10);
  CHECK(max_abs(s(1, 1)) <= 1e-12);
  CHECK(max_abs(s(0, 1)) <= 1e-12);
  CHECK(max_abs(s(1, 0)) <= 1e-12);
  // mean of -4 (2 pi)^2 cos^2 is -2 (2 pi)^2
  CHECK(integrate(s(0, 0)) == doctest::Approx(-8 * kPi * kPi).epsilon(1e-12));
}

TEST_CASE("stress divergence") {
  const GridSpec g(32);
  const Spectral sp(g);
  StressField k(g);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) k(i, j) = ScalarField(g, 1.0 + i - j);
  const VelocityField zero = stress_divergence(k, sp);
  CHECK(max_abs(zero.u1) == 0.0);
  CHECK(max_abs(zero.u2) == 0.0);

  const Coefficients c = identity_suite_coefficients();
  const QTensorField q = random_initial_q(sp, 2, 4, 0.5);
  const StressField s1 = sigma_s(q, c, sp);
  const StressField s2 = sigma_a(q, constrained_field(q, c, sp), sp);
  const VelocityField sum = stress_divergence(s1, s2, sp);
  const VelocityField parts = stress_divergence(s1, sp) + stress_divergence(s2, sp);
  CHECK(max_abs(sum.u1 - parts.u1) <= 1e-12 * std::max(1.0, max_abs(sum.u1)));
  CHECK(max_abs(sum.u2 - parts.u2) <= 1e-12 * std::max(1.0, max_abs(sum.u2)));

  // single mode: sigma_11 = sin(2 pi x1) -> (div sigma)_1 = 2 pi cos(2 pi x1)
  StressField m(g);
  for (int i = 0; i < g.n(); ++i)
    for (int j = 0; j < g.n(); ++j) m(0, 0)(i, j) = std::sin(2 * kPi * g.coord(i));
  const VelocityField dm = stress_divergence(m, sp);
  CHECK(dm.u1(4, 0) == doctest::Approx(2 * kPi * std::cos(2 * kPi * g.coord(4))).epsilon(1e-12));
  CHECK(max_abs(dm.u2) == 0.0);
}

TEST_CASE("sigma_s duality with the elastic molecular field") {
  const GridSpec g(64);
  const Spectral sp(g);
  const Coefficients c = identity_suite_coefficients();
  for (std::uint64_t s = 1; s <= 5; ++s) {
    const QTensorField q = random_initial_q(sp, s, 8, 0.6);
    const VelocityField u = random_solenoidal_velocity(sp, s, 8);
    CHECK(sigma_s_duality_defect(q, u, c, sp) <= 1e-8);
    CHECK(sigma_a_pairing_defect(q, u, c, sp) <= 1e-8);
  }
}

TEST_CASE("duality detects a sign error in sigma_s") {
  const GridSpec g(64);
  const Spectral sp(g);
  const Coefficients c = identity_suite_coefficients();
  const SigmaSFunction broken = [](const TensorDerivatives& dq, const Coefficients& k, const Spectral& s) {
    Coefficients flipped = k;
    flipped.l2 = -k.l2;
    return sigma_s(dq, flipped, s);
  };
  const QTensorField q = random_initial_q(sp, 1, 8, 0.6);
  const VelocityField u = random_solenoidal_velocity(sp, 1, 8);
  CHECK(sigma_s_duality_defect(q, u, c, sp, broken) > 1e-2);
}
