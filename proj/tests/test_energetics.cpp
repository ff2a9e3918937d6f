#include <cmath>
#include <numbers>

#include "doctest.h"
#include "lcflow/diagnostics.hpp"
#include "lcflow/energetics.hpp"

using namespace lcflow;

namespace {

constexpr double kPi = std::numbers::pi;

QTensorField constant_q(const GridSpec& g, double q1, double q2) {
  return QTensorField(ScalarField(g, q1), ScalarField(g, q2));
}

Coefficients full_coefficients() {
  Coefficients c;
  c.nu = 1.0;
  c.l1 = 1.0;
  c.l2 = 0.5;
  c.l3 = 0.3;
  c.l4 = 0.7;
  c.a = -0.2;
  c.b = 0.0;
  c.c = 1.0;
  return c;
}

double max_abs_diff(const TensorField& x, const TensorField& y) { return max_abs(x - y); }

}  // namespace

TEST_CASE("bulk energy density") {
  const GridSpec g(8);
  Coefficients c;
  c.a = -0.1;
  c.c = 1.0;
  CHECK(max_abs(bulk_energy_density(QTensorField(g), c)) == 0.0);

  const QTensorField q = constant_q(g, 0.3, 0.0);
  CHECK(bulk_energy_density(q, c)[0] == doctest::Approx(-0.0009).epsilon(1e-12));

  Coefficients cb = c;
  cb.b = 10.0;
  CHECK(bulk_energy_density(q, c) == bulk_energy_density(q, cb));
  // the general tensor form carries the b-term, which vanishes for traceless Q up to roundoff
  CHECK(std::abs(bulk_energy_density(q.to_tensor(), cb)[0] - (-0.0009)) <= 1e-15);
}

TEST_CASE("elastic energy density") {
  const GridSpec g(32);
  const Spectral sp(g);
  const Coefficients c = full_coefficients();
  CHECK(max_abs(elastic_energy_density(constant_q(g, 0.2, -0.1), c, sp)) == 0.0);

  Coefficients l1;
  l1.l1 = 1.0;
  l1.l2 = l1.l3 = l1.l4 = 0.0;
  const double eps = 0.05;
  QTensorField q(g);
  for (int i = 0; i < g.n(); ++i)
    for (int j = 0; j < g.n(); ++j) q.q1(i, j) = eps * std::sin(2 * kPi * g.coord(i));
  CHECK(integrate(elastic_energy_density(q, l1, sp)) == doctest::Approx(4 * kPi * kPi * eps * eps).epsilon(1e-12));

  const QTensorField r = random_initial_q(sp, 3, 4, 0.5);
  const QTensorField neg = -1.0 * r;
  Coefficients only4;
  only4.l1 = only4.l2 = only4.l3 = 0.0;
  only4.l4 = 1.0;
  Coefficients no4 = c;
  no4.l4 = 0.0;
  const ScalarField e4 = elastic_energy_density(r, only4, sp);
  const ScalarField e4n = elastic_energy_density(neg, only4, sp);
  CHECK(max_abs(e4 + e4n) <= 1e-12);
  CHECK(max_abs(e4) > 1e-3);
  CHECK(max_abs(elastic_energy_density(r, no4, sp) - elastic_energy_density(neg, no4, sp)) <= 1e-12);
}

TEST_CASE("total free energy") {
  const GridSpec g(16);
  const Spectral sp(g);
  Coefficients c;
  c.a = 0.5;
  CHECK(total_free_energy(QTensorField(g), c, sp) == 0.0);
  const QTensorField q = constant_q(g, 0.2, 0.1);
  CHECK(total_free_energy(q, c, sp) == doctest::Approx(bulk_energy_density(q, c)[0]).epsilon(1e-14));
}

TEST_CASE("free energy lower bound in the small-data regime") {
  const GridSpec g(32);
  const Spectral sp(g);
  Coefficients c = full_coefficients();
  const DerivedConstants d = validate_coefficients(c);
  const double qmax = d.kappa / (2.0 * std::abs(c.l4));
  for (int s = 1; s <= 100; ++s) {
    const QTensorField q = random_initial_q(sp, static_cast<std::uint64_t>(s), 4, qmax * (0.2 + 0.8 * (s % 5) / 4.0));
    double grad2 = 0.0;
    for (const ScalarField* f : {&q.q1, &q.q2}) {
      const auto gr = sp.gradient(*f);
      grad2 += 2.0 * (integrate(pointwise_product(gr[0], gr[0])) + integrate(pointwise_product(gr[1], gr[1])));
    }
    const double lower = 0.5 * d.kappa * grad2 - c.a * c.a / (4.0 * c.c);
    CHECK(total_free_energy(q, c, sp) >= lower);
  }
}

TEST_CASE("molecular field of a constant Q") {
  const GridSpec g(8);
  const Spectral sp(g);
  Coefficients c = full_coefficients();
  const QTensorField q = constant_q(g, 0.3, -0.2);
  const double tr2 = 2.0 * (0.09 + 0.04);
  const TensorField h = molecular_field_h(q, c, sp);
  const Mat2 expect = (-c.a - c.c * tr2) * q.assemble(0);
  for (int k = 0; k < 4; ++k) CHECK(h.at(5).a[k] == doctest::Approx(expect.a[k]).epsilon(1e-13));

  c.b = 2.0;
  const TensorField hb = molecular_field_h(q, c, sp);
  CHECK(trace(hb.at(0)) == doctest::Approx(c.b * tr2).epsilon(1e-13));
}

TEST_CASE("lagrange multipliers") {
  const GridSpec g(16);
  const Spectral sp(g);
  Coefficients c = full_coefficients();
  c.b = 3.0;
  const QTensorField q = constant_q(g, 0.3, 0.1);
  const LagrangeMultipliers lm = lagrange_multipliers(q, c, sp);
  CHECK(lm.lambda[7] == doctest::Approx(-0.5 * c.b * 2.0 * (0.09 + 0.01)).epsilon(1e-13));
  CHECK(max_abs(lm.mu_antisym) <= 1e-15);

  // with L2 + L3 = 0 only the b and L4 parts remain
  Coefficients c0 = c;
  c0.l2 = 0.4;
  c0.l3 = -0.4;
  const QTensorField r = random_initial_q(sp, 2, 2, 0.5);
  const LagrangeMultipliers lr = lagrange_multipliers(r, c0, sp);
  const TensorDerivatives dq = TensorDerivatives::of(r, sp, false);
  for (std::size_t p = 0; p < r.q1.size(); p += 17) {
    double grad2 = 0.0;
    for (int k = 0; k < 2; ++k)
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) grad2 += dq.d[k](i, j)[p] * dq.d[k](i, j)[p];
    const double tr2 = 2.0 * (r.q1[p] * r.q1[p] + r.q2[p] * r.q2[p]);
    CHECK(lr.lambda[p] == doctest::Approx(-0.5 * c0.b * tr2 + 0.5 * c0.l4 * grad2).epsilon(1e-12));
  }

  const LagrangeMultipliers la = lagrange_multipliers(r, c, sp);
  for (std::size_t p = 0; p < r.q1.size(); ++p) {
    const Mat2 m = la.mu_antisym.at(p);
    CHECK(m(0, 0) == 0.0);
    CHECK(m(1, 1) == 0.0);
    CHECK(m(0, 1) == -m(1, 0));
  }
}

TEST_CASE("constrained field of a constant Q") {
  const GridSpec g(8);
  const Spectral sp(g);
  Coefficients c = full_coefficients();
  c.a = -0.1;
  const TensorField x = constrained_field(constant_q(g, 0.3, 0.0), c, sp);
  CHECK(x(0, 0)[3] == doctest::Approx(-0.024).epsilon(1e-13));
  CHECK(x(1, 1)[3] == doctest::Approx(0.024).epsilon(1e-13));
}

TEST_CASE("constrained field is traceless, symmetric, b independent and matches H + lambda I + mu - mu^T") {
  const GridSpec g(64);
  const Spectral sp(g);
  Coefficients c = full_coefficients();
  c.b = 7.0;
  Coefficients c0 = c;
  c0.b = 0.0;
  for (std::uint64_t s = 1; s <= 5; ++s) {
    const QTensorField q = random_initial_q(sp, s, 8, 0.6);
    const MolecularFieldBundle m = molecular_field_bundle(q, c, sp);
    CHECK(max_trace(m.constrained) <= 1e-10);
    CHECK(max_asymmetry(m.constrained) <= 1e-10);
    TensorField route = m.h + m.mu_antisym;
    route(0, 0) += m.lambda_field;
    route(1, 1) += m.lambda_field;
    CHECK(max_abs_diff(route, m.constrained) <= 1e-10);
    CHECK(constrained_field(q, c0, sp) == m.constrained);
  }
}

TEST_CASE("multipliers are orthogonal to traceless symmetric fields") {
  const GridSpec g(32);
  const Spectral sp(g);
  const Coefficients c = full_coefficients();
  const QTensorField q = random_initial_q(sp, 9, 4, 0.5);
  const QTensorField m = random_initial_q(sp, 10, 4, 1.0);
  const LagrangeMultipliers lm = lagrange_multipliers(q, c, sp);
  TensorField gauge = lm.mu_antisym;
  gauge(0, 0) += lm.lambda;
  gauge(1, 1) += lm.lambda;
  const ScalarField f = frobenius(gauge, m.to_tensor());
  CHECK(max_abs(f) <= 1e-10);
}

TEST_CASE("variational consistency of H") {
  const GridSpec g(32);
  const Spectral sp(g);
  const QTensorField q = random_initial_q(sp, 4, 4, 0.5);
  Coefficients c = full_coefficients();
  c.b = 1.5;
  const VariationalReport r = variational_oracle(q, c, 10, 1e-5, 4);
  CHECK(r.max_defect <= 1e-6);
  const double d3 = variational_oracle(q, c, 10, 1e-3, 4).max_defect;
  const double d4 = variational_oracle(q, c, 10, 1e-4, 4).max_defect;
  CHECK(std::log10(d3 / d4) == doctest::Approx(2.0).epsilon(0.1));

  Coefficients bulk_only;
  bulk_only.l1 = bulk_only.l2 = bulk_only.l3 = bulk_only.l4 = 0.0;
  bulk_only.a = -0.3;
  bulk_only.b = 0.7;
  const QTensorField k(ScalarField(g, 0.2), ScalarField(g, -0.1));
  CHECK(variational_oracle(k, bulk_only, 5, 1e-4, 1).max_defect <= 1e-6);
  // a quadratic energy has no truncation error in the central difference
  Coefficients quadratic = bulk_only;
  quadratic.b = 0.0;
  quadratic.c = 0.0;
  CHECK(variational_oracle(k, quadratic, 5, 1e-4, 1).max_defect <= 1e-10);

  CHECK_THROWS_AS(variational_oracle(q, c, 2, 1e-2), std::invalid_argument);
  CHECK_THROWS_AS(variational_oracle(q, c, 2, 1e-7), std::invalid_argument);
}

TEST_CASE("energy ledger") {
  const GridSpec g(32);
  const Spectral sp(g);
  Coefficients c = full_coefficients();
  c.delta = 1e-4;
  const QTensorField q = random_initial_q(sp, 1, 4, 0.5);
  const VelocityField u = random_solenoidal_velocity(sp, 1, 4);
  const EnergyLedger e = energy_ledger(u, q, c, sp);
  CHECK(e.total == doctest::Approx(e.kinetic + e.bulk + e.elastic).epsilon(1e-12));
  CHECK(e.free == doctest::Approx(e.bulk + e.elastic).epsilon(1e-12));
  CHECK(e.kinetic == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(e.viscous_diss >= 0.0);
  CHECK(e.rotational_diss >= 0.0);
  CHECK(e.reg_diss >= 0.0);

  // viscous dissipation against physical-space quadrature of |grad u|^2
  double grad2 = 0.0;
  for (int i = 0; i < 2; ++i) {
    const auto gr = sp.gradient(u[i]);
    grad2 += integrate(pointwise_product(gr[0], gr[0])) + integrate(pointwise_product(gr[1], gr[1]));
  }
  CHECK(e.viscous_diss == doctest::Approx(c.nu * grad2).epsilon(1e-12));

  const TensorField x = constrained_field(q, c, sp);
  CHECK(e.rotational_diss == doctest::Approx(integrate(frobenius(x, x))).epsilon(1e-12));

  const EnergyLedger z = energy_ledger(VelocityField(g), QTensorField(g), c, sp);
  CHECK(z.total == 0.0);
  CHECK(z.dissipation() == 0.0);
}

TEST_CASE("regularisation dissipation of a single mode") {
  const GridSpec g(16);
  const Spectral sp(g);
  Coefficients c;
  c.delta = 0.5;
  c.k_reg = 4;
  VelocityField u(g);
  for (int i = 0; i < g.n(); ++i)
    for (int j = 0; j < g.n(); ++j) u.u1(i, j) = std::sin(2 * kPi * g.coord(j));
  const EnergyLedger e = energy_ledger(u, QTensorField(g), c, sp);
  CHECK(e.reg_diss == doctest::Approx(0.5 * std::pow(2 * kPi, 8) * 0.5).epsilon(1e-12));
}
