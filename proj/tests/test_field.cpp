#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "lcflow/field.hpp"
#include "lcflow/spectral.hpp"

using namespace lcflow;

TEST_CASE("grid rejects sizes that are not powers of two >= 8") {
  CHECK_THROWS_AS(GridSpec(4), std::invalid_argument);
  CHECK_THROWS_AS(GridSpec(12), std::invalid_argument);
  CHECK_THROWS_AS(GridSpec(0), std::invalid_argument);
  const GridSpec g(16);
  CHECK(g.n() == 16);
  CHECK(g.dx() == doctest::Approx(1.0 / 16));
}

TEST_CASE("quadrature of a constant returns the constant") {
  const GridSpec g(32);
  CHECK(integrate(ScalarField(g, 3.25)) == doctest::Approx(3.25).epsilon(1e-15));
}

TEST_CASE("assemble builds the traceless symmetric matrix") {
  const GridSpec g(8);
  QTensorField q(g);
  q.q1(2, 3) = 0.3;
  const Mat2 m = q.assemble(2, 3);
  CHECK(m(0, 0) == 0.3);
  CHECK(m(1, 1) == -0.3);
  CHECK(m(0, 1) == 0.0);
  CHECK(m(1, 0) == 0.0);

  const Mat2 z = q.assemble(0, 0);
  for (double v : z.a) CHECK(v == 0.0);

  q.q1(1, 1) = 0.1;
  q.q2(1, 1) = 0.2;
  CHECK(frobenius_norm(q.assemble(1, 1)) * frobenius_norm(q.assemble(1, 1)) == doctest::Approx(0.1).epsilon(1e-14));

  CHECK_THROWS_AS(q.assemble(8, 0), std::out_of_range);
  CHECK_THROWS_AS(q.assemble(0, -1), std::out_of_range);
}

TEST_CASE("assembled random fields are exactly traceless and symmetric") {
  const GridSpec g(32);
  const Spectral sp(g);
  const QTensorField q = random_initial_q(sp, 5, 4, 0.7);
  const TensorField t = q.to_tensor();
  CHECK(max_trace(t) == 0.0);
  CHECK(max_asymmetry(t) == 0.0);
  const ScalarField fro = q.frobenius_norm();
  for (std::size_t p = 0; p < fro.size(); ++p) {
    const double expect = 2.0 * (q.q1[p] * q.q1[p] + q.q2[p] * q.q2[p]);
    CHECK(std::abs(fro[p] * fro[p] - expect) <= 1e-14);
  }
}

TEST_CASE("zeta and kappa") {
  Coefficients c;
  c.l1 = 1.0;
  c.l2 = 0.5;
  c.l3 = 0.25;
  CHECK(validate_coefficients(c).zeta == doctest::Approx(2.75));

  c.l2 = -0.5;
  c.l3 = 0.2;
  const DerivedConstants d = validate_coefficients(c);
  CHECK(d.kappa == doctest::Approx(0.5));
  CHECK(d.kappa_positive);

  c.l2 = 0.0;
  c.l3 = 0.0;
  const DerivedConstants iso = validate_coefficients(c);
  CHECK(iso.zeta == 2.0);
  CHECK(iso.kappa == 1.0);
  CHECK(iso.zeta_ge_2kappa);
  CHECK(iso.ok());
}

TEST_CASE("violations are reported by name without throwing") {
  Coefficients c;
  c.l4 = 0.0;
  c.c = -1.0;
  c.l1 = -1.0;
  c.nu = 0.0;
  const DerivedConstants d = validate_coefficients(c);
  CHECK_FALSE(d.ok());
  auto has = [&](const std::string& n) {
    return std::find(d.violations.begin(), d.violations.end(), n) != d.violations.end();
  };
  CHECK(has("l4_nonzero"));
  CHECK(has("c_positive"));
  CHECK(has("kappa_positive"));
  CHECK(has("nu_positive"));
  CHECK_THROWS_AS(require_valid(c), std::invalid_argument);

  Coefficients iso;
  iso.l4 = 0.0;
  iso.allow_isotropic = true;
  CHECK(validate_coefficients(iso).ok());

  Coefficients reg;
  reg.delta = 0.01;
  reg.k_reg = 3;
  CHECK_FALSE(validate_coefficients(reg).ok());
  reg.k_reg = 6;
  CHECK(validate_coefficients(reg).ok());
}

TEST_CASE("validate_coefficients is pure") {
  Coefficients c;
  c.l2 = 0.3;
  const DerivedConstants a = validate_coefficients(c);
  const DerivedConstants b = validate_coefficients(c);
  CHECK(a.zeta == b.zeta);
  CHECK(a.kappa == b.kappa);
  CHECK(a.violations == b.violations);
}

TEST_CASE("random initial Q hits its target, is deterministic and seed dependent") {
  const GridSpec g(32);
  const Spectral sp(g);
  const QTensorField a = random_initial_q(sp, 1, 4, 0.2);
  CHECK(std::abs(a.linf() - 0.2) <= 1e-10);
  // measured independently from the assembled matrices
  double m = 0.0;
  for (std::size_t p = 0; p < a.q1.size(); ++p) m = std::max(m, frobenius_norm(a.assemble(p)));
  CHECK(std::abs(m - 0.2) <= 1e-10);

  const QTensorField b = random_initial_q(sp, 1, 4, 0.2);
  CHECK(a == b);
  const QTensorField c = random_initial_q(sp, 2, 4, 0.2);
  CHECK_FALSE(a == c);

  CHECK_THROWS_AS(random_initial_q(sp, 1, 4, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(random_initial_q(sp, 1, 4, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(random_initial_q(sp, 1, 11, 0.2), std::invalid_argument);
}

TEST_CASE("random fields stay inside their band") {
  const GridSpec g(32);
  const Spectral sp(g);
  const ScalarField f = random_band_limited(sp, 9, 0, 4);
  const SpectralField s = sp.forward(f);
  double outside = 0.0;
  for (int i = 0; i < s.rows(); ++i)
    for (int j = 0; j < s.cols(); ++j)
      if (std::abs(sp.freq1(i)) > 4 || j > 4) outside = std::max(outside, std::abs(s(i, j)));
  CHECK(outside <= 1e-15);
}

TEST_CASE("random solenoidal velocity") {
  const GridSpec g(32);
  const Spectral sp(g);
  const VelocityField u = random_solenoidal_velocity(sp, 3, 4);
  CHECK(sp.norm(u, NormKind::L2) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sp.max_divergence_mode(u) <= 1e-12);
  CHECK(std::abs(integrate(u.u1)) <= 1e-14);
  CHECK(std::abs(integrate(u.u2)) <= 1e-14);
}

TEST_CASE("taylor green is divergence free") {
  const GridSpec g(16);
  const Spectral sp(g);
  const VelocityField u = taylor_green(g, 2, 0.5);
  CHECK(sp.max_divergence_mode(u) <= 1e-12);
  CHECK(sp.norm(u, NormKind::L2) == doctest::Approx(0.5 * std::sqrt(0.5)).epsilon(1e-12));
}
