#include "lcflow/field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "lcflow/spectral.hpp"

namespace lcflow {

QTensorField::QTensorField(ScalarField a, ScalarField b) : q1(std::move(a)), q2(std::move(b)) {
  require_same_grid(q1.grid(), q2.grid(), "QTensorField");
}

Mat2 QTensorField::assemble(int i, int j) const {
  const int n = grid().n();
  if (i < 0 || j < 0 || i >= n || j >= n) throw std::out_of_range("QTensorField::assemble: index outside grid");
  return assemble(grid().index(i, j));
}

Mat2 QTensorField::assemble(std::size_t k) const {
  if (k >= q1.size()) throw std::out_of_range("QTensorField::assemble: index outside grid");
  return Mat2{{q1[k], q2[k], q2[k], -q1[k]}};
}

TensorField QTensorField::to_tensor() const {
  TensorField t(grid());
  t(0, 0) = q1;
  t(0, 1) = q2;
  t(1, 0) = q2;
  t(1, 1) = -q1;
  return t;
}

ScalarField QTensorField::trace_square() const {
  ScalarField s(grid());
  for (std::size_t k = 0; k < s.size(); ++k) s[k] = 2.0 * (q1[k] * q1[k] + q2[k] * q2[k]);
  return s;
}

ScalarField QTensorField::frobenius_norm() const {
  ScalarField s = trace_square();
  for (double& v : s.values()) v = std::sqrt(v);
  return s;
}

double QTensorField::linf() const { return max_abs(frobenius_norm()); }

QTensorField& QTensorField::operator+=(const QTensorField& o) {
  q1 += o.q1;
  q2 += o.q2;
  return *this;
}

QTensorField& QTensorField::operator-=(const QTensorField& o) {
  q1 -= o.q1;
  q2 -= o.q2;
  return *this;
}

QTensorField& QTensorField::operator*=(double s) {
  q1 *= s;
  q2 *= s;
  return *this;
}

QTensorField operator+(QTensorField a, const QTensorField& b) { return a += b; }
QTensorField operator-(QTensorField a, const QTensorField& b) { return a -= b; }
QTensorField operator*(double s, QTensorField a) { return a *= s; }

QTensorField traceless_symmetric_part(const TensorField& x) {
  QTensorField q(x.grid());
  for (std::size_t k = 0; k < q.q1.size(); ++k) {
    q.q1[k] = 0.5 * (x(0, 0)[k] - x(1, 1)[k]);
    q.q2[k] = 0.5 * (x(0, 1)[k] + x(1, 0)[k]);
  }
  return q;
}

VelocityField::VelocityField(ScalarField a, ScalarField b) : u1(std::move(a)), u2(std::move(b)) {
  require_same_grid(u1.grid(), u2.grid(), "VelocityField");
}

VelocityField& VelocityField::operator+=(const VelocityField& o) {
  u1 += o.u1;
  u2 += o.u2;
  return *this;
}

VelocityField& VelocityField::operator-=(const VelocityField& o) {
  u1 -= o.u1;
  u2 -= o.u2;
  return *this;
}

VelocityField& VelocityField::operator*=(double s) {
  u1 *= s;
  u2 *= s;
  return *this;
}

VelocityField operator+(VelocityField a, const VelocityField& b) { return a += b; }
VelocityField operator-(VelocityField a, const VelocityField& b) { return a -= b; }
VelocityField operator*(double s, VelocityField a) { return a *= s; }

DerivedConstants validate_coefficients(const Coefficients& c) {
  DerivedConstants d;
  d.zeta = 2.0 * c.l1 + c.l2 + c.l3;
  d.kappa = std::min(c.l1 + c.l2, c.l1 + c.l3);
  d.l4_nonzero = c.l4 != 0.0;
  d.kappa_positive = d.kappa > 0.0;
  d.c_positive = c.c > 0.0;
  d.nu_positive = c.nu > 0.0;
  d.reg_order_valid = c.delta == 0.0 || (c.delta > 0.0 && c.k_reg >= 4 && c.k_reg % 2 == 0);
  d.zeta_ge_2kappa = d.zeta >= 2.0 * d.kappa;

  if (!d.l4_nonzero && !c.allow_isotropic) d.violations.emplace_back("l4_nonzero");
  if (!d.kappa_positive) d.violations.emplace_back("kappa_positive");
  if (!d.c_positive) d.violations.emplace_back("c_positive");
  if (!d.nu_positive) d.violations.emplace_back("nu_positive");
  if (c.delta < 0.0) d.violations.emplace_back("delta_nonnegative");
  if (!d.reg_order_valid && c.delta > 0.0) d.violations.emplace_back("k_reg_even_ge_4");
  return d;
}

DerivedConstants require_valid(const Coefficients& c) {
  DerivedConstants d = validate_coefficients(c);
  if (!d.ok()) {
    std::string msg = "coefficient assumptions violated:";
    for (const auto& v : d.violations) msg += " " + v;
    throw std::invalid_argument(msg);
  }
  return d;
}

ScalarField random_band_limited(const Spectral& sp, std::uint64_t seed, std::uint64_t stream,
                                int max_mode, bool include_mean) {
  const GridSpec& g = sp.grid();
  if (max_mode < 0 || 3 * max_mode >= g.n()) {
    throw std::invalid_argument("max_mode must satisfy 0 <= max_mode < n/3");
  }
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), 0x5eedu};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> normal(0.0, 1.0);

  SpectralField s(g);
  for (int i = 0; i < s.rows(); ++i) {
    const int f1 = sp.freq1(i);
    if (std::abs(f1) > max_mode) continue;
    for (int j = 0; j <= max_mode; ++j) {
      if (!include_mean && f1 == 0 && j == 0) continue;
      // the j = 0 column must be Hermitian on its own; fill only f1 >= 0 and mirror
      if (j == 0 && f1 < 0) continue;
      const double amp = 1.0 / (1.0 + f1 * f1 + j * j);
      std::complex<double> z(normal(rng), normal(rng));
      if (f1 == 0 && j == 0) z = {z.real(), 0.0};
      s(i, j) = amp * z;
      if (j == 0 && f1 > 0) s(g.n() - i, 0) = std::conj(s(i, j));
    }
  }
  return sp.inverse(s);
}

QTensorField random_initial_q(const Spectral& sp, std::uint64_t seed, int max_mode, double target_linf) {
  if (!(target_linf > 0.0)) throw std::invalid_argument("target_linf must be positive");
  QTensorField q(random_band_limited(sp, seed, 0, max_mode), random_band_limited(sp, seed, 1, max_mode));
  const double m = q.linf();
  if (m == 0.0) throw std::runtime_error("random_initial_q: generated a zero field");
  q *= target_linf / m;
  return q;
}

VelocityField random_solenoidal_velocity(const Spectral& sp, std::uint64_t seed, int max_mode) {
  VelocityField v(random_band_limited(sp, seed, 10, max_mode, false),
                  random_band_limited(sp, seed, 11, max_mode, false));
  VelocityField p = sp.leray_project(v).solenoidal;
  const double l2 = sp.norm(p, NormKind::L2);
  if (l2 > 0.0) p *= 1.0 / l2;
  return p;
}

VelocityField taylor_green(const GridSpec& grid, int mode, double amp) {
  VelocityField v(grid);
  const double k = 2.0 * std::numbers::pi * mode;
  for (int i = 0; i < grid.n(); ++i) {
    for (int j = 0; j < grid.n(); ++j) {
      const double x1 = grid.coord(i);
      const double x2 = grid.coord(j);
      v.u1(i, j) = amp * std::sin(k * x1) * std::cos(k * x2);
      v.u2(i, j) = -amp * std::cos(k * x1) * std::sin(k * x2);
    }
  }
  return v;
}

}  // namespace lcflow
