#ifndef LCFLOW_FIELD_HPP
#define LCFLOW_FIELD_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "lcflow/grid.hpp"
#include "lcflow/tensor.hpp"

namespace lcflow {

/// Traceless symmetric order parameter Q = [[q1, q2], [q2, -q1]].
///
/// Only the two free components are stored, so symmetry and tracelessness
/// hold by construction. Full matrices are assembled on demand.
struct QTensorField {
  ScalarField q1;
  ScalarField q2;

  explicit QTensorField(GridSpec grid) : q1(grid), q2(grid) {}
  QTensorField(ScalarField a, ScalarField b);

  const GridSpec& grid() const { return q1.grid(); }

  /// Throws std::out_of_range for an index outside the grid.
  Mat2 assemble(int i, int j) const;
  Mat2 assemble(std::size_t k) const;
  TensorField to_tensor() const;

  /// Pointwise Frobenius norm |Q| = sqrt(2 (q1^2 + q2^2)).
  ScalarField frobenius_norm() const;
  /// Pointwise tr(Q^2) = 2 (q1^2 + q2^2).
  ScalarField trace_square() const;
  double linf() const;

  QTensorField& operator+=(const QTensorField& o);
  QTensorField& operator-=(const QTensorField& o);
  QTensorField& operator*=(double s);

  friend bool operator==(const QTensorField&, const QTensorField&) = default;
};

QTensorField operator+(QTensorField a, const QTensorField& b);
QTensorField operator-(QTensorField a, const QTensorField& b);
QTensorField operator*(double s, QTensorField a);

/// Extracts the traceless symmetric part of a general tensor field.
QTensorField traceless_symmetric_part(const TensorField& x);

/// Velocity u = (u1, u2).
struct VelocityField {
  ScalarField u1;
  ScalarField u2;

  explicit VelocityField(GridSpec grid) : u1(grid), u2(grid) {}
  VelocityField(ScalarField a, ScalarField b);

  const GridSpec& grid() const { return u1.grid(); }
  ScalarField& operator[](int i) { return i == 0 ? u1 : u2; }
  const ScalarField& operator[](int i) const { return i == 0 ? u1 : u2; }

  VelocityField& operator+=(const VelocityField& o);
  VelocityField& operator-=(const VelocityField& o);
  VelocityField& operator*=(double s);

  friend bool operator==(const VelocityField&, const VelocityField&) = default;
};

VelocityField operator+(VelocityField a, const VelocityField& b);
VelocityField operator-(VelocityField a, const VelocityField& b);
VelocityField operator*(double s, VelocityField a);

/// Material and model constants.
struct Coefficients {
  double nu = 1.0;
  double l1 = 1.0;
  double l2 = 0.0;
  double l3 = 0.0;
  double l4 = 1.0;
  double a = -2.0 / 9.0;
  /// Stored for completeness; tr(Q^3) = 0 for 2x2 traceless Q, so b drops out of the dynamics.
  double b = 0.0;
  double c = 1.0;
  double xi = 0.0;
  double delta = 0.0;
  int k_reg = 4;
  /// Accept L4 = 0 (the isotropic/quadratic sub-case) without flagging it.
  bool allow_isotropic = false;

  friend bool operator==(const Coefficients&, const Coefficients&) = default;
};

struct DerivedConstants {
  double zeta = 0.0;   ///< 2 L1 + L2 + L3
  double kappa = 0.0;  ///< min(L1 + L2, L1 + L3)
  bool l4_nonzero = false;
  bool kappa_positive = false;
  bool c_positive = false;
  bool nu_positive = false;
  bool reg_order_valid = false;
  bool zeta_ge_2kappa = false;
  /// Names of the failed assumptions, empty when everything holds.
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

/// Computes zeta and kappa and records every violated assumption by name.
/// Never throws; callers that need a valid set use require_valid().
DerivedConstants validate_coefficients(const Coefficients& c);

/// Throws std::invalid_argument listing the violated assumptions.
DerivedConstants require_valid(const Coefficients& c);

class Spectral;

/// Smooth random field with modes |freq| <= max_mode in each direction.
/// Amplitudes decay like 1/(1 + |m|^2); the mean mode is included when requested.
ScalarField random_band_limited(const Spectral& sp, std::uint64_t seed, std::uint64_t stream,
                                int max_mode, bool include_mean = true);

/// Band-limited Q with max pointwise |Q| rescaled to target_linf.
QTensorField random_initial_q(const Spectral& sp, std::uint64_t seed, int max_mode,
                              double target_linf);

/// Random divergence-free band-limited velocity with zero mean and unit L2 norm.
VelocityField random_solenoidal_velocity(const Spectral& sp, std::uint64_t seed, int max_mode);

/// Taylor-Green vortex of integer mode m and amplitude amp.
VelocityField taylor_green(const GridSpec& grid, int mode, double amp);

}  // namespace lcflow

#endif  // LCFLOW_FIELD_HPP
