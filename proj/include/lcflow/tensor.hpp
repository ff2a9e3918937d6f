#ifndef LCFLOW_TENSOR_HPP
#define LCFLOW_TENSOR_HPP

#include <array>

#include "lcflow/grid.hpp"

namespace lcflow {

/// Dense 2x2 matrix, row-major.
struct Mat2 {
  std::array<double, 4> a{};

  double& operator()(int i, int j) { return a[2 * i + j]; }
  double operator()(int i, int j) const { return a[2 * i + j]; }

  static Mat2 identity() { return Mat2{{1.0, 0.0, 0.0, 1.0}}; }

  friend bool operator==(const Mat2&, const Mat2&) = default;
};

Mat2 operator+(const Mat2& x, const Mat2& y);
Mat2 operator-(const Mat2& x, const Mat2& y);
Mat2 operator*(const Mat2& x, const Mat2& y);
Mat2 operator*(double s, const Mat2& x);
Mat2 transpose(const Mat2& x);
double trace(const Mat2& x);
/// Frobenius product x : y = tr(x^T y).
double frobenius(const Mat2& x, const Mat2& y);
double frobenius_norm(const Mat2& x);
Mat2 symmetric_part(const Mat2& x);
Mat2 antisymmetric_part(const Mat2& x);
double asymmetry(const Mat2& x);

/// General (not necessarily symmetric) 2x2 tensor field, one scalar field per entry.
class TensorField {
 public:
  explicit TensorField(GridSpec grid)
      : c_{ScalarField(grid), ScalarField(grid), ScalarField(grid), ScalarField(grid)} {}

  const GridSpec& grid() const { return c_[0].grid(); }

  ScalarField& operator()(int i, int j) { return c_[2 * i + j]; }
  const ScalarField& operator()(int i, int j) const { return c_[2 * i + j]; }

  Mat2 at(std::size_t k) const;
  void set(std::size_t k, const Mat2& m);

  TensorField& operator+=(const TensorField& o);
  TensorField& operator-=(const TensorField& o);
  TensorField& operator*=(double s);

  friend bool operator==(const TensorField&, const TensorField&) = default;

 private:
  std::array<ScalarField, 4> c_;
};

TensorField operator+(TensorField x, const TensorField& y);
TensorField operator-(TensorField x, const TensorField& y);
TensorField operator*(double s, TensorField x);

TensorField transpose(const TensorField& x);
ScalarField trace(const TensorField& x);
/// Pointwise x : y.
ScalarField frobenius(const TensorField& x, const TensorField& y);
/// Integral of x : y over the cell.
double pairing(const TensorField& x, const TensorField& y);
/// Largest pointwise |tr x| and |x - x^T|.
double max_trace(const TensorField& x);
double max_asymmetry(const TensorField& x);
double max_abs(const TensorField& x);

}  // namespace lcflow

#endif  // LCFLOW_TENSOR_HPP
