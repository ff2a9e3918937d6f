#include "lcflow/tensor.hpp"

#include <algorithm>
#include <cmath>

namespace lcflow {

Mat2 operator+(const Mat2& x, const Mat2& y) {
  Mat2 r;
  for (int k = 0; k < 4; ++k) r.a[k] = x.a[k] + y.a[k];
  return r;
}

Mat2 operator-(const Mat2& x, const Mat2& y) {
  Mat2 r;
  for (int k = 0; k < 4; ++k) r.a[k] = x.a[k] - y.a[k];
  return r;
}

Mat2 operator*(const Mat2& x, const Mat2& y) {
  Mat2 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r(i, j) = x(i, 0) * y(0, j) + x(i, 1) * y(1, j);
  return r;
}

Mat2 operator*(double s, const Mat2& x) {
  Mat2 r;
  for (int k = 0; k < 4; ++k) r.a[k] = s * x.a[k];
  return r;
}

Mat2 transpose(const Mat2& x) { return Mat2{{x(0, 0), x(1, 0), x(0, 1), x(1, 1)}}; }

double trace(const Mat2& x) { return x(0, 0) + x(1, 1); }

double frobenius(const Mat2& x, const Mat2& y) {
  double s = 0.0;
  for (int k = 0; k < 4; ++k) s += x.a[k] * y.a[k];
  return s;
}

double frobenius_norm(const Mat2& x) { return std::sqrt(frobenius(x, x)); }

Mat2 symmetric_part(const Mat2& x) { return 0.5 * (x + transpose(x)); }

Mat2 antisymmetric_part(const Mat2& x) { return 0.5 * (x - transpose(x)); }

double asymmetry(const Mat2& x) { return std::abs(x(0, 1) - x(1, 0)); }

Mat2 TensorField::at(std::size_t k) const {
  return Mat2{{c_[0][k], c_[1][k], c_[2][k], c_[3][k]}};
}

void TensorField::set(std::size_t k, const Mat2& m) {
  for (int e = 0; e < 4; ++e) c_[e][k] = m.a[e];
}

TensorField& TensorField::operator+=(const TensorField& o) {
  for (int e = 0; e < 4; ++e) c_[e] += o.c_[e];
  return *this;
}

TensorField& TensorField::operator-=(const TensorField& o) {
  for (int e = 0; e < 4; ++e) c_[e] -= o.c_[e];
  return *this;
}

TensorField& TensorField::operator*=(double s) {
  for (auto& f : c_) f *= s;
  return *this;
}

TensorField operator+(TensorField x, const TensorField& y) { return x += y; }
TensorField operator-(TensorField x, const TensorField& y) { return x -= y; }
TensorField operator*(double s, TensorField x) { return x *= s; }

TensorField transpose(const TensorField& x) {
  TensorField r(x.grid());
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r(i, j) = x(j, i);
  return r;
}

ScalarField trace(const TensorField& x) { return x(0, 0) + x(1, 1); }

ScalarField frobenius(const TensorField& x, const TensorField& y) {
  ScalarField r(x.grid());
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r += pointwise_product(x(i, j), y(i, j));
  return r;
}

double pairing(const TensorField& x, const TensorField& y) { return integrate(frobenius(x, y)); }

double max_trace(const TensorField& x) { return max_abs(trace(x)); }

double max_asymmetry(const TensorField& x) { return max_abs(x(0, 1) - x(1, 0)); }

double max_abs(const TensorField& x) {
  double m = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m = std::max(m, max_abs(x(i, j)));
  return m;
}

}  // namespace lcflow
