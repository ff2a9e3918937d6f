#ifndef LCFLOW_GRID_HPP
#define LCFLOW_GRID_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace lcflow {

/// Uniform n x n grid on the unit periodic cell [0,1)^2.
///
/// Point (i, j) sits at x1 = i/n, x2 = j/n and is stored at offset i*n + j.
class GridSpec {
 public:
  /// Throws std::invalid_argument unless n >= 8 and n is a power of two.
  explicit GridSpec(int n);

  int n() const { return n_; }
  std::size_t size() const { return static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_); }
  double dx() const { return 1.0 / n_; }
  double coord(int i) const { return static_cast<double>(i) / n_; }
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * n_ + j; }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;

 private:
  int n_;
};

/// Real scalar field sampled on a GridSpec.
class ScalarField {
 public:
  explicit ScalarField(GridSpec grid, double value = 0.0)
      : grid_(grid), data_(grid.size(), value) {}

  const GridSpec& grid() const { return grid_; }
  std::size_t size() const { return data_.size(); }

  double& operator[](std::size_t k) { return data_[k]; }
  double operator[](std::size_t k) const { return data_[k]; }
  double& operator()(int i, int j) { return data_[grid_.index(i, j)]; }
  double operator()(int i, int j) const { return data_[grid_.index(i, j)]; }

  std::span<double> values() { return data_; }
  std::span<const double> values() const { return data_; }

  ScalarField& operator+=(const ScalarField& o);
  ScalarField& operator-=(const ScalarField& o);
  ScalarField& operator*=(double s);

  friend bool operator==(const ScalarField&, const ScalarField&) = default;

 private:
  GridSpec grid_;
  std::vector<double> data_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(double s, ScalarField a);
ScalarField operator-(ScalarField a);

/// Pointwise product without any spectral filtering.
ScalarField pointwise_product(const ScalarField& a, const ScalarField& b);

/// a += s * b
void axpy(double s, const ScalarField& b, ScalarField& a);

/// Grid quadrature over the unit cell (cell measure 1).
double integrate(const ScalarField& f);
double max_abs(const ScalarField& f);
bool all_finite(const ScalarField& f);

/// Throws std::invalid_argument when the grids differ.
void require_same_grid(const GridSpec& a, const GridSpec& b, const char* what);

}  // namespace lcflow

#endif  // LCFLOW_GRID_HPP
