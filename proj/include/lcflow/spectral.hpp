#ifndef LCFLOW_SPECTRAL_HPP
#define LCFLOW_SPECTRAL_HPP

#include <array>
#include <complex>
#include <memory>
#include <vector>

#include "lcflow/field.hpp"
#include "lcflow/grid.hpp"

namespace lcflow {

enum class NormKind { L2, L4, Linf, H1, H2, H3 };

/// Orders of differentiation in x1 and x2.
struct MultiIndex {
  int a1 = 0;
  int a2 = 0;
};

/// Half-plane Fourier coefficients of a real field, n x (n/2 + 1), normalised
/// so that the (0,0) coefficient is the cell mean.
class SpectralField {
 public:
  explicit SpectralField(GridSpec grid)
      : grid_(grid), nh_(grid.n() / 2 + 1), c_(static_cast<std::size_t>(grid.n()) * nh_) {}

  const GridSpec& grid() const { return grid_; }
  int rows() const { return grid_.n(); }
  int cols() const { return nh_; }

  std::complex<double>& operator()(int i, int j) { return c_[static_cast<std::size_t>(i) * nh_ + j]; }
  std::complex<double> operator()(int i, int j) const { return c_[static_cast<std::size_t>(i) * nh_ + j]; }

  std::complex<double>* data() { return c_.data(); }
  const std::complex<double>* data() const { return c_.data(); }
  std::size_t size() const { return c_.size(); }

 private:
  GridSpec grid_;
  int nh_;
  std::vector<std::complex<double>> c_;
};

struct LerayResult {
  VelocityField solenoidal;
  /// v minus its projection; the curl-free (pressure-gradient) component.
  VelocityField gradient;
};

struct FftPlans;

/// Fourier-side calculus on one grid. Cheap to copy; FFTW plans are shared
/// through a process-wide cache guarded by a mutex, and execution uses the
/// thread-safe new-array interface, so one instance may be used concurrently.
class Spectral {
 public:
  explicit Spectral(GridSpec grid, bool dealias_products = true);

  const GridSpec& grid() const { return grid_; }
  bool dealias_products() const { return dealias_; }

  /// Signed integer frequency of row i / column j.
  int freq1(int i) const { return i <= grid_.n() / 2 - 1 ? i : i - grid_.n(); }
  int freq2(int j) const { return j; }
  bool nyquist1(int i) const { return i == grid_.n() / 2; }
  bool nyquist2(int j) const { return j == grid_.n() / 2; }
  /// Wavenumber used by odd-order derivatives; zero on the Nyquist line.
  double odd_wavenumber1(int i) const;
  double odd_wavenumber2(int j) const;
  /// Squared wavenumber magnitude |k|^2 with k = 2 pi freq.
  double k_squared(int i, int j) const;
  /// Weight of a half-plane coefficient in Parseval sums (1 or 2).
  double parseval_weight(int j) const { return (j == 0 || nyquist2(j)) ? 1.0 : 2.0; }

  SpectralField forward(const ScalarField& f) const;
  ScalarField inverse(const SpectralField& s) const;

  /// Multiplier (i k1)^a1 (i k2)^a2; requires a1 + a2 <= 3.
  std::complex<double> derivative_multiplier(int i, int j, MultiIndex alpha) const;
  SpectralField derivative(const SpectralField& s, MultiIndex alpha) const;
  ScalarField derivative(const ScalarField& f, MultiIndex alpha) const;
  std::array<ScalarField, 2> gradient(const ScalarField& f) const;
  ScalarField laplacian(const ScalarField& f) const;
  ScalarField divergence(const VelocityField& v) const;

  LerayResult leray_project(const VelocityField& v) const;
  /// max over modes of |k . v_hat(k)| using the odd-order wavenumbers.
  double max_divergence_mode(const VelocityField& v) const;

  /// (-Delta + I)^{-1}
  ScalarField helmholtz_inverse(const ScalarField& f) const;
  /// (-Delta + I) applied spectrally.
  ScalarField helmholtz(const ScalarField& f) const;

  /// Zeroes every mode with max(|freq1|, |freq2|) > n/3.
  ScalarField dealias(const ScalarField& f) const;
  void dealias_in_place(SpectralField& s) const;
  bool retained(int i, int j) const;
  /// dealias(f) when product dealiasing is enabled, f otherwise.
  ScalarField filter(const ScalarField& f) const;
  /// Nonlinear product a*b followed by filter().
  ScalarField mul(const ScalarField& a, const ScalarField& b) const;

  double norm(const ScalarField& f, NormKind kind) const;
  /// Sum of squared L2 norms over the given components (Frobenius convention).
  double norm(const QTensorField& q, NormKind kind) const;
  double norm(const VelocityField& v, NormKind kind) const;
  double norm(const TensorField& t, NormKind kind) const;
  /// L2 norm squared computed in Fourier space (Parseval).
  double spectral_l2_squared(const ScalarField& f) const;

 private:
  double sobolev_squared(const SpectralField& s, int order) const;

  GridSpec grid_;
  bool dealias_;
  std::shared_ptr<const FftPlans> plans_;
};

}  // namespace lcflow

#endif  // LCFLOW_SPECTRAL_HPP
