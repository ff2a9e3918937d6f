#include "lcflow/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace lcflow {

struct FftPlans {
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;

  FftPlans() = default;
  FftPlans(const FftPlans&) = delete;
  FftPlans& operator=(const FftPlans&) = delete;
  ~FftPlans() {
    if (r2c) fftw_destroy_plan(r2c);
    if (c2r) fftw_destroy_plan(c2r);
  }
};

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// FFTW planning is not thread-safe; execution through the new-array API is.
std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

std::shared_ptr<const FftPlans> plans_for(int n) {
  static std::map<int, std::shared_ptr<const FftPlans>> cache;
  std::lock_guard<std::mutex> lock(plan_mutex());
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  auto plans = std::make_shared<FftPlans>();
  const std::size_t nreal = static_cast<std::size_t>(n) * n;
  const std::size_t ncplx = static_cast<std::size_t>(n) * (n / 2 + 1);
  double* r = fftw_alloc_real(nreal);
  fftw_complex* c = fftw_alloc_complex(ncplx);
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  plans->r2c = fftw_plan_dft_r2c_2d(n, n, r, c, flags);
  plans->c2r = fftw_plan_dft_c2r_2d(n, n, c, r, flags);
  fftw_free(r);
  fftw_free(c);
  if (!plans->r2c || !plans->c2r) throw std::runtime_error("FFTW planning failed");
  cache.emplace(n, plans);
  return plans;
}

}  // namespace

Spectral::Spectral(GridSpec grid, bool dealias_products)
    : grid_(grid), dealias_(dealias_products), plans_(plans_for(grid.n())) {}

double Spectral::odd_wavenumber1(int i) const { return nyquist1(i) ? 0.0 : kTwoPi * freq1(i); }

double Spectral::odd_wavenumber2(int j) const { return nyquist2(j) ? 0.0 : kTwoPi * freq2(j); }

double Spectral::k_squared(int i, int j) const {
  const double k1 = kTwoPi * freq1(i);
  const double k2 = kTwoPi * freq2(j);
  return k1 * k1 + k2 * k2;
}

SpectralField Spectral::forward(const ScalarField& f) const {
  require_same_grid(grid_, f.grid(), "Spectral::forward");
  SpectralField s(grid_);
  fftw_execute_dft_r2c(plans_->r2c, const_cast<double*>(f.values().data()),
                       reinterpret_cast<fftw_complex*>(s.data()));
  const double scale = 1.0 / static_cast<double>(grid_.size());
  for (std::size_t k = 0; k < s.size(); ++k) s.data()[k] *= scale;
  return s;
}

ScalarField Spectral::inverse(const SpectralField& s) const {
  require_same_grid(grid_, s.grid(), "Spectral::inverse");
  SpectralField scratch = s;  // c2r overwrites its input
  ScalarField f(grid_);
  fftw_execute_dft_c2r(plans_->c2r, reinterpret_cast<fftw_complex*>(scratch.data()),
                       f.values().data());
  return f;
}

std::complex<double> Spectral::derivative_multiplier(int i, int j, MultiIndex alpha) const {
  if (alpha.a1 < 0 || alpha.a2 < 0 || alpha.a1 + alpha.a2 > 3) {
    throw std::invalid_argument("derivative order must satisfy a1 + a2 <= 3");
  }
  auto factor = [](double k_full, double k_odd, int p) {
    // (i k)^p with the Nyquist wavenumber dropped for odd p
    const double k = (p % 2 == 1) ? k_odd : k_full;
    std::complex<double> r{1.0, 0.0};
    for (int m = 0; m < p; ++m) r *= std::complex<double>(0.0, k);
    return r;
  };
  return factor(kTwoPi * freq1(i), odd_wavenumber1(i), alpha.a1) *
         factor(kTwoPi * freq2(j), odd_wavenumber2(j), alpha.a2);
}

SpectralField Spectral::derivative(const SpectralField& s, MultiIndex alpha) const {
  SpectralField d(grid_);
  for (int i = 0; i < s.rows(); ++i)
    for (int j = 0; j < s.cols(); ++j) d(i, j) = derivative_multiplier(i, j, alpha) * s(i, j);
  return d;
}

ScalarField Spectral::derivative(const ScalarField& f, MultiIndex alpha) const {
  if (alpha.a1 == 0 && alpha.a2 == 0) return f;
  return inverse(derivative(forward(f), alpha));
}

std::array<ScalarField, 2> Spectral::gradient(const ScalarField& f) const {
  const SpectralField s = forward(f);
  return {inverse(derivative(s, {1, 0})), inverse(derivative(s, {0, 1}))};
}

ScalarField Spectral::laplacian(const ScalarField& f) const {
  SpectralField s = forward(f);
  for (int i = 0; i < s.rows(); ++i)
    for (int j = 0; j < s.cols(); ++j) s(i, j) *= -k_squared(i, j);
  return inverse(s);
}

ScalarField Spectral::divergence(const VelocityField& v) const {
  SpectralField d = derivative(forward(v.u1), {1, 0});
  const SpectralField d2 = derivative(forward(v.u2), {0, 1});
  for (std::size_t k = 0; k < d.size(); ++k) d.data()[k] += d2.data()[k];
  return inverse(d);
}

LerayResult Spectral::leray_project(const VelocityField& v) const {
  require_same_grid(grid_, v.grid(), "leray_project");
  SpectralField a = forward(v.u1);
  SpectralField b = forward(v.u2);
  SpectralField ga(grid_);
  SpectralField gb(grid_);
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) {
      const double k1 = odd_wavenumber1(i);
      const double k2 = odd_wavenumber2(j);
      const double kk = k1 * k1 + k2 * k2;
      if (kk == 0.0) continue;  // mean flow and pure Nyquist modes carry no divergence
      const std::complex<double> kdotv = (k1 * a(i, j) + k2 * b(i, j)) / kk;
      ga(i, j) = k1 * kdotv;
      gb(i, j) = k2 * kdotv;
      a(i, j) -= ga(i, j);
      b(i, j) -= gb(i, j);
    }
  }
  return {VelocityField(inverse(a), inverse(b)), VelocityField(inverse(ga), inverse(gb))};
}

double Spectral::max_divergence_mode(const VelocityField& v) const {
  const SpectralField a = forward(v.u1);
  const SpectralField b = forward(v.u2);
  double m = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      m = std::max(m, std::abs(odd_wavenumber1(i) * a(i, j) + odd_wavenumber2(j) * b(i, j)));
  return m;
}

ScalarField Spectral::helmholtz_inverse(const ScalarField& f) const {
  SpectralField s = forward(f);
  for (int i = 0; i < s.rows(); ++i)
    for (int j = 0; j < s.cols(); ++j) s(i, j) /= 1.0 + k_squared(i, j);
  return inverse(s);
}

ScalarField Spectral::helmholtz(const ScalarField& f) const {
  SpectralField s = forward(f);
  for (int i = 0; i < s.rows(); ++i)
    for (int j = 0; j < s.cols(); ++j) s(i, j) *= 1.0 + k_squared(i, j);
  return inverse(s);
}

bool Spectral::retained(int i, int j) const {
  const int m = std::max(std::abs(freq1(i)), std::abs(freq2(j)));
  return 3 * m <= grid_.n();
}

void Spectral::dealias_in_place(SpectralField& s) const {
  for (int i = 0; i < s.rows(); ++i)
    for (int j = 0; j < s.cols(); ++j)
      if (!retained(i, j)) s(i, j) = 0.0;
}

ScalarField Spectral::dealias(const ScalarField& f) const {
  SpectralField s = forward(f);
  dealias_in_place(s);
  return inverse(s);
}

ScalarField Spectral::filter(const ScalarField& f) const { return dealias_ ? dealias(f) : f; }

ScalarField Spectral::mul(const ScalarField& a, const ScalarField& b) const {
  return filter(pointwise_product(a, b));
}

double Spectral::spectral_l2_squared(const ScalarField& f) const { return sobolev_squared(forward(f), 0); }

double Spectral::sobolev_squared(const SpectralField& s, int order) const {
  double sum = 0.0;
  for (int i = 0; i < s.rows(); ++i) {
    for (int j = 0; j < s.cols(); ++j) {
      double weight = 0.0;
      for (int l = 0; l <= order; ++l)
        for (int a1 = 0; a1 <= l; ++a1) weight += std::norm(derivative_multiplier(i, j, {a1, l - a1}));
      sum += parseval_weight(j) * weight * std::norm(s(i, j));
    }
  }
  return sum;
}

double Spectral::norm(const ScalarField& f, NormKind kind) const {
  switch (kind) {
    case NormKind::L2:
      return std::sqrt(sobolev_squared(forward(f), 0));
    case NormKind::H1:
      return std::sqrt(sobolev_squared(forward(f), 1));
    case NormKind::H2:
      return std::sqrt(sobolev_squared(forward(f), 2));
    case NormKind::H3:
      return std::sqrt(sobolev_squared(forward(f), 3));
    case NormKind::L4: {
      double s = 0.0;
      for (double v : f.values()) s += v * v * v * v;
      return std::pow(s / static_cast<double>(f.size()), 0.25);
    }
    case NormKind::Linf:
      return max_abs(f);
  }
  throw std::invalid_argument("unknown norm kind");
}

namespace {

template <std::size_t N>
double combine(const Spectral& sp, const std::array<const ScalarField*, N>& comps,
               const std::array<double, N>& mult, NormKind kind) {
  if (kind == NormKind::Linf) {
    double m = 0.0;
    const std::size_t size = comps[0]->size();
    for (std::size_t k = 0; k < size; ++k) {
      double s = 0.0;
      for (std::size_t c = 0; c < N; ++c) s += mult[c] * (*comps[c])[k] * (*comps[c])[k];
      m = std::max(m, std::sqrt(s));
    }
    return m;
  }
  if (kind == NormKind::L4) {
    double acc = 0.0;
    const std::size_t size = comps[0]->size();
    for (std::size_t k = 0; k < size; ++k) {
      double s = 0.0;
      for (std::size_t c = 0; c < N; ++c) s += mult[c] * (*comps[c])[k] * (*comps[c])[k];
      acc += s * s;
    }
    return std::pow(acc / static_cast<double>(size), 0.25);
  }
  double s = 0.0;
  for (std::size_t c = 0; c < N; ++c) {
    const double v = sp.norm(*comps[c], kind);
    s += mult[c] * v * v;
  }
  return std::sqrt(s);
}

}  // namespace

double Spectral::norm(const QTensorField& q, NormKind kind) const {
  return combine<2>(*this, {&q.q1, &q.q2}, {2.0, 2.0}, kind);
}

double Spectral::norm(const VelocityField& v, NormKind kind) const {
  return combine<2>(*this, {&v.u1, &v.u2}, {1.0, 1.0}, kind);
}

double Spectral::norm(const TensorField& t, NormKind kind) const {
  return combine<4>(*this, {&t(0, 0), &t(0, 1), &t(1, 0), &t(1, 1)}, {1.0, 1.0, 1.0, 1.0}, kind);
}

}  // namespace lcflow
