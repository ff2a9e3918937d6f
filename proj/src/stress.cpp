#include "lcflow/stress.hpp"

namespace lcflow {

StressField sigma_a(const QTensorField& q, const TensorField& constrained, const Spectral& sp) {
  require_same_grid(q.grid(), constrained.grid(), "sigma_a");
  const GridSpec& g = q.grid();
  StressField out(g);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      ScalarField s(g);
      for (std::size_t p = 0; p < s.size(); ++p) {
        const Mat2 qm = q.assemble(p);
        const Mat2 x = constrained.at(p);
        s[p] = (qm * x)(i, j) - (x * qm)(i, j);
      }
      out(i, j) = sp.filter(s);
    }
  }
  return out;
}

StressField sigma_s(const QTensorField& q, const Coefficients& c, const Spectral& sp) {
  return sigma_s(TensorDerivatives::of(q, sp, false), c, sp);
}

StressField sigma_s(const TensorDerivatives& dq, const Coefficients& c, const Spectral& sp) {
  const GridSpec& g = dq.value.grid();

  // Gram matrix G_mi = Q_kl,m Q_kl,i is its own product stage before the L4 multiplication
  TensorField gram(g);
  for (int m = 0; m < 2; ++m) {
    for (int i = 0; i < 2; ++i) {
      ScalarField s(g);
      for (std::size_t p = 0; p < s.size(); ++p) {
        double acc = 0.0;
        for (int k = 0; k < 2; ++k)
          for (int l = 0; l < 2; ++l) acc += dq.d[m](k, l)[p] * dq.d[i](k, l)[p];
        s[p] = acc;
      }
      gram(m, i) = sp.filter(s);
    }
  }

  StressField out(g);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      ScalarField s(g);
      for (std::size_t p = 0; p < s.size(); ++p) {
        double t1 = 0.0;
        double t2 = 0.0;
        double t3 = 0.0;
        double t4 = 0.0;
        for (int k = 0; k < 2; ++k) {
          for (int l = 0; l < 2; ++l) {
            t1 += dq.d[i](k, l)[p] * dq.d[j](k, l)[p];
            t2 += dq.d[l](k, j)[p] * dq.d[i](k, l)[p];
            t3 += dq.d[l](k, l)[p] * dq.d[i](k, j)[p];
          }
        }
        for (int m = 0; m < 2; ++m) t4 += dq.value(j, m)[p] * gram(m, i)[p];
        s[p] = -2.0 * (c.l1 * t1 + c.l2 * t2 + c.l3 * t3 + c.l4 * t4);
      }
      out(i, j) = sp.filter(s);
    }
  }
  return out;
}

VelocityField stress_divergence(const StressField& s, const Spectral& sp) {
  VelocityField f(s.grid());
  for (int i = 0; i < 2; ++i) {
    SpectralField acc = sp.derivative(sp.forward(s(i, 0)), {1, 0});
    const SpectralField d2 = sp.derivative(sp.forward(s(i, 1)), {0, 1});
    for (std::size_t m = 0; m < acc.size(); ++m) acc.data()[m] += d2.data()[m];
    if (sp.dealias_products()) sp.dealias_in_place(acc);
    f[i] = sp.inverse(acc);
  }
  return f;
}

VelocityField stress_divergence(const StressField& sa, const StressField& ss, const Spectral& sp) {
  return stress_divergence(sa + ss, sp);
}

}  // namespace lcflow
