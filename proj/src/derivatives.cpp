#include "lcflow/derivatives.hpp"

namespace lcflow {

namespace {

MultiIndex first(int k) { return k == 0 ? MultiIndex{1, 0} : MultiIndex{0, 1}; }

MultiIndex second(int k, int l) {
  MultiIndex m{0, 0};
  (k == 0 ? m.a1 : m.a2) += 1;
  (l == 0 ? m.a1 : m.a2) += 1;
  return m;
}

}  // namespace

TensorDerivatives::TensorDerivatives(const GridSpec& g)
    : value(g),
      d{TensorField(g), TensorField(g)},
      dd{{{TensorField(g), TensorField(g)}, {TensorField(g), TensorField(g)}}} {}

TensorDerivatives TensorDerivatives::of(const QTensorField& q, const Spectral& sp, bool with_second) {
  TensorDerivatives r(q.grid());
  r.value = q.to_tensor();
  const SpectralField s1 = sp.forward(q.q1);
  const SpectralField s2 = sp.forward(q.q2);

  auto assign = [](TensorField& t, const ScalarField& a, const ScalarField& b) {
    t(0, 0) = a;
    t(0, 1) = b;
    t(1, 0) = b;
    t(1, 1) = -a;
  };

  for (int k = 0; k < 2; ++k) {
    assign(r.d[k], sp.inverse(sp.derivative(s1, first(k))), sp.inverse(sp.derivative(s2, first(k))));
  }
  if (with_second) {
    for (int k = 0; k < 2; ++k) {
      for (int l = k; l < 2; ++l) {
        assign(r.dd[k][l], sp.inverse(sp.derivative(s1, second(k, l))),
               sp.inverse(sp.derivative(s2, second(k, l))));
        if (l != k) r.dd[l][k] = r.dd[k][l];
      }
    }
  }
  return r;
}

TensorDerivatives TensorDerivatives::of(const TensorField& t, const Spectral& sp, bool with_second) {
  TensorDerivatives r(t.grid());
  r.value = t;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const SpectralField s = sp.forward(t(i, j));
      for (int k = 0; k < 2; ++k) r.d[k](i, j) = sp.inverse(sp.derivative(s, first(k)));
      if (!with_second) continue;
      for (int k = 0; k < 2; ++k) {
        for (int l = k; l < 2; ++l) {
          r.dd[k][l](i, j) = sp.inverse(sp.derivative(s, second(k, l)));
          if (l != k) r.dd[l][k](i, j) = r.dd[k][l](i, j);
        }
      }
    }
  }
  return r;
}

}  // namespace lcflow
