#include "lcflow/energetics.hpp"

#include <cmath>

namespace lcflow {

namespace {

QTensorField as_qtensor(const TensorField& t) { return QTensorField(t(0, 0), t(0, 1)); }

double kronecker(int i, int j) { return i == j ? 1.0 : 0.0; }

// sum over grid points of the elastic density, written directly in index form
ScalarField elastic_density_from(const TensorDerivatives& dt, const Coefficients& c) {
  const TensorField& t = dt.value;
  ScalarField out(t.grid());
  for (std::size_t p = 0; p < out.size(); ++p) {
    double e1 = 0.0;
    double e2 = 0.0;
    double e3 = 0.0;
    double e4 = 0.0;
    for (int i = 0; i < 2; ++i) {
      double div_i = 0.0;
      for (int j = 0; j < 2; ++j) {
        div_i += dt.d[j](i, j)[p];
        for (int k = 0; k < 2; ++k) {
          const double dk_ij = dt.d[k](i, j)[p];
          e1 += dk_ij * dk_ij;
          e2 += dt.d[j](i, k)[p] * dk_ij;
          for (int l = 0; l < 2; ++l) e4 += t(l, k)[p] * dk_ij * dt.d[l](i, j)[p];
        }
      }
      e3 += div_i * div_i;
    }
    out[p] = c.l1 * e1 + c.l2 * e2 + c.l3 * e3 + c.l4 * e4;
  }
  return out;
}

// sum_{k,l} Q_kl,i Q_kl,j at one point
double gradient_gram(const TensorDerivatives& dq, int i, int j, std::size_t p) {
  double s = 0.0;
  for (int k = 0; k < 2; ++k)
    for (int l = 0; l < 2; ++l) s += dq.d[i](k, l)[p] * dq.d[j](k, l)[p];
  return s;
}

}  // namespace

ScalarField bulk_energy_density(const QTensorField& q, const Coefficients& c) {
  ScalarField out(q.grid());
  for (std::size_t p = 0; p < out.size(); ++p) {
    const double tr2 = 2.0 * (q.q1[p] * q.q1[p] + q.q2[p] * q.q2[p]);
    out[p] = 0.5 * c.a * tr2 + 0.25 * c.c * tr2 * tr2;
  }
  return out;
}

ScalarField bulk_energy_density(const TensorField& t, const Coefficients& c) {
  ScalarField out(t.grid());
  for (std::size_t p = 0; p < out.size(); ++p) {
    const Mat2 m = t.at(p);
    const Mat2 m2 = m * m;
    const double tr2 = trace(m2);
    const double tr3 = trace(m2 * m);
    out[p] = 0.5 * c.a * tr2 - c.b / 3.0 * tr3 + 0.25 * c.c * tr2 * tr2;
  }
  return out;
}

ScalarField elastic_energy_density(const QTensorField& q, const Coefficients& c, const Spectral& sp) {
  return elastic_density_from(TensorDerivatives::of(q, sp, false), c);
}

ScalarField elastic_energy_density(const TensorField& t, const Coefficients& c, const Spectral& sp) {
  return elastic_density_from(TensorDerivatives::of(t, sp, false), c);
}

double total_free_energy(const QTensorField& q, const Coefficients& c, const Spectral& sp) {
  return integrate(bulk_energy_density(q, c)) + integrate(elastic_energy_density(q, c, sp));
}

double total_free_energy(const TensorField& t, const Coefficients& c, const Spectral& sp) {
  return integrate(bulk_energy_density(t, c)) + integrate(elastic_energy_density(t, c, sp));
}

TensorField cubic_bulk_term(const QTensorField& q, const Spectral& sp) {
  const ScalarField tr2 = sp.filter(q.trace_square());
  const ScalarField a = sp.mul(tr2, q.q1);
  const ScalarField b = sp.mul(tr2, q.q2);
  return QTensorField(a, b).to_tensor();
}

TensorField molecular_field_h(const QTensorField& q, const Coefficients& c, const Spectral& sp) {
  const TensorDerivatives dq = TensorDerivatives::of(q, sp, true);
  const GridSpec& g = q.grid();
  const TensorField cubic = cubic_bulk_term(q, sp);
  const double l23 = c.l2 + c.l3;

  TensorField h(g);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      ScalarField quad(g);
      ScalarField lin(g);
      for (std::size_t p = 0; p < quad.size(); ++p) {
        double s = 0.0;
        double div_grad = 0.0;  // Q_ik,kj
        for (int l = 0; l < 2; ++l) {
          for (int k = 0; k < 2; ++k) {
            s += 2.0 * c.l4 * dq.d[l](i, j)[p] * dq.d[k](l, k)[p];
            s += 2.0 * c.l4 * dq.dd[l][k](i, j)[p] * dq.value(l, k)[p];
          }
          div_grad += dq.dd[l][j](i, l)[p];
        }
        s -= c.l4 * gradient_gram(dq, i, j, p);
        double q2_ij = 0.0;
        for (int k = 0; k < 2; ++k) q2_ij += dq.value(j, k)[p] * dq.value(k, i)[p];
        s += c.b * q2_ij;
        quad[p] = s;
        const double lap = dq.dd[0][0](i, j)[p] + dq.dd[1][1](i, j)[p];
        lin[p] = 2.0 * c.l1 * lap + 2.0 * l23 * div_grad - c.a * dq.value(i, j)[p];
      }
      h(i, j) = lin + sp.filter(quad);
      axpy(-c.c, cubic(i, j), h(i, j));
    }
  }
  return h;
}

LagrangeMultipliers lagrange_multipliers(const QTensorField& q, const Coefficients& c, const Spectral& sp) {
  const TensorDerivatives dq = TensorDerivatives::of(q, sp, true);
  const GridSpec& g = q.grid();
  const double l23 = c.l2 + c.l3;

  ScalarField quad(g);
  ScalarField lin(g);
  for (std::size_t p = 0; p < quad.size(); ++p) {
    const double tr2 = 2.0 * (q.q1[p] * q.q1[p] + q.q2[p] * q.q2[p]);
    const double grad2 = gradient_gram(dq, 0, 0, p) + gradient_gram(dq, 1, 1, p);
    quad[p] = -0.5 * c.b * tr2 + 0.5 * c.l4 * grad2;
    double ddq = 0.0;  // Q_lk,lk
    for (int l = 0; l < 2; ++l)
      for (int k = 0; k < 2; ++k) ddq += dq.dd[l][k](l, k)[p];
    lin[p] = -l23 * ddq;
  }

  TensorField mu(g);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      ScalarField& m = mu(i, j);
      for (std::size_t p = 0; p < m.size(); ++p) {
        double a = 0.0;  // d_i d_k Q_jk
        double b = 0.0;  // d_j d_k Q_ik
        for (int k = 0; k < 2; ++k) {
          a += dq.dd[i][k](j, k)[p];
          b += dq.dd[j][k](i, k)[p];
        }
        m[p] = l23 * (a - b);
      }
    }
  }
  return {lin + sp.filter(quad), std::move(mu)};
}

TensorField constrained_field_remainder(const TensorDerivatives& dq, const Coefficients& c,
                                        const Spectral& sp) {
  const GridSpec& g = dq.value.grid();
  const TensorField cubic = cubic_bulk_term(as_qtensor(dq.value), sp);

  ScalarField grad2(g);
  for (std::size_t p = 0; p < grad2.size(); ++p)
    grad2[p] = gradient_gram(dq, 0, 0, p) + gradient_gram(dq, 1, 1, p);

  TensorField r(g);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      // 2 L4 d_k (Q_ij,l Q_lk): form the flux, filter it, differentiate
      SpectralField acc(g);
      for (int k = 0; k < 2; ++k) {
        ScalarField flux(g);
        for (std::size_t p = 0; p < flux.size(); ++p) {
          double s = 0.0;
          for (int l = 0; l < 2; ++l) s += dq.d[l](i, j)[p] * dq.value(l, k)[p];
          flux[p] = s;
        }
        SpectralField fh = sp.forward(flux);
        if (sp.dealias_products()) sp.dealias_in_place(fh);
        const SpectralField dfh = sp.derivative(fh, k == 0 ? MultiIndex{1, 0} : MultiIndex{0, 1});
        for (std::size_t m = 0; m < acc.size(); ++m) acc.data()[m] += 2.0 * c.l4 * dfh.data()[m];
      }
      ScalarField quad(g);
      for (std::size_t p = 0; p < quad.size(); ++p)
        quad[p] = -c.l4 * gradient_gram(dq, i, j, p) + 0.5 * c.l4 * grad2[p] * kronecker(i, j);

      ScalarField out = sp.inverse(acc);
      out += sp.filter(quad);
      axpy(-c.a, dq.value(i, j), out);
      axpy(-c.c, cubic(i, j), out);
      r(i, j) = std::move(out);
    }
  }
  return r;
}

TensorField constrained_field(const QTensorField& q, const Coefficients& c, const Spectral& sp) {
  const TensorDerivatives dq = TensorDerivatives::of(q, sp, true);
  const double zeta = 2.0 * c.l1 + c.l2 + c.l3;
  TensorField x = constrained_field_remainder(dq, c, sp);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      axpy(zeta, dq.dd[0][0](i, j), x(i, j));
      axpy(zeta, dq.dd[1][1](i, j), x(i, j));
    }
  return x;
}

MolecularFieldBundle molecular_field_bundle(const QTensorField& q, const Coefficients& c, const Spectral& sp) {
  LagrangeMultipliers lm = lagrange_multipliers(q, c, sp);
  return {molecular_field_h(q, c, sp), std::move(lm.lambda), std::move(lm.mu_antisym),
          constrained_field(q, c, sp)};
}

EnergyLedger energy_ledger(const VelocityField& u, const QTensorField& q, const Coefficients& c,
                           const Spectral& sp) {
  return energy_ledger(u, q, constrained_field(q, c, sp), c, sp);
}

EnergyLedger energy_ledger(const VelocityField& u, const QTensorField& q, const TensorField& constrained,
                           const Coefficients& c, const Spectral& sp) {
  EnergyLedger e;
  ScalarField ke(u.grid());
  for (std::size_t p = 0; p < ke.size(); ++p) ke[p] = 0.5 * (u.u1[p] * u.u1[p] + u.u2[p] * u.u2[p]);
  e.kinetic = integrate(ke);
  e.bulk = integrate(bulk_energy_density(q, c));
  e.elastic = integrate(elastic_energy_density(q, c, sp));
  e.free = e.bulk + e.elastic;
  e.total = e.kinetic + e.free;

  double grad_sq = 0.0;
  double reg_sq = 0.0;
  for (int comp = 0; comp < 2; ++comp) {
    const SpectralField s = sp.forward(u[comp]);
    for (int i = 0; i < s.rows(); ++i) {
      for (int j = 0; j < s.cols(); ++j) {
        const double w = sp.parseval_weight(j) * std::norm(s(i, j));
        const double k1 = sp.odd_wavenumber1(i);
        const double k2 = sp.odd_wavenumber2(j);
        grad_sq += w * (k1 * k1 + k2 * k2);
        if (c.delta > 0.0) reg_sq += w * std::pow(sp.k_squared(i, j), c.k_reg);
      }
    }
  }
  e.viscous_diss = c.nu * grad_sq;
  e.rotational_diss = pairing(constrained, constrained);
  e.reg_diss = c.delta * reg_sq;
  return e;
}

}  // namespace lcflow
