#ifndef LCFLOW_ENERGETICS_HPP
#define LCFLOW_ENERGETICS_HPP

#include "lcflow/derivatives.hpp"
#include "lcflow/field.hpp"
#include "lcflow/spectral.hpp"
#include "lcflow/tensor.hpp"

namespace lcflow {

// Landau-de Gennes free energy
//
//   F_bulk    = a/2 tr(Q^2) - b/3 tr(Q^3) + c/4 tr(Q^2)^2
//   F_elastic = L1 Q_ij,k Q_ij,k + L2 Q_ik,j Q_ij,k + L3 Q_ij,j Q_ik,k + L4 Q_lk Q_ij,k Q_ij,l
//
// Energy densities are pointwise (no spectral filtering); the fields that drive
// the dynamics filter every nonlinear product when the Spectral context asks for it.

/// Bulk density for traceless Q. The b-term is structurally zero.
ScalarField bulk_energy_density(const QTensorField& q, const Coefficients& c);
/// Bulk density for a general symmetric tensor field, b-term included.
ScalarField bulk_energy_density(const TensorField& t, const Coefficients& c);

ScalarField elastic_energy_density(const QTensorField& q, const Coefficients& c, const Spectral& sp);
/// Elastic density for a general (symmetric) tensor field; used by the variational oracle.
ScalarField elastic_energy_density(const TensorField& t, const Coefficients& c, const Spectral& sp);

/// Free energy E(Q) = integral of bulk + elastic densities.
double total_free_energy(const QTensorField& q, const Coefficients& c, const Spectral& sp);
double total_free_energy(const TensorField& t, const Coefficients& c, const Spectral& sp);

/// Molecular field H = -dE/dQ with no constraint imposed. Not symmetric in general.
TensorField molecular_field_h(const QTensorField& q, const Coefficients& c, const Spectral& sp);

struct LagrangeMultipliers {
  ScalarField lambda;     ///< trace multiplier
  TensorField mu_antisym;  ///< mu - mu^T
};

LagrangeMultipliers lagrange_multipliers(const QTensorField& q, const Coefficients& c, const Spectral& sp);

/// H + lambda I + mu - mu^T evaluated from its closed form:
///   zeta Lap Q + 2 L4 (Q_ij,l Q_lk)_,k - L4 Q_kl,i Q_kl,j + L4/2 |grad Q|^2 I - a Q - c tr(Q^2) Q.
/// Independent of b.
TensorField constrained_field(const QTensorField& q, const Coefficients& c, const Spectral& sp);

/// Everything in constrained_field except zeta Lap Q (the explicit part of the Q-update).
TensorField constrained_field_remainder(const TensorDerivatives& dq, const Coefficients& c,
                                        const Spectral& sp);

/// c tr(Q^2) Q with both product stages filtered.
TensorField cubic_bulk_term(const QTensorField& q, const Spectral& sp);

struct MolecularFieldBundle {
  TensorField h;
  ScalarField lambda_field;
  TensorField mu_antisym;
  TensorField constrained;
};

MolecularFieldBundle molecular_field_bundle(const QTensorField& q, const Coefficients& c, const Spectral& sp);

/// Energy bookkeeping for one state. Dissipation entries are rates.
struct EnergyLedger {
  double kinetic = 0.0;
  double bulk = 0.0;
  double elastic = 0.0;
  double free = 0.0;
  double total = 0.0;
  double viscous_diss = 0.0;
  double rotational_diss = 0.0;
  double reg_diss = 0.0;

  double dissipation() const { return viscous_diss + rotational_diss + reg_diss; }
};

EnergyLedger energy_ledger(const VelocityField& u, const QTensorField& q, const Coefficients& c,
                           const Spectral& sp);

/// Same as energy_ledger but reuses an already computed constrained field.
EnergyLedger energy_ledger(const VelocityField& u, const QTensorField& q, const TensorField& constrained,
                           const Coefficients& c, const Spectral& sp);

}  // namespace lcflow

#endif  // LCFLOW_ENERGETICS_HPP
