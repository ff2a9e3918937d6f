#ifndef LCFLOW_STRESS_HPP
#define LCFLOW_STRESS_HPP

#include "lcflow/derivatives.hpp"
#include "lcflow/field.hpp"
#include "lcflow/spectral.hpp"
#include "lcflow/tensor.hpp"

namespace lcflow {

/// General 2x2 stress; components need not be symmetric.
using StressField = TensorField;

/// Anti-symmetric viscous stress Q X - X Q, X the constrained molecular field.
StressField sigma_a(const QTensorField& q, const TensorField& constrained, const Spectral& sp);

/// Distortion stress
///   -2 (L1 Q_kl,i Q_kl,j + L2 Q_kj,l Q_kl,i + L3 Q_kl,l Q_kj,i + L4 Q_jm Q_kl,m Q_kl,i).
StressField sigma_s(const QTensorField& q, const Coefficients& c, const Spectral& sp);
StressField sigma_s(const TensorDerivatives& dq, const Coefficients& c, const Spectral& sp);

/// (div sigma)_i = d_j sigma_ij for sigma = sa + ss.
VelocityField stress_divergence(const StressField& sa, const StressField& ss, const Spectral& sp);
VelocityField stress_divergence(const StressField& s, const Spectral& sp);

}  // namespace lcflow

#endif  // LCFLOW_STRESS_HPP
