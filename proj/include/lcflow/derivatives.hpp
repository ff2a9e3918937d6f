#ifndef LCFLOW_DERIVATIVES_HPP
#define LCFLOW_DERIVATIVES_HPP

#include <array>

#include "lcflow/field.hpp"
#include "lcflow/spectral.hpp"
#include "lcflow/tensor.hpp"

namespace lcflow {

/// Spectral first and (optionally) second derivatives of a 2x2 tensor field,
/// laid out to mirror index notation: d[k](i,j) = T_{ij,k}, dd[k][l](i,j) = T_{ij,kl}.
struct TensorDerivatives {
  TensorField value;
  std::array<TensorField, 2> d;
  std::array<std::array<TensorField, 2>, 2> dd;

  static TensorDerivatives of(const QTensorField& q, const Spectral& sp, bool second = true);
  static TensorDerivatives of(const TensorField& t, const Spectral& sp, bool second = true);

 private:
  explicit TensorDerivatives(const GridSpec& g);
};

}  // namespace lcflow

#endif  // LCFLOW_DERIVATIVES_HPP
