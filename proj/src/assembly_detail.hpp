#pragma once

// internal per-dimension assembly entry points

#include "pcband/operators.hpp"

namespace pcband {
namespace detail {

LayerOperatorMatrix assemble_single_layer_2d(const BoundaryDiscretization& disc,
                                             const std::optional<QuasiMomentum>& alpha,
                                             cplx k, const LameMaterial& mat,
                                             const LatticeSumConfig& cfg);
LayerOperatorMatrix assemble_neumann_poincare_2d(const BoundaryDiscretization& disc,
                                                 const std::optional<QuasiMomentum>& alpha,
                                                 cplx k, const LameMaterial& mat,
                                                 const LatticeSumConfig& cfg);
LayerOperatorMatrix assemble_single_layer_3d(const BoundaryDiscretization& disc,
                                             const std::optional<QuasiMomentum>& alpha,
                                             cplx k, const LameMaterial& mat,
                                             const LatticeSumConfig& cfg);
LayerOperatorMatrix assemble_neumann_poincare_3d(const BoundaryDiscretization& disc,
                                                 const std::optional<QuasiMomentum>& alpha,
                                                 cplx k, const LameMaterial& mat,
                                                 const LatticeSumConfig& cfg);

}  // namespace detail
}  // namespace pcband
