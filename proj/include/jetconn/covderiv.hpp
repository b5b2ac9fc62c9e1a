#pragma once

#include "jetconn/dtensor.hpp"
#include "jetconn/geometry.hpp"

namespace jetconn {

/// T-horizontal covariant derivative D -> D_{/e}. Appends a TL slot; the
/// leading term is the adapted delta/delta t^e derivative of each component,
/// followed by one contraction per slot: +Gbar/+G/+G-block for upper slots,
/// -Gbar/-G/-G-block for lower ones (FC contracts the block transposed).
DTensor cd_temporal(const DTensor& D, const GammaConnection& conn);

/// M-horizontal covariant derivative D -> D_{|p}. Appends an SL slot and
/// uses delta/delta x^p with the Lbar/L/L-block families.
DTensor cd_spatial(const DTensor& D, const GammaConnection& conn);

/// Vertical covariant derivative D -> D|^{(e)}_{(p)}. Appends an FC slot and
/// uses the plain fiber partial with the Cbar/C/C-block families.
DTensor cd_vertical(const DTensor& D, const GammaConnection& conn);

}  // namespace jetconn
