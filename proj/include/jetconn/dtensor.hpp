#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "jetconn/grid.hpp"

namespace jetconn {

class Metric;

/// Index slot kinds of a d-tensor. Fiber slots carry a joint (spatial,
/// temporal) index pair that transforms and contracts as a unit:
///   FU mirrors the block of d/dx^i_a   (upper spatial, lower temporal)
///   FC mirrors the block of delta x^i_a (lower spatial, upper temporal)
enum class SlotKind : unsigned char { TU, TL, SU, SL, FU, FC };

constexpr bool is_fiber(SlotKind k) { return k == SlotKind::FU || k == SlotKind::FC; }

const char* slot_name(SlotKind k);

/// Ordered slot list plus the dimensions it ranges over. Fiber slots expand
/// to two adjacent storage axes, spatial first.
struct Signature {
    std::vector<SlotKind> slots;
    Dims dims;

    Signature() = default;
    Signature(std::vector<SlotKind> s, Dims d) : slots(std::move(s)), dims(d) {}

    std::vector<std::size_t> axes() const;
    std::size_t component_count() const;
    Signature extended(SlotKind extra) const;
    /// Storage-axis offset of each slot (fiber slots own two axes).
    std::vector<std::size_t> slot_axis_offsets() const;

    friend bool operator==(const Signature&, const Signature&) = default;
};

/// Dense d-tensor: a signature plus one expression per component. Immutable
/// by convention once built; construction fills everything with zero.
class DTensor {
public:
    explicit DTensor(Signature sig) : sig_(std::move(sig)), grid_(sig_.axes()) {}
    DTensor(Signature sig, ExprGrid grid);

    const Signature& signature() const { return sig_; }
    const ExprGrid& grid() const { return grid_; }
    ExprGrid& grid() { return grid_; }

private:
    Signature sig_;
    ExprGrid grid_;
};

/// All components the constant-zero expression.
DTensor zero_tensor(Signature sig);

/// The canonical Liouville d-tensor: signature [FU], component (i, a) is the
/// fiber variable x^i_a itself.
DTensor liouville(Dims dims);

/// The normalization d-tensor J of a temporal metric h: signature
/// [FU, TL, SL], component ((i,a), b, j) = h_ab * delta^i_j.
DTensor normalization_tensor(const Metric& h);

}  // namespace jetconn
