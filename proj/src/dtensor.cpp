#include "jetconn/dtensor.hpp"

#include <stdexcept>

#include "jetconn/geometry.hpp"

namespace jetconn {

const char* slot_name(SlotKind k) {
    switch (k) {
        case SlotKind::TU: return "TU";
        case SlotKind::TL: return "TL";
        case SlotKind::SU: return "SU";
        case SlotKind::SL: return "SL";
        case SlotKind::FU: return "FU";
        case SlotKind::FC: return "FC";
    }
    return "?";
}

std::vector<std::size_t> Signature::axes() const {
    std::vector<std::size_t> out;
    out.reserve(slots.size() * 2);
    for (SlotKind k : slots) {
        switch (k) {
            case SlotKind::TU:
            case SlotKind::TL: out.push_back(static_cast<std::size_t>(dims.p)); break;
            case SlotKind::SU:
            case SlotKind::SL: out.push_back(static_cast<std::size_t>(dims.n)); break;
            case SlotKind::FU:
            case SlotKind::FC:
                out.push_back(static_cast<std::size_t>(dims.n));
                out.push_back(static_cast<std::size_t>(dims.p));
                break;
        }
    }
    return out;
}

std::size_t Signature::component_count() const {
    std::size_t total = 1;
    for (std::size_t s : axes()) total *= s;
    return total;
}

Signature Signature::extended(SlotKind extra) const {
    Signature out = *this;
    out.slots.push_back(extra);
    return out;
}

std::vector<std::size_t> Signature::slot_axis_offsets() const {
    std::vector<std::size_t> out;
    out.reserve(slots.size());
    std::size_t axis = 0;
    for (SlotKind k : slots) {
        out.push_back(axis);
        axis += is_fiber(k) ? 2 : 1;
    }
    return out;
}

DTensor::DTensor(Signature sig, ExprGrid grid) : sig_(std::move(sig)), grid_(std::move(grid)) {
    if (grid_.shape() != sig_.axes())
        throw std::invalid_argument("d-tensor grid shape does not match signature");
}

DTensor zero_tensor(Signature sig) { return DTensor(std::move(sig)); }

DTensor liouville(Dims dims) {
    DTensor out{Signature({SlotKind::FU}, dims)};
    for (int i = 0; i < dims.n; ++i)
        for (int a = 0; a < dims.p; ++a)
            out.grid()(i, a) = Expr::variable(Coord::fiber(i, a));
    return out;
}

DTensor normalization_tensor(const Metric& h) {
    const Dims dims = h.dims();
    DTensor out{Signature({SlotKind::FU, SlotKind::TL, SlotKind::SL}, dims)};
    for (int i = 0; i < dims.n; ++i)
        for (int a = 0; a < dims.p; ++a)
            for (int b = 0; b < dims.p; ++b)
                out.grid()(i, a, b, i) = h.g()(a, b);
    return out;
}

}  // namespace jetconn
