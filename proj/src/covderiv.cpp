#include "jetconn/covderiv.hpp"

#include <algorithm>
#include <stdexcept>

namespace jetconn {

namespace {

enum class CdKind { Temporal, Spatial, Vertical };

DTensor cd_generic(const DTensor& D, const GammaConnection& conn, CdKind kind) {
    const Dims dims = conn.dims;
    if (D.signature().dims != dims)
        throw std::invalid_argument("covariant derivative: dimension mismatch");

    const SlotKind extra = kind == CdKind::Temporal ? SlotKind::TL
                           : kind == CdKind::Spatial ? SlotKind::SL
                                                     : SlotKind::FC;
    DTensor out(D.signature().extended(extra));

    const std::vector<std::size_t> in_axes = D.signature().axes();
    const std::vector<std::size_t> offsets = D.signature().slot_axis_offsets();
    const std::vector<SlotKind>& slots = D.signature().slots;
    const std::size_t in_rank = in_axes.size();
    const std::size_t p = static_cast<std::size_t>(dims.p);
    const std::size_t n = static_cast<std::size_t>(dims.n);

    std::vector<std::size_t> tmp(in_rank);
    for_each_index(out.grid().shape(), [&](std::span<const std::size_t> out_idx) {
        const std::span<const std::size_t> in_idx = out_idx.first(in_rank);
        const std::size_t dir0 = out_idx[in_rank];
        const std::size_t dir1 = kind == CdKind::Vertical ? out_idx[in_rank + 1] : 0;

        const Expr& comp = D.grid().at(in_idx);
        Expr result;
        switch (kind) {
            case CdKind::Temporal:
                result = adapted_derivative(conn.nc, comp, AdaptedDir::DeltaT,
                                            static_cast<int>(dir0));
                break;
            case CdKind::Spatial:
                result = adapted_derivative(conn.nc, comp, AdaptedDir::DeltaX,
                                            static_cast<int>(dir0));
                break;
            case CdKind::Vertical:
                result = differentiate(comp, Coord::fiber(static_cast<int>(dir0),
                                                          static_cast<int>(dir1)));
                break;
        }

        auto bar = [&](std::size_t up, std::size_t lo) -> const Expr& {
            switch (kind) {
                case CdKind::Temporal: return conn.Gbar(up, lo, dir0);
                case CdKind::Spatial: return conn.Lbar(up, lo, dir0);
                default: return conn.Cbar(up, lo, dir0, dir1);
            }
        };
        auto vec = [&](std::size_t up, std::size_t lo) -> const Expr& {
            switch (kind) {
                case CdKind::Temporal: return conn.Gs(up, lo, dir0);
                case CdKind::Spatial: return conn.Ls(up, lo, dir0);
                default: return conn.Cs(up, lo, dir0, dir1);
            }
        };
        auto block = [&](std::size_t ko, std::size_t ao, std::size_t ki,
                         std::size_t ai) -> const Expr& {
            switch (kind) {
                case CdKind::Temporal: return conn.Gblock(ko, ao, ki, ai, dir0);
                case CdKind::Spatial: return conn.Lblock(ko, ao, ki, ai, dir0);
                default: return conn.Cblock(ko, ao, ki, ai, dir0, dir1);
            }
        };

        std::copy(in_idx.begin(), in_idx.end(), tmp.begin());
        for (std::size_t s = 0; s < slots.size(); ++s) {
            const std::size_t o = offsets[s];
            switch (slots[s]) {
                case SlotKind::TU: {
                    const std::size_t a = in_idx[o];
                    for (std::size_t mu = 0; mu < p; ++mu) {
                        tmp[o] = mu;
                        result += D.grid().at(tmp) * bar(a, mu);
                    }
                    tmp[o] = a;
                    break;
                }
                case SlotKind::TL: {
                    const std::size_t g = in_idx[o];
                    for (std::size_t mu = 0; mu < p; ++mu) {
                        tmp[o] = mu;
                        result -= D.grid().at(tmp) * bar(mu, g);
                    }
                    tmp[o] = g;
                    break;
                }
                case SlotKind::SU: {
                    const std::size_t i = in_idx[o];
                    for (std::size_t m = 0; m < n; ++m) {
                        tmp[o] = m;
                        result += D.grid().at(tmp) * vec(i, m);
                    }
                    tmp[o] = i;
                    break;
                }
                case SlotKind::SL: {
                    const std::size_t k = in_idx[o];
                    for (std::size_t m = 0; m < n; ++m) {
                        tmp[o] = m;
                        result -= D.grid().at(tmp) * vec(m, k);
                    }
                    tmp[o] = k;
                    break;
                }
                case SlotKind::FU: {
                    const std::size_t j = in_idx[o];
                    const std::size_t b = in_idx[o + 1];
                    for (std::size_t m = 0; m < n; ++m) {
                        for (std::size_t mu = 0; mu < p; ++mu) {
                            tmp[o] = m;
                            tmp[o + 1] = mu;
                            result += D.grid().at(tmp) * block(j, b, m, mu);
                        }
                    }
                    tmp[o] = j;
                    tmp[o + 1] = b;
                    break;
                }
                case SlotKind::FC: {
                    const std::size_t l = in_idx[o];
                    const std::size_t dd = in_idx[o + 1];
                    for (std::size_t m = 0; m < n; ++m) {
                        for (std::size_t mu = 0; mu < p; ++mu) {
                            tmp[o] = m;
                            tmp[o + 1] = mu;
                            result -= D.grid().at(tmp) * block(m, mu, l, dd);
                        }
                    }
                    tmp[o] = l;
                    tmp[o + 1] = dd;
                    break;
                }
            }
        }

        out.grid().at(out_idx) = result;
    });

    return out;
}

}  // namespace

DTensor cd_temporal(const DTensor& D, const GammaConnection& conn) {
    return cd_generic(D, conn, CdKind::Temporal);
}

DTensor cd_spatial(const DTensor& D, const GammaConnection& conn) {
    return cd_generic(D, conn, CdKind::Spatial);
}

DTensor cd_vertical(const DTensor& D, const GammaConnection& conn) {
    return cd_generic(D, conn, CdKind::Vertical);
}

}  // namespace jetconn
