#include "jetconn/identities.hpp"

namespace jetconn::detail {

namespace {

using Idx = std::vector<std::size_t>;

std::vector<int> to_indices(std::initializer_list<std::size_t> idx) {
    std::vector<int> out;
    out.reserve(idx.size());
    for (std::size_t v : idx) out.push_back(static_cast<int>(v));
    return out;
}

}  // namespace

// The thirty identities, groups (1)-(11). Cyclic sums permute the listed
// indices (fiber pairs jointly); alternations subtract the single
// transposition. For the mixed-type alternations (4.2, 9.2) the transposed
// term swaps the derivative kind and the torsion/curvature family along
// with the indices.
std::vector<IdentityDef> bianchi_definitions(const GammaConnection& conn) {
    if (!conn.h_normal)
        throw NonCartanError("Bianchi suite needs an h-normal connection");
    const Dims dm = conn.dims;
    const std::size_t p = static_cast<std::size_t>(dm.p);
    const std::size_t n = static_cast<std::size_t>(dm.n);
    const auto tor_p = torsion_set(conn);
    const auto cur_p = curvature_set(conn);
    const TorsionSet& T = *tor_p;
    const CurvatureSet& K = *cur_p;
    const ExprGrid& Cs = conn.spec.C;

    // --- covariant derivative grids -------------------------------------
    auto wrap = [&](const ExprGrid& g, std::vector<SlotKind> slots) {
        return DTensor(Signature(std::move(slots), dm), g);
    };
    using SK = SlotKind;

    const DTensor T_aj_t = wrap(T.T_aj, {SK::SU, SK::TL, SK::SL});
    const ExprGrid T_aj_T = cd_temporal(T_aj_t, conn).grid();  // (l, a, k, b)
    const ExprGrid T_aj_M = cd_spatial(T_aj_t, conn).grid();   // (l, a, j, k)
    const ExprGrid T_aj_V = cd_vertical(T_aj_t, conn).grid();  // (l, a, k, q, e)

    const DTensor R_ab_t = wrap(T.R_ab, {SK::FU, SK::TL, SK::TL});
    const ExprGrid R_ab_T = cd_temporal(R_ab_t, conn).grid();  // (l, d, a, b, g)
    const ExprGrid R_ab_M = cd_spatial(R_ab_t, conn).grid();   // (l, d, a, b, k)
    const ExprGrid R_ab_V = cd_vertical(R_ab_t, conn).grid();  // (l, d, a, b, q, e)

    const DTensor R_aj_t = wrap(T.R_aj, {SK::FU, SK::TL, SK::SL});
    const ExprGrid R_aj_T = cd_temporal(R_aj_t, conn).grid();  // (l, d, a, k, b)
    const ExprGrid R_aj_M = cd_spatial(R_aj_t, conn).grid();   // (l, d, a, j, k)
    const ExprGrid R_aj_V = cd_vertical(R_aj_t, conn).grid();  // (l, d, a, k, q, e)

    const DTensor R_ij_t = wrap(T.R_ij, {SK::FU, SK::SL, SK::SL});
    const ExprGrid R_ij_T = cd_temporal(R_ij_t, conn).grid();  // (l, d, i, j, a)
    const ExprGrid R_ij_M = cd_spatial(R_ij_t, conn).grid();   // (l, d, i, j, k)
    const ExprGrid R_ij_V = cd_vertical(R_ij_t, conn).grid();  // (l, d, i, j, q, e)

    const DTensor P_aj_t = wrap(T.P_aj, {SK::FU, SK::TL, SK::FC});
    const ExprGrid P_aj_T = cd_temporal(P_aj_t, conn).grid();  // (l, d, a, q, e, b)
    const ExprGrid P_aj_M = cd_spatial(P_aj_t, conn).grid();   // (l, d, a, q, e, k)
    const ExprGrid P_aj_V = cd_vertical(P_aj_t, conn).grid();  // (l, d, a, j, b, k, g)

    const DTensor P_ij_t = wrap(T.P_ij, {SK::FU, SK::SL, SK::FC});
    const ExprGrid P_ij_T = cd_temporal(P_ij_t, conn).grid();  // (l, d, i, q, e, a)
    const ExprGrid P_ij_M = cd_spatial(P_ij_t, conn).grid();   // (l, d, i, q, e, k)
    const ExprGrid P_ij_V = cd_vertical(P_ij_t, conn).grid();  // (l, d, i, j, b, k, g)

    const DTensor S_ij_t = wrap(T.S_ij, {SK::FU, SK::FC, SK::FC});
    const ExprGrid S_ij_T = cd_temporal(S_ij_t, conn).grid();  // (l, d, j, b, k, g, a)
    const ExprGrid S_ij_M = cd_spatial(S_ij_t, conn).grid();   // (l, d, j, b, k, g, i)
    const ExprGrid S_ij_V = cd_vertical(S_ij_t, conn).grid();  // (l, d, i, a, j, b, k, g)

    const DTensor C_t = wrap(Cs, {SK::SU, SK::SL, SK::FC});
    const ExprGrid C_T = cd_temporal(C_t, conn).grid();  // (l, i, q, e, b)
    const ExprGrid C_M = cd_spatial(C_t, conn).grid();   // (l, i, q, e, k)
    const ExprGrid C_V = cd_vertical(C_t, conn).grid();  // (l, i, j, b, k, g)

    const DTensor H_t = wrap(K.H, {SK::TU, SK::TL, SK::TL, SK::TL});
    const ExprGrid H_T = cd_temporal(H_t, conn).grid();  // (d, e, a, b, g)
    const ExprGrid H_M = cd_spatial(H_t, conn).grid();   // (d, e, a, b, k)

    const DTensor R_bc_t = wrap(K.R_bc, {SK::SU, SK::SL, SK::TL, SK::TL});
    const ExprGrid R_bc_T = cd_temporal(R_bc_t, conn).grid();  // (l, q, a, b, g)
    const ExprGrid R_bc_M = cd_spatial(R_bc_t, conn).grid();   // (l, q, a, b, k)
    const ExprGrid R_bc_V = cd_vertical(R_bc_t, conn).grid();  // (l, i, a, b, q, e)

    const DTensor R_bk_t = wrap(K.R_bk, {SK::SU, SK::SL, SK::TL, SK::SL});
    const ExprGrid R_bk_T = cd_temporal(R_bk_t, conn).grid();  // (l, q, a, k, b)
    const ExprGrid R_bk_M = cd_spatial(R_bk_t, conn).grid();   // (l, q, a, j, k)
    const ExprGrid R_bk_V = cd_vertical(R_bk_t, conn).grid();  // (l, i, a, k, q, e)

    const DTensor R_jk_t = wrap(K.R_jk, {SK::SU, SK::SL, SK::SL, SK::SL});
    const ExprGrid R_jk_T = cd_temporal(R_jk_t, conn).grid();  // (l, q, j, k, a)
    const ExprGrid R_jk_M = cd_spatial(R_jk_t, conn).grid();   // (l, q, i, j, k)
    const ExprGrid R_jk_V = cd_vertical(R_jk_t, conn).grid();  // (l, i, j, k, q, e)

    const DTensor P_bk_t = wrap(K.P_bk, {SK::SU, SK::SL, SK::TL, SK::FC});
    const ExprGrid P_bk_T = cd_temporal(P_bk_t, conn).grid();  // (l, i, a, q, e, b)
    const ExprGrid P_bk_M = cd_spatial(P_bk_t, conn).grid();   // (l, i, a, q, e, k)
    const ExprGrid P_bk_V = cd_vertical(P_bk_t, conn).grid();  // (l, q, a, j, b, k, g)

    const DTensor P_jk_t = wrap(K.P_jk, {SK::SU, SK::SL, SK::SL, SK::FC});
    const ExprGrid P_jk_T = cd_temporal(P_jk_t, conn).grid();  // (l, i, j, q, e, a)
    const ExprGrid P_jk_M = cd_spatial(P_jk_t, conn).grid();   // (l, i, j, q, e, k)
    const ExprGrid P_jk_V = cd_vertical(P_jk_t, conn).grid();  // (l, q, i, j, b, k, g)

    const DTensor S_jk_t = wrap(K.S_jk, {SK::SU, SK::SL, SK::FC, SK::FC});
    const ExprGrid S_jk_T = cd_temporal(S_jk_t, conn).grid();  // (l, q, j, b, k, g, a)
    const ExprGrid S_jk_M = cd_spatial(S_jk_t, conn).grid();   // (l, q, j, b, k, g, i)
    const ExprGrid S_jk_V = cd_vertical(S_jk_t, conn).grid();  // (l, q, i, a, j, b, k, g)

    std::vector<IdentityDef> defs;
    auto def = [&](const char* id) -> IdentityDef& {
        defs.push_back(IdentityDef{id, {}});
        return defs.back();
    };

    // --- group (1): hM-valued first Bianchi ------------------------------
    {
        IdentityDef& d11 = def("bianchi.1.1");
        for (std::size_t d = 0; d < p; ++d)
            for (std::size_t a = 0; a < p; ++a)
                for (std::size_t b = 0; b < p; ++b)
                    for (std::size_t g = 0; g < p; ++g) {
                        IdentityInstance inst;
                        inst.indices = to_indices({d, a, b, g});
                        inst.lhs.push_back(K.H(d, a, b, g));
                        inst.lhs.push_back(K.H(d, b, g, a));
                        inst.lhs.push_back(K.H(d, g, a, b));
                        d11.instances.push_back(std::move(inst));
                    }

        IdentityDef& d12 = def("bianchi.1.2");
        for (std::size_t l = 0; l < n; ++l)
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t a = 0; a < p; ++a)
                    for (std::size_t b = 0; b < p; ++b) {
                        IdentityInstance inst;
                        inst.indices = to_indices({l, k, a, b});
                        auto lhs_at = [&](std::size_t aa, std::size_t bb, double sign) {
                            Expr tt;
                            for (std::size_t m = 0; m < n; ++m)
                                tt += T.T_aj(l, aa, m) * T.T_aj(m, bb, k);
                            tt -= T_aj_T.at({l, aa, k, bb});
                            inst.lhs.push_back(Expr::constant(sign) * tt);
                        };
                        lhs_at(a, b, 1.0);
                        lhs_at(b, a, -1.0);
                        inst.rhs.push_back(K.R_bc(l, k, a, b));
                        Expr cr;
                        for (std::size_t m = 0; m < n; ++m)
                            for (std::size_t u = 0; u < p; ++u)
                                cr += Cs(l, k, m, u) * T.R_ab(m, u, a, b);
                        inst.rhs.push_back(-cr);
                        d12.instances.push_back(std::move(inst));
                    }

        IdentityDef& d13 = def("bianchi.1.3");
        for (std::size_t l = 0; l < n; ++l)
            for (std::size_t a = 0; a < p; ++a)
                for (std::size_t j = 0; j < n; ++j)
                    for (std::size_t k = 0; k < n; ++k) {
                        IdentityInstance inst;
                        inst.indices = to_indices({l, a, j, k});
                        auto at = [&](std::size_t jj, std::size_t kk, double sign) {
                            Expr cr;
                            for (std::size_t m = 0; m < n; ++m)
                                for (std::size_t u = 0; u < p; ++u)
                                    cr += Cs(l, kk, m, u) * T.R_aj(m, u, a, jj);
                            cr += K.R_bk(l, jj, a, kk);
                            cr += T_aj_M.at({l, a, jj, kk});
                            inst.lhs.push_back(Expr::constant(sign) * cr);
                        };
                        at(j, k, 1.0);
                        at(k, j, -1.0);
                        d13.instances.push_back(std::move(inst));
                    }

        IdentityDef& d14 = def("bianchi.1.4");
        for (std::size_t l = 0; l < n; ++l)
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    for (std::size_t k = 0; k < n; ++k) {
                        IdentityInstance inst;
                        inst.indices = to_indices({l, i, j, k});
                        auto at = [&](std::size_t ii, std::size_t jj, std::size_t kk) {
                            Expr cr;
                            for (std::size_t m = 0; m < n; ++m)
                                for (std::size_t u = 0; u < p; ++u)
                                    cr += Cs(l, kk, m, u) * T.R_ij(m, u, ii, jj);
                            cr -= K.R_jk(l, ii, jj, kk);
                            inst.lhs.push_back(cr);
                        };
                        at(i, j, k);
                        at(j, k, i);
                        at(k, i, j);
                        d14.instances.push_back(std::move(inst));
                    }
    }

    // --- group (2): fiber-valued first Bianchi ---------------------------
    {
        IdentityDef& d21 = def("bianchi.2.1");
        for (std::size_t l = 0; l < n; ++l)
            for (std::size_t d = 0; d < p; ++d)
                for (std::size_t a = 0; a < p; ++a)
                    for (std::size_t b = 0; b < p; ++b)
                        for (std::size_t g = 0; g < p; ++g) {
                            IdentityInstance inst;
                            inst.indices = to_indices({l, d, a, b, g});
                            auto at = [&](std::size_t aa, std::size_t bb, std::size_t gg) {
                                inst.lhs.push_back(R_ab_T.at({l, d, aa, bb, gg}));
                                Expr pr;
                                for (std::size_t m = 0; m < n; ++m)
                                    for (std::size_t u = 0; u < p; ++u)
                                        pr += T.P_aj(l, d, gg, m, u) * T.R_ab(m, u, aa, bb);
                                inst.lhs.push_back(pr);
                            };
                            at(a, b, g);
                            at(b, g, a);
                            at(g, a, b);
                            d21.instances.push_back(std::move(inst));
                        }

        IdentityDef& d22 = def("bianchi.2.2");
        for (std::size_t l = 0; l < n; ++l)
            for (std::size_t d = 0; d < p; ++d)
                for (std::size_t a = 0; a < p; ++a)
                    for (std::size_t b = 0; b < p; ++b)
                        for (std::size_t k = 0; k < n; ++k) {
                            IdentityInstance inst;
                            inst.indices = to_indices({l, d, a, b, k});
                            auto at = [&](std::size_t aa, std::size_t bb, double sign) {
                                Expr s = R_aj_T.at({l, d, aa, k, bb});
                                for (std::size_t m = 0; m < n; ++m)
                                    for (std::size_t u = 0; u < p; ++u)
                                        s += T.P_aj(l, d, bb, m, u) * T.R_aj(m, u, aa, k);
                                for (std::size_t m = 0; m < n; ++m)
                                    s += T.R_aj(l, d, bb, m) * T.T_aj(m, aa, k);
                                inst.lhs.push_back(Expr::constant(sign) * s);
                            };
                            at(a, b, 1.0);
                            at(b, a, -1.0);
                            inst.rhs.push_back(R_ab_M.at({l, d, a, b, k}));
                            Expr pr;
                            for (std::size_t m = 0; m < n; ++m)
                                for (std::size_t u = 0; u < p; ++u)
                                    pr += T.P_ij(l, d, k, m, u) * T.R_ab(m, u, a, b);
                            inst.rhs.push_back(pr);
                            d22.instances.push_back(std::move(inst));
                        }

        IdentityDef& d23 = def("bianchi.2.3");
        for (std::size_t l = 0; l < n; ++l)
            for (std::size_t d = 0; d < p; ++d)
                for (std::size_t a = 0; a < p; ++a)
                    for (std::size_t j = 0; j < n; ++j)
                        for (std::size_t k = 0; k < n; ++k) {
                            IdentityInstance inst;
                            inst.indices = to_indices({l, d, a, j, k});
                            auto at = [&](std::size_t jj, std::size_t kk, double sign) {
                                Expr s = R_aj_M.at({l, d, a, jj, kk});
                                for (std::size_t m = 0; m < n; ++m)
                                    for (std::size_t u = 0; u < p; ++u)
                                        s += T.P_ij(l, d, kk, m, u) * T.R_aj(m, u, a, jj);
                                for (std::size_t m = 0; m < n; ++m)
                                    s += T.R_ij(l, d, kk, m) * T.T_aj(m, a, jj);
                                inst.lhs.push_back(Expr::constant(sign) * s);
                            };
                            at(j, k, 1.0);
                            at(k, j, -1.0);
                            // RHS first term carries the T-horizontal label
                            inst.rhs.push_back(-R_ij_T.at({l, d, j, k, a}));
                            Expr pr;
                            for (std::size_t m = 0; m < n; ++m)
                                for (std::size_t u = 0; u < p; ++u)
                                    pr += T.P_aj(l, d, a, m, u) * T.R_ij(m, u, j, k);
                            inst.rhs.push_back(-pr);
                            d23.instances.push_back(std::move(inst));
                        }

        IdentityDef& d24 = def("bianchi.2.4");
        for (std::size_t l = 0; l < n; ++l)
            for (std::size_t d = 0; d < p; ++d)
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = 0; j < n; ++j)
                        for (std::size_t k = 0; k < n; ++k) {
                            IdentityInstance inst;
                            inst.indices = to_indices({l, d, i, j, k});
                            auto at = [&](std::size_t ii, std::size_t jj, std::size_t kk) {
                                inst.lhs.push_back(R_ij_M.at({l, d, ii, jj, kk}));
                                Expr pr;
                                for (std::size_t m = 0; m < n; ++m)
                                    for (std::size_t u = 0; u < p; ++u)
                                        pr += T.P_ij(l, d, kk, m, u) * T.R_ij(m, u, ii, jj);
                                inst.lhs.push_back(pr);
                            };
                            at(i, j, k);
                            at(j, k, i);
                            at(k, i, j);
                            d24.instances.push_back(std::move(inst));
                        }
    }

    // --- group (3): hM-valued, one vertical direction ---------------------
    {
        // 3.1 carries both C-contraction terms and the +C_{/a} derivative;
        // it is the full mixed (hT, v) pair written out, not an alternation
        IdentityDef& d31 = def("bianchi.3.1");
        for (std::size_t l = 0; l < n; ++l)
            for (std::size_t a = 0; a < p; ++a)
                for (std::size_t k = 0; k < n; ++k)
                    for (std::size_t q = 0; q < n; ++q)
                        for (std::size_t e = 0; e < p; ++e) {
                            IdentityInstance inst;
                            inst.indices = to_indices({l, a, k, q, e});
                            inst.lhs.push_back(T_aj_V.at({l, a, k, q, e}));
                            Expr ct;
                            for (std::size_t m = 0; m < n; ++m)
                                ct += Cs(l, m, q, e) * T.T_aj(m, a, k);
                            inst.lhs.push_back(-ct);
                            inst.lhs.push_back(K.P_bk(l, k, a, q, e));
                            inst.lhs.push_back(C_T.at({l, k, q, e, a}));
                            Expr ct2;
                            for (std::size_t m = 0; m < n; ++m)
                                ct2 += Cs(m, k, q, e) * T.T_aj(l, a, m);
                            inst.lhs.push_back(ct2);
                            Expr cp;
                            for (std::size_t m = 0; m < n; ++m)
                                for (std::size_t u = 0; u < p; ++u)
                                    cp += Cs(l, k, m, u) * T.P_aj(m, u, a, q, e);
                            inst.lhs.push_back(-cp);
                            d31.instances.push_back(std::move(inst));
                        }

        IdentityDef& d32 = def("bianchi.3.2");
        for (std::size_t l = 0; l < n; ++l)
            for (std::size_t q = 0; q < n; ++q)
                for (std::size_t e = 0; e < p; ++e)
                    for (std::size_t j = 0; j < n; ++j)
                        for (std::size_t k = 0; k < n; ++k) {
                            IdentityInstance inst;
                            inst.indices = to_indices({l, q, e, j, k});
                            auto at = [&](std::size_t jj, std::size_t kk, double sign) {
                                Expr s = C_M.at({l, jj, q, e, kk});
                                for (std::size_t m = 0; m < n; ++m)
                                    for (std::size_t u = 0; u < p; ++u)
                                        s += Cs(l, kk, m, u) * T.P_ij(m, u, jj, q, e);
                                s += K.P_jk(l, jj, kk, q, e);
                                inst.lhs.push_back(Expr::constant(sign) * s);
                            };
                            at(j, k, 1.0);
                            at(k, j, -1.0);
                            d32.instances.push_back(std::move(inst));
                        }
    }

    // --- group (4): fiber-valued, one vertical direction -------------------
    {
        IdentityDef& d41 = def("bianchi.4.1");
        for (std::size_t l = 0; l < n; ++l)
            for (std::size_t d = 0; d < p; ++d)
                for (std::size_t a = 0; a < p; ++a)
                    for (std::size_t b = 0; b < p; ++b)
                        for (std::size_t q = 0; q < n; ++q)
                            for (std::size_t e = 0; e < p; ++e) {
                                IdentityInstance inst;
                                inst.indices = to_indices({l, d, a, b, q, e});
                                auto at = [&](std::size_t aa, std::size_t bb, double sign) {
                                    Expr s = P_aj_T.at({l, d, aa, q, e, bb});
                                    for (std::size_t m = 0; m < n; ++m)
                                        for (std::size_t u = 0; u < p; ++u)
                                            s += T.P_aj(l, d, bb, m, u) *
                                                 T.P_aj(m, u, aa, q, e);
                                    inst.lhs.push_back(Expr::constant(sign) * s);
                                };
                                at(a, b, 1.0);
                                at(b, a, -1.0);
                                inst.rhs.push_back(R_ab_V.at({l, d, a, b, q, e}));
                                // commutator pairing: delta^e_d R - delta^l_q H
                                Expr vb;
                                if (e == d) vb += K.R_bc(l, q, a, b);
                                if (l == q) vb -= K.H(e, d, a, b);
                                inst.rhs.push_back(-vb);
                                Expr sr;
                                for (std::size_t m = 0; m < n; ++m)
                                    for (std::size_t u = 0; u < p; ++u)
                                        sr += T.S_ij(l, d, q, e, m, u) * T.R_ab(m, u, a, b);
                                inst.rhs.push_back(sr);
                                d41.instances.push_back(std::move(inst));
                            }

        IdentityDef& d42 = def("bianchi.4.2");
        for (std::size_t l = 0; l < n; ++l)
            for (std::size_t d = 0; d < p; ++d)
                for (std::size_t a = 0; a < p; ++a)
                    for (std::size_t k = 0; k < n; ++k)
                        for (std::size_t q = 0; q < n; ++q)
                            for (std::size_t e = 0; e < p; ++e) {
                                IdentityInstance inst;
                                inst.indices = to_indices({l, d, a, k, q, e});
                                // displayed terms
                                inst.lhs.push_back(P_aj_M.at({l, d, a, q, e, k}));
                                Expr s1;
                                for (std::size_t m = 0; m < n; ++m)
                                    for (std::size_t u = 0; u < p; ++u)
                                        s1 += T.P_ij(l, d, k, m, u) * T.P_aj(m, u, a, q, e);
                                inst.lhs.push_back(s1);
                                // mirrored terms (swap the hT/hM roles)
                                inst.lhs.push_back(-P_ij_T.at({l, d, k, q, e, a}));
                                Expr s2;
                                for (std::size_t m = 0; m < n; ++m)
                                    for (std::size_t u = 0; u < p; ++u)
                                        s2 += T.P_aj(l, d, a, m, u) * T.P_ij(m, u, k, q, e);
                                inst.lhs.push_back(-s2);

                                inst.rhs.push_back(R_aj_V.at({l, d, a, k, q, e}));
                                inst.rhs.push_back(-K.Rv_bk(l, d, q, e, a, k));
                                Expr sr;
                                for (std::size_t m = 0; m < n; ++m)
                                    for (std::size_t u = 0; u < p; ++u)
                                        sr += T.S_ij(l, d, q, e, m, u) * T.R_aj(m, u, a, k);
                                inst.rhs.push_back(sr);
                                Expr rc;
                                for (std::size_t m = 0; m < n; ++m)
                                    rc += T.R_aj(l, d, a, m) * Cs(m, k, q, e);
                                inst.rhs.push_back(rc);
                                Expr tp;
                                for (std::size_t m = 0; m < n; ++m)
                                    tp += T.T_aj(m, a, k) * T.P_ij(l, d, m, q, e);
                                inst.rhs.push_back(-tp);
                                d42.instances.push_back(std::move(inst));
                            }

        IdentityDef& d43 = def("bianchi.4.3");
        for (std::size_t l = 0; l < n; ++l)
            for (std::size_t d = 0; d < p; ++d)
                for (std::size_t j = 0; j < n; ++j)
                    for (std::size_t k = 0; k < n; ++k)
                        for (std::size_t q = 0; q < n; ++q)
                            for (std::size_t e = 0; e < p; ++e) {
                                IdentityInstance inst;
                                inst.indices = to_indices({l, d, j, k, q, e});
                                auto at = [&](std::size_t jj, std::size_t kk, double sign) {
                                    Expr s = P_ij_M.at({l, d, jj, q, e, kk});
                                    for (std::size_t m = 0; m < n; ++m)
                                        for (std::size_t u = 0; u < p; ++u)
                                            s += T.P_ij(l, d, kk, m, u) *
                                                 T.P_ij(m, u, jj, q, e);
                                    for (std::size_t m = 0; m < n; ++m)
                                        s += T.R_ij(l, d, kk, m) * Cs(m, jj, q, e);
                                    inst.lhs.push_back(Expr::constant(sign) * s);
                                };
                                at(j, k, 1.0);
                                at(k, j, -1.0);
                                inst.rhs.push_back(R_ij_V.at({l, d, j, k, q, e}));
                                inst.rhs.push_back(-K.Rv_jk(l, d, q, e, j, k));
                                Expr sr;
                                for (std::size_t m = 0; m < n; ++m)
                                    for (std::size_t u = 0; u < p; ++u)
                                        sr += T.S_ij(l, d, q, e, m, u) * T.R_ij(m, u, j, k);
                                inst.rhs.push_back(sr);
                                d43.instances.push_back(std::move(inst));
                            }
    }

    // --- group (5): hM-valued, two vertical directions ---------------------
    {
        IdentityDef& d51 = def("bianchi.5.1");
        for (std::size_t l = 0; l < n; ++l)
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    for (std::size_t b = 0; b < p; ++b)
                        for (std::size_t k = 0; k < n; ++k)
                            for (std::size_t g = 0; g < p; ++g) {
                                IdentityInstance inst;
                                inst.indices = to_indices({l, i, j, b, k, g});
                                auto at = [&](std::size_t jj, std::size_t bb, std::size_t kk,
                                              std::size_t gg, double sign) {
                                    Expr s = C_V.at({l, i, jj, bb, kk, gg});
                                    for (std::size_t m = 0; m < n; ++m)
                                        s += Cs(m, i, kk, gg) * Cs(l, m, jj, bb);
                                    inst.lhs.push_back(Expr::constant(sign) * s);
                                };
                                at(j, b, k, g, 1.0);
                                at(k, g, j, b, -1.0);
                                inst.rhs.push_back(K.S_jk(l, i, j, b, k, g));
                                Expr cs;
                                for (std::size_t m = 0; m < n; ++m)
                                    for (std::size_t u = 0; u < p; ++u)
                                        cs += Cs(l, i, m, u) * T.S_ij(m, u, j, b, k, g);
                                inst.rhs.push_back(-cs);
                                d51.instances.push_back(std::move(inst));
                            }
    }

    // --- group (6): fiber-valued, two vertical directions ------------------
    {
        IdentityDef& d61 = def("bianchi.6.1");
        for (std::size_t l = 0; l < n; ++l)
            for (std::size_t d = 0; d < p; ++d)
                for (std::size_t a = 0; a < p; ++a)
                    for (std::size_t j = 0; j < n; ++j)
                        for (std::size_t b = 0; b < p; ++b)
                            for (std::size_t k = 0; k < n; ++k)
                                for (std::size_t g = 0; g < p; ++g) {
                                    IdentityInstance inst;
                                    inst.indices = to_indices({l, d, a, j, b, k, g});
                                    auto at = [&](std::size_t jj, std::size_t bb,
                                                  std::size_t kk, std::size_t gg,
                                                  double sign) {
                                        Expr s = P_aj_V.at({l, d, a, jj, bb, kk, gg});
                                        for (std::size_t m = 0; m < n; ++m)
                                            for (std::size_t u = 0; u < p; ++u)
                                                s += T.P_aj(m, u, a, jj, bb) *
                                                     T.S_ij(l, d, kk, gg, m, u);
                                        s += K.Pv_bk(l, d, jj, bb, a, kk, gg);
                                        inst.lhs.push_back(Expr::constant(sign) * s);
                                    };
                                    at(j, b, k, g, 1.0);
                                    at(k, g, j, b, -1.0);
                                    inst.rhs.push_back(-S_ij_T.at({l, d, j, b, k, g, a}));
                                    Expr sp;
                                    for (std::size_t m = 0; m < n; ++m)
                                        for (std::size_t u = 0; u < p; ++u)
                                            sp += T.S_ij(m, u, j, b, k, g) *
                                                  T.P_aj(l, d, a, m, u);
                                    inst.rhs.push_back(-sp);
                                    d61.instances.push_back(std::move(inst));
                                }

        // 6.2 mirrors 6.1 with |i in place of /a plus the C.P term that the
        // nonzero spatial C-torsion brings in
        IdentityDef& d62 = def("bianchi.6.2");
        for (std::size_t l = 0; l < n; ++l)
            for (std::size_t d = 0; d < p; ++d)
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = 0; j < n; ++j)
                        for (std::size_t b = 0; b < p; ++b)
                            for (std::size_t k = 0; k < n; ++k)
                                for (std::size_t g = 0; g < p; ++g) {
                                    IdentityInstance inst;
                                    inst.indices = to_indices({l, d, i, j, b, k, g});
                                    auto at = [&](std::size_t jj, std::size_t bb,
                                                  std::size_t kk, std::size_t gg,
                                                  double sign) {
                                        Expr s = P_ij_V.at({l, d, i, jj, bb, kk, gg});
                                        for (std::size_t m = 0; m < n; ++m)
                                            for (std::size_t u = 0; u < p; ++u)
                                                s += T.P_ij(m, u, i, jj, bb) *
                                                     T.S_ij(l, d, kk, gg, m, u);
                                        for (std::size_t m = 0; m < n; ++m)
                                            s -= Cs(m, i, jj, bb) * T.P_ij(l, d, m, kk, gg);
                                        s += K.Pv_jk(l, d, jj, bb, i, kk, gg);
                                        inst.lhs.push_back(Expr::constant(sign) * s);
                                    };
                                    at(j, b, k, g, 1.0);
                                    at(k, g, j, b, -1.0);
                                    inst.rhs.push_back(-S_ij_M.at({l, d, j, b, k, g, i}));
                                    Expr sp;
                                    for (std::size_t m = 0; m < n; ++m)
                                        for (std::size_t u = 0; u < p; ++u)
                                            sp += T.S_ij(m, u, j, b, k, g) *
                                                  T.P_ij(l, d, i, m, u);
                                    inst.rhs.push_back(-sp);
                                    d62.instances.push_back(std::move(inst));
                                }
    }

    // --- group (7): fiber-valued, three vertical directions ----------------
    {
        IdentityDef& d71 = def("bianchi.7.1");
        for (std::size_t l = 0; l < n; ++l)
            for (std::size_t d = 0; d < p; ++d)
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t a = 0; a < p; ++a)
                        for (std::size_t j = 0; j < n; ++j)
                            for (std::size_t b = 0; b < p; ++b)
                                for (std::size_t k = 0; k < n; ++k)
                                    for (std::size_t g = 0; g < p; ++g) {
                                        IdentityInstance inst;
                                        inst.indices = to_indices({l, d, i, a, j, b, k, g});
                                        auto at = [&](std::size_t ii, std::size_t aa,
                                                      std::size_t jj, std::size_t bb,
                                                      std::size_t kk, std::size_t gg) {
                                            inst.lhs.push_back(
                                                S_ij_V.at({l, d, ii, aa, jj, bb, kk, gg}));
                                            Expr ss;
                                            for (std::size_t m = 0; m < n; ++m)
                                                for (std::size_t u = 0; u < p; ++u)
                                                    ss += T.S_ij(m, u, ii, aa, jj, bb) *
                                                          T.S_ij(l, d, kk, gg, m, u);
                                            inst.lhs.push_back(ss);
                                            inst.lhs.push_back(
                                                -K.Sv_jk(l, d, ii, aa, jj, bb, kk, gg));
                                        };
                                        at(i, a, j, b, k, g);
                                        at(j, b, k, g, i, a);
                                        at(k, g, i, a, j, b);
                                        d71.instances.push_back(std::move(inst));
                                    }
    }

    // --- group (8): H- and hM-valued second Bianchi ------------------------
    {
        IdentityDef& d81 = def("bianchi.8.1");
        for (std::size_t d = 0; d < p; ++d)
            for (std::size_t e = 0; e < p; ++e)
                for (std::size_t a = 0; a < p; ++a)
                    for (std::size_t b = 0; b < p; ++b)
                        for (std::size_t g = 0; g < p; ++g) {
                            IdentityInstance inst;
                            inst.indices = to_indices({d, e, a, b, g});
                            inst.lhs.push_back(H_T.at({d, e, a, b, g}));
                            inst.lhs.push_back(H_T.at({d, e, b, g, a}));
                            inst.lhs.push_back(H_T.at({d, e, g, a, b}));
                            d81.instances.push_back(std::move(inst));
                        }

        IdentityDef& d82 = def("bianchi.8.2");
        for (std::size_t d = 0; d < p; ++d)
            for (std::size_t e = 0; e < p; ++e)
                for (std::size_t a = 0; a < p; ++a)
                    for (std::size_t b = 0; b < p; ++b)
                        for (std::size_t k = 0; k < n; ++k) {
                            IdentityInstance inst;
                            inst.indices = to_indices({d, e, a, b, k});
                            inst.lhs.push_back(H_M.at({d, e, a, b, k}));
                            d82.instances.push_back(std::move(inst));
                        }

        IdentityDef& d83 = def("bianchi.8.3");
        for (std::size_t d = 0; d < n; ++d)
            for (std::size_t e = 0; e < p; ++e)
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = 0; j < n; ++j)
                        for (std::size_t k = 0; k < n; ++k) {
                            IdentityInstance inst;
                            inst.indices = to_indices({d, e, i, j, k});
                            auto at = [&](std::size_t ii, std::size_t jj,
                                          std::size_t kk) {
                                Expr s;
                                for (std::size_t m = 0; m < n; ++m)
                                    for (std::size_t u = 0; u < p; ++u)
                                        s += T.R_ij(m, u, ii, jj) * T.P_ij(d, e, kk, m, u);
                                inst.lhs.push_back(s);
                            };
                            at(i, j, k);
                            at(j, k, i);
                            at(k, i, j);
                            d83.instances.push_back(std::move(inst));
                        }

        // in groups 8-10 every torsion contraction T^G_{AB} R(G, .) enters
        // the cyclic/alternating sums with a plus sign
        IdentityDef& d84 = def("bianchi.8.4");
        for (std::size_t l = 0; l < n; ++l)
            for (std::size_t q = 0; q < n; ++q)
                for (std::size_t a = 0; a < p; ++a)
                    for (std::size_t b = 0; b < p; ++b)
                        for (std::size_t g = 0; g < p; ++g) {
                            IdentityInstance inst;
                            inst.indices = to_indices({l, q, a, b, g});
                            auto at = [&](std::size_t aa, std::size_t bb, std::size_t gg) {
                                inst.lhs.push_back(R_bc_T.at({l, q, aa, bb, gg}));
                                Expr rp;
                                for (std::size_t m = 0; m < n; ++m)
                                    for (std::size_t u = 0; u < p; ++u)
                                        rp += T.R_ab(m, u, aa, bb) * K.P_bk(l, q, gg, m, u);
                                inst.lhs.push_back(rp);
                            };
                            at(a, b, g);
                            at(b, g, a);
                            at(g, a, b);
                            d84.instances.push_back(std::move(inst));
                        }

        IdentityDef& d85 = def("bianchi.8.5");
        for (std::size_t l = 0; l < n; ++l)
            for (std::size_t q = 0; q < n; ++q)
                for (std::size_t a = 0; a < p; ++a)
                    for (std::size_t b = 0; b < p; ++b)
                        for (std::size_t k = 0; k < n; ++k) {
                            IdentityInstance inst;
                            inst.indices = to_indices({l, q, a, b, k});
                            auto at = [&](std::size_t aa, std::size_t bb, double sign) {
                                Expr s = R_bk_T.at({l, q, aa, k, bb});
                                for (std::size_t m = 0; m < n; ++m)
                                    for (std::size_t u = 0; u < p; ++u)
                                        s += T.R_aj(m, u, aa, k) * K.P_bk(l, q, bb, m, u);
                                for (std::size_t m = 0; m < n; ++m)
                                    s += T.T_aj(m, aa, k) * K.R_bk(l, q, bb, m);
                                inst.lhs.push_back(Expr::constant(sign) * s);
                            };
                            at(a, b, 1.0);
                            at(b, a, -1.0);
                            // RHS first term carries the |k label
                            inst.rhs.push_back(R_bc_M.at({l, q, a, b, k}));
                            Expr rp;
                            for (std::size_t m = 0; m < n; ++m)
                                for (std::size_t u = 0; u < p; ++u)
                                    rp += T.R_ab(m, u, a, b) * K.P_jk(l, q, k, m, u);
                            inst.rhs.push_back(rp);
                            d85.instances.push_back(std::move(inst));
                        }

        IdentityDef& d86 = def("bianchi.8.6");
        for (std::size_t l = 0; l < n; ++l)
            for (std::size_t q = 0; q < n; ++q)
                for (std::size_t a = 0; a < p; ++a)
                    for (std::size_t j = 0; j < n; ++j)
                        for (std::size_t k = 0; k < n; ++k) {
                            IdentityInstance inst;
                            inst.indices = to_indices({l, q, a, j, k});
                            auto at = [&](std::size_t jj, std::size_t kk, double sign) {
                                Expr s = R_bk_M.at({l, q, a, jj, kk});
                                for (std::size_t m = 0; m < n; ++m)
                                    for (std::size_t u = 0; u < p; ++u)
                                        s += T.R_aj(m, u, a, jj) * K.P_jk(l, q, kk, m, u);
                                for (std::size_t m = 0; m < n; ++m)
                                    s += T.T_aj(m, a, jj) * K.R_jk(l, q, kk, m);
                                inst.lhs.push_back(Expr::constant(sign) * s);
                            };
                            at(j, k, 1.0);
                            at(k, j, -1.0);
                            inst.rhs.push_back(-R_jk_T.at({l, q, j, k, a}));
                            Expr rp;
                            for (std::size_t m = 0; m < n; ++m)
                                for (std::size_t u = 0; u < p; ++u)
                                    rp += T.R_ij(m, u, j, k) * K.P_bk(l, q, a, m, u);
                            inst.rhs.push_back(-rp);
                            d86.instances.push_back(std::move(inst));
                        }

        IdentityDef& d87 = def("bianchi.8.7");
        for (std::size_t l = 0; l < n; ++l)
            for (std::size_t q = 0; q < n; ++q)
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = 0; j < n; ++j)
                        for (std::size_t k = 0; k < n; ++k) {
                            IdentityInstance inst;
                            inst.indices = to_indices({l, q, i, j, k});
                            auto at = [&](std::size_t ii, std::size_t jj, std::size_t kk) {
                                inst.lhs.push_back(R_jk_M.at({l, q, ii, jj, kk}));
                                Expr rp;
                                for (std::size_t m = 0; m < n; ++m)
                                    for (std::size_t u = 0; u < p; ++u)
                                        rp += T.R_ij(m, u, ii, jj) * K.P_jk(l, q, kk, m, u);
                                inst.lhs.push_back(rp);
                            };
                            at(i, j, k);
                            at(j, k, i);
                            at(k, i, j);
                            d87.instances.push_back(std::move(inst));
                        }
    }

    // --- group (9): hM-valued second Bianchi, one vertical direction -------
    {
        IdentityDef& d91 = def("bianchi.9.1");
        for (std::size_t l = 0; l < n; ++l)
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t a = 0; a < p; ++a)
                    for (std::size_t b = 0; b < p; ++b)
                        for (std::size_t q = 0; q < n; ++q)
                            for (std::size_t e = 0; e < p; ++e) {
                                IdentityInstance inst;
                                inst.indices = to_indices({l, i, a, b, q, e});
                                auto at = [&](std::size_t aa, std::size_t bb, double sign) {
                                    Expr s = P_bk_T.at({l, i, aa, q, e, bb});
                                    for (std::size_t m = 0; m < n; ++m)
                                        for (std::size_t u = 0; u < p; ++u)
                                            s += T.P_aj(m, u, aa, q, e) *
                                                 K.P_bk(l, i, bb, m, u);
                                    inst.lhs.push_back(Expr::constant(sign) * s);
                                };
                                at(a, b, 1.0);
                                at(b, a, -1.0);
                                inst.rhs.push_back(R_bc_V.at({l, i, a, b, q, e}));
                                Expr rs;
                                for (std::size_t m = 0; m < n; ++m)
                                    for (std::size_t u = 0; u < p; ++u)
                                        rs += T.R_ab(m, u, a, b) * K.S_jk(l, i, q, e, m, u);
                                inst.rhs.push_back(rs);
                                d91.instances.push_back(std::move(inst));
                            }

        IdentityDef& d92 = def("bianchi.9.2");
        for (std::size_t l = 0; l < n; ++l)
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t a = 0; a < p; ++a)
                    for (std::size_t k = 0; k < n; ++k)
                        for (std::size_t q = 0; q < n; ++q)
                            for (std::size_t e = 0; e < p; ++e) {
                                IdentityInstance inst;
                                inst.indices = to_indices({l, i, a, k, q, e});
                                // displayed half of the mixed alternation
                                inst.lhs.push_back(P_bk_M.at({l, i, a, q, e, k}));
                                Expr s1;
                                for (std::size_t m = 0; m < n; ++m)
                                    for (std::size_t u = 0; u < p; ++u)
                                        s1 += T.P_aj(m, u, a, q, e) * K.P_jk(l, i, k, m, u);
                                inst.lhs.push_back(s1);
                                // mirrored half (hT and hM roles swapped)
                                inst.lhs.push_back(-P_jk_T.at({l, i, k, q, e, a}));
                                Expr s2;
                                for (std::size_t m = 0; m < n; ++m)
                                    for (std::size_t u = 0; u < p; ++u)
                                        s2 += T.P_ij(m, u, k, q, e) * K.P_bk(l, i, a, m, u);
                                inst.lhs.push_back(-s2);

                                inst.rhs.push_back(R_bk_V.at({l, i, a, k, q, e}));
                                Expr rs;
                                for (std::size_t m = 0; m < n; ++m)
                                    for (std::size_t u = 0; u < p; ++u)
                                        rs += T.R_aj(m, u, a, k) * K.S_jk(l, i, q, e, m, u);
                                inst.rhs.push_back(rs);
                                Expr cr;
                                for (std::size_t m = 0; m < n; ++m)
                                    cr += Cs(m, k, q, e) * K.R_bk(l, i, a, m);
                                inst.rhs.push_back(cr);
                                Expr tp;
                                for (std::size_t m = 0; m < n; ++m)
                                    tp += T.T_aj(m, a, k) * K.P_jk(l, i, m, q, e);
                                inst.rhs.push_back(-tp);
                                d92.instances.push_back(std::move(inst));
                            }

        IdentityDef& d93 = def("bianchi.9.3");
        for (std::size_t l = 0; l < n; ++l)
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    for (std::size_t k = 0; k < n; ++k)
                        for (std::size_t q = 0; q < n; ++q)
                            for (std::size_t e = 0; e < p; ++e) {
                                IdentityInstance inst;
                                inst.indices = to_indices({l, i, j, k, q, e});
                                auto at = [&](std::size_t jj, std::size_t kk, double sign) {
                                    Expr s = P_jk_M.at({l, i, jj, q, e, kk});
                                    for (std::size_t m = 0; m < n; ++m)
                                        for (std::size_t u = 0; u < p; ++u)
                                            s += T.P_ij(m, u, jj, q, e) *
                                                 K.P_jk(l, i, kk, m, u);
                                    for (std::size_t m = 0; m < n; ++m)
                                        s += Cs(m, jj, q, e) * K.R_jk(l, i, kk, m);
                                    inst.lhs.push_back(Expr::constant(sign) * s);
                                };
                                at(j, k, 1.0);
                                at(k, j, -1.0);
                                inst.rhs.push_back(R_jk_V.at({l, i, j, k, q, e}));
                                Expr rs;
                                for (std::size_t m = 0; m < n; ++m)
                                    for (std::size_t u = 0; u < p; ++u)
                                        rs += T.R_ij(m, u, j, k) * K.S_jk(l, i, q, e, m, u);
                                inst.rhs.push_back(rs);
                                d93.instances.push_back(std::move(inst));
                            }
    }

    // --- group (10): hM-valued second Bianchi, two vertical directions -----
    {
        IdentityDef& d101 = def("bianchi.10.1");
        for (std::size_t l = 0; l < n; ++l)
            for (std::size_t q = 0; q < n; ++q)
                for (std::size_t a = 0; a < p; ++a)
                    for (std::size_t j = 0; j < n; ++j)
                        for (std::size_t b = 0; b < p; ++b)
                            for (std::size_t k = 0; k < n; ++k)
                                for (std::size_t g = 0; g < p; ++g) {
                                    IdentityInstance inst;
                                    inst.indices = to_indices({l, q, a, j, b, k, g});
                                    auto at = [&](std::size_t jj, std::size_t bb,
                                                  std::size_t kk, std::size_t gg,
                                                  double sign) {
                                        Expr s = P_bk_V.at({l, q, a, jj, bb, kk, gg});
                                        for (std::size_t m = 0; m < n; ++m)
                                            for (std::size_t u = 0; u < p; ++u)
                                                s += T.P_aj(m, u, a, jj, bb) *
                                                     K.S_jk(l, q, kk, gg, m, u);
                                        inst.lhs.push_back(Expr::constant(sign) * s);
                                    };
                                    at(j, b, k, g, 1.0);
                                    at(k, g, j, b, -1.0);
                                    inst.rhs.push_back(-S_jk_T.at({l, q, j, b, k, g, a}));
                                    Expr sp;
                                    for (std::size_t m = 0; m < n; ++m)
                                        for (std::size_t u = 0; u < p; ++u)
                                            sp += T.S_ij(m, u, j, b, k, g) *
                                                  K.P_bk(l, q, a, m, u);
                                    inst.rhs.push_back(-sp);
                                    d101.instances.push_back(std::move(inst));
                                }

        IdentityDef& d102 = def("bianchi.10.2");
        for (std::size_t l = 0; l < n; ++l)
            for (std::size_t q = 0; q < n; ++q)
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = 0; j < n; ++j)
                        for (std::size_t b = 0; b < p; ++b)
                            for (std::size_t k = 0; k < n; ++k)
                                for (std::size_t g = 0; g < p; ++g) {
                                    IdentityInstance inst;
                                    inst.indices = to_indices({l, q, i, j, b, k, g});
                                    auto at = [&](std::size_t jj, std::size_t bb,
                                                  std::size_t kk, std::size_t gg,
                                                  double sign) {
                                        Expr s = P_jk_V.at({l, q, i, jj, bb, kk, gg});
                                        for (std::size_t m = 0; m < n; ++m)
                                            for (std::size_t u = 0; u < p; ++u)
                                                s += T.P_ij(m, u, i, jj, bb) *
                                                     K.S_jk(l, q, kk, gg, m, u);
                                        for (std::size_t m = 0; m < n; ++m)
                                            s -= Cs(m, i, jj, bb) * K.P_jk(l, q, m, kk, gg);
                                        inst.lhs.push_back(Expr::constant(sign) * s);
                                    };
                                    at(j, b, k, g, 1.0);
                                    at(k, g, j, b, -1.0);
                                    inst.rhs.push_back(-S_jk_M.at({l, q, j, b, k, g, i}));
                                    Expr sp;
                                    for (std::size_t m = 0; m < n; ++m)
                                        for (std::size_t u = 0; u < p; ++u)
                                            sp += T.S_ij(m, u, j, b, k, g) *
                                                  K.P_jk(l, q, i, m, u);
                                    inst.rhs.push_back(-sp);
                                    d102.instances.push_back(std::move(inst));
                                }
    }

    // --- group (11): hM-valued second Bianchi, three vertical directions ---
    {
        IdentityDef& d111 = def("bianchi.11.1");
        for (std::size_t l = 0; l < n; ++l)
            for (std::size_t q = 0; q < n; ++q)
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t a = 0; a < p; ++a)
                        for (std::size_t j = 0; j < n; ++j)
                            for (std::size_t b = 0; b < p; ++b)
                                for (std::size_t k = 0; k < n; ++k)
                                    for (std::size_t g = 0; g < p; ++g) {
                                        IdentityInstance inst;
                                        inst.indices = to_indices({l, q, i, a, j, b, k, g});
                                        auto at = [&](std::size_t ii, std::size_t aa,
                                                      std::size_t jj, std::size_t bb,
                                                      std::size_t kk, std::size_t gg) {
                                            inst.lhs.push_back(
                                                S_jk_V.at({l, q, ii, aa, jj, bb, kk, gg}));
                                            Expr ss;
                                            for (std::size_t m = 0; m < n; ++m)
                                                for (std::size_t u = 0; u < p; ++u)
                                                    ss += T.S_ij(m, u, ii, aa, jj, bb) *
                                                          K.S_jk(l, q, kk, gg, m, u);
                                            inst.lhs.push_back(ss);
                                        };
                                        at(i, a, j, b, k, g);
                                        at(j, b, k, g, i, a);
                                        at(k, g, i, a, j, b);
                                        d111.instances.push_back(std::move(inst));
                                    }
    }

    return defs;
}

}  // namespace jetconn::detail
