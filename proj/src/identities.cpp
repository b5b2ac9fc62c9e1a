#include "jetconn/identities.hpp"

#include <cmath>
#include <stdexcept>

namespace jetconn {

DVectorField DVectorField::zero(Dims d) {
    DVectorField X;
    X.t = ExprGrid({static_cast<std::size_t>(d.p)});
    X.x = ExprGrid({static_cast<std::size_t>(d.n)});
    X.v = ExprGrid({static_cast<std::size_t>(d.n), static_cast<std::size_t>(d.p)});
    return X;
}

bool IdentityReport::all_pass() const {
    for (const IdentityEntry& e : entries)
        if (!e.pass) return false;
    return true;
}

namespace detail {

IdentityReport run_identities(const std::vector<IdentityDef>& defs,
                              std::span<const Point> points, double tol) {
    IdentityReport report;
    report.tolerance = tol;
    report.points_used = static_cast<int>(points.size());
    report.entries.resize(defs.size());
    for (std::size_t k = 0; k < defs.size(); ++k) {
        report.entries[k].id = defs[k].id;
        report.entries[k].max_residual = 0.0;
        if (!points.empty()) report.entries[k].worst_point = points[0];
        if (!defs[k].instances.empty())
            report.entries[k].worst_indices = defs[k].instances[0].indices;
    }

    for (const Point& q : points) {
        Evaluator ev(q);
        for (std::size_t k = 0; k < defs.size(); ++k) {
            IdentityEntry& entry = report.entries[k];
            for (const IdentityInstance& inst : defs[k].instances) {
                double lhs = 0.0, rhs = 0.0, max_term = 0.0;
                for (const Expr& e : inst.lhs) {
                    double v = ev.value(e);
                    lhs += v;
                    max_term = std::max(max_term, std::abs(v));
                }
                for (const Expr& e : inst.rhs) {
                    double v = ev.value(e);
                    rhs += v;
                    max_term = std::max(max_term, std::abs(v));
                }
                double res = std::abs(lhs - rhs) / (1.0 + max_term);
                if (res > entry.max_residual) {
                    entry.max_residual = res;
                    entry.worst_point = q;
                    entry.worst_indices = inst.indices;
                }
            }
        }
    }

    for (IdentityEntry& e : report.entries) e.pass = e.max_residual < tol;
    return report;
}

void require_cartan(const GammaConnection& conn, std::span<const Point> points) {
    if (!conn.h_normal)
        throw NonCartanError("identity suites need an h-normal connection");
    if (!is_cartan_type(conn.spec, points))
        throw NonCartanError(
            "connection is not of Cartan type (L or C is asymmetric in its lower spatial "
            "indices)");
}

}  // namespace detail

namespace {

using detail::IdentityDef;
using detail::IdentityInstance;

std::vector<int> tuple(std::initializer_list<std::size_t> idx) {
    std::vector<int> out;
    out.reserve(idx.size());
    for (std::size_t v : idx) out.push_back(static_cast<int>(v));
    return out;
}

// Derivative grids of one block of a d-vector field: first derivatives
// dT/dM/dV and the nine second derivatives, named by application order
// (dTM = first /b then |k; component order follows the derivative order).
struct BlockDerivatives {
    ExprGrid X;  // the block itself, fiber pairs flattened into grid axes
    DTensor dT, dM, dV;
    DTensor dTT, dTM, dMT, dMM, dTV, dVT, dMV, dVM, dVV;

    BlockDerivatives(const DTensor& block, const GammaConnection& conn)
        : X(block.grid()),
          dT(cd_temporal(block, conn)),
          dM(cd_spatial(block, conn)),
          dV(cd_vertical(block, conn)),
          dTT(cd_temporal(dT, conn)),
          dTM(cd_spatial(dT, conn)),
          dMT(cd_temporal(dM, conn)),
          dMM(cd_spatial(dM, conn)),
          dTV(cd_vertical(dT, conn)),
          dVT(cd_temporal(dV, conn)),
          dMV(cd_vertical(dM, conn)),
          dVM(cd_spatial(dV, conn)),
          dVV(cd_vertical(dV, conn)) {}
};

}  // namespace

IdentityReport ricci_suite(const GammaConnection& conn, const DVectorField& X,
                           std::span<const Point> points, double tol) {
    detail::require_cartan(conn, points);
    const Dims dm = conn.dims;
    const std::size_t p = static_cast<std::size_t>(dm.p);
    const std::size_t n = static_cast<std::size_t>(dm.n);
    const auto tor = torsion_set(conn);
    const auto cur = curvature_set(conn);
    const ExprGrid& Cs = conn.spec.C;

    const BlockDerivatives T(DTensor(Signature({SlotKind::TU}, dm), X.t), conn);
    const BlockDerivatives M(DTensor(Signature({SlotKind::SU}, dm), X.x), conn);
    const BlockDerivatives V(DTensor(Signature({SlotKind::FU}, dm), X.v), conn);

    std::vector<IdentityDef> defs;

    // Each block contributes six identities; the hM and v blocks add the
    // curvature contraction against the block's own components, and the v
    // block the extra H-curvature term with a minus sign.
    enum class Block { HT, HM, V };
    auto add_block = [&](Block which, const BlockDerivatives& B, const char* name) {
        // free value indices: hT -> a in p; hM -> i in n; v -> (i, a)
        std::vector<std::vector<std::size_t>> values;
        if (which == Block::HT) {
            for (std::size_t a = 0; a < p; ++a) values.push_back({a});
        } else if (which == Block::HM) {
            for (std::size_t i = 0; i < n; ++i) values.push_back({i});
        } else {
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t a = 0; a < p; ++a) values.push_back({i, a});
        }

        auto d1 = [&](const DTensor& t, const std::vector<std::size_t>& val,
                      std::initializer_list<std::size_t> rest) {
            std::vector<std::size_t> idx = val;
            idx.insert(idx.end(), rest.begin(), rest.end());
            return t.grid().at(idx);
        };
        // curvature contraction sum_m X^m * K(l=value, m, ...) for hM/v;
        // the v block contracts its spatial index and keeps its temporal one.
        auto first_term = [&](const ExprGrid& K, const std::vector<std::size_t>& val,
                              std::initializer_list<std::size_t> rest) {
            Expr sum;
            if (which == Block::HT) return sum;
            for (std::size_t m = 0; m < n; ++m) {
                std::vector<std::size_t> kidx{val[0], m};
                kidx.insert(kidx.end(), rest.begin(), rest.end());
                const Expr& comp =
                    which == Block::HM ? B.X(m) : B.X(m, val[1]);
                sum += comp * K.at(kidx);
            }
            return sum;
        };
        // contraction of the vertical derivative against a fiber-valued
        // torsion family: sum_{m,u} X..|^(u)_(m) * F(m, u, ...)
        auto vert_term = [&](const ExprGrid& F, const std::vector<std::size_t>& val,
                             std::initializer_list<std::size_t> rest) {
            Expr sum;
            for (std::size_t m = 0; m < n; ++m)
                for (std::size_t u = 0; u < p; ++u) {
                    std::vector<std::size_t> fidx{m, u};
                    fidx.insert(fidx.end(), rest.begin(), rest.end());
                    sum += d1(B.dV, val, {m, u}) * F.at(fidx);
                }
            return sum;
        };
        // contraction of the spatial derivative: sum_m X_{|m} * F(m, ...)
        auto spat_term = [&](const ExprGrid& F, const std::vector<std::size_t>& val,
                             std::initializer_list<std::size_t> rest) {
            Expr sum;
            for (std::size_t m = 0; m < n; ++m) {
                std::vector<std::size_t> fidx{m};
                fidx.insert(fidx.end(), rest.begin(), rest.end());
                sum += d1(B.dM, val, {m}) * F.at(fidx);
            }
            return sum;
        };
        auto d2 = [&](const DTensor& t, const std::vector<std::size_t>& val,
                      std::initializer_list<std::size_t> rest) {
            std::vector<std::size_t> idx = val;
            idx.insert(idx.end(), rest.begin(), rest.end());
            return t.grid().at(idx);
        };
        auto vidx = [&](const std::vector<std::size_t>& val,
                        std::initializer_list<std::size_t> rest) {
            std::vector<int> out;
            for (std::size_t v : val) out.push_back(static_cast<int>(v));
            for (std::size_t v : rest) out.push_back(static_cast<int>(v));
            return out;
        };

        IdentityDef one{std::string("ricci.") + name + ".1", {}};
        IdentityDef two{std::string("ricci.") + name + ".2", {}};
        IdentityDef three{std::string("ricci.") + name + ".3", {}};
        IdentityDef four{std::string("ricci.") + name + ".4", {}};
        IdentityDef five{std::string("ricci.") + name + ".5", {}};
        IdentityDef six{std::string("ricci.") + name + ".6", {}};

        for (const auto& val : values) {
            // 1: X_{/b/c} - X_{/c/b} = [X^m K] - X|(u)(m) R_ab   (+ v-block H term)
            for (std::size_t b = 0; b < p; ++b)
                for (std::size_t g = 0; g < p; ++g) {
                    IdentityInstance inst;
                    inst.indices = vidx(val, {b, g});
                    inst.lhs.push_back(d2(B.dTT, val, {b, g}));
                    inst.lhs.push_back(-d2(B.dTT, val, {g, b}));
                    inst.rhs.push_back(first_term(cur->R_bc, val, {b, g}));
                    if (which == Block::V) {
                        Expr hterm;
                        for (std::size_t u = 0; u < p; ++u)
                            hterm += B.X(val[0], u) * cur->H.at({u, val[1], b, g});
                        inst.rhs.push_back(-hterm);
                    } else if (which == Block::HT) {
                        Expr hterm;
                        for (std::size_t u = 0; u < p; ++u)
                            hterm += B.X(u) * cur->H.at({val[0], u, b, g});
                        inst.rhs.push_back(hterm);
                    }
                    inst.rhs.push_back(-vert_term(tor->R_ab, val, {b, g}));
                    one.instances.push_back(std::move(inst));
                }

            // 2: X_{/b|k} - X_{|k/b} = [X^m R_bk] - X_{|m} T_aj - X|(u)(m) R_aj
            for (std::size_t b = 0; b < p; ++b)
                for (std::size_t k = 0; k < n; ++k) {
                    IdentityInstance inst;
                    inst.indices = vidx(val, {b, k});
                    inst.lhs.push_back(d2(B.dTM, val, {b, k}));
                    inst.lhs.push_back(-d2(B.dMT, val, {k, b}));
                    inst.rhs.push_back(first_term(cur->R_bk, val, {b, k}));
                    inst.rhs.push_back(-spat_term(tor->T_aj, val, {b, k}));
                    inst.rhs.push_back(-vert_term(tor->R_aj, val, {b, k}));
                    two.instances.push_back(std::move(inst));
                }

            // 3: X_{|j|k} - X_{|k|j} = [X^m R_jk] - X|(u)(m) R_ij
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k) {
                    IdentityInstance inst;
                    inst.indices = vidx(val, {j, k});
                    inst.lhs.push_back(d2(B.dMM, val, {j, k}));
                    inst.lhs.push_back(-d2(B.dMM, val, {k, j}));
                    inst.rhs.push_back(first_term(cur->R_jk, val, {j, k}));
                    inst.rhs.push_back(-vert_term(tor->R_ij, val, {j, k}));
                    three.instances.push_back(std::move(inst));
                }

            // 4: X_{/b}|(c)(k) - X|(c)(k)/b = [X^m P_bk] - X|(u)(m) P_aj
            for (std::size_t b = 0; b < p; ++b)
                for (std::size_t k = 0; k < n; ++k)
                    for (std::size_t g = 0; g < p; ++g) {
                        IdentityInstance inst;
                        inst.indices = vidx(val, {b, k, g});
                        inst.lhs.push_back(d2(B.dTV, val, {b, k, g}));
                        inst.lhs.push_back(-d2(B.dVT, val, {k, g, b}));
                        inst.rhs.push_back(first_term(cur->P_bk, val, {b, k, g}));
                        inst.rhs.push_back(-vert_term(tor->P_aj, val, {b, k, g}));
                        four.instances.push_back(std::move(inst));
                    }

            // 5: X_{|j}|(c)(k) - X|(c)(k)|j = [X^m P_jk] - X_{|m} C - X|(u)(m) P_ij
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k)
                    for (std::size_t g = 0; g < p; ++g) {
                        IdentityInstance inst;
                        inst.indices = vidx(val, {j, k, g});
                        inst.lhs.push_back(d2(B.dMV, val, {j, k, g}));
                        inst.lhs.push_back(-d2(B.dVM, val, {k, g, j}));
                        inst.rhs.push_back(first_term(cur->P_jk, val, {j, k, g}));
                        Expr cterm;
                        for (std::size_t m = 0; m < n; ++m)
                            cterm += d1(B.dM, val, {m}) * Cs(m, j, k, g);
                        inst.rhs.push_back(-cterm);
                        inst.rhs.push_back(-vert_term(tor->P_ij, val, {j, k, g}));
                        five.instances.push_back(std::move(inst));
                    }

            // 6: X|(b)(j)|(c)(k) - X|(c)(k)|(b)(j) = [X^m S_jk] - X|(u)(m) S_ij
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t b = 0; b < p; ++b)
                    for (std::size_t k = 0; k < n; ++k)
                        for (std::size_t g = 0; g < p; ++g) {
                            IdentityInstance inst;
                            inst.indices = vidx(val, {j, b, k, g});
                            inst.lhs.push_back(d2(B.dVV, val, {j, b, k, g}));
                            inst.lhs.push_back(-d2(B.dVV, val, {k, g, j, b}));
                            inst.rhs.push_back(first_term(cur->S_jk, val, {j, b, k, g}));
                            inst.rhs.push_back(-vert_term(tor->S_ij, val, {j, b, k, g}));
                            six.instances.push_back(std::move(inst));
                        }
        }

        defs.push_back(std::move(one));
        defs.push_back(std::move(two));
        defs.push_back(std::move(three));
        defs.push_back(std::move(four));
        defs.push_back(std::move(five));
        defs.push_back(std::move(six));
    };

    add_block(Block::HT, T, "hT");
    add_block(Block::HM, M, "hM");
    add_block(Block::V, V, "v");

    return detail::run_identities(defs, points, tol);
}

IdentityReport deflection_suite(const GammaConnection& conn, std::span<const Point> points,
                                double tol) {
    detail::require_cartan(conn, points);
    const Dims dm = conn.dims;
    const std::size_t p = static_cast<std::size_t>(dm.p);
    const std::size_t n = static_cast<std::size_t>(dm.n);
    const auto tor = torsion_set(conn);
    const auto cur = curvature_set(conn);
    const ExprGrid& Cs = conn.spec.C;

    const DeflectionSet defl = deflection_closed(conn);
    const DTensor Dbar(Signature({SlotKind::FU, SlotKind::TL}, dm), defl.Dbar);
    const DTensor Dsp(Signature({SlotKind::FU, SlotKind::SL}, dm), defl.D);
    const DTensor dv(Signature({SlotKind::FU, SlotKind::FC}, dm), defl.d);

    const DTensor Dbar_T = cd_temporal(Dbar, conn);  // (i, a, b, g)
    const DTensor Dbar_M = cd_spatial(Dbar, conn);   // (i, a, b, k)
    const DTensor Dbar_V = cd_vertical(Dbar, conn);  // (i, a, b, k, g)
    const DTensor Dsp_T = cd_temporal(Dsp, conn);    // (i, a, k, b)
    const DTensor Dsp_M = cd_spatial(Dsp, conn);     // (i, a, j, k)
    const DTensor Dsp_V = cd_vertical(Dsp, conn);    // (i, a, j, k, g)
    const DTensor dv_T = cd_temporal(dv, conn);      // (i, a, k, g, b)
    const DTensor dv_M = cd_spatial(dv, conn);       // (i, a, k, g, j)
    const DTensor dv_V = cd_vertical(dv, conn);      // (i, a, j, b, k, g)

    auto fiber = [](std::size_t i, std::size_t a) {
        return Expr::variable(Coord::fiber(static_cast<int>(i), static_cast<int>(a)));
    };
    // sum_{m,u} d^(i)(u)_(a)(m) * F(m, u, rest...)
    auto d_term = [&](const ExprGrid& F, std::size_t i, std::size_t a,
                      std::initializer_list<std::size_t> rest) {
        Expr sum;
        for (std::size_t m = 0; m < n; ++m)
            for (std::size_t u = 0; u < p; ++u) {
                std::vector<std::size_t> fidx{m, u};
                fidx.insert(fidx.end(), rest.begin(), rest.end());
                sum += defl.d(i, a, m, u) * F.at(fidx);
            }
        return sum;
    };
    // sum_m x^m_a * K(l, m, rest...)
    auto x_term = [&](const ExprGrid& K, std::size_t l, std::size_t a,
                      std::initializer_list<std::size_t> rest) {
        Expr sum;
        for (std::size_t m = 0; m < n; ++m) {
            std::vector<std::size_t> kidx{l, m};
            kidx.insert(kidx.end(), rest.begin(), rest.end());
            sum += fiber(m, a) * K.at(kidx);
        }
        return sum;
    };

    std::vector<IdentityDef> defs(6);
    for (int k = 0; k < 6; ++k) defs[k].id = "deflection." + std::to_string(k + 1);

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t a = 0; a < p; ++a) {
            // 1: Dbar_{b/g} - Dbar_{g/b} = x R_bc - x H - d R_ab
            for (std::size_t b = 0; b < p; ++b)
                for (std::size_t g = 0; g < p; ++g) {
                    IdentityInstance inst;
                    inst.indices = tuple({i, a, b, g});
                    inst.lhs.push_back(Dbar_T.grid()(i, a, b, g));
                    inst.lhs.push_back(-Dbar_T.grid()(i, a, g, b));
                    inst.rhs.push_back(x_term(cur->R_bc, i, a, {b, g}));
                    Expr hterm;
                    for (std::size_t u = 0; u < p; ++u)
                        hterm += fiber(i, u) * cur->H.at({u, a, b, g});
                    inst.rhs.push_back(-hterm);
                    inst.rhs.push_back(-d_term(tor->R_ab, i, a, {b, g}));
                    defs[0].instances.push_back(std::move(inst));
                }
            // 2: Dbar_{b|k} - D_{k/b} = x R_bk - D_m T_aj - d R_aj
            for (std::size_t b = 0; b < p; ++b)
                for (std::size_t k = 0; k < n; ++k) {
                    IdentityInstance inst;
                    inst.indices = tuple({i, a, b, k});
                    inst.lhs.push_back(Dbar_M.grid()(i, a, b, k));
                    inst.lhs.push_back(-Dsp_T.grid()(i, a, k, b));
                    inst.rhs.push_back(x_term(cur->R_bk, i, a, {b, k}));
                    Expr dterm;
                    for (std::size_t m = 0; m < n; ++m)
                        dterm += defl.D(i, a, m) * tor->T_aj(m, b, k);
                    inst.rhs.push_back(-dterm);
                    inst.rhs.push_back(-d_term(tor->R_aj, i, a, {b, k}));
                    defs[1].instances.push_back(std::move(inst));
                }
            // 3: D_{j|k} - D_{k|j} = x R_jk - d R_ij
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k) {
                    IdentityInstance inst;
                    inst.indices = tuple({i, a, j, k});
                    inst.lhs.push_back(Dsp_M.grid()(i, a, j, k));
                    inst.lhs.push_back(-Dsp_M.grid()(i, a, k, j));
                    inst.rhs.push_back(x_term(cur->R_jk, i, a, {j, k}));
                    inst.rhs.push_back(-d_term(tor->R_ij, i, a, {j, k}));
                    defs[2].instances.push_back(std::move(inst));
                }
            // 4: Dbar_b|(g)(k) - d(g)(k)_{/b} = x P_bk - d P_aj
            for (std::size_t b = 0; b < p; ++b)
                for (std::size_t k = 0; k < n; ++k)
                    for (std::size_t g = 0; g < p; ++g) {
                        IdentityInstance inst;
                        inst.indices = tuple({i, a, b, k, g});
                        inst.lhs.push_back(Dbar_V.grid()(i, a, b, k, g));
                        inst.lhs.push_back(-dv_T.grid()(i, a, k, g, b));
                        inst.rhs.push_back(x_term(cur->P_bk, i, a, {b, k, g}));
                        inst.rhs.push_back(-d_term(tor->P_aj, i, a, {b, k, g}));
                        defs[3].instances.push_back(std::move(inst));
                    }
            // 5: D_j|(g)(k) - d(g)(k)_{|j} = x P_jk - D_m C - d P_ij
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k)
                    for (std::size_t g = 0; g < p; ++g) {
                        IdentityInstance inst;
                        inst.indices = tuple({i, a, j, k, g});
                        inst.lhs.push_back(Dsp_V.grid()(i, a, j, k, g));
                        inst.lhs.push_back(-dv_M.grid()(i, a, k, g, j));
                        inst.rhs.push_back(x_term(cur->P_jk, i, a, {j, k, g}));
                        Expr cterm;
                        for (std::size_t m = 0; m < n; ++m)
                            cterm += defl.D(i, a, m) * Cs(m, j, k, g);
                        inst.rhs.push_back(-cterm);
                        inst.rhs.push_back(-d_term(tor->P_ij, i, a, {j, k, g}));
                        defs[4].instances.push_back(std::move(inst));
                    }
            // 6: d(b)(j)|(g)(k) - d(g)(k)|(b)(j) = x S_jk - d S_ij
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t b = 0; b < p; ++b)
                    for (std::size_t k = 0; k < n; ++k)
                        for (std::size_t g = 0; g < p; ++g) {
                            IdentityInstance inst;
                            inst.indices = tuple({i, a, j, b, k, g});
                            inst.lhs.push_back(dv_V.grid()(i, a, j, b, k, g));
                            inst.lhs.push_back(-dv_V.grid()(i, a, k, g, j, b));
                            inst.rhs.push_back(x_term(cur->S_jk, i, a, {j, b, k, g}));
                            inst.rhs.push_back(-d_term(tor->S_ij, i, a, {j, b, k, g}));
                            defs[5].instances.push_back(std::move(inst));
                        }
        }

    return detail::run_identities(defs, points, tol);
}

IdentityReport bianchi_suite(const GammaConnection& conn, std::span<const Point> points,
                             double tol) {
    detail::require_cartan(conn, points);
    return detail::run_identities(detail::bianchi_definitions(conn), points, tol);
}

namespace {

void antisym_instances(IdentityDef& def, const ExprGrid& F, std::size_t ax1, std::size_t ax2) {
    // residual F(..., x, ..., y, ...) + F(..., y, ..., x, ...)
    for_each_index(F.shape(), [&](std::span<const std::size_t> idx) {
        if (idx[ax1] > idx[ax2]) return;
        std::vector<std::size_t> swapped(idx.begin(), idx.end());
        std::swap(swapped[ax1], swapped[ax2]);
        IdentityInstance inst;
        inst.indices.assign(idx.begin(), idx.end());
        inst.lhs.push_back(F.at(idx));
        inst.lhs.push_back(F.at(swapped));
        def.instances.push_back(std::move(inst));
    });
}

void pair_antisym_instances(IdentityDef& def, const ExprGrid& F, std::size_t ax1,
                            std::size_t ax2) {
    // pairs occupy (ax1, ax1+1) and (ax2, ax2+1); swapped jointly
    for_each_index(F.shape(), [&](std::span<const std::size_t> idx) {
        std::vector<std::size_t> swapped(idx.begin(), idx.end());
        std::swap(swapped[ax1], swapped[ax2]);
        std::swap(swapped[ax1 + 1], swapped[ax2 + 1]);
        if (std::lexicographical_compare(swapped.begin(), swapped.end(), idx.begin(),
                                         idx.end()))
            return;
        IdentityInstance inst;
        inst.indices.assign(idx.begin(), idx.end());
        inst.lhs.push_back(F.at(idx));
        inst.lhs.push_back(F.at(swapped));
        def.instances.push_back(std::move(inst));
    });
}

void zero_instances(IdentityDef& def, const ExprGrid& F) {
    for_each_index(F.shape(), [&](std::span<const std::size_t> idx) {
        IdentityInstance inst;
        inst.indices.assign(idx.begin(), idx.end());
        inst.lhs.push_back(F.at(idx));
        def.instances.push_back(std::move(inst));
    });
}

void match_instances(IdentityDef& def, const ExprGrid& F, const ExprGrid& G) {
    for_each_index(F.shape(), [&](std::span<const std::size_t> idx) {
        IdentityInstance inst;
        inst.indices.assign(idx.begin(), idx.end());
        inst.lhs.push_back(F.at(idx));
        inst.rhs.push_back(G.at(idx));
        def.instances.push_back(std::move(inst));
    });
}

}  // namespace

IdentityReport torsion_check_suite(const GammaConnection& conn, std::span<const Point> points,
                                   double tol, bool berwald_reference) {
    const Dims dm = conn.dims;
    const std::size_t p = static_cast<std::size_t>(dm.p);
    const std::size_t n = static_cast<std::size_t>(dm.n);
    const auto tor = torsion_set(conn);

    std::vector<IdentityDef> defs;
    defs.reserve(9);  // references below must stay valid
    auto& R_ab = defs.emplace_back(IdentityDef{"torsion.R_ab", {}});
    antisym_instances(R_ab, tor->R_ab, 2, 3);
    auto& T_aj = defs.emplace_back(IdentityDef{"torsion.T_aj", {}});
    auto& R_aj = defs.emplace_back(IdentityDef{"torsion.R_aj", {}});
    auto& T_ij = defs.emplace_back(IdentityDef{"torsion.T_ij", {}});
    antisym_instances(T_ij, tor->T_ij, 1, 2);
    auto& R_ij = defs.emplace_back(IdentityDef{"torsion.R_ij", {}});
    antisym_instances(R_ij, tor->R_ij, 2, 3);
    auto& P_aj = defs.emplace_back(IdentityDef{"torsion.P_aj", {}});
    auto& P_c = defs.emplace_back(IdentityDef{"torsion.P_c", {}});
    auto& P_ij = defs.emplace_back(IdentityDef{"torsion.P_ij", {}});
    auto& S_ij = defs.emplace_back(IdentityDef{"torsion.S_ij", {}});
    pair_antisym_instances(S_ij, tor->S_ij, 2, 4);

    if (berwald_reference) {
        // Only R_ab and R_ij survive:
        //   R_ab = -H^c_{uab} x^m_c,  R_ij = r^m_{ijl} x^l_u.
        const auto cur = curvature_set(conn);
        ExprGrid R_ab_ref({n, p, p, p});
        for (std::size_t m = 0; m < n; ++m)
            for (std::size_t u = 0; u < p; ++u)
                for (std::size_t a = 0; a < p; ++a)
                    for (std::size_t b = 0; b < p; ++b) {
                        Expr sum;
                        for (std::size_t c = 0; c < p; ++c)
                            sum += cur->H(c, u, a, b) *
                                   Expr::variable(
                                       Coord::fiber(static_cast<int>(m), static_cast<int>(c)));
                        R_ab_ref(m, u, a, b) = -sum;
                    }
        match_instances(R_ab, tor->R_ab, R_ab_ref);

        // spatial metric curvature from the Berwald L (= Christoffels of phi)
        ExprGrid r({n, n, n, n});
        const ExprGrid& L = conn.spec.L;
        auto xcoord = [](std::size_t i) { return Coord::spatial(static_cast<int>(i)); };
        for (std::size_t l = 0; l < n; ++l)
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    for (std::size_t k = 0; k < n; ++k) {
                        Expr sum = differentiate(L(l, i, j), xcoord(k)) -
                                   differentiate(L(l, i, k), xcoord(j));
                        for (std::size_t m = 0; m < n; ++m)
                            sum += L(m, i, j) * L(l, m, k) - L(m, i, k) * L(l, m, j);
                        r(l, i, j, k) = sum;
                    }
        // the summed slot is the first lower index: R^(m)_(u)ij = r^m_{lij} x^l_u
        ExprGrid R_ij_ref({n, p, n, n});
        for (std::size_t m = 0; m < n; ++m)
            for (std::size_t u = 0; u < p; ++u)
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = 0; j < n; ++j) {
                        Expr sum;
                        for (std::size_t l = 0; l < n; ++l)
                            sum += r(m, l, i, j) *
                                   Expr::variable(
                                       Coord::fiber(static_cast<int>(l), static_cast<int>(u)));
                        R_ij_ref(m, u, i, j) = sum;
                    }
        match_instances(R_ij, tor->R_ij, R_ij_ref);

        zero_instances(T_aj, tor->T_aj);
        zero_instances(R_aj, tor->R_aj);
        zero_instances(T_ij, tor->T_ij);
        zero_instances(P_aj, tor->P_aj);
        zero_instances(P_c, tor->P_c);
        zero_instances(P_ij, tor->P_ij);
        zero_instances(S_ij, tor->S_ij);
    }

    return detail::run_identities(defs, points, tol);
}

IdentityReport curvature_check_suite(const GammaConnection& conn,
                                     std::span<const Point> points, double tol,
                                     bool berwald_reference) {
    const auto cur = curvature_set(conn);

    std::vector<IdentityDef> defs;
    defs.reserve(7);  // references below must stay valid
    auto& H = defs.emplace_back(IdentityDef{"curvature.H", {}});
    antisym_instances(H, cur->H, 2, 3);
    auto& R_bc = defs.emplace_back(IdentityDef{"curvature.R_bc", {}});
    antisym_instances(R_bc, cur->R_bc, 2, 3);
    auto& R_bk = defs.emplace_back(IdentityDef{"curvature.R_bk", {}});
    auto& R_jk = defs.emplace_back(IdentityDef{"curvature.R_jk", {}});
    antisym_instances(R_jk, cur->R_jk, 2, 3);
    auto& P_bk = defs.emplace_back(IdentityDef{"curvature.P_bk", {}});
    auto& P_jk = defs.emplace_back(IdentityDef{"curvature.P_jk", {}});
    auto& S_jk = defs.emplace_back(IdentityDef{"curvature.S_jk", {}});
    pair_antisym_instances(S_jk, cur->S_jk, 2, 4);

    if (berwald_reference) {
        const Dims dm = conn.dims;
        const std::size_t n = static_cast<std::size_t>(dm.n);
        // R_jk must equal the spatial metric curvature r^l_{ijk}
        ExprGrid r({n, n, n, n});
        const ExprGrid& L = conn.spec.L;
        auto xcoord = [](std::size_t i) { return Coord::spatial(static_cast<int>(i)); };
        for (std::size_t l = 0; l < n; ++l)
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    for (std::size_t k = 0; k < n; ++k) {
                        Expr sum = differentiate(L(l, i, j), xcoord(k)) -
                                   differentiate(L(l, i, k), xcoord(j));
                        for (std::size_t m = 0; m < n; ++m)
                            sum += L(m, i, j) * L(l, m, k) - L(m, i, k) * L(l, m, j);
                        r(l, i, j, k) = sum;
                    }
        match_instances(R_jk, cur->R_jk, r);
        zero_instances(R_bc, cur->R_bc);
        zero_instances(R_bk, cur->R_bk);
        zero_instances(P_bk, cur->P_bk);
        zero_instances(P_jk, cur->P_jk);
        zero_instances(S_jk, cur->S_jk);
    }

    return detail::run_identities(defs, points, tol);
}

}  // namespace jetconn
