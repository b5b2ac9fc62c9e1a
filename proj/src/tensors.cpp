#include "jetconn/tensors.hpp"

#include <stdexcept>

namespace jetconn {

namespace {

void require_hnormal(const GammaConnection& conn) {
    if (!conn.h_normal)
        throw std::invalid_argument("torsion/curvature closed forms need an h-normal connection");
}

TorsionSet build_torsion(const GammaConnection& conn) {
    const Dims d = conn.dims;
    const std::size_t p = static_cast<std::size_t>(d.p);
    const std::size_t n = static_cast<std::size_t>(d.n);
    const ExprGrid& M = conn.nc.M;
    const ExprGrid& N = conn.nc.N;
    const HNormalSpec& s = conn.spec;

    TorsionSet t;
    t.dims = d;
    t.R_ab = ExprGrid({n, p, p, p});
    t.T_aj = ExprGrid({n, p, n});
    t.R_aj = ExprGrid({n, p, p, n});
    t.T_ij = ExprGrid({n, n, n});
    t.R_ij = ExprGrid({n, p, n, n});
    t.P_aj = ExprGrid({n, p, p, n, p});
    t.P_c = ExprGrid({n, n, n, p});
    t.P_ij = ExprGrid({n, p, n, n, p});
    t.S_ij = ExprGrid({n, p, n, p, n, p});

    auto dT = [&](const Expr& e, std::size_t a) {
        return adapted_derivative(conn.nc, e, AdaptedDir::DeltaT, static_cast<int>(a));
    };
    auto dX = [&](const Expr& e, std::size_t i) {
        return adapted_derivative(conn.nc, e, AdaptedDir::DeltaX, static_cast<int>(i));
    };
    auto dV = [&](const Expr& e, std::size_t j, std::size_t b) {
        return differentiate(e, Coord::fiber(static_cast<int>(j), static_cast<int>(b)));
    };

    for (std::size_t m = 0; m < n; ++m) {
        for (std::size_t u = 0; u < p; ++u) {
            // R^(m)_(u)ab = delta M^(m)_(u)a / delta t^b - delta M^(m)_(u)b / delta t^a
            for (std::size_t a = 0; a < p; ++a)
                for (std::size_t b = 0; b < p; ++b)
                    t.R_ab(m, u, a, b) = dT(M(m, u, a), b) - dT(M(m, u, b), a);

            // R^(m)_(u)aj = delta M^(m)_(u)a / delta x^j - delta N^(m)_(u)j / delta t^a
            for (std::size_t a = 0; a < p; ++a)
                for (std::size_t j = 0; j < n; ++j)
                    t.R_aj(m, u, a, j) = dX(M(m, u, a), j) - dT(N(m, u, j), a);

            // R^(m)_(u)ij = delta N^(m)_(u)i / delta x^j - delta N^(m)_(u)j / delta x^i
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    t.R_ij(m, u, i, j) = dX(N(m, u, i), j) - dX(N(m, u, j), i);

            // P^(m)(b)_(u)a(j) = dM^(m)_(u)a/dx^j_b - delta^b_u G^m_{ja} + delta^m_j H^b_{ua}
            for (std::size_t a = 0; a < p; ++a)
                for (std::size_t j = 0; j < n; ++j)
                    for (std::size_t b = 0; b < p; ++b) {
                        Expr e = dV(M(m, u, a), j, b);
                        if (b == u) e -= s.G(m, j, a);
                        if (m == j) e += s.H(b, u, a);
                        t.P_aj(m, u, a, j, b) = e;
                    }

            // P^(m)(b)_(u)i(j) = dN^(m)_(u)i/dx^j_b - delta^b_u L^m_{ji}
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    for (std::size_t b = 0; b < p; ++b) {
                        Expr e = dV(N(m, u, i), j, b);
                        if (b == u) e -= s.L(m, j, i);
                        t.P_ij(m, u, i, j, b) = e;
                    }

            // S^(m)(a)(b)_(u)(i)(j) = delta^a_u C^{m(b)}_{i(j)} - delta^b_u C^{m(a)}_{j(i)}
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t a = 0; a < p; ++a)
                    for (std::size_t j = 0; j < n; ++j)
                        for (std::size_t b = 0; b < p; ++b) {
                            Expr e;
                            if (a == u) e += s.C(m, i, j, b);
                            if (b == u) e -= s.C(m, j, i, a);
                            t.S_ij(m, u, i, a, j, b) = e;
                        }
        }

        // T^m_{aj} = -G^m_{ja};  T^m_{ij} = L^m_{ij} - L^m_{ji};  P = C
        for (std::size_t a = 0; a < p; ++a)
            for (std::size_t j = 0; j < n; ++j)
                t.T_aj(m, a, j) = -s.G(m, j, a);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                t.T_ij(m, i, j) = s.L(m, i, j) - s.L(m, j, i);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t b = 0; b < p; ++b)
                    t.P_c(m, i, j, b) = s.C(m, i, j, b);
    }

    return t;
}

CurvatureSet build_curvature(const GammaConnection& conn, const TorsionSet& tor) {
    const Dims d = conn.dims;
    const std::size_t p = static_cast<std::size_t>(d.p);
    const std::size_t n = static_cast<std::size_t>(d.n);
    const HNormalSpec& s = conn.spec;

    CurvatureSet c;
    c.dims = d;
    c.H = ExprGrid({p, p, p, p});
    c.R_bc = ExprGrid({n, n, p, p});
    c.R_bk = ExprGrid({n, n, p, n});
    c.R_jk = ExprGrid({n, n, n, n});
    c.P_bk = ExprGrid({n, n, p, n, p});
    c.P_jk = ExprGrid({n, n, n, n, p});
    c.S_jk = ExprGrid({n, n, n, p, n, p});

    auto dT = [&](const Expr& e, std::size_t a) {
        return adapted_derivative(conn.nc, e, AdaptedDir::DeltaT, static_cast<int>(a));
    };
    auto dX = [&](const Expr& e, std::size_t i) {
        return adapted_derivative(conn.nc, e, AdaptedDir::DeltaX, static_cast<int>(i));
    };
    auto dV = [&](const Expr& e, std::size_t k2, std::size_t c2) {
        return differentiate(e, Coord::fiber(static_cast<int>(k2), static_cast<int>(c2)));
    };
    auto tcoord = [](std::size_t a) { return Coord::temporal(static_cast<int>(a)); };

    // H^a_{ebc} = dH^a_{eb}/dt^c - dH^a_{ec}/dt^b + H^m_{eb}H^a_{mc} - H^m_{ec}H^a_{mb}
    for (std::size_t a = 0; a < p; ++a)
        for (std::size_t e = 0; e < p; ++e)
            for (std::size_t b = 0; b < p; ++b)
                for (std::size_t g = 0; g < p; ++g) {
                    Expr sum = differentiate(s.H(a, e, b), tcoord(g)) -
                               differentiate(s.H(a, e, g), tcoord(b));
                    for (std::size_t mu = 0; mu < p; ++mu)
                        sum += s.H(mu, e, b) * s.H(a, mu, g) - s.H(mu, e, g) * s.H(a, mu, b);
                    c.H(a, e, b, g) = sum;
                }

    // covariant derivatives of the C family, signature [SU, SL, FC]
    const DTensor C_tensor(Signature({SlotKind::SU, SlotKind::SL, SlotKind::FC}, d),
                           conn.spec.C);
    const DTensor C_T = cd_temporal(C_tensor, conn);  // (l, i, k, c, b)
    const DTensor C_M = cd_spatial(C_tensor, conn);   // (l, i, k, c, j)

    for (std::size_t l = 0; l < n; ++l) {
        for (std::size_t i = 0; i < n; ++i) {
            // R^l_{ibc}
            for (std::size_t b = 0; b < p; ++b)
                for (std::size_t g = 0; g < p; ++g) {
                    Expr sum = dT(s.G(l, i, b), g) - dT(s.G(l, i, g), b);
                    for (std::size_t m = 0; m < n; ++m)
                        sum += s.G(m, i, b) * s.G(l, m, g) - s.G(m, i, g) * s.G(l, m, b);
                    for (std::size_t m = 0; m < n; ++m)
                        for (std::size_t u = 0; u < p; ++u)
                            sum += s.C(l, i, m, u) * tor.R_ab(m, u, b, g);
                    c.R_bc(l, i, b, g) = sum;
                }

            // R^l_{ibk}
            for (std::size_t b = 0; b < p; ++b)
                for (std::size_t k = 0; k < n; ++k) {
                    Expr sum = dX(s.G(l, i, b), k) - dT(s.L(l, i, k), b);
                    for (std::size_t m = 0; m < n; ++m)
                        sum += s.G(m, i, b) * s.L(l, m, k) - s.L(m, i, k) * s.G(l, m, b);
                    for (std::size_t m = 0; m < n; ++m)
                        for (std::size_t u = 0; u < p; ++u)
                            sum += s.C(l, i, m, u) * tor.R_aj(m, u, b, k);
                    c.R_bk(l, i, b, k) = sum;
                }

            // R^l_{ijk}
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k) {
                    Expr sum = dX(s.L(l, i, j), k) - dX(s.L(l, i, k), j);
                    for (std::size_t m = 0; m < n; ++m)
                        sum += s.L(m, i, j) * s.L(l, m, k) - s.L(m, i, k) * s.L(l, m, j);
                    for (std::size_t m = 0; m < n; ++m)
                        for (std::size_t u = 0; u < p; ++u)
                            sum += s.C(l, i, m, u) * tor.R_ij(m, u, j, k);
                    c.R_jk(l, i, j, k) = sum;
                }

            // P^{l(c)}_{ib(k)} = dG^l_{ib}/dx^k_c - C^{l(c)}_{i(k)/b} + C^{l(u)}_{i(m)} P^(m)(c)_(u)b(k)
            for (std::size_t b = 0; b < p; ++b)
                for (std::size_t k = 0; k < n; ++k)
                    for (std::size_t g = 0; g < p; ++g) {
                        Expr sum = dV(s.G(l, i, b), k, g) - C_T.grid()(l, i, k, g, b);
                        for (std::size_t m = 0; m < n; ++m)
                            for (std::size_t u = 0; u < p; ++u)
                                sum += s.C(l, i, m, u) * tor.P_aj(m, u, b, k, g);
                        c.P_bk(l, i, b, k, g) = sum;
                    }

            // P^{l(c)}_{ij(k)} = dL^l_{ij}/dx^k_c - C^{l(c)}_{i(k)|j} + C^{l(u)}_{i(m)} P^(m)(c)_(u)j(k)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k)
                    for (std::size_t g = 0; g < p; ++g) {
                        Expr sum = dV(s.L(l, i, j), k, g) - C_M.grid()(l, i, k, g, j);
                        for (std::size_t m = 0; m < n; ++m)
                            for (std::size_t u = 0; u < p; ++u)
                                sum += s.C(l, i, m, u) * tor.P_ij(m, u, j, k, g);
                        c.P_jk(l, i, j, k, g) = sum;
                    }

            // S^{l(b)(c)}_{i(j)(k)}
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t b = 0; b < p; ++b)
                    for (std::size_t k = 0; k < n; ++k)
                        for (std::size_t g = 0; g < p; ++g) {
                            Expr sum = dV(s.C(l, i, j, b), k, g) - dV(s.C(l, i, k, g), j, b);
                            for (std::size_t m = 0; m < n; ++m)
                                sum += s.C(m, i, j, b) * s.C(l, m, k, g) -
                                       s.C(m, i, k, g) * s.C(l, m, j, b);
                            c.S_jk(l, i, j, b, k, g) = sum;
                        }
        }
    }

    // fiber-block families (delta multiples; Rv_bc also carries the H block)
    c.Rv_bc = ExprGrid({n, p, n, p, p, p});
    c.Rv_bk = ExprGrid({n, p, n, p, p, n});
    c.Rv_jk = ExprGrid({n, p, n, p, n, n});
    c.Pv_bk = ExprGrid({n, p, n, p, p, n, p});
    c.Pv_jk = ExprGrid({n, p, n, p, n, n, p});
    c.Sv_jk = ExprGrid({n, p, n, p, n, p, n, p});
    for (std::size_t l = 0; l < n; ++l)
        for (std::size_t e = 0; e < p; ++e)
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t a = 0; a < p; ++a) {
                    const bool de = a == e;  // delta^a_e
                    const bool dl = l == i;  // delta^l_i
                    for (std::size_t b = 0; b < p; ++b) {
                        for (std::size_t g = 0; g < p; ++g) {
                            Expr v;
                            if (de) v += c.R_bc(l, i, b, g);
                            if (dl) v += c.H(a, e, b, g);
                            c.Rv_bc(l, e, i, a, b, g) = v;
                        }
                        for (std::size_t k = 0; k < n; ++k) {
                            if (de) c.Rv_bk(l, e, i, a, b, k) = c.R_bk(l, i, b, k);
                            for (std::size_t g = 0; g < p; ++g)
                                if (de) c.Pv_bk(l, e, i, a, b, k, g) = c.P_bk(l, i, b, k, g);
                        }
                    }
                    for (std::size_t j = 0; j < n; ++j)
                        for (std::size_t k = 0; k < n; ++k) {
                            if (de) c.Rv_jk(l, e, i, a, j, k) = c.R_jk(l, i, j, k);
                            for (std::size_t g = 0; g < p; ++g)
                                if (de) c.Pv_jk(l, e, i, a, j, k, g) = c.P_jk(l, i, j, k, g);
                        }
                    if (de)
                        for (std::size_t j = 0; j < n; ++j)
                            for (std::size_t b = 0; b < p; ++b)
                                for (std::size_t k = 0; k < n; ++k)
                                    for (std::size_t g = 0; g < p; ++g)
                                        c.Sv_jk(l, e, i, a, j, b, k, g) =
                                            c.S_jk(l, i, j, b, k, g);
                }

    return c;
}

}  // namespace

std::shared_ptr<const TorsionSet> torsion_set(const GammaConnection& conn) {
    require_hnormal(conn);
    std::lock_guard<std::mutex> lock(conn.cache->mutex);
    if (!conn.cache->torsion)
        conn.cache->torsion = std::make_shared<const TorsionSet>(build_torsion(conn));
    return conn.cache->torsion;
}

std::shared_ptr<const CurvatureSet> curvature_set(const GammaConnection& conn) {
    require_hnormal(conn);
    auto tor = torsion_set(conn);
    std::lock_guard<std::mutex> lock(conn.cache->mutex);
    if (!conn.cache->curvature)
        conn.cache->curvature =
            std::make_shared<const CurvatureSet>(build_curvature(conn, *tor));
    return conn.cache->curvature;
}

DeflectionSet deflection_closed(const GammaConnection& conn) {
    require_hnormal(conn);
    const Dims dm = conn.dims;
    const std::size_t p = static_cast<std::size_t>(dm.p);
    const std::size_t n = static_cast<std::size_t>(dm.n);
    const HNormalSpec& s = conn.spec;

    DeflectionSet out;
    out.dims = dm;
    out.Dbar = ExprGrid({n, p, p});
    out.D = ExprGrid({n, p, n});
    out.d = ExprGrid({n, p, n, p});

    auto fiber = [](std::size_t i, std::size_t a) {
        return Expr::variable(Coord::fiber(static_cast<int>(i), static_cast<int>(a)));
    };

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t a = 0; a < p; ++a) {
            for (std::size_t b = 0; b < p; ++b) {
                Expr e = -conn.nc.M(i, a, b);
                for (std::size_t m = 0; m < n; ++m) e += s.G(i, m, b) * fiber(m, a);
                for (std::size_t u = 0; u < p; ++u) e -= s.H(u, a, b) * fiber(i, u);
                out.Dbar(i, a, b) = e;
            }
            for (std::size_t j = 0; j < n; ++j) {
                Expr e = -conn.nc.N(i, a, j);
                for (std::size_t m = 0; m < n; ++m) e += s.L(i, m, j) * fiber(m, a);
                out.D(i, a, j) = e;
            }
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t b = 0; b < p; ++b) {
                    Expr e;
                    if (i == j && a == b) e = Expr::constant(1.0);
                    for (std::size_t m = 0; m < n; ++m)
                        e += s.C(i, m, j, b) * fiber(m, a);
                    out.d(i, a, j, b) = e;
                }
        }

    return out;
}

DeflectionSet deflection_direct(const GammaConnection& conn) {
    const Dims dm = conn.dims;
    const DTensor lio = liouville(dm);
    DeflectionSet out;
    out.dims = dm;
    out.Dbar = cd_temporal(lio, conn).grid();
    out.D = cd_spatial(lio, conn).grid();
    out.d = cd_vertical(lio, conn).grid();
    return out;
}

}  // namespace jetconn
