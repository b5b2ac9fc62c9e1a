#pragma once

#include <memory>

#include "jetconn/covderiv.hpp"
#include "jetconn/geometry.hpp"

namespace jetconn {

/// The nine effective torsion d-tensors of an h-normal connection.
/// Fiber index pairs are stored (spatial, temporal).
struct TorsionSet {
    Dims dims;
    ExprGrid R_ab;  // R^(m)_(u)ab      (m, u, a, b)
    ExprGrid T_aj;  // T^m_{aj}         (m, a, j)
    ExprGrid R_aj;  // R^(m)_(u)aj      (m, u, a, j)
    ExprGrid T_ij;  // T^m_{ij}         (m, i, j)
    ExprGrid R_ij;  // R^(m)_(u)ij      (m, u, i, j)
    ExprGrid P_aj;  // P^(m)(b)_(u)a(j) (m, u, a, j, b)
    ExprGrid P_c;   // P^{m(b)}_{i(j)}  (m, i, j, b), equals C^{m(b)}_{i(j)}
    ExprGrid P_ij;  // P^(m)(b)_(u)i(j) (m, u, i, j, b)
    ExprGrid S_ij;  // S^(m)(a)(b)_(u)(i)(j) (m, u, i, a, j, b)
};

/// The seven effective curvature d-tensors plus their fiber-block forms.
struct CurvatureSet {
    Dims dims;
    ExprGrid H;     // H^a_{ebc}        (a, e, b, c)
    ExprGrid R_bc;  // R^l_{ibc}        (l, i, b, c)
    ExprGrid R_bk;  // R^l_{ibk}        (l, i, b, k)
    ExprGrid R_jk;  // R^l_{ijk}        (l, i, j, k)
    ExprGrid P_bk;  // P^{l(c)}_{ib(k)} (l, i, b, k, c)
    ExprGrid P_jk;  // P^{l(c)}_{ij(k)} (l, i, j, k, c)
    ExprGrid S_jk;  // S^{l(b)(c)}_{i(j)(k)} (l, i, j, b, k, c)
    // fiber-block families, value pairs (l,e) out / (i,a) co:
    ExprGrid Rv_bc;  // delta^a_e R^l_{ibc} + delta^l_i H^a_{ebc}  (l, e, i, a, b, c)
    ExprGrid Rv_bk;  // delta^a_e R^l_{ibk}                        (l, e, i, a, b, k)
    ExprGrid Rv_jk;  // delta^a_e R^l_{ijk}                        (l, e, i, a, j, k)
    ExprGrid Pv_bk;  // delta^a_e P^{l(c)}_{ib(k)}                 (l, e, i, a, b, k, c)
    ExprGrid Pv_jk;  // delta^a_e P^{l(c)}_{ij(k)}                 (l, e, i, a, j, k, c)
    ExprGrid Sv_jk;  // delta^a_e S^{l(b)(c)}_{i(j)(k)}            (l, e, i, a, j, b, k, c)
};

/// The three deflection d-tensors.
struct DeflectionSet {
    Dims dims;
    ExprGrid Dbar;  // Dbar^(i)_(a)b (i, a, b)
    ExprGrid D;     // D^(i)_(a)k    (i, a, k)
    ExprGrid d;     // d^(i)(c)_(a)(k) (i, a, k, c)
};

/// Torsion of an h-normal connection, built from the closed forms and
/// cached on the connection.
std::shared_ptr<const TorsionSet> torsion_set(const GammaConnection& conn);

/// Curvature of an h-normal connection (uses the torsion R-families for the
/// C.R terms and covariant derivatives of the C family); cached.
std::shared_ptr<const CurvatureSet> curvature_set(const GammaConnection& conn);

/// Deflections by the closed expressions
///   Dbar = -M + G.x - H.x,  D = -N + L.x,  d = delta.delta + C.x.
DeflectionSet deflection_closed(const GammaConnection& conn);

/// Deflections as the three covariant derivatives of the Liouville tensor.
DeflectionSet deflection_direct(const GammaConnection& conn);

}  // namespace jetconn
