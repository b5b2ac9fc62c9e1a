#pragma once

#include <memory>
#include <mutex>
#include <span>
#include <stdexcept>

#include "jetconn/dtensor.hpp"
#include "jetconn/grid.hpp"

namespace jetconn {

enum class MetricKind : unsigned char { Temporal, Spatial };

struct MetricError : std::runtime_error {
    explicit MetricError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Semi-Riemannian metric on the temporal or the spatial factor. Entries of
/// a temporal metric may reference only t-variables, spatial only
/// x-variables. The inverse is computed symbolically (adjugate over
/// determinant), which caps the dimension at 4.
class Metric {
public:
    static Metric temporal(Dims dims, ExprGrid g);
    static Metric spatial(Dims dims, ExprGrid g);

    MetricKind kind() const { return kind_; }
    Dims dims() const { return dims_; }
    int dim() const { return dim_; }
    const ExprGrid& g() const { return g_; }
    const ExprGrid& inverse() const { return g_inv_; }
    const Expr& det() const { return det_; }

    /// Coordinate this metric's index direction refers to (0-based).
    Coord coordinate(int index) const;

private:
    Metric() = default;

    MetricKind kind_ = MetricKind::Temporal;
    Dims dims_;
    int dim_ = 0;
    ExprGrid g_;
    ExprGrid g_inv_;
    Expr det_;
};

/// Christoffel symbols of the second kind, axes (upper, lower, lower):
/// H^c_{ab} = 1/2 g^{cm} (d_a g_{mb} + d_b g_{am} - d_m g_{ab}).
ExprGrid christoffel(const Metric& m);

/// Curvature tensor of a metric connection built from its Christoffel grid,
/// axes (up, low, low, low):
/// K^a_{ebc} = d_c K^a_{eb} - d_b K^a_{ec} + K^m_{eb} K^a_{mc} - K^m_{ec} K^a_{mb},
/// where d_* differentiates along the metric's own coordinates.
ExprGrid metric_curvature(const Metric& m, const ExprGrid& chr);

/// Nonlinear connection: temporal components M^(j)_(b)a, axes (j, b, a), and
/// spatial components N^(j)_(b)i, axes (j, b, i).
struct NonlinearConnection {
    Dims dims;
    ExprGrid M;
    ExprGrid N;

    static NonlinearConnection zero(Dims d);
};

/// Canonical nonlinear connection of a metric pair:
///   M^(j)_(b)a = -H^c_{ab} x^j_c,   N^(j)_(b)i = gamma^j_{ik} x^k_b.
NonlinearConnection canonical_nonlinear(const Metric& h, const Metric& phi);

enum class AdaptedDir : unsigned char { DeltaT, DeltaX };

/// Adapted-frame derivative of a scalar:
///   delta e / delta t^a = d e/d t^a - M^(k)_(c)a * d e/d x^k_c
///   delta e / delta x^i = d e/d x^i - N^(k)_(c)i * d e/d x^k_c
Expr adapted_derivative(const NonlinearConnection& nc, const Expr& e, AdaptedDir dir,
                        int index);

/// The four effective coefficients of an h-normal Gamma-linear connection.
struct HNormalSpec {
    Dims dims;
    ExprGrid H;  // (c, a, b): H^c_{ab}, Christoffels of the temporal metric
    ExprGrid G;  // (k, i, c): G^k_{ic}
    ExprGrid L;  // (k, i, j): L^k_{ij}
    ExprGrid C;  // (k, i, j, c): C^{k(c)}_{i(j)}

    static HNormalSpec zero(Dims d, ExprGrid christoffels_of_h);
};

struct TorsionSet;
struct CurvatureSet;

namespace detail {
struct ConnCache {
    std::mutex mutex;
    std::shared_ptr<const TorsionSet> torsion;
    std::shared_ptr<const CurvatureSet> curvature;
};
}  // namespace detail

/// A Gamma-linear connection in local form: the nine coefficient families
/// over a nonlinear connection. Fiber-block grids pair output and input
/// fiber indices as (spatial, temporal).
struct GammaConnection {
    Dims dims;
    NonlinearConnection nc;

    ExprGrid Gbar;    // (a, b, c):          Gbar^a_{bc}
    ExprGrid Gs;      // (k, i, c):          G^k_{ic}
    ExprGrid Gblock;  // (k, a, i, b, c):    G^(k)(b)_(a)(i)c
    ExprGrid Lbar;    // (a, b, j):          Lbar^a_{bj}
    ExprGrid Ls;      // (k, i, j):          L^k_{ij}
    ExprGrid Lblock;  // (k, a, i, b, j):    L^(k)(b)_(a)(i)j
    ExprGrid Cbar;    // (a, b, p, e):       Cbar^{a(e)}_{b(p)}
    ExprGrid Cs;      // (k, i, p, e):       C^{k(e)}_{i(p)}
    ExprGrid Cblock;  // (k, a, i, b, p, e): C^(k)(b)(e)_(a)(i)(p)

    bool h_normal = false;
    HNormalSpec spec;  // populated for h-normal connections

    std::shared_ptr<detail::ConnCache> cache = std::make_shared<detail::ConnCache>();
};

/// Populates the nine families from the four effective coefficients:
///   Gbar = H, Lbar = 0, Cbar = 0,
///   G-block = delta^b_a G^k_{ic} - delta^k_i H^b_{ac},
///   L-block = delta^b_a L^k_{ij},  C-block = delta^b_a C^{k(e)}_{i(p)}.
GammaConnection build_hnormal(HNormalSpec spec, NonlinearConnection nc);

/// Berwald connection of a metric pair: the h-normal connection
/// (H, 0, gamma, 0) over the canonical nonlinear connection.
GammaConnection berwald(const Metric& h, const Metric& phi);

/// Cartan-type test: L^k_{ij} = L^k_{ji} and C^{k(e)}_{i(j)} = C^{k(e)}_{j(i)}
/// as evaluated residuals at every sample point.
bool is_cartan_type(const HNormalSpec& spec, std::span<const Point> points,
                    double tol = 1e-10);

}  // namespace jetconn
