#include "jetconn/geometry.hpp"

#include <cmath>
#include <string>

namespace jetconn {

namespace {

// symbolic determinant by cofactor expansion, dim <= 4
Expr grid_det(const ExprGrid& g, const std::vector<std::size_t>& rows,
              const std::vector<std::size_t>& cols) {
    const std::size_t d = rows.size();
    if (d == 1) return g(rows[0], cols[0]);
    Expr out;
    for (std::size_t k = 0; k < d; ++k) {
        std::vector<std::size_t> sub_rows(rows.begin() + 1, rows.end());
        std::vector<std::size_t> sub_cols;
        sub_cols.reserve(d - 1);
        for (std::size_t c = 0; c < d; ++c)
            if (c != k) sub_cols.push_back(cols[c]);
        Expr term = g(rows[0], cols[k]) * grid_det(g, sub_rows, sub_cols);
        out = (k % 2 == 0) ? out + term : out - term;
    }
    return out;
}

Expr grid_det(const ExprGrid& g, int dim) {
    std::vector<std::size_t> all(static_cast<std::size_t>(dim));
    for (int k = 0; k < dim; ++k) all[static_cast<std::size_t>(k)] = static_cast<std::size_t>(k);
    return grid_det(g, all, all);
}

ExprGrid grid_inverse(const ExprGrid& g, int dim, const Expr& det) {
    ExprGrid inv({static_cast<std::size_t>(dim), static_cast<std::size_t>(dim)});
    if (dim == 1) {
        inv(0, 0) = Expr::constant(1.0) / g(0, 0);
        return inv;
    }
    for (int r = 0; r < dim; ++r) {
        for (int c = 0; c < dim; ++c) {
            std::vector<std::size_t> rows, cols;
            for (int k = 0; k < dim; ++k) {
                if (k != r) rows.push_back(static_cast<std::size_t>(k));
                if (k != c) cols.push_back(static_cast<std::size_t>(k));
            }
            Expr minor = grid_det(g, rows, cols);
            Expr cof = ((r + c) % 2 == 0) ? minor : -minor;
            // adjugate transposes the cofactor matrix
            inv(c, r) = cof / det;
        }
    }
    return inv;
}

void check_variable_kinds(const ExprGrid& g, MetricKind kind) {
    for (const Expr& e : g.flat()) {
        visit_variables(e, [&](const Coord& c) {
            if (kind == MetricKind::Temporal && c.kind != CoordKind::Temporal)
                throw MetricError("temporal metric entry references non-temporal coordinate " +
                                  c.name());
            if (kind == MetricKind::Spatial && c.kind != CoordKind::Spatial)
                throw MetricError("spatial metric entry references non-spatial coordinate " +
                                  c.name());
        });
    }
}

}  // namespace

Metric Metric::temporal(Dims dims, ExprGrid g) {
    Metric m;
    m.kind_ = MetricKind::Temporal;
    m.dims_ = dims;
    m.dim_ = dims.p;
    if (m.dim_ < 1 || m.dim_ > 4) throw MetricError("metric dimension must be between 1 and 4");
    const std::vector<std::size_t> want{static_cast<std::size_t>(m.dim_),
                                        static_cast<std::size_t>(m.dim_)};
    if (g.shape() != want) throw MetricError("metric grid shape does not match dimension");
    check_variable_kinds(g, MetricKind::Temporal);
    m.g_ = std::move(g);
    m.det_ = grid_det(m.g_, m.dim_);
    m.g_inv_ = grid_inverse(m.g_, m.dim_, m.det_);
    return m;
}

Metric Metric::spatial(Dims dims, ExprGrid g) {
    Metric m;
    m.kind_ = MetricKind::Spatial;
    m.dims_ = dims;
    m.dim_ = dims.n;
    if (m.dim_ < 1 || m.dim_ > 4) throw MetricError("metric dimension must be between 1 and 4");
    const std::vector<std::size_t> want{static_cast<std::size_t>(m.dim_),
                                        static_cast<std::size_t>(m.dim_)};
    if (g.shape() != want) throw MetricError("metric grid shape does not match dimension");
    check_variable_kinds(g, MetricKind::Spatial);
    m.g_ = std::move(g);
    m.det_ = grid_det(m.g_, m.dim_);
    m.g_inv_ = grid_inverse(m.g_, m.dim_, m.det_);
    return m;
}

Coord Metric::coordinate(int index) const {
    return kind_ == MetricKind::Temporal ? Coord::temporal(index) : Coord::spatial(index);
}

ExprGrid christoffel(const Metric& m) {
    const std::size_t d = static_cast<std::size_t>(m.dim());
    ExprGrid out({d, d, d});
    const ExprGrid& g = m.g();
    const ExprGrid& gi = m.inverse();
    const Expr half = Expr::constant(0.5);
    for (std::size_t c = 0; c < d; ++c) {
        for (std::size_t a = 0; a < d; ++a) {
            for (std::size_t b = 0; b < d; ++b) {
                Expr sum;
                for (std::size_t mu = 0; mu < d; ++mu) {
                    Expr term = differentiate(g(mu, b), m.coordinate(static_cast<int>(a))) +
                                differentiate(g(a, mu), m.coordinate(static_cast<int>(b))) -
                                differentiate(g(a, b), m.coordinate(static_cast<int>(mu)));
                    sum += gi(c, mu) * term;
                }
                out(c, a, b) = half * sum;
            }
        }
    }
    return out;
}

ExprGrid metric_curvature(const Metric& m, const ExprGrid& chr) {
    const std::size_t d = static_cast<std::size_t>(m.dim());
    ExprGrid out({d, d, d, d});
    for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t e = 0; e < d; ++e) {
            for (std::size_t b = 0; b < d; ++b) {
                for (std::size_t c = 0; c < d; ++c) {
                    Expr sum = differentiate(chr(a, e, b), m.coordinate(static_cast<int>(c))) -
                               differentiate(chr(a, e, c), m.coordinate(static_cast<int>(b)));
                    for (std::size_t mu = 0; mu < d; ++mu)
                        sum += chr(mu, e, b) * chr(a, mu, c) - chr(mu, e, c) * chr(a, mu, b);
                    out(a, e, b, c) = sum;
                }
            }
        }
    }
    return out;
}

NonlinearConnection NonlinearConnection::zero(Dims d) {
    NonlinearConnection nc;
    nc.dims = d;
    nc.M = ExprGrid({static_cast<std::size_t>(d.n), static_cast<std::size_t>(d.p),
                     static_cast<std::size_t>(d.p)});
    nc.N = ExprGrid({static_cast<std::size_t>(d.n), static_cast<std::size_t>(d.p),
                     static_cast<std::size_t>(d.n)});
    return nc;
}

NonlinearConnection canonical_nonlinear(const Metric& h, const Metric& phi) {
    if (h.kind() != MetricKind::Temporal || phi.kind() != MetricKind::Spatial)
        throw MetricError("canonical nonlinear connection needs a (temporal, spatial) pair");
    const Dims dims = h.dims();
    NonlinearConnection nc = NonlinearConnection::zero(dims);
    const ExprGrid H = christoffel(h);
    const ExprGrid gamma = christoffel(phi);
    for (int j = 0; j < dims.n; ++j) {
        for (int b = 0; b < dims.p; ++b) {
            for (int a = 0; a < dims.p; ++a) {
                Expr sum;
                for (int c = 0; c < dims.p; ++c)
                    sum += H(c, a, b) * Expr::variable(Coord::fiber(j, c));
                nc.M(j, b, a) = -sum;
            }
            for (int i = 0; i < dims.n; ++i) {
                Expr sum;
                for (int k = 0; k < dims.n; ++k)
                    sum += gamma(j, i, k) * Expr::variable(Coord::fiber(k, b));
                nc.N(j, b, i) = sum;
            }
        }
    }
    return nc;
}

Expr adapted_derivative(const NonlinearConnection& nc, const Expr& e, AdaptedDir dir,
                        int index) {
    const Dims d = nc.dims;
    Expr out = differentiate(
        e, dir == AdaptedDir::DeltaT ? Coord::temporal(index) : Coord::spatial(index));
    for (int k = 0; k < d.n; ++k) {
        for (int c = 0; c < d.p; ++c) {
            const Expr& coeff =
                dir == AdaptedDir::DeltaT ? nc.M(k, c, index) : nc.N(k, c, index);
            if (coeff.is_zero()) continue;
            Expr dv = differentiate(e, Coord::fiber(k, c));
            out -= coeff * dv;
        }
    }
    return out;
}

HNormalSpec HNormalSpec::zero(Dims d, ExprGrid christoffels_of_h) {
    const std::size_t p = static_cast<std::size_t>(d.p);
    const std::size_t n = static_cast<std::size_t>(d.n);
    HNormalSpec s;
    s.dims = d;
    s.H = std::move(christoffels_of_h);
    if (s.H.shape() != std::vector<std::size_t>{p, p, p})
        throw std::invalid_argument("christoffel grid shape mismatch");
    s.G = ExprGrid({n, n, p});
    s.L = ExprGrid({n, n, n});
    s.C = ExprGrid({n, n, n, p});
    return s;
}

GammaConnection build_hnormal(HNormalSpec spec, NonlinearConnection nc) {
    const Dims d = spec.dims;
    if (nc.dims != d) throw std::invalid_argument("connection/nonlinear dims mismatch");
    const std::size_t p = static_cast<std::size_t>(d.p);
    const std::size_t n = static_cast<std::size_t>(d.n);

    GammaConnection conn;
    conn.dims = d;
    conn.nc = std::move(nc);
    conn.h_normal = true;

    conn.Gbar = spec.H;
    conn.Gs = spec.G;
    conn.Lbar = ExprGrid({p, p, n});
    conn.Ls = spec.L;
    conn.Cbar = ExprGrid({p, p, n, p});
    conn.Cs = spec.C;

    conn.Gblock = ExprGrid({n, p, n, p, p});
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t a = 0; a < p; ++a)
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t b = 0; b < p; ++b)
                    for (std::size_t c = 0; c < p; ++c) {
                        Expr e;
                        if (b == a) e += spec.G(k, i, c);
                        if (k == i) e -= spec.H(b, a, c);
                        conn.Gblock(k, a, i, b, c) = e;
                    }

    conn.Lblock = ExprGrid({n, p, n, p, n});
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t a = 0; a < p; ++a)
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    conn.Lblock(k, a, i, a, j) = spec.L(k, i, j);

    conn.Cblock = ExprGrid({n, p, n, p, n, p});
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t a = 0; a < p; ++a)
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    for (std::size_t e = 0; e < p; ++e)
                        conn.Cblock(k, a, i, a, j, e) = spec.C(k, i, j, e);

    conn.spec = std::move(spec);
    return conn;
}

GammaConnection berwald(const Metric& h, const Metric& phi) {
    HNormalSpec spec = HNormalSpec::zero(h.dims(), christoffel(h));
    spec.L = christoffel(phi);
    return build_hnormal(std::move(spec), canonical_nonlinear(h, phi));
}

bool is_cartan_type(const HNormalSpec& spec, std::span<const Point> points, double tol) {
    const Dims d = spec.dims;
    for (const Point& q : points) {
        Evaluator ev(q);
        for (int k = 0; k < d.n; ++k) {
            for (int i = 0; i < d.n; ++i) {
                for (int j = i + 1; j < d.n; ++j) {
                    if (std::abs(ev.value(spec.L(k, i, j)) - ev.value(spec.L(k, j, i))) > tol)
                        return false;
                    for (int e = 0; e < d.p; ++e) {
                        if (std::abs(ev.value(spec.C(k, i, j, e)) -
                                     ev.value(spec.C(k, j, i, e))) > tol)
                            return false;
                    }
                }
            }
        }
    }
    return true;
}

}  // namespace jetconn
