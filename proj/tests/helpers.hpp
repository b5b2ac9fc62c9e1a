#pragma once

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "jetconn/geometry.hpp"
#include "jetconn/identities.hpp"
#include "jetconn/manifest.hpp"

namespace jetconn::test {

inline Expr cvar(const Coord& c) { return Expr::variable(c); }

inline std::vector<Coord> all_coords(Dims d) {
    std::vector<Coord> out;
    for (int a = 0; a < d.p; ++a) out.push_back(Coord::temporal(a));
    for (int i = 0; i < d.n; ++i) out.push_back(Coord::spatial(i));
    for (int i = 0; i < d.n; ++i)
        for (int a = 0; a < d.p; ++a) out.push_back(Coord::fiber(i, a));
    return out;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

inline Point random_point(std::mt19937_64& rng, Dims d, double lo = -1.0, double hi = 1.0) {
    Point q = Point::zeros(d);
    for (double& v : q.t) v = uniform(rng, lo, hi);
    for (double& v : q.x) v = uniform(rng, lo, hi);
    for (double& v : q.v) v = uniform(rng, lo, hi);
    return q;
}

inline std::vector<Point> random_points(std::mt19937_64& rng, Dims d, int count,
                                        double lo = -1.0, double hi = 1.0) {
    std::vector<Point> out;
    for (int k = 0; k < count; ++k) out.push_back(random_point(rng, d, lo, hi));
    return out;
}

/// Sparse degree-<=2 polynomial: c0 + c1*m1 + c2*m2*m3 with random
/// coordinates and coefficients uniform in [-1, 1].
inline Expr random_polynomial(std::mt19937_64& rng, Dims d) {
    const std::vector<Coord> coords = all_coords(d);
    auto pick = [&] { return coords[rng() % coords.size()]; };
    Expr e = Expr::constant(uniform(rng, -1.0, 1.0));
    e += Expr::constant(uniform(rng, -1.0, 1.0)) * cvar(pick());
    e += Expr::constant(uniform(rng, -1.0, 1.0)) * cvar(pick()) * cvar(pick());
    return e;
}

/// Random h-normal spec over the given temporal metric: G, L, C random
/// polynomials with L and C symmetrized so the result is Cartan type.
inline HNormalSpec random_cartan_spec(std::mt19937_64& rng, const Metric& h) {
    const Dims d = h.dims();
    HNormalSpec s = HNormalSpec::zero(d, christoffel(h));
    const std::size_t n = static_cast<std::size_t>(d.n);
    const std::size_t p = static_cast<std::size_t>(d.p);
    const Expr half = Expr::constant(0.5);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t c = 0; c < p; ++c)
                s.G(k, i, c) = random_polynomial(rng, d);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                Expr e = random_polynomial(rng, d);
                s.L(k, i, j) = e;
                s.L(k, j, i) = e;
                for (std::size_t c = 0; c < p; ++c) {
                    Expr ce = random_polynomial(rng, d);
                    s.C(k, i, j, c) = ce;
                    s.C(k, j, i, c) = ce;
                }
            }
    return s;
}

inline DVectorField random_dvector(std::mt19937_64& rng, Dims d) {
    DVectorField X = DVectorField::zero(d);
    for (Expr& e : X.t.flat()) e = random_polynomial(rng, d);
    for (Expr& e : X.x.flat()) e = random_polynomial(rng, d);
    for (Expr& e : X.v.flat()) e = random_polynomial(rng, d);
    return X;
}

// --- standard metrics ------------------------------------------------------

inline Metric flat_temporal(Dims d) {
    ExprGrid g({static_cast<std::size_t>(d.p), static_cast<std::size_t>(d.p)});
    for (int a = 0; a < d.p; ++a) g(a, a) = Expr::constant(1.0);
    return Metric::temporal(d, g);
}

inline Metric flat_spatial(Dims d) {
    ExprGrid g({static_cast<std::size_t>(d.n), static_cast<std::size_t>(d.n)});
    for (int i = 0; i < d.n; ++i) g(i, i) = Expr::constant(1.0);
    return Metric::spatial(d, g);
}

/// h11 = exp(2 t1), remaining diagonal entries 1 + (t^a)^2.
inline Metric exp_temporal(Dims d) {
    ExprGrid g({static_cast<std::size_t>(d.p), static_cast<std::size_t>(d.p)});
    g(0, 0) = exp(Expr::constant(2.0) * cvar(Coord::temporal(0)));
    for (int a = 1; a < d.p; ++a)
        g(a, a) = Expr::constant(1.0) + pow(cvar(Coord::temporal(a)), 2);
    return Metric::temporal(d, g);
}

/// Sphere-style temporal metric: diag(1, sin^2 t1, sin^2 t1 sin^2 t2, ...).
/// Genuinely curved for p >= 2 (diagonal products of 1-d factors are flat).
inline Metric curved_temporal(Dims d) {
    ExprGrid g({static_cast<std::size_t>(d.p), static_cast<std::size_t>(d.p)});
    Expr acc = Expr::constant(1.0);
    g(0, 0) = acc;
    for (int a = 1; a < d.p; ++a) {
        acc = acc * pow(sin(cvar(Coord::temporal(a - 1))), 2);
        g(a, a) = acc;
    }
    return Metric::temporal(d, g);
}

/// Unit-sphere-style metric: diag(1, sin^2 x1, sin^2 x1 sin^2 x2, ...).
inline Metric sphere_spatial(Dims d) {
    ExprGrid g({static_cast<std::size_t>(d.n), static_cast<std::size_t>(d.n)});
    Expr acc = Expr::constant(1.0);
    g(0, 0) = acc;
    for (int i = 1; i < d.n; ++i) {
        acc = acc * pow(sin(cvar(Coord::spatial(i - 1))), 2);
        g(i, i) = acc;
    }
    return Metric::spatial(d, g);
}

inline GammaConnection random_cartan_connection(std::mt19937_64& rng, const Metric& h,
                                                const Metric& phi) {
    HNormalSpec spec = random_cartan_spec(rng, h);
    return build_hnormal(std::move(spec), canonical_nonlinear(h, phi));
}

// --- finite-difference oracles ----------------------------------------------

inline double shift_eval(const Expr& e, Point q, const Coord& c, double dh) {
    switch (c.kind) {
        case CoordKind::Temporal: q.t[static_cast<std::size_t>(c.a)] += dh; break;
        case CoordKind::Spatial: q.x[static_cast<std::size_t>(c.i)] += dh; break;
        case CoordKind::Fiber: q.fiber(c.i, c.a) += dh; break;
    }
    return evaluate(e, q);
}

inline double fd_derivative(const Expr& e, const Point& q, const Coord& c,
                            double step = 1e-5) {
    return (shift_eval(e, q, c, step) - shift_eval(e, q, c, -step)) / (2.0 * step);
}

/// Central-difference Christoffels of a metric, evaluated numerically with a
/// numeric matrix inverse; independent of the symbolic derivative path.
inline std::vector<double> fd_christoffel(const Metric& m, const Point& q,
                                          double step = 1e-5) {
    const int d = m.dim();
    auto metric_at = [&](const Point& qq) {
        std::vector<double> g(static_cast<std::size_t>(d * d));
        Evaluator ev(qq);
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c)
                g[static_cast<std::size_t>(r * d + c)] = ev.value(m.g()(r, c));
        return g;
    };
    // derivative of every entry in every coordinate direction
    std::vector<double> dg(static_cast<std::size_t>(d * d * d));
    for (int k = 0; k < d; ++k) {
        Point hi = q, lo = q;
        const Coord c = m.coordinate(k);
        if (c.kind == CoordKind::Temporal) {
            hi.t[static_cast<std::size_t>(c.a)] += step;
            lo.t[static_cast<std::size_t>(c.a)] -= step;
        } else {
            hi.x[static_cast<std::size_t>(c.i)] += step;
            lo.x[static_cast<std::size_t>(c.i)] -= step;
        }
        const std::vector<double> ghi = metric_at(hi), glo = metric_at(lo);
        for (int rc = 0; rc < d * d; ++rc)
            dg[static_cast<std::size_t>(k * d * d + rc)] =
                (ghi[static_cast<std::size_t>(rc)] - glo[static_cast<std::size_t>(rc)]) /
                (2.0 * step);
    }
    // numeric inverse by Gauss-Jordan
    std::vector<double> g = metric_at(q);
    std::vector<double> inv(static_cast<std::size_t>(d * d), 0.0);
    for (int r = 0; r < d; ++r) inv[static_cast<std::size_t>(r * d + r)] = 1.0;
    for (int col = 0; col < d; ++col) {
        int pivot = col;
        for (int r = col + 1; r < d; ++r)
            if (std::abs(g[static_cast<std::size_t>(r * d + col)]) >
                std::abs(g[static_cast<std::size_t>(pivot * d + col)]))
                pivot = r;
        for (int c = 0; c < d; ++c) {
            std::swap(g[static_cast<std::size_t>(col * d + c)],
                      g[static_cast<std::size_t>(pivot * d + c)]);
            std::swap(inv[static_cast<std::size_t>(col * d + c)],
                      inv[static_cast<std::size_t>(pivot * d + c)]);
        }
        const double diag = g[static_cast<std::size_t>(col * d + col)];
        for (int c = 0; c < d; ++c) {
            g[static_cast<std::size_t>(col * d + c)] /= diag;
            inv[static_cast<std::size_t>(col * d + c)] /= diag;
        }
        for (int r = 0; r < d; ++r) {
            if (r == col) continue;
            const double f = g[static_cast<std::size_t>(r * d + col)];
            for (int c = 0; c < d; ++c) {
                g[static_cast<std::size_t>(r * d + c)] -=
                    f * g[static_cast<std::size_t>(col * d + c)];
                inv[static_cast<std::size_t>(r * d + c)] -=
                    f * inv[static_cast<std::size_t>(col * d + c)];
            }
        }
    }
    std::vector<double> chr(static_cast<std::size_t>(d * d * d));
    auto dgat = [&](int k, int r, int c) {
        return dg[static_cast<std::size_t>(k * d * d + r * d + c)];
    };
    for (int cc = 0; cc < d; ++cc)
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b) {
                double sum = 0.0;
                for (int mu = 0; mu < d; ++mu)
                    sum += inv[static_cast<std::size_t>(cc * d + mu)] *
                           (dgat(a, mu, b) + dgat(b, a, mu) - dgat(mu, a, b));
                chr[static_cast<std::size_t>((cc * d + a) * d + b)] = 0.5 * sum;
            }
    return chr;
}

/// Central-difference curvature of a metric from nested fd_christoffel
/// evaluations (step chosen larger because of the double differencing).
inline double fd_metric_curvature(const Metric& m, const Point& q, int a, int e, int b,
                                  int c, double step = 1e-4) {
    const int d = m.dim();
    auto chr_at = [&](const Point& qq) { return fd_christoffel(m, qq, step); };
    auto at = [&](const std::vector<double>& chr, int up, int lo1, int lo2) {
        return chr[static_cast<std::size_t>((up * d + lo1) * d + lo2)];
    };
    auto shifted = [&](int dir, double dh) {
        Point qq = q;
        const Coord co = m.coordinate(dir);
        if (co.kind == CoordKind::Temporal)
            qq.t[static_cast<std::size_t>(co.a)] += dh;
        else
            qq.x[static_cast<std::size_t>(co.i)] += dh;
        return qq;
    };
    const std::vector<double> chr_c_hi = chr_at(shifted(c, step));
    const std::vector<double> chr_c_lo = chr_at(shifted(c, -step));
    const std::vector<double> chr_b_hi = chr_at(shifted(b, step));
    const std::vector<double> chr_b_lo = chr_at(shifted(b, -step));
    const std::vector<double> chr0 = chr_at(q);
    double sum = (at(chr_c_hi, a, e, b) - at(chr_c_lo, a, e, b)) / (2.0 * step) -
                 (at(chr_b_hi, a, e, c) - at(chr_b_lo, a, e, c)) / (2.0 * step);
    for (int mu = 0; mu < d; ++mu)
        sum += at(chr0, mu, e, b) * at(chr0, a, mu, c) -
               at(chr0, mu, e, c) * at(chr0, a, mu, b);
    return sum;
}

inline double grid_max_abs(const ExprGrid& g, std::span<const Point> points) {
    double worst = 0.0;
    for (const Point& q : points) {
        Evaluator ev(q);
        for (const Expr& e : g.flat()) worst = std::max(worst, std::abs(ev.value(e)));
    }
    return worst;
}

inline double grid_max_diff(const ExprGrid& a, const ExprGrid& b,
                            std::span<const Point> points) {
    double worst = 0.0;
    for (const Point& q : points) {
        Evaluator ev(q);
        for (std::size_t k = 0; k < a.size(); ++k)
            worst = std::max(worst, std::abs(ev.value(a.flat()[k]) - ev.value(b.flat()[k])));
    }
    return worst;
}

}  // namespace jetconn::test
