#include "doctest.h"
#include "helpers.hpp"

using namespace jetconn;

namespace {

std::vector<Point> curved_points(std::mt19937_64& rng, Dims d, int count) {
    // angle-style coordinates of both sphere-patterned metrics stay away
    // from the poles
    std::vector<Point> pts;
    for (int k = 0; k < count; ++k) {
        Point q = test::random_point(rng, d);
        for (int i = 0; i + 1 < d.n; ++i)
            q.x[static_cast<std::size_t>(i)] = test::uniform(rng, 0.3, 2.8);
        for (int a = 0; a + 1 < d.p; ++a)
            q.t[static_cast<std::size_t>(a)] = test::uniform(rng, 0.3, 2.8);
        pts.push_back(std::move(q));
    }
    return pts;
}

double worst_residual(const IdentityReport& r) {
    double worst = 0.0;
    for (const IdentityEntry& e : r.entries) worst = std::max(worst, e.max_residual);
    return worst;
}

}  // namespace

TEST_CASE("suite cardinalities are fixed") {
    const Dims d{1, 2};
    const GammaConnection conn = berwald(test::flat_temporal(d), test::flat_spatial(d));
    std::mt19937_64 rng(301);
    const auto pts = test::random_points(rng, d, 3);
    const DVectorField X = test::random_dvector(rng, d);
    CHECK(ricci_suite(conn, X, pts, 1e-8).entries.size() == 18);
    CHECK(deflection_suite(conn, pts, 1e-8).entries.size() == 6);
    CHECK(bianchi_suite(conn, pts, 1e-7).entries.size() == 30);
    CHECK(torsion_check_suite(conn, pts, 1e-9, true).entries.size() == 9);
    CHECK(curvature_check_suite(conn, pts, 1e-9, true).entries.size() == 7);
}

TEST_CASE("flat Berwald: all 54 identities are numerically zero") {
    const Dims d{1, 2};
    const GammaConnection conn = berwald(test::flat_temporal(d), test::flat_spatial(d));
    std::mt19937_64 rng(303);
    const auto pts = test::random_points(rng, d, 10);
    const DVectorField X = test::random_dvector(rng, d);

    const IdentityReport ricci = ricci_suite(conn, X, pts, 1e-12);
    const IdentityReport defl = deflection_suite(conn, pts, 1e-12);
    const IdentityReport bianchi = bianchi_suite(conn, pts, 1e-12);
    CHECK(ricci.all_pass());
    CHECK(defl.all_pass());
    CHECK(bianchi.all_pass());
    CHECK(ricci.entries.size() + defl.entries.size() + bianchi.entries.size() == 54);
}

TEST_CASE("Berwald over curved metrics passes every suite") {
    const Dims d{2, 2};
    const GammaConnection conn = berwald(test::curved_temporal(d), test::sphere_spatial(d));
    std::mt19937_64 rng(307);
    const auto pts = curved_points(rng, d, 20);
    const DVectorField X = test::random_dvector(rng, d);

    const IdentityReport ricci = ricci_suite(conn, X, pts, 1e-8);
    CHECK(ricci.all_pass());
    const IdentityReport defl = deflection_suite(conn, pts, 1e-8);
    CHECK(defl.all_pass());
    const IdentityReport bianchi = bianchi_suite(conn, pts, 1e-7);
    for (const IdentityEntry& e : bianchi.entries) {
        INFO(e.id, " residual ", e.max_residual);
        CHECK(e.pass);
    }
}

TEST_CASE("random Cartan-type connections pass every suite") {
    const Dims d{2, 2};
    std::mt19937_64 rng(311);
    for (int trial = 0; trial < 3; ++trial) {
        const GammaConnection conn = test::random_cartan_connection(
            rng, test::curved_temporal(d), test::sphere_spatial(d));
        const auto pts = curved_points(rng, d, 15);
        const DVectorField X = test::random_dvector(rng, d);

        const IdentityReport ricci = ricci_suite(conn, X, pts, 1e-8);
        for (const IdentityEntry& e : ricci.entries) {
            INFO(e.id, " residual ", e.max_residual);
            CHECK(e.pass);
        }
        const IdentityReport defl = deflection_suite(conn, pts, 1e-8);
        for (const IdentityEntry& e : defl.entries) {
            INFO(e.id, " residual ", e.max_residual);
            CHECK(e.pass);
        }
        const IdentityReport bianchi = bianchi_suite(conn, pts, 1e-7);
        for (const IdentityEntry& e : bianchi.entries) {
            INFO(e.id, " residual ", e.max_residual);
            CHECK(e.pass);
        }
    }
}

TEST_CASE("raw ricci residuals scale exactly with the field") {
    // every term of a Ricci identity is linear in X, so scaling X by a power
    // of two scales the raw residual |LHS - RHS| exactly
    const Dims d{1, 2};
    std::mt19937_64 rng(313);
    const GammaConnection conn = test::random_cartan_connection(
        rng, test::flat_temporal(d), test::sphere_spatial(d));
    const auto pts = curved_points(rng, d, 5);
    const DVectorField X = test::random_dvector(rng, d);

    const double c = 64.0;
    DVectorField Xc = X;
    for (Expr& e : Xc.t.flat()) e = Expr::constant(c) * e;
    for (Expr& e : Xc.x.flat()) e = Expr::constant(c) * e;
    for (Expr& e : Xc.v.flat()) e = Expr::constant(c) * e;

    const auto tor = torsion_set(conn);
    auto raw = [&](const DVectorField& f, const Point& q, std::size_t i, std::size_t j,
                   std::size_t k) {
        // hM.3: X^i_{|j|k} - X^i_{|k|j} - X^m R^i_{mjk} + X^i|(u)(m) R^(m)_(u)jk
        const DTensor Xx(Signature({SlotKind::SU}, d), f.x);
        const DTensor dM = cd_spatial(Xx, conn);
        const DTensor dMM = cd_spatial(dM, conn);
        const DTensor dV = cd_vertical(Xx, conn);
        const auto cur = curvature_set(conn);
        Evaluator ev(q);
        double lhs = ev.value(dMM.grid()(i, j, k)) - ev.value(dMM.grid()(i, k, j));
        double rhs = 0.0;
        for (std::size_t m = 0; m < 2; ++m)
            rhs += ev.value(f.x(m)) * ev.value(cur->R_jk(i, m, j, k));
        for (std::size_t m = 0; m < 2; ++m)
            rhs -= ev.value(dV.grid()(i, m, 0)) * ev.value(tor->R_ij(m, 0, j, k));
        return lhs - rhs;
    };

    for (const Point& q : pts) {
        const double a = raw(X, q, 0, 0, 1);
        const double b = raw(Xc, q, 0, 0, 1);
        CHECK(b == c * a);  // exact: scaling by 2^6 commutes with IEEE ops
    }
}

TEST_CASE("non-Cartan connections are rejected") {
    const Dims d{1, 2};
    const Metric h = test::flat_temporal(d);
    const Metric phi = test::flat_spatial(d);
    HNormalSpec spec = HNormalSpec::zero(d, christoffel(h));
    spec.L(0, 0, 1) = Expr::variable(Coord::spatial(0));  // L^1_12 != L^1_21
    const GammaConnection conn = build_hnormal(std::move(spec), canonical_nonlinear(h, phi));
    std::mt19937_64 rng(317);
    const auto pts = test::random_points(rng, d, 5);
    const DVectorField X = test::random_dvector(rng, d);
    CHECK_THROWS_AS(ricci_suite(conn, X, pts, 1e-8), NonCartanError);
    CHECK_THROWS_AS(deflection_suite(conn, pts, 1e-8), NonCartanError);
    CHECK_THROWS_AS(bianchi_suite(conn, pts, 1e-7), NonCartanError);
}

TEST_CASE("Lagrange degeneration: p = 1 with flat h") {
    // With (T, h) = (R, delta) every H-curvature term vanishes identically
    // and the suites still close.
    const Dims d{1, 2};
    const GammaConnection conn = berwald(test::flat_temporal(d), test::sphere_spatial(d));
    const auto cur = curvature_set(conn);
    for (const Expr& e : cur->H.flat()) CHECK(e.is_zero());

    std::mt19937_64 rng(331);
    const auto pts = curved_points(rng, d, 15);
    const DVectorField X = test::random_dvector(rng, d);
    CHECK(ricci_suite(conn, X, pts, 1e-8).all_pass());
    CHECK(deflection_suite(conn, pts, 1e-8).all_pass());
    CHECK(bianchi_suite(conn, pts, 1e-7).all_pass());
}

TEST_CASE("torsion/curvature check suites pass on Berwald and random connections") {
    std::mt19937_64 rng(337);
    SUBCASE("Berwald with reference forms") {
        const Dims d{2, 2};
        const GammaConnection conn =
            berwald(test::curved_temporal(d), test::sphere_spatial(d));
        const auto pts = curved_points(rng, d, 20);
        const IdentityReport t = torsion_check_suite(conn, pts, 1e-9, true);
        for (const IdentityEntry& e : t.entries) {
            INFO(e.id, " residual ", e.max_residual);
            CHECK(e.pass);
        }
        const IdentityReport c = curvature_check_suite(conn, pts, 1e-9, true);
        for (const IdentityEntry& e : c.entries) {
            INFO(e.id, " residual ", e.max_residual);
            CHECK(e.pass);
        }
    }
    SUBCASE("random connection, antisymmetry checks only") {
        const Dims d{2, 2};
        const GammaConnection conn = test::random_cartan_connection(
            rng, test::curved_temporal(d), test::sphere_spatial(d));
        const auto pts = curved_points(rng, d, 20);
        CHECK(torsion_check_suite(conn, pts, 1e-9, false).all_pass());
        CHECK(curvature_check_suite(conn, pts, 1e-9, false).all_pass());
    }
}

TEST_CASE("identity report plumbing") {
    const Dims d{1, 2};
    const GammaConnection conn = berwald(test::flat_temporal(d), test::flat_spatial(d));
    std::mt19937_64 rng(341);
    const auto pts = test::random_points(rng, d, 4);
    const IdentityReport r = deflection_suite(conn, pts, 1e-10);
    CHECK(r.points_used == 4);
    CHECK(r.tolerance == 1e-10);
    for (const IdentityEntry& e : r.entries) {
        CHECK(e.pass == (e.max_residual < r.tolerance));
        CHECK(!e.id.empty());
    }
    CHECK(worst_residual(r) < 1e-10);
}
