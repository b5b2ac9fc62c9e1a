#include "doctest.h"
#include "helpers.hpp"

using namespace jetconn;
using test::cvar;

TEST_CASE("zero tensor shapes and fill") {
    const Dims d{1, 2};
    const DTensor a = zero_tensor(Signature({SlotKind::SU}, d));
    CHECK(a.grid().size() == 2);
    for (const Expr& e : a.grid().flat()) CHECK(e.is_zero());

    const DTensor b = zero_tensor(Signature({SlotKind::FU, SlotKind::TL}, Dims{1, 1}));
    CHECK(b.grid().size() == 1);

    const DTensor s = zero_tensor(Signature({}, d));
    CHECK(s.grid().size() == 1);
    CHECK(s.grid().flat()[0].is_zero());
}

TEST_CASE("component count equals product of slot ranges") {
    const Dims d{2, 3};
    const Signature sig({SlotKind::FU, SlotKind::TL, SlotKind::SL, SlotKind::FC}, d);
    CHECK(sig.component_count() == (3u * 2u) * 2u * 3u * (3u * 2u));
    CHECK(zero_tensor(sig).grid().size() == sig.component_count());
}

TEST_CASE("liouville components are the fiber variables") {
    {
        const DTensor c = liouville(Dims{1, 1});
        CHECK(equivalent(c.grid()(0, 0), cvar(Coord::fiber(0, 0))));
    }
    {
        const Dims d{2, 3};
        const DTensor c = liouville(d);
        CHECK(c.grid().size() == 6);
        for (int i = 0; i < d.n; ++i)
            for (int a = 0; a < d.p; ++a)
                CHECK(equivalent(c.grid()(i, a), cvar(Coord::fiber(i, a))));

        // evaluating at q returns exactly q.v
        std::mt19937_64 rng(5);
        const Point q = test::random_point(rng, d);
        for (int i = 0; i < d.n; ++i)
            for (int a = 0; a < d.p; ++a)
                CHECK(evaluate(c.grid()(i, a), q) == q.fiber(i, a));

        const Point zero = Point::zeros(d);
        for (const Expr& e : c.grid().flat()) CHECK(evaluate(e, zero) == 0.0);
    }
}

TEST_CASE("normalization tensor") {
    const Dims d{1, 2};

    SUBCASE("identity h gives the Kronecker delta") {
        const Metric h = test::flat_temporal(d);
        const DTensor J = normalization_tensor(h);
        for (int i = 0; i < d.n; ++i)
            for (int j = 0; j < d.n; ++j) {
                const Expr& e = J.grid()(i, 0, 0, j);
                if (i == j)
                    CHECK(e.is_one());
                else
                    CHECK(e.is_zero());
            }
    }

    SUBCASE("h11 = exp(2 t1)") {
        const Metric h = test::exp_temporal(d);
        const DTensor J = normalization_tensor(h);
        CHECK(equivalent(J.grid()(0, 0, 0, 0), exp(Expr::constant(2.0) * cvar(Coord::temporal(0)))));
        CHECK(J.grid()(0, 0, 0, 1).is_zero());
        CHECK(J.grid()(1, 0, 0, 0).is_zero());
    }
}
