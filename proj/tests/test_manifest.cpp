#include "doctest.h"
#include "helpers.hpp"

using namespace jetconn;

namespace {

const char* kFlatManifest = R"({
  "dims": {"p": 1, "n": 2},
  "h": [["1"]],
  "phi": [["1", "0"], ["0", "1"]],
  "connection": "berwald",
  "sampling": {"count": 5, "seed": 42},
  "tolerance": 1e-8,
  "suites": ["torsion_check", "curvature_check", "deflection", "ricci", "bianchi"],
  "X": {
    "t": ["t1 + v1_1"],
    "x": ["x2^2", "x1*v2_1"],
    "v": [["t1*x1"], ["v1_1 - x2"]]
  }
})";

const char* kSphereManifest = R"({
  "dims": {"p": 1, "n": 2},
  "h": [["1"]],
  "phi": [["1", "0"], ["0", "sin(x1)^2"]],
  "connection": "berwald",
  "sampling": {"count": 20, "seed": 7, "x_ranges": [[0.3, 2.8], [-1, 1]]},
  "suites": ["torsion_check", "curvature_check", "deflection", "bianchi"]
})";

}  // namespace

TEST_CASE("manifest parsing and validation") {
    Manifest m = parse_manifest(kFlatManifest);
    CHECK(m.dims.p == 1);
    CHECK(m.dims.n == 2);
    CHECK(m.berwald);
    CHECK(m.sampling.count == 5);
    CHECK(m.sampling.seed == 42);
    CHECK(m.tolerance == 1e-8);
    CHECK(m.suites.size() == 5);
    REQUIRE(m.X_t.has_value());
    CHECK((*m.X_t)[0] == "t1 + v1_1");

    CHECK_THROWS_AS(parse_manifest("{"), ManifestError);
    CHECK_THROWS_AS(parse_manifest("{}"), ManifestError);
    CHECK_THROWS_AS(parse_manifest(R"({"dims": {"p": 9, "n": 1}})"), ManifestError);
}

TEST_CASE("sampling is deterministic and respects ranges") {
    Sampling s;
    s.count = 8;
    s.seed = 99;
    s.t_ranges = {{0.5, 1.5}};
    s.x_ranges = {{-2.0, -1.0}, {3.0, 4.0}};
    s.v_range = {-0.25, 0.25};
    const Dims d{1, 2};
    const auto a = sample_points(d, s);
    const auto b = sample_points(d, s);
    REQUIRE(a.size() == 8);
    for (std::size_t k = 0; k < a.size(); ++k) {
        CHECK(a[k].t == b[k].t);
        CHECK(a[k].x == b[k].x);
        CHECK(a[k].v == b[k].v);
        CHECK(a[k].t[0] >= 0.5);
        CHECK(a[k].t[0] <= 1.5);
        CHECK(a[k].x[0] <= -1.0);
        CHECK(a[k].x[1] >= 3.0);
        CHECK(std::abs(a[k].v[0]) <= 0.25);
    }
}

TEST_CASE("flat manifest passes everything with exit 0") {
    const RunOutcome out = run_manifest(kFlatManifest);
    INFO(out.summary);
    CHECK(out.exit_code == 0);
    CHECK(out.report_json.find("\"all_pass\": true") != std::string::npos);
    // 9 + 7 + 6 + 18 + 30 entries
    std::size_t count = 0, pos = 0;
    while ((pos = out.report_json.find("\"id\":", pos)) != std::string::npos) {
        ++count;
        pos += 5;
    }
    CHECK(count == 70);
}

TEST_CASE("sphere manifest passes and reports Berwald-only families") {
    const RunOutcome out = run_manifest(kSphereManifest);
    INFO(out.summary);
    CHECK(out.exit_code == 0);
}

TEST_CASE("reports are byte-identical across runs") {
    const RunOutcome a = run_manifest(kSphereManifest);
    const RunOutcome b = run_manifest(kSphereManifest);
    CHECK(a.report_json == b.report_json);
    CHECK(a.summary == b.summary);

    RunOptions opts;
    opts.seed = 12345;
    const RunOutcome c = run_manifest(kSphereManifest, opts);
    const RunOutcome d = run_manifest(kSphereManifest, opts);
    CHECK(c.report_json == d.report_json);
    CHECK(c.report_json != a.report_json);  // seed is part of the report
}

TEST_CASE("exit codes") {
    SUBCASE("parse error in an expression is exit 2") {
        std::string bad = kSphereManifest;
        const auto pos = bad.find("sin(x1)^2");
        bad.replace(pos, 9, "sin(x9)^2");
        CHECK(run_manifest(bad).exit_code == 2);
    }
    SUBCASE("singular metric is exit 3") {
        const char* singular = R"({
          "dims": {"p": 1, "n": 2},
          "h": [["1"]],
          "phi": [["1", "0"], ["0", "sin(x1)^2"]],
          "connection": "berwald",
          "sampling": {"count": 4, "seed": 1, "x_ranges": [[0, 0], [-1, 1]]},
          "suites": ["torsion_check"]
        })";
        CHECK(run_manifest(singular).exit_code == 3);
    }
    SUBCASE("non-Cartan connection with bianchi requested is exit 4") {
        const char* asym = R"({
          "dims": {"p": 1, "n": 2},
          "h": [["1"]],
          "phi": [["1", "0"], ["0", "1"]],
          "connection": {
            "G": [[["0"], ["0"]], [["0"], ["0"]]],
            "L": [[["0", "x1"], ["0", "0"]], [["0", "0"], ["0", "0"]]],
            "C": [[[["0"], ["0"]], [["0"], ["0"]]], [[["0"], ["0"]], [["0"], ["0"]]]]
          },
          "sampling": {"count": 4, "seed": 1},
          "suites": ["bianchi"]
        })";
        CHECK(run_manifest(asym).exit_code == 4);
    }
}

TEST_CASE("explicit connection manifests run the full pipeline") {
    const char* explicit_conn = R"({
      "dims": {"p": 1, "n": 2},
      "h": [["1"]],
      "phi": [["1", "0"], ["0", "1"]],
      "connection": {
        "G": [[["v1_1"], ["0"]], [["0"], ["t1"]]],
        "L": [[["x1", "x2"], ["x2", "0"]], [["0", "v2_1"], ["v2_1", "x1"]]],
        "C": [[[["0"], ["x1"]], [["x1"], ["0"]]], [[["0"], ["0"]], [["0"], ["t1"]]]]
      },
      "sampling": {"count": 10, "seed": 3},
      "suites": ["deflection", "bianchi"]
    })";
    const RunOutcome out = run_manifest(explicit_conn);
    INFO(out.summary);
    CHECK(out.exit_code == 0);
}

TEST_CASE("minimal dims (1,1) run end to end") {
    const char* tiny = R"json({
      "dims": {"p": 1, "n": 1},
      "h": [["exp(2*t1)"]],
      "phi": [["1 + x1^2"]],
      "connection": "berwald",
      "sampling": {"count": 10, "seed": 5},
      "suites": ["torsion_check", "curvature_check", "deflection", "ricci", "bianchi"],
      "X": {"t": ["v1_1"], "x": ["t1*x1"], "v": [["x1 + v1_1"]]}
    })json";
    const RunOutcome out = run_manifest(tiny);
    INFO(out.summary);
    CHECK(out.exit_code == 0);
}

TEST_CASE("dimension 4 metrics invert symbolically") {
    const Dims d{1, 4};
    ExprGrid g({4, 4});
    for (int i = 0; i < 4; ++i) g(i, i) = Expr::constant(double(i + 1));
    g(0, 1) = g(1, 0) = Expr::constant(0.25) * Expr::variable(Coord::spatial(2));
    g(2, 3) = g(3, 2) = sin(Expr::variable(Coord::spatial(0)));
    const Metric m = Metric::spatial(d, g);
    std::mt19937_64 rng(401);
    for (int t = 0; t < 5; ++t) {
        const Point q = test::random_point(rng, d);
        Evaluator ev(q);
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) {
                double sum = 0.0;
                for (int k = 0; k < 4; ++k)
                    sum += ev.value(m.inverse()(r, k)) * ev.value(m.g()(k, c));
                CHECK(sum == doctest::Approx(r == c ? 1.0 : 0.0).epsilon(1e-9));
            }
    }
    // dimension 5 is rejected
    CHECK_THROWS_AS(Metric::spatial(Dims{1, 5}, ExprGrid({5, 5})), MetricError);
}
