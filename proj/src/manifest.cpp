#include "jetconn/manifest.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>

#include "json.hpp"

namespace jetconn {

namespace {

using nlohmann::json;

std::vector<std::vector<std::string>> string_matrix(const json& j, const char* what,
                                                    std::size_t rows, std::size_t cols) {
    if (!j.is_array() || j.size() != rows)
        throw ManifestError(std::string(what) + ": expected " + std::to_string(rows) +
                            " rows");
    std::vector<std::vector<std::string>> out;
    for (const json& row : j) {
        if (!row.is_array() || row.size() != cols)
            throw ManifestError(std::string(what) + ": expected " + std::to_string(cols) +
                                " columns per row");
        std::vector<std::string> r;
        for (const json& cell : row) {
            if (!cell.is_string())
                throw ManifestError(std::string(what) + ": entries must be strings");
            r.push_back(cell.get<std::string>());
        }
        out.push_back(std::move(r));
    }
    return out;
}

std::array<double, 2> range_pair(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ManifestError(std::string(what) + ": expected [lo, hi]");
    std::array<double, 2> r{j[0].get<double>(), j[1].get<double>()};
    if (!std::isfinite(r[0]) || !std::isfinite(r[1]) || r[0] > r[1])
        throw ManifestError(std::string(what) + ": range must be finite with lo <= hi");
    return r;
}

}  // namespace

Manifest parse_manifest(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ManifestError(std::string("manifest is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ManifestError("manifest must be a JSON object");

    Manifest m;
    if (!j.contains("dims") || !j["dims"].is_object())
        throw ManifestError("missing dims object");
    m.dims.p = j["dims"].value("p", 0);
    m.dims.n = j["dims"].value("n", 0);
    if (m.dims.p < 1 || m.dims.p > 4 || m.dims.n < 1 || m.dims.n > 4)
        throw ManifestError("dims.p and dims.n must lie in [1, 4]");
    const std::size_t p = static_cast<std::size_t>(m.dims.p);
    const std::size_t n = static_cast<std::size_t>(m.dims.n);

    if (!j.contains("h")) throw ManifestError("missing temporal metric h");
    m.h = string_matrix(j["h"], "h", p, p);
    if (!j.contains("phi")) throw ManifestError("missing spatial metric phi");
    m.phi = string_matrix(j["phi"], "phi", n, n);

    if (!j.contains("connection")) throw ManifestError("missing connection");
    const json& conn = j["connection"];
    if (conn.is_string()) {
        if (conn.get<std::string>() != "berwald")
            throw ManifestError("connection string must be \"berwald\"");
        m.berwald = true;
    } else if (conn.is_object()) {
        m.berwald = false;
        if (!conn.contains("G") || !conn.contains("L") || !conn.contains("C"))
            throw ManifestError("explicit connection needs G, L and C grids");
        auto cube = [&](const json& g, const char* what, std::size_t d3) {
            if (!g.is_array() || g.size() != n)
                throw ManifestError(std::string(what) + ": expected " + std::to_string(n) +
                                    " outer entries");
            std::vector<std::vector<std::vector<std::string>>> out;
            for (const json& plane : g)
                out.push_back(string_matrix(plane, what, n, d3));
            return out;
        };
        m.G = cube(conn["G"], "connection.G", p);
        m.L = cube(conn["L"], "connection.L", n);
        const json& Cj = conn["C"];
        if (!Cj.is_array() || Cj.size() != n)
            throw ManifestError("connection.C: expected n outer entries");
        for (const json& block : Cj) {
            if (!block.is_array() || block.size() != n)
                throw ManifestError("connection.C: expected n x n x n x p nesting");
            std::vector<std::vector<std::vector<std::string>>> plane;
            for (const json& mat : block) plane.push_back(string_matrix(mat, "connection.C", n, p));
            m.C.push_back(std::move(plane));
        }
    } else {
        throw ManifestError("connection must be \"berwald\" or an object with G, L, C");
    }

    if (j.contains("sampling")) {
        const json& s = j["sampling"];
        if (!s.is_object()) throw ManifestError("sampling must be an object");
        m.sampling.count = s.value("count", 1);
        if (m.sampling.count < 1) throw ManifestError("sampling.count must be >= 1");
        m.sampling.seed = s.value("seed", std::uint64_t{0});
        if (s.contains("t_ranges")) {
            const json& tr = s["t_ranges"];
            if (!tr.is_array() || tr.size() != p)
                throw ManifestError("sampling.t_ranges: expected one [lo, hi] per t-coordinate");
            for (const json& r : tr) m.sampling.t_ranges.push_back(range_pair(r, "t_ranges"));
        }
        if (s.contains("x_ranges")) {
            const json& xr = s["x_ranges"];
            if (!xr.is_array() || xr.size() != n)
                throw ManifestError("sampling.x_ranges: expected one [lo, hi] per x-coordinate");
            for (const json& r : xr) m.sampling.x_ranges.push_back(range_pair(r, "x_ranges"));
        }
        if (s.contains("v_range")) m.sampling.v_range = range_pair(s["v_range"], "v_range");
    }
    if (m.sampling.t_ranges.empty())
        m.sampling.t_ranges.assign(p, std::array<double, 2>{-1.0, 1.0});
    if (m.sampling.x_ranges.empty())
        m.sampling.x_ranges.assign(n, std::array<double, 2>{-1.0, 1.0});

    m.tolerance = j.value("tolerance", 1e-8);
    if (!(m.tolerance > 0.0)) throw ManifestError("tolerance must be positive");

    const std::set<std::string> known{"torsion_check", "curvature_check", "deflection",
                                      "ricci", "bianchi"};
    if (j.contains("suites")) {
        if (!j["suites"].is_array()) throw ManifestError("suites must be an array");
        for (const json& s : j["suites"]) {
            if (!s.is_string() || !known.count(s.get<std::string>()))
                throw ManifestError("unknown suite name in suites");
            m.suites.push_back(s.get<std::string>());
        }
    } else {
        m.suites.assign(known.begin(), known.end());
    }

    if (j.contains("X")) {
        const json& X = j["X"];
        if (!X.is_object() || !X.contains("t") || !X.contains("x") || !X.contains("v"))
            throw ManifestError("X must be an object with t, x and v grids");
        auto strings = [&](const json& a, const char* what, std::size_t len) {
            if (!a.is_array() || a.size() != len)
                throw ManifestError(std::string(what) + ": wrong length");
            std::vector<std::string> out;
            for (const json& s : a) {
                if (!s.is_string()) throw ManifestError(std::string(what) + ": entries must be strings");
                out.push_back(s.get<std::string>());
            }
            return out;
        };
        m.X_t = strings(X["t"], "X.t", p);
        m.X_x = strings(X["x"], "X.x", n);
        m.X_v = string_matrix(X["v"], "X.v", n, p);
    }

    return m;
}

std::vector<Point> sample_points(Dims dims, const Sampling& sampling) {
    std::mt19937_64 rng(sampling.seed);
    auto uniform = [&](double lo, double hi) {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    };
    std::vector<Point> points;
    points.reserve(static_cast<std::size_t>(sampling.count));
    for (int c = 0; c < sampling.count; ++c) {
        Point q = Point::zeros(dims);
        for (int a = 0; a < dims.p; ++a)
            q.t[static_cast<std::size_t>(a)] =
                uniform(sampling.t_ranges[static_cast<std::size_t>(a)][0],
                        sampling.t_ranges[static_cast<std::size_t>(a)][1]);
        for (int i = 0; i < dims.n; ++i)
            q.x[static_cast<std::size_t>(i)] =
                uniform(sampling.x_ranges[static_cast<std::size_t>(i)][0],
                        sampling.x_ranges[static_cast<std::size_t>(i)][1]);
        for (int i = 0; i < dims.n; ++i)
            for (int a = 0; a < dims.p; ++a)
                q.fiber(i, a) = uniform(sampling.v_range[0], sampling.v_range[1]);
        points.push_back(std::move(q));
    }
    return points;
}

namespace {

std::uint64_t fnv1a(const std::string& data) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

ExprGrid parse_grid(const std::vector<std::vector<std::string>>& src, Dims dims,
                    const char* what) {
    ExprGrid out({src.size(), src.empty() ? 0 : src[0].size()});
    for (std::size_t r = 0; r < src.size(); ++r)
        for (std::size_t c = 0; c < src[r].size(); ++c) {
            try {
                out(r, c) = parse_expr(src[r][c], dims);
            } catch (const ParseError& e) {
                throw ManifestError(std::string(what) + "[" + std::to_string(r) + "][" +
                                    std::to_string(c) + "]: " + e.what());
            }
        }
    return out;
}

json point_json(const Point& q) {
    json out;
    out["t"] = q.t;
    out["x"] = q.x;
    json v = json::array();
    for (int i = 0; i < q.dims.n; ++i) {
        json row = json::array();
        for (int a = 0; a < q.dims.p; ++a) row.push_back(q.fiber(i, a));
        v.push_back(std::move(row));
    }
    out["v"] = std::move(v);
    return out;
}

}  // namespace

RunOutcome run_manifest(const std::string& manifest_text, const RunOptions& opts) {
    RunOutcome outcome;
    std::string summary;
    try {
        Manifest m = parse_manifest(manifest_text);
        if (opts.tolerance) m.tolerance = *opts.tolerance;
        if (opts.seed) m.sampling.seed = *opts.seed;
        const Dims dims = m.dims;
        const std::size_t p = static_cast<std::size_t>(dims.p);
        const std::size_t n = static_cast<std::size_t>(dims.n);

        const Metric h = Metric::temporal(dims, parse_grid(m.h, dims, "h"));
        const Metric phi = Metric::spatial(dims, parse_grid(m.phi, dims, "phi"));

        const std::vector<Point> points = sample_points(dims, m.sampling);
        for (std::size_t k = 0; k < points.size(); ++k) {
            Evaluator ev(points[k]);
            for (const Metric* metric : {&h, &phi}) {
                const double det = ev.value(metric->det());
                if (!std::isfinite(det) || std::abs(det) <= 1e-12)
                    throw SingularMetricError(
                        (metric->kind() == MetricKind::Temporal ? std::string("h")
                                                                : std::string("phi")) +
                        " is singular at sample point " + std::to_string(k) +
                        " (|det| = " + std::to_string(std::abs(det)) + ")");
            }
        }

        GammaConnection conn = [&] {
            if (m.berwald) return berwald(h, phi);
            HNormalSpec spec = HNormalSpec::zero(dims, christoffel(h));
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t i = 0; i < n; ++i) {
                    for (std::size_t c = 0; c < p; ++c) {
                        try {
                            spec.G(k, i, c) = parse_expr(m.G[k][i][c], dims);
                        } catch (const ParseError& e) {
                            throw ManifestError("connection.G: " + std::string(e.what()));
                        }
                    }
                    for (std::size_t jj = 0; jj < n; ++jj) {
                        try {
                            spec.L(k, i, jj) = parse_expr(m.L[k][i][jj], dims);
                        } catch (const ParseError& e) {
                            throw ManifestError("connection.L: " + std::string(e.what()));
                        }
                        for (std::size_t c = 0; c < p; ++c) {
                            try {
                                spec.C(k, i, jj, c) = parse_expr(m.C[k][i][jj][c], dims);
                            } catch (const ParseError& e) {
                                throw ManifestError("connection.C: " + std::string(e.what()));
                            }
                        }
                    }
                }
            return build_hnormal(std::move(spec), canonical_nonlinear(h, phi));
        }();

        auto requested = [&](const char* name) {
            for (const std::string& s : m.suites)
                if (s == name) return true;
            return false;
        };

        const bool needs_cartan =
            requested("deflection") || requested("ricci") || requested("bianchi");
        if (needs_cartan && !is_cartan_type(conn.spec, points))
            throw NonCartanError(
                "ricci/bianchi/deflection suites need a Cartan-type connection: L or C is "
                "asymmetric in its lower spatial indices at a sample point");

        std::optional<DVectorField> X;
        if (requested("ricci")) {
            if (!m.X_t)
                throw ManifestError("suite \"ricci\" needs the X d-vector field grids");
            DVectorField f = DVectorField::zero(dims);
            try {
                for (std::size_t a = 0; a < p; ++a) f.t(a) = parse_expr((*m.X_t)[a], dims);
                for (std::size_t i = 0; i < n; ++i) f.x(i) = parse_expr((*m.X_x)[i], dims);
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t a = 0; a < p; ++a)
                        f.v(i, a) = parse_expr((*m.X_v)[i][a], dims);
            } catch (const ParseError& e) {
                throw ManifestError("X: " + std::string(e.what()));
            }
            X = std::move(f);
        }

        IdentityReport combined;
        combined.tolerance = m.tolerance;
        combined.points_used = static_cast<int>(points.size());
        auto absorb = [&](IdentityReport r) {
            for (IdentityEntry& e : r.entries) combined.entries.push_back(std::move(e));
        };
        // fixed order so reports are stable regardless of manifest order
        if (requested("torsion_check"))
            absorb(torsion_check_suite(conn, points, m.tolerance, m.berwald));
        if (requested("curvature_check"))
            absorb(curvature_check_suite(conn, points, m.tolerance, m.berwald));
        if (requested("deflection")) absorb(deflection_suite(conn, points, m.tolerance));
        if (requested("ricci")) absorb(ricci_suite(conn, *X, points, m.tolerance));
        if (requested("bianchi")) absorb(bianchi_suite(conn, points, m.tolerance));

        json report;
        char hash_buf[32];
        std::snprintf(hash_buf, sizeof hash_buf, "%016" PRIx64, fnv1a(manifest_text));
        report["manifest_hash"] = hash_buf;
        report["seed"] = m.sampling.seed;
        report["tolerance"] = m.tolerance;
        report["points_used"] = combined.points_used;
        report["all_pass"] = combined.all_pass();
        json entries = json::array();
        for (const IdentityEntry& e : combined.entries) {
            json je;
            je["id"] = e.id;
            je["max_residual"] = e.max_residual;
            je["pass"] = e.pass;
            je["worst_indices"] = e.worst_indices;
            je["worst_point"] = point_json(e.worst_point);
            entries.push_back(std::move(je));
        }
        report["entries"] = std::move(entries);
        outcome.report_json = report.dump(2) + "\n";

        char line[160];
        summary += "suite entry                       max residual   tolerance  status\n";
        for (const IdentityEntry& e : combined.entries) {
            std::snprintf(line, sizeof line, "%-32s  %12.5e  %10.1e  %s\n", e.id.c_str(),
                          e.max_residual, m.tolerance, e.pass ? "pass" : "FAIL");
            summary += line;
        }
        std::snprintf(line, sizeof line, "%zu entries over %d points: %s\n",
                      combined.entries.size(), combined.points_used,
                      combined.all_pass() ? "all pass" : "FAILURES");
        summary += line;
        outcome.exit_code = combined.all_pass() ? 0 : 1;
    } catch (const ManifestError& e) {
        outcome.exit_code = 2;
        summary = std::string("manifest error: ") + e.what() + "\n";
    } catch (const ParseError& e) {
        outcome.exit_code = 2;
        summary = std::string("expression error: ") + e.what() + "\n";
    } catch (const MetricError& e) {
        outcome.exit_code = 2;
        summary = std::string("metric error: ") + e.what() + "\n";
    } catch (const SingularMetricError& e) {
        outcome.exit_code = 3;
        summary = std::string("singular metric: ") + e.what() + "\n";
    } catch (const NonCartanError& e) {
        outcome.exit_code = 4;
        summary = std::string("connection error: ") + e.what() + "\n";
    } catch (const EvalError& e) {
        outcome.exit_code = 3;
        summary = std::string("evaluation error: ") + e.what() + "\n";
    }
    outcome.summary = summary;
    return outcome;
}

}  // namespace jetconn
