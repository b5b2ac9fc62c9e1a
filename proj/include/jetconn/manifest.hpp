#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "jetconn/identities.hpp"

namespace jetconn {

struct ManifestError : std::runtime_error {
    explicit ManifestError(const std::string& msg) : std::runtime_error(msg) {}
};

struct SingularMetricError : std::runtime_error {
    explicit SingularMetricError(const std::string& msg) : std::runtime_error(msg) {}
};

struct Sampling {
    int count = 1;
    std::uint64_t seed = 0;
    std::vector<std::array<double, 2>> t_ranges;  // size p
    std::vector<std::array<double, 2>> x_ranges;  // size n
    std::array<double, 2> v_range{-1.0, 1.0};
};

/// Parsed verification manifest. Expression grids are kept as source
/// strings; parsing against the declared dims happens in run().
struct Manifest {
    Dims dims;
    std::vector<std::vector<std::string>> h;    // p x p
    std::vector<std::vector<std::string>> phi;  // n x n
    bool berwald = true;
    std::vector<std::vector<std::vector<std::string>>> G;               // n x n x p
    std::vector<std::vector<std::vector<std::string>>> L;               // n x n x n
    std::vector<std::vector<std::vector<std::vector<std::string>>>> C;  // n x n x n x p
    Sampling sampling;
    double tolerance = 1e-8;
    std::vector<std::string> suites;
    std::optional<std::vector<std::string>> X_t;               // p
    std::optional<std::vector<std::string>> X_x;               // n
    std::optional<std::vector<std::vector<std::string>>> X_v;  // n x p
};

Manifest parse_manifest(const std::string& json_text);

/// Seeded uniform sampling over the declared ranges; the draw order (t, x,
/// then fiber values spatial-major) is part of the format so reports are
/// reproducible bit for bit.
std::vector<Point> sample_points(Dims dims, const Sampling& sampling);

struct RunOptions {
    std::optional<double> tolerance;
    std::optional<std::uint64_t> seed;
};

struct RunOutcome {
    int exit_code = 0;  // 0 pass, 1 failed entries, 2 parse, 3 singular, 4 non-Cartan
    std::string report_json;
    std::string summary;
};

/// Full pipeline: metrics -> connection -> requested suites -> report.
/// Never throws; failures are encoded in the exit code with the message in
/// `summary`.
RunOutcome run_manifest(const std::string& manifest_text, const RunOptions& opts = {});

}  // namespace jetconn
