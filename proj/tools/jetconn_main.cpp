#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "jetconn/manifest.hpp"

int main(int argc, char** argv) {
    CLI::App app{"jetconn: builds jet-bundle connections from a manifest and verifies the "
                 "torsion, curvature, deflection, Ricci and Bianchi identity suites "
                 "numerically at sampled points"};

    std::string manifest_path;
    std::string out_path;
    double tolerance = 0.0;
    std::uint64_t seed = 0;
    app.add_option("--manifest", manifest_path, "manifest JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    auto* out_opt = app.add_option("--out", out_path, "write the machine-readable report here");
    auto* tol_opt =
        app.add_option("--tolerance", tolerance, "override the manifest tolerance");
    auto* seed_opt = app.add_option("--seed", seed, "override the manifest sampling seed");

    CLI11_PARSE(app, argc, argv);

    std::ifstream in(manifest_path);
    if (!in) {
        std::cerr << "cannot read " << manifest_path << "\n";
        return 2;
    }
    std::ostringstream buf;
    buf << in.rdbuf();

    jetconn::RunOptions opts;
    if (*tol_opt) opts.tolerance = tolerance;
    if (*seed_opt) opts.seed = seed;

    const jetconn::RunOutcome outcome = jetconn::run_manifest(buf.str(), opts);
    std::cout << outcome.summary;
    if (*out_opt && !outcome.report_json.empty()) {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) {
            std::cerr << "cannot write " << out_path << "\n";
            return 2;
        }
        out << outcome.report_json;
    }
    return outcome.exit_code;
}
