#pragma once

#include <span>
#include <string>
#include <vector>

#include "jetconn/tensors.hpp"

namespace jetconn {

struct NonCartanError : std::runtime_error {
    explicit NonCartanError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A d-vector field given by its three component blocks.
struct DVectorField {
    ExprGrid t;  // X^a, shape (p)
    ExprGrid x;  // X^i, shape (n)
    ExprGrid v;  // X^(i)_(a), shape (n, p)

    static DVectorField zero(Dims d);
};

struct IdentityEntry {
    std::string id;
    double max_residual = 0.0;  // normalized: raw / (1 + max |term|)
    Point worst_point;
    std::vector<int> worst_indices;  // 0-based free-index tuple
    bool pass = false;
};

struct IdentityReport {
    std::vector<IdentityEntry> entries;
    double tolerance = 0.0;
    int points_used = 0;

    bool all_pass() const;
};

/// The 18 Ricci identities (6 per block: hT, hM, v). Both sides are built
/// from independent paths: the left by applying the covariant derivatives
/// twice, the right from the closed-form torsion/curvature families.
/// Requires a Cartan-type h-normal connection.
IdentityReport ricci_suite(const GammaConnection& conn, const DVectorField& X,
                           std::span<const Point> points, double tol);

/// The 6 deflection identities, with deflection tensors from the closed
/// forms and their covariant derivatives from the general machinery.
IdentityReport deflection_suite(const GammaConnection& conn, std::span<const Point> points,
                                double tol);

/// The 30 Bianchi identities, in groups 1-11.
IdentityReport bianchi_suite(const GammaConnection& conn, std::span<const Point> points,
                             double tol);

/// Per-family torsion checks: antisymmetry invariants, and for Berwald
/// connections the reference closed forms (only R_ab and R_ij survive,
/// matching the metric curvatures contracted with the fiber variables).
IdentityReport torsion_check_suite(const GammaConnection& conn, std::span<const Point> points,
                                   double tol, bool berwald_reference);

/// Per-family curvature checks: antisymmetries, and for Berwald the
/// reference forms (only H and R_jk survive; R_jk equals the spatial metric
/// curvature).
IdentityReport curvature_check_suite(const GammaConnection& conn,
                                     std::span<const Point> points, double tol,
                                     bool berwald_reference);

namespace detail {

struct IdentityInstance {
    std::vector<Expr> lhs;
    std::vector<Expr> rhs;
    std::vector<int> indices;
};

struct IdentityDef {
    std::string id;
    std::vector<IdentityInstance> instances;
};

IdentityReport run_identities(const std::vector<IdentityDef>& defs,
                              std::span<const Point> points, double tol);

void require_cartan(const GammaConnection& conn, std::span<const Point> points);

std::vector<IdentityDef> bianchi_definitions(const GammaConnection& conn);

}  // namespace detail

}  // namespace jetconn
