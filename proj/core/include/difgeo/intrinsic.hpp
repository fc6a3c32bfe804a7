#pragma once

#include <array>
#include <string>
#include <vector>

#include "difgeo/geodesy.hpp"
#include "difgeo/surfaces.hpp"

namespace difgeo {

/// Geodesic polar coordinates around a base point: node (j, i) sits at
/// exp_p(r_i e_{theta_j}). b = |s_theta| comes from fourth-order periodic
/// differences across rays; the radial field is exact trace data.
struct PolarField {
    Vec2 base;
    std::vector<double> r;       // nr + 1 radii including r = 0
    std::vector<double> theta;   // ntheta rays, spacing 2 pi / ntheta

    // node data indexed [ray][radius]
    std::vector<std::vector<Vec2>> uv;
    std::vector<std::vector<Vec3>> point;
    std::vector<std::vector<Vec3>> radial;        // embedded d(exp)/dr
    std::vector<std::vector<double>> radial_speed;
    std::vector<std::vector<double>> b;           // |s_theta|; 0 where masked
    std::vector<std::vector<char>> valid;

    double gauss_residual = 0.0;  // max |<s_theta, s_r>| / |s_theta|
    bool truncated = false;       // some ray left the chart before r_max
};

PolarField polar_field(const SurfaceSpec& S, const Vec2& p, double r_max, int nr, int ntheta);

/// Second-difference residual of the Jacobi equation b_rr + K b = 0 on the
/// interior nodes; K is sampled extrinsically at the node positions.
/// Masked or boundary nodes carry NaN.
struct JacobiResidual {
    std::vector<std::vector<double>> grid; // same [ray][radius] layout
    double max_abs = 0.0;                  // over valid interior nodes
};

JacobiResidual jacobi_residual(const PolarField& field, const SurfaceSpec& S);

/// Intrinsic Gaussian curvature of an orthogonal chart via
/// K = -(1/(a b)) (d_u(b_u / a) + d_v(a_v / b)), a = |s_u|, b = |s_v|,
/// with nested central differences of step h.
double intrinsic_K_orthogonal(const SurfaceSpec& S, double u, double v, double h = 1e-3);

/// Intrinsic curvature of the conformal metric b^2 (du^2 + dv^2):
/// K = -laplacian(ln b) / b^2, jet-exact (no finite differences).
double intrinsic_K_conformal(const Ast& b, double u, double v);

/// Max |K from the shape operator - K from the orthogonal-chart formula|.
double egregium_check(const SurfaceSpec& S, const std::vector<Vec2>& points, double h = 1e-3);

// ---------------------------------------------------------------------------
// Comparison geometry.

/// Plane triangle with prescribed side lengths; angles from the law of
/// cosines (alpha opposite a, and so on).
struct ModelTriangle {
    double a = 0.0, b = 0.0, c = 0.0;
    double alpha = 0.0, beta = 0.0, gamma = 0.0;
    bool degenerate = false; // triangle inequality not strict

    static ModelTriangle make(double a, double b, double c);
};

/// Angle between the sides of lengths a and b (opposite c).
double model_angle(double a, double b, double c);

/// Angle at p between the shooting directions toward q1 and q2, measured in
/// the first-form inner product.
double hinge_angle(const SurfaceSpec& S, const Vec2& p, const Vec2& q1, const Vec2& q2,
                   const ShootOptions& opts = {});

struct TriangleVerdict {
    std::array<Vec2, 3> vertices;
    bool ok = false;
    std::string reason;             // set when a side failed to converge
    std::array<double, 3> sides{};  // opposite lengths: sides[i] = d(v[i+1], v[i+2])
    std::array<double, 3> margins{}; // measured hinge - model angle per vertex
    double midpoint_margin = 0.0;    // d(v0, mid(v1 v2)) - model distance
};

/// Fat/thin evidence for small geodesic triangles: per-vertex hinge-vs-model
/// margins plus a midpoint distance witness.
std::vector<TriangleVerdict> comparison_check(const SurfaceSpec& S,
                                              const std::vector<std::array<Vec2, 3>>& triangles,
                                              const ShootOptions& opts = {});

/// The three expressions of the quadrilateral lemma: given the plane
/// quadrilateral p x y z, the primed configuration straightens x, y, z onto a
/// line with the same consecutive distances and keeps |p x| and |p z|.
/// Signs of (|p - y| - |p' - y'|, angle at x difference,
/// pi - both angles at y) must agree.
struct AlexandrovSigns {
    double dist_term = 0.0;
    double angle_x_term = 0.0;
    double angle_y_term = 0.0;
};

AlexandrovSigns alexandrov_signs(const Vec2& p, const Vec2& x, const Vec2& y, const Vec2& z);

/// Length comparison between a tangent-plane curve (components in an
/// I-orthonormal basis at p, as expressions of t) and its exp_p image.
struct RauchResult {
    double embedded_length = 0.0;
    double preimage_length = 0.0;
    double margin = 0.0; // embedded - preimage; >= 0 for K <= 0, <= 0 for K >= 0
};

RauchResult rauch_check(const SurfaceSpec& S, const Vec2& p, const ParamCurve& tangent_curve,
                        int n = 512, int steps = 200);

} // namespace difgeo
