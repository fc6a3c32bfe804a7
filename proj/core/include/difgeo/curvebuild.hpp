#pragma once

#include <array>
#include <functional>
#include <optional>

#include "difgeo/curves.hpp"

namespace difgeo {

/// Prescribed curvature (and torsion) as functions of arclength, with an
/// initial frame. Space mode requires kappa > 0 on the whole domain.
struct IntrinsicSpec {
    Ast kappa;                 // expression of s; signed in plane mode
    std::optional<Ast> tau;    // present in space mode
    // function-valued overrides for measured (tabulated) data; when set they
    // take precedence over the expressions
    std::function<double(double)> kappa_fn, tau_fn;
    double s0 = 0.0, s1 = 1.0;
    Vec3 origin{0, 0, 0};
    Vec3 T0{1, 0, 0};
    Vec3 N0{0, 1, 0};          // B0 = T0 x N0 in space mode

    static IntrinsicSpec plane(const std::string& kappa_expr, double s0, double s1);
    static IntrinsicSpec space(const std::string& kappa_expr, const std::string& tau_expr,
                               double s0, double s1);
    static IntrinsicSpec plane_fn(std::function<double(double)> kappa, double s0, double s1);
    static IntrinsicSpec space_fn(std::function<double(double)> kappa,
                                  std::function<double(double)> tau, double s0, double s1);
    void validate() const;     // frame orthonormality within 1e-12
};

/// Integrate theta(s) = integral of kappa, then the position; unit-speed output.
CurveSpec reconstruct_plane(const IntrinsicSpec& spec, int steps);

struct SpaceReconstruction {
    CurveSpec curve;
    std::vector<std::array<Vec3, 3>> frames; // (T, N, B) per sample
    double max_orthonormality_drift = 0.0;   // before per-step re-orthonormalization
};

/// Integrate the Frenet system gamma' = T, T' = k N, N' = -k T + tau B,
/// B' = -tau N with Gram-Schmidt re-orthonormalization after every step.
SpaceReconstruction reconstruct_space(const IntrinsicSpec& spec, int steps);

struct RigidAlignment {
    std::array<double, 9> rotation; // 3x3 row-major, det = +1
    Vec3 translation;
    double residual = 0.0; // RMS distance after alignment

    Vec3 apply(const Vec3& p) const;
};

/// Best orientation-preserving isometry taking a onto b (matched samples),
/// det(R) = +1 enforced; residual is minimal among such isometries.
RigidAlignment rigid_align(const CurveSpec& a, const CurveSpec& b);

} // namespace difgeo
