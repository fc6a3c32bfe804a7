#pragma once

#include <optional>
#include <vector>

#include "difgeo/surfaces.hpp"

namespace difgeo {

/// Darboux frame data along a curve on a surface.
struct DarbouxFrame {
    double t = 0.0;
    Vec3 T, mu, N; // orthonormal; mu = N x T
    double k_g = 0.0, k_n = 0.0;
};

/// One smooth segment of an on-surface curve: either an analytic (u(t), v(t))
/// pair or a sampled path carrying chart positions and velocities (as produced
/// by the geodesic tracer).
struct CurvePiece {
    std::optional<ParamCurve> analytic;
    std::vector<double> times;
    std::vector<Vec2> uv, duv;

    static CurvePiece from_param(ParamCurve c);
    static CurvePiece from_samples(std::vector<double> times, std::vector<Vec2> uv,
                                   std::vector<Vec2> duv);

    double t0() const;
    double t1() const;
    void eval(double t, Vec2& pos, Vec2& vel) const;   // Hermite interp on samples
    Vec2 accel(double t) const;                         // (u'', v'')
};

struct OnSurfaceCurve {
    SurfaceSpec surface;
    std::vector<CurvePiece> pieces;
    bool closed = false;

    /// Validates junction continuity (position gap <= 1e-8 relative).
    static OnSurfaceCurve make(SurfaceSpec S, std::vector<CurvePiece> pieces, bool closed);
};

DarbouxFrame darboux(const SurfaceSpec& S, const CurvePiece& c, double t);

/// Psi: arc integrals of k_g plus oriented exterior corner angles.
/// Throws on an exact-pi corner (cusp).
double total_geodesic_curvature(const OnSurfaceCurve& c, int n = 2048);

struct TransportResult {
    std::vector<Vec2> positions;   // (u, v) samples
    std::vector<Vec2> components;  // (a, b): w = a s_u + b s_v
    std::vector<Vec3> vectors;     // embedded w
    /// Net rotation for closed loops, clockwise-positive about the chart
    /// normal (so holonomy == Psi mod 2 pi; the counterclockwise reading
    /// is -Psi).
    double holonomy_angle = 0.0;
    double norm_drift = 0.0;            // relative first-form norm drift
    double max_normal_component = 0.0;  // max |<w, N>| / |w|
};

TransportResult parallel_transport(const OnSurfaceCurve& c, const Vec2& w0, int steps = 2048);

struct GaussBonnetResult {
    double psi = 0.0;
    double total_K = 0.0;
    double residual = 0.0; // psi + total_K - 2 pi
};

/// Boundary must be a closed loop oriented with the region on its left.
GaussBonnetResult gauss_bonnet(const OnSurfaceCurve& boundary, const Region& region, int nu,
                               int nv, int n_quad = 2048);

struct ChiResult {
    double psi_sum = 0.0;
    double total_K = 0.0;
    double chi_raw = 0.0; // (total_K + psi_sum) / (2 pi)
    int chi = 0;          // rounded
};

ChiResult gauss_bonnet_general(const SurfaceSpec& S, const std::vector<OnSurfaceCurve>& loops,
                               const Region& region, int nu, int nv, int n_quad = 2048);

} // namespace difgeo
