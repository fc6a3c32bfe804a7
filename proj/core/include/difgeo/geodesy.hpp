#pragma once

#include <optional>
#include <vector>

#include "difgeo/surfaces.hpp"

namespace difgeo {

struct GeodesicState {
    double u = 0.0, v = 0.0;
    double du = 0.0, dv = 0.0; // parameter velocities
};

struct GeodesicPath {
    std::vector<double> times;
    std::vector<GeodesicState> states;
    std::vector<Vec3> points;          // embedded samples
    std::vector<double> speed;         // embedded speed per sample
    double max_speed_drift = 0.0;      // relative to the initial speed
    double max_residual = 0.0;         // max |<gamma'', s_u>| + |<gamma'', s_v>|
    std::optional<std::vector<double>> clairaut; // <gamma', s_angular> / |gamma'|
    double max_clairaut_drift = 0.0;
    bool truncated = false;            // left the chart domain before T
    double end_time = 0.0;
};

/// Chart acceleration (u'', v''): solves I (u'', v'')^T = -(<C, s_u>, <C, s_v>)
/// with C = s_uu u'^2 + 2 s_uv u'v' + s_vv v'^2.
Vec2 geodesic_accel(const SurfaceSpec& S, const GeodesicState& st);

GeodesicPath trace_geodesic(const SurfaceSpec& S, const Vec2& p, const Vec2& w, double T,
                            int steps);

/// Endpoint of the unit-time geodesic with initial chart velocity w.
/// Throws a Domain error naming the exit time when the trace leaves the chart.
Vec2 exp_map(const SurfaceSpec& S, const Vec2& p, const Vec2& w, int steps = 512);

struct ShootOptions {
    int max_iter = 30;
    double tol = 1e-9;      // embedded endpoint miss
    int multistart = 8;
    int steps = 600;        // integration steps per trace
};

struct ShootResult {
    Vec2 w;                 // initial tangent, chart components
    GeodesicPath path;
    bool converged = false;
    double distance = 0.0;  // |w| in the first-form metric
    double residual = 0.0;  // endpoint miss (embedded)
};

/// Two-point geodesic by Newton shooting with multistart over evenly spaced
/// initial directions scaled by the chord distance. Deterministic selection:
/// shortest converged candidate, ties broken by direction angle.
ShootResult shoot_log(const SurfaceSpec& S, const Vec2& p, const Vec2& q,
                      const ShootOptions& opts = {});

struct CircleLength {
    double length = 0.0;
    double K_estimate = 0.0; // 3 (2 pi r - c) / (pi r^3)
};

/// Polygonal length of {exp_p(r e_theta)} over n_dirs directions.
CircleLength geodesic_circle_length(const SurfaceSpec& S, const Vec2& p, double r, int n_dirs,
                                    int steps = 200);

} // namespace difgeo
