#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "difgeo/error.hpp"

namespace difgeo {

// ---------------------------------------------------------------------------
// Small fixed-size linear algebra.

struct Vec2 {
    double x = 0.0, y = 0.0;

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2 operator/(double s) const { return {x / s, y / s}; }
    Vec2 operator-() const { return {-x, -y}; }
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }
inline double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline double cross2(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline double norm(const Vec2& v) { return std::hypot(v.x, v.y); }
inline Vec2 normalized(const Vec2& v) {
    double n = norm(v);
    if (n == 0.0) throw usage_error("cannot normalize zero 2-vector");
    return v / n;
}
/// Rotation by +pi/2 (counterclockwise).
inline Vec2 perp(const Vec2& v) { return {-v.y, v.x}; }

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    Vec3 operator-() const { return {-x, -y, -z}; }
    Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }
inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }
inline Vec3 normalized(const Vec3& v) {
    double n = norm(v);
    if (n == 0.0) throw usage_error("cannot normalize zero 3-vector");
    return v / n;
}
inline bool finite(const Vec3& v) {
    return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z);
}

struct Mat2 {
    double a11 = 0.0, a12 = 0.0, a21 = 0.0, a22 = 0.0;

    static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static Mat2 symmetric(double d11, double d12, double d22) { return {d11, d12, d12, d22}; }

    double det() const { return a11 * a22 - a12 * a21; }
    double trace() const { return a11 + a22; }
    bool symmetric_entries(double tol = 0.0) const { return std::abs(a12 - a21) <= tol; }

    Vec2 apply(const Vec2& v) const { return {a11 * v.x + a12 * v.y, a21 * v.x + a22 * v.y}; }

    Mat2 operator*(const Mat2& o) const {
        return {a11 * o.a11 + a12 * o.a21, a11 * o.a12 + a12 * o.a22,
                a21 * o.a11 + a22 * o.a21, a21 * o.a12 + a22 * o.a22};
    }
    Mat2 operator-(const Mat2& o) const {
        return {a11 - o.a11, a12 - o.a12, a21 - o.a21, a22 - o.a22};
    }
    Mat2 operator*(double s) const { return {a11 * s, a12 * s, a21 * s, a22 * s}; }
};

/// Solve M x = rhs for a 2x2 system.
inline Vec2 solve2(const Mat2& m, const Vec2& rhs) {
    double d = m.det();
    if (d == 0.0 || !std::isfinite(d)) throw numeric_error("singular 2x2 system");
    return {(rhs.x * m.a22 - rhs.y * m.a12) / d, (m.a11 * rhs.y - m.a21 * rhs.x) / d};
}

// ---------------------------------------------------------------------------
// ODE integration.

using State = std::vector<double>;
using OdeRhs = std::function<State(double t, const State& y)>;

struct OdeTrajectory {
    std::vector<double> times;   // strictly increasing
    std::vector<State> states;   // states.size() == times.size()

    const State& back() const { return states.back(); }
};

/// Classical fixed-step RK4 over [t0, t1] with `steps` steps.
/// Throws a Numeric error carrying the failing time if the state goes non-finite.
OdeTrajectory integrate_rk4(const OdeRhs& rhs, State y0, double t0, double t1, int steps);

/// One RK4 step from (t, y) with step h.
State rk4_step(const OdeRhs& rhs, double t, const State& y, double h);

// ---------------------------------------------------------------------------
// Quadrature.

/// Composite Simpson rule; n must be even and >= 2. Exact on cubics.
double quad_simpson(const std::function<double(double)>& f, double a, double b, int n);

// ---------------------------------------------------------------------------
// Generalized symmetric 2x2 eigenproblem.

struct SymEig2 {
    double k1 = 0.0, k2 = 0.0;   // k1 <= k2
    Vec2 v1, v2;                 // normalized so v' * I * v = 1
    bool umbilic = false;        // k1 == k2 to within a relative floor
};

/// Solve II v = k I v for symmetric II and symmetric positive-definite I,
/// in closed form via the characteristic quadratic.
SymEig2 eig_generalized_sym2(const Mat2& second, const Mat2& first);

// ---------------------------------------------------------------------------
// Random sampling.

using Rng = std::mt19937_64;

/// Uniform point on the unit sphere (normalized Gaussian triple).
Vec3 sample_unit_sphere(Rng& rng);

/// Uniform direction on the unit circle.
Vec2 sample_unit_circle(Rng& rng);

} // namespace difgeo
