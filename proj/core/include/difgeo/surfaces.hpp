#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "difgeo/curves.hpp"
#include "difgeo/exprparse.hpp"
#include "difgeo/numcore.hpp"

namespace difgeo {

// ---------------------------------------------------------------------------
// Surface specifications. Every spec reduces to a chart s(u, v) with jets.

struct ChartJet {
    double u = 0.0, v = 0.0;
    Vec3 p;
    Vec3 s_u, s_v, s_uu, s_uv, s_vv;
    Vec3 N; // unit, = s_u x s_v / |s_u x s_v|
};

/// First (E, F, G) and second (l, m, n) fundamental forms at a chart point.
struct FundForms {
    double E = 0.0, F = 0.0, G = 0.0;
    double l = 0.0, m = 0.0, n = 0.0;

    Mat2 first() const { return Mat2::symmetric(E, F, G); }
    Mat2 second() const { return Mat2::symmetric(l, m, n); }
};

struct CurvatureReport {
    double k1 = 0.0, k2 = 0.0;      // principal curvatures, k1 <= k2
    Vec3 dir1, dir2;                // embedded unit principal directions
    Vec2 chart_dir1, chart_dir2;    // the same directions in the chart basis
    double K = 0.0;                 // k1 * k2
    double H = 0.0;                 // k1 + k2
    Vec3 N;
    bool umbilic = false;
};

class SurfaceSpec {
public:
    static SurfaceSpec parametric(const std::string& x, const std::string& y,
                                  const std::string& z, double u0, double u1, double v0,
                                  double v1);
    static SurfaceSpec graph(const std::string& f, double u0, double u1, double v0, double v1);

    /// Surface of revolution about the z axis with generatrix
    /// (axial(s), radial(s)), radial > 0; chart (u = s, v = angle).
    static SurfaceSpec revolution(const std::string& axial, const std::string& radial, double s0,
                                  double s1, double a0, double a1);

    /// Builtins: sphere{R}, cylinder{R,h}, torus{R,r}, catenoid{c},
    /// helicoid{c}, pseudosphere{}, saddle{}. All carry exact analytic charts.
    static SurfaceSpec builtin(const std::string& name,
                               const std::map<std::string, double>& params = {});

    ChartJet chart(double u, double v) const;

    double u0() const { return u0_; }
    double u1() const { return u1_; }
    double v0() const { return v0_; }
    double v1() const { return v1_; }
    bool contains(double u, double v) const {
        return u >= u0_ && u <= u1_ && v >= v0_ && v <= v1_;
    }

    const std::string& kind() const { return kind_; } // builtin name or parametric/graph/revolution

    /// Index (0 = u, 1 = v) of the rotation-angle parameter for surfaces of
    /// revolution about the z axis; empty for general charts.
    std::optional<int> angular_param() const { return angular_; }

    /// Revolution surfaces only: generatrix jets (axial, radial) at s.
    bool is_revolution_chart() const { return static_cast<bool>(generatrix_axial_); }
    void generatrix(double s, Jet3& axial, Jet3& radial) const;

private:
    SurfaceSpec() = default;

    // Component evaluator producing bivariate jets.
    std::function<void(double, double, Jet2x2&, Jet2x2&, Jet2x2&)> eval_;
    double u0_ = 0, u1_ = 1, v0_ = 0, v1_ = 1;
    std::string kind_;
    std::optional<int> angular_;
    std::shared_ptr<Ast> generatrix_axial_, generatrix_radial_;
};

// ---------------------------------------------------------------------------
// Curvature machinery.

FundForms fund_forms(const ChartJet& jet);

/// I-orthonormal tangent basis at a chart point (chart components).
void metric_basis(const ChartJet& jet, Vec2& e1, Vec2& e2);

/// Norm of a chart tangent vector in the first-form metric.
double metric_norm(const ChartJet& jet, const Vec2& w);

/// Matrix of the shape operator in the basis (s_u, s_v): solves I M = II.
Mat2 shape_matrix(const ChartJet& jet);

CurvatureReport curvature_report(const SurfaceSpec& S, double u, double v);

/// Normal curvature in the tangent direction dir (chart components,
/// normalized internally in the first-form metric).
double normal_curvature(const SurfaceSpec& S, double u, double v, const Vec2& dir);

/// Closed-form principal curvatures of a revolution surface with unit-speed
/// generatrix at s: (meridian, parallel) = (-radial'' / axial', axial' / radial).
std::pair<double, double> revolution_principal(const SurfaceSpec& S, double s);

// ---------------------------------------------------------------------------
// Curves in a chart.

/// Parameter-space curve t -> (u(t), v(t)) living in a chart.
struct ParamCurve {
    Ast u, v; // expressions of t
    double t0 = 0.0, t1 = 1.0;

    static ParamCurve make(const std::string& u_expr, const std::string& v_expr, double t0,
                           double t1);
};

/// Embedded position and first two derivatives of the composite curve.
struct EmbeddedJet {
    double t;
    Vec2 q, dq, ddq;       // chart coordinates and their t-derivatives
    Vec3 p, d1, d2;        // embedded
    ChartJet chart;
};

EmbeddedJet embedded_jet(const SurfaceSpec& S, const ParamCurve& c, double t);

/// Residual of kappa * cos(alpha) - k_n for a curve on the surface.
double meusnier_check(const SurfaceSpec& S, const ParamCurve& c, double t);

// ---------------------------------------------------------------------------
// Region integration (midpoint rule; jac = |s_u x s_v|).

struct Region {
    double u0, u1, v0, v1;
    std::optional<Ast> indicator; // keep cells with g(u, v) <= 0 at the center
};

double integrate_region(const SurfaceSpec& S, const std::function<double(double, double)>& h,
                        const Region& region, int nu, int nv);

double area(const SurfaceSpec& S, const Region& region, int nu, int nv);

/// Integral of the Gaussian curvature over the region.
double total_K(const SurfaceSpec& S, const Region& region, int nu, int nv);

/// Direction-average of k_n^2 over n_dirs uniform tangent directions;
/// compare against (3/8) H^2 - (1/2) K.
double mean_square_normal_curvature(const SurfaceSpec& S, double u, double v, int n_dirs,
                                    Rng& rng);

} // namespace difgeo
