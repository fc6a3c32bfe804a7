#include <cmath>

#include "difgeo/error.hpp"
#include "difgeo/gallery.hpp"
#include "difgeo/geodesy.hpp"
#include "difgeo/transport.hpp"
#include "doctest.h"

using namespace difgeo;

namespace {

double wrap(double x) { return std::remainder(x, 2.0 * M_PI); }

OnSurfaceCurve ellipse_loop(const SurfaceSpec& S, double u0, double v0, double ru, double rv,
                            bool reversed = false) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%.17g + %.17g*cos(t)", u0, ru);
    std::string ue = buf;
    std::snprintf(buf, sizeof buf, "%.17g + %.17g*sin(t)", v0, reversed ? -rv : rv);
    std::string ve = buf;
    CurvePiece piece = CurvePiece::from_param(ParamCurve::make(ue, ve, 0.0, 2.0 * M_PI));
    return OnSurfaceCurve::make(S, {piece}, true);
}

/// Unit-sphere chart with the pole moved to (1, 1, 1)/sqrt(3) and a u-range
/// wide enough to wind around that pole more than once.
SurfaceSpec tilted_sphere() {
    return SurfaceSpec::parametric(
        "cos(v)*cos(u)/sqrt(2) + cos(v)*sin(u)/sqrt(6) + sin(v)/sqrt(3)",
        "-cos(v)*cos(u)/sqrt(2) + cos(v)*sin(u)/sqrt(6) + sin(v)/sqrt(3)",
        "-2*cos(v)*sin(u)/sqrt(6) + sin(v)/sqrt(3)", -4.0, 8.0, 0.05, 1.45);
}

/// Quarter great circle from a chart point with a prescribed embedded start
/// velocity, returned as a sampled piece.
CurvePiece great_arc(const SurfaceSpec& S, const Vec2& start, const Vec3& vel, int steps) {
    ChartJet j = S.chart(start.x, start.y);
    Mat2 I = fund_forms(j).first();
    Vec2 w = solve2(I, {dot(vel, j.s_u), dot(vel, j.s_v)});
    GeodesicPath path = trace_geodesic(S, start, w, M_PI / 2, steps);
    REQUIRE(!path.truncated);
    std::vector<Vec2> uv, duv;
    for (const GeodesicState& st : path.states) {
        uv.push_back({st.u, st.v});
        duv.push_back({st.du, st.dv});
    }
    return CurvePiece::from_samples(path.times, uv, duv);
}

Vec2 piece_end(const CurvePiece& c) {
    Vec2 pos, vel;
    c.eval(c.t1(), pos, vel);
    return pos;
}

} // namespace

TEST_CASE("transport in the plane is the identity") {
    SurfaceSpec flat = SurfaceSpec::builtin("plane");
    OnSurfaceCurve loop = ellipse_loop(flat, 0.1, -0.2, 0.8, 0.5);
    Vec2 w0{0.3, 0.4};
    TransportResult r = parallel_transport(loop, w0, 512);
    for (const Vec2& c : r.components) {
        CHECK(std::abs(c.x - w0.x) < 1e-10);
        CHECK(std::abs(c.y - w0.y) < 1e-10);
    }
    CHECK(std::abs(wrap(r.holonomy_angle)) < 1e-10);
    CHECK(r.norm_drift < 1e-10);
    CHECK(r.max_normal_component < 1e-10);
}

TEST_CASE("darboux frame along the sphere equator") {
    SurfaceSpec sph = SurfaceSpec::builtin("sphere");
    CurvePiece eq = CurvePiece::from_param(ParamCurve::make("t", "0", -3.0, 3.0));
    for (double t : {-2.5, -1.0, 0.0, 0.7, 2.9}) {
        DarbouxFrame f = darboux(sph, eq, t);
        CHECK(std::abs(norm(f.T) - 1.0) < 1e-12);
        CHECK(std::abs(dot(f.T, f.N)) < 1e-12);
        CHECK(norm(cross(f.N, f.T) - f.mu) < 1e-12);
        CHECK(std::abs(f.k_g) < 1e-12);
        CHECK(f.k_n == doctest::Approx(-1.0).epsilon(1e-12)); // outward normal
    }
}

TEST_CASE("latitude circle: psi and holonomy equal 2 pi sin(lat)") {
    SurfaceSpec sph = SurfaceSpec::builtin("sphere");
    for (double lat : {0.2, 0.35, 0.5}) {
        char ve[32];
        std::snprintf(ve, sizeof ve, "%.17g", lat);
        CurvePiece piece =
            CurvePiece::from_param(ParamCurve::make("t", ve, -M_PI, M_PI));
        OnSurfaceCurve loop = OnSurfaceCurve::make(sph, {piece}, true);

        double psi = total_geodesic_curvature(loop, 512);
        CHECK(psi == doctest::Approx(2.0 * M_PI * std::sin(lat)).epsilon(1e-9));

        TransportResult r = parallel_transport(loop, {0.4, 0.1}, 2048);
        CHECK(std::abs(wrap(r.holonomy_angle - psi)) < 1e-7);
        CHECK(std::abs(wrap(r.holonomy_angle - 2.0 * M_PI * std::sin(lat))) < 1e-7);
        CHECK(r.norm_drift < 1e-8);
        CHECK(r.max_normal_component < 1e-8);
    }
}

TEST_CASE("geodesic traces have vanishing geodesic curvature") {
    SurfaceSpec tor = SurfaceSpec::builtin("torus");
    GeodesicPath path = trace_geodesic(tor, {0.4, -0.2}, {0.5, 0.6}, 1.5, 8000);
    REQUIRE(!path.truncated);
    std::vector<Vec2> uv, duv;
    for (const GeodesicState& st : path.states) {
        uv.push_back({st.u, st.v});
        duv.push_back({st.du, st.dv});
    }
    CurvePiece piece = CurvePiece::from_samples(path.times, uv, duv);
    for (int i = 1; i < 40; ++i) {
        double t = 1.5 * i / 40.0;
        DarbouxFrame f = darboux(tor, piece, t);
        CHECK(std::abs(f.k_g) < 1e-6);
    }
}

TEST_CASE("holonomy matches psi mod 2 pi on analytic loops") {
    struct Case {
        SurfaceSpec S;
        double u0, v0, ru, rv;
    };
    std::vector<Case> cases;
    cases.push_back({SurfaceSpec::builtin("sphere"), 0.3, 0.2, 0.5, 0.35});
    cases.push_back({SurfaceSpec::builtin("torus"), -0.4, 0.6, 0.7, 0.45});
    cases.push_back({SurfaceSpec::builtin("saddle"), 0.1, -0.2, 0.4, 0.3});
    cases.push_back({SurfaceSpec::builtin("catenoid"), 0.5, -0.1, 0.6, 0.5});
    for (const Case& c : cases) {
        OnSurfaceCurve loop = ellipse_loop(c.S, c.u0, c.v0, c.ru, c.rv);
        double psi = total_geodesic_curvature(loop, 4096);
        TransportResult r = parallel_transport(loop, {0.2, 0.3}, 4096);
        CHECK(std::abs(wrap(r.holonomy_angle - psi)) < 1e-5);
        CHECK(r.norm_drift < 1e-7);
        CHECK(r.max_normal_component < 1e-7);
    }
}

TEST_CASE("transport is linear and inverts under loop reversal") {
    SurfaceSpec tor = SurfaceSpec::builtin("torus");
    OnSurfaceCurve fwd = ellipse_loop(tor, 0.2, -0.3, 0.6, 0.4);
    OnSurfaceCurve rev = ellipse_loop(tor, 0.2, -0.3, 0.6, 0.4, true);

    Vec2 a{0.3, -0.1}, b{-0.2, 0.5};
    TransportResult ra = parallel_transport(fwd, a, 2048);
    TransportResult rb = parallel_transport(fwd, b, 2048);
    TransportResult rab = parallel_transport(fwd, a + b, 2048);
    CHECK(std::abs(rab.components.back().x - ra.components.back().x - rb.components.back().x) <
          1e-9);
    CHECK(std::abs(rab.components.back().y - ra.components.back().y - rb.components.back().y) <
          1e-9);

    TransportResult back = parallel_transport(rev, ra.components.back(), 2048);
    CHECK(std::abs(back.components.back().x - a.x) < 1e-7);
    CHECK(std::abs(back.components.back().y - a.y) < 1e-7);
    CHECK(std::abs(wrap(back.holonomy_angle + ra.holonomy_angle)) < 1e-7);
}

TEST_CASE("spherical octant: three right angles, holonomy pi/2") {
    SurfaceSpec S = tilted_sphere();
    double vtx = std::asin(1.0 / std::sqrt(3.0));
    Vec2 A{M_PI / 6, vtx};
    Vec3 ex{1, 0, 0}, ey{0, 1, 0}, ez{0, 0, 1};
    CHECK(norm(S.chart(A.x, A.y).p - ex) < 1e-12);

    int steps = 8000;
    CurvePiece s1 = great_arc(S, A, ey, steps);
    CurvePiece s2 = great_arc(S, piece_end(s1), ez, steps);
    CurvePiece s3 = great_arc(S, piece_end(s2), ex, steps);
    Vec2 e3 = piece_end(s3);
    CHECK(norm(S.chart(e3.x, e3.y).p - ex) < 1e-8); // closes up (u wrapped by 2 pi)

    OnSurfaceCurve tri = OnSurfaceCurve::make(S, {s1, s2, s3}, true);
    double psi = total_geodesic_curvature(tri);
    CHECK(psi == doctest::Approx(3.0 * M_PI / 2.0).epsilon(1e-5));

    TransportResult r = parallel_transport(tri, {0.5, -0.3});
    // area pi/2 enclosed: the vector comes back rotated by pi/2 counterclockwise
    CHECK(wrap(r.holonomy_angle) == doctest::Approx(-M_PI / 2).epsilon(1e-4));
    CHECK(std::abs(wrap(r.holonomy_angle - psi)) < 1e-4);
    CHECK(r.norm_drift < 1e-6);

    // angle excess: interior angles are pi minus the exterior corner angles,
    // and the excess over pi equals the enclosed area
    double excess = 3.0 * M_PI - psi - M_PI;
    CHECK(excess == doctest::Approx(M_PI / 2).epsilon(1e-5));
}

TEST_CASE("cusp corners are rejected") {
    SurfaceSpec flat = SurfaceSpec::builtin("plane");
    CurvePiece out = CurvePiece::from_param(ParamCurve::make("t", "0", 0.0, 1.0));
    CurvePiece back = CurvePiece::from_param(ParamCurve::make("1 - t", "0", 0.0, 1.0));
    OnSurfaceCurve hairpin = OnSurfaceCurve::make(flat, {out, back}, true);
    CHECK_THROWS_AS(total_geodesic_curvature(hairpin), Error);
}

TEST_CASE("junction gaps are rejected") {
    SurfaceSpec flat = SurfaceSpec::builtin("plane");
    CurvePiece a = CurvePiece::from_param(ParamCurve::make("t", "0", 0.0, 1.0));
    CurvePiece b = CurvePiece::from_param(ParamCurve::make("t", "0.5", 0.0, 1.0));
    CHECK_THROWS_AS(OnSurfaceCurve::make(flat, {a, b}, false), Error);
}

TEST_CASE("gauss-bonnet: planar disk") {
    SurfaceSpec flat = SurfaceSpec::builtin("plane");
    CurvePiece circle =
        CurvePiece::from_param(ParamCurve::make("0.5*cos(t)", "0.5*sin(t)", 0.0, 2.0 * M_PI));
    OnSurfaceCurve boundary = OnSurfaceCurve::make(flat, {circle}, true);
    Region disk{-0.6, 0.6, -0.6, 0.6, parse("u^2 + v^2 - 0.25", {"u", "v"})};
    GaussBonnetResult r = gauss_bonnet(boundary, disk, 64, 64);
    CHECK(r.psi == doctest::Approx(2.0 * M_PI).epsilon(1e-9));
    CHECK(std::abs(r.total_K) < 1e-12);
    CHECK(std::abs(r.residual) < 1e-8);
}

TEST_CASE("gauss-bonnet: spherical caps at five polar angles") {
    SurfaceSpec sph = SurfaceSpec::builtin("sphere");
    for (double lat : {0.2, 0.5, 0.8, 1.1, 1.4}) {
        char ve[32];
        std::snprintf(ve, sizeof ve, "%.17g", lat);
        CurvePiece piece =
            CurvePiece::from_param(ParamCurve::make("t", ve, -M_PI, M_PI));
        OnSurfaceCurve boundary = OnSurfaceCurve::make(sph, {piece}, true);
        Region cap{-M_PI, M_PI, lat, sph.v1(), std::nullopt};
        GaussBonnetResult r = gauss_bonnet(boundary, cap, 16, 512);
        CHECK(r.total_K == doctest::Approx(2.0 * M_PI * (1.0 - std::sin(lat))).epsilon(1e-5));
        CHECK(std::abs(r.residual) < 1e-4);
    }
}

TEST_CASE("gauss-bonnet residual shrinks under grid refinement") {
    SurfaceSpec sph = SurfaceSpec::builtin("sphere");
    CurvePiece piece = CurvePiece::from_param(ParamCurve::make("t", "0.3", -M_PI, M_PI));
    OnSurfaceCurve boundary = OnSurfaceCurve::make(sph, {piece}, true);
    Region cap{-M_PI, M_PI, 0.3, sph.v1(), std::nullopt};
    double coarse = std::abs(gauss_bonnet(boundary, cap, 16, 32).residual);
    double fine = std::abs(gauss_bonnet(boundary, cap, 16, 64).residual);
    CHECK(fine < coarse);
    CHECK(coarse / fine > 2.0); // midpoint rule: about 4x per halving
}

TEST_CASE("gauss-bonnet rejects a boundary outside the region") {
    SurfaceSpec flat = SurfaceSpec::builtin("plane");
    CurvePiece circle =
        CurvePiece::from_param(ParamCurve::make("cos(t)", "sin(t)", 0.0, 2.0 * M_PI));
    OnSurfaceCurve boundary = OnSurfaceCurve::make(flat, {circle}, true);
    Region small{-0.5, 0.5, -0.5, 0.5, std::nullopt};
    CHECK_THROWS_AS(gauss_bonnet(boundary, small, 32, 32), Error);
    Region off{-2.0, 2.0, -2.0, 2.0, parse("u^2 + v^2 - 0.25", {"u", "v"})};
    CHECK_THROWS_AS(gauss_bonnet(boundary, off, 32, 32), Error);
}

TEST_CASE("euler characteristic from the general formula") {
    // closed torus: no boundary, total curvature zero
    SurfaceSpec tor = SurfaceSpec::builtin("torus");
    Region full{tor.u0(), tor.u1(), tor.v0(), tor.v1(), std::nullopt};
    ChiResult t = gauss_bonnet_general(tor, {}, full, 256, 256);
    CHECK(t.chi == 0);
    CHECK(std::abs(t.chi_raw) < 1e-6);

    // closed sphere
    SurfaceSpec sph = SurfaceSpec::builtin("sphere");
    Region ball{sph.u0(), sph.u1(), sph.v0(), sph.v1(), std::nullopt};
    ChiResult s = gauss_bonnet_general(sph, {}, ball, 256, 512);
    CHECK(s.chi == 2);
    CHECK(s.chi_raw == doctest::Approx(2.0).epsilon(1e-3));

    // flat disk
    SurfaceSpec flat = SurfaceSpec::builtin("plane");
    CurvePiece outer =
        CurvePiece::from_param(ParamCurve::make("cos(t)", "sin(t)", 0.0, 2.0 * M_PI));
    Region disk{-1.1, 1.1, -1.1, 1.1, parse("u^2 + v^2 - 1", {"u", "v"})};
    ChiResult d = gauss_bonnet_general(flat, {OnSurfaceCurve::make(flat, {outer}, true)}, disk,
                                       64, 64);
    CHECK(d.chi == 1);
    CHECK(d.chi_raw == doctest::Approx(1.0).epsilon(1e-9));

    // flat annulus: outer counterclockwise, inner clockwise
    CurvePiece inner =
        CurvePiece::from_param(ParamCurve::make("0.5*cos(t)", "-0.5*sin(t)", 0.0, 2.0 * M_PI));
    Region ann{-1.1, 1.1, -1.1, 1.1,
               parse("(u^2 + v^2 - 0.625)^2 - 0.140625", {"u", "v"})};
    ChiResult a = gauss_bonnet_general(
        flat,
        {OnSurfaceCurve::make(flat, {outer}, true), OnSurfaceCurve::make(flat, {inner}, true)},
        ann, 64, 64);
    CHECK(a.chi == 0);
    CHECK(std::abs(a.chi_raw) < 1e-9);
}
