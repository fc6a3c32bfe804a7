#include <cmath>

#include "difgeo/curvebuild.hpp"
#include "difgeo/error.hpp"
#include "difgeo/gallery.hpp"
#include "doctest.h"

using namespace difgeo;

namespace {

// tabulated arclength <-> parameter maps for an analytic curve
struct ArcTable {
    std::vector<double> s, t;
    double total() const { return s.back(); }

    double t_of_s(double sv) const {
        if (sv <= s.front()) return t.front();
        if (sv >= s.back()) return t.back();
        size_t lo = std::lower_bound(s.begin(), s.end(), sv) - s.begin();
        double w = (sv - s[lo - 1]) / (s[lo] - s[lo - 1]);
        return t[lo - 1] + w * (t[lo] - t[lo - 1]);
    }
};

ArcTable arc_table(const CurveSpec& c, int n) {
    ArcTable tab;
    tab.s = arclength_reparam(c, n).sampled_data().params;
    for (int i = 0; i <= n; ++i)
        tab.t.push_back(c.t_begin() + (c.t_end() - c.t_begin()) * i / n);
    return tab;
}

// linear interpolation of f(t(s)) over the table nodes
std::function<double(double)> tabulate(const CurveSpec& c, const ArcTable& tab,
                                       double (*f)(const CurveSpec&, double)) {
    std::vector<double> vals;
    for (double t : tab.t) vals.push_back(f(c, t));
    std::vector<double> s = tab.s;
    return [s, vals](double sv) {
        if (sv <= s.front()) return vals.front();
        if (sv >= s.back()) return vals.back();
        size_t lo = std::lower_bound(s.begin(), s.end(), sv) - s.begin();
        double w = (sv - s[lo - 1]) / (s[lo] - s[lo - 1]);
        return vals[lo - 1] + w * (vals[lo] - vals[lo - 1]);
    };
}

CurveSpec resample_by_arclength(const CurveSpec& c, const ArcTable& tab, int n, double s_end) {
    std::vector<Vec3> pts;
    std::vector<double> params;
    for (int i = 0; i <= n; ++i) {
        double sv = s_end * i / n;
        pts.push_back(curve_jet(c, tab.t_of_s(sv)).p);
        params.push_back(sv);
    }
    return CurveSpec::sampled(std::move(pts), std::move(params), false);
}

Vec3 rodrigues(const Vec3& axis, double angle, const Vec3& p) {
    Vec3 a = axis / norm(axis);
    return p * std::cos(angle) + cross(a, p) * std::sin(angle) +
           a * (dot(a, p) * (1.0 - std::cos(angle)));
}

} // namespace

TEST_CASE("plane reconstruction: line and circle") {
    IntrinsicSpec line = IntrinsicSpec::plane("0", 0.0, 5.0);
    CurveSpec lc = reconstruct_plane(line, 100);
    const auto& ld = lc.sampled_data();
    for (size_t i = 0; i < ld.points.size(); ++i)
        CHECK(norm(ld.points[i] - Vec3{ld.params[i], 0.0, 0.0}) < 1e-12);

    IntrinsicSpec circ = IntrinsicSpec::plane("2", 0.0, M_PI);
    CurveSpec cc = reconstruct_plane(circ, 4000);
    Vec3 center{0.0, 0.5, 0.0}; // origin + (1/k) * Nu
    for (const Vec3& p : cc.sampled_data().points)
        CHECK(std::abs(norm(p - center) - 0.5) < 1e-10);

    // closed circle: kappa = 1 over a full period closes up
    IntrinsicSpec full = IntrinsicSpec::plane("1", 0.0, 2.0 * M_PI);
    CurveSpec fc = reconstruct_plane(full, 10000);
    const auto& fd = fc.sampled_data();
    CHECK(norm(fd.points.front() - fd.points.back()) < 1e-4);
}

TEST_CASE("plane reconstruction: prescribed curvature is recovered") {
    IntrinsicSpec spec = IntrinsicSpec::plane("1+0.5*sin(s)", 0.0, 6.0);
    CurveSpec rc = reconstruct_plane(spec, 12000);
    for (double s : {1.0, 2.5, 4.0, 5.5})
        CHECK(signed_curvature(rc, s) ==
              doctest::Approx(1.0 + 0.5 * std::sin(s)).epsilon(1e-4));
}

TEST_CASE("plane round trip: ellipse") {
    CurveSpec ell = CurveSpec::analytic("2*cos(t)", "sin(t)", "0", 0.0, 2.0 * M_PI, true);
    ArcTable tab = arc_table(ell, 4096);
    auto k_of_s = tabulate(ell, tab, signed_curvature);

    IntrinsicSpec spec = IntrinsicSpec::plane_fn(k_of_s, 0.0, tab.total());
    // pin the start frame to the ellipse at t = 0: point (2,0), tangent (0,1)
    spec.origin = {2.0, 0.0, 0.0};
    spec.T0 = {0.0, 1.0, 0.0};
    spec.N0 = {-1.0, 0.0, 0.0};
    int steps = 16384;
    CurveSpec rc = reconstruct_plane(spec, steps);
    CurveSpec orig = resample_by_arclength(ell, tab, steps, tab.total());
    RigidAlignment al = rigid_align(rc, orig);
    CHECK(al.residual < 1e-4);
}

TEST_CASE("space reconstruction: helix from constant kappa, tau") {
    double a = 1.0, b = 0.5, c2 = a * a + b * b, c = std::sqrt(c2);
    IntrinsicSpec spec = IntrinsicSpec::space("0.8", "0.4", 0.0, 10.0);
    SpaceReconstruction rec = reconstruct_space(spec, 10000);
    CHECK(rec.max_orthonormality_drift <= 1e-7);

    // unit-speed helix with the same invariants
    std::vector<Vec3> pts;
    std::vector<double> params;
    const auto& rd = rec.curve.sampled_data();
    for (double s : rd.params) {
        pts.push_back({a * std::cos(s / c), a * std::sin(s / c), b * s / c});
        params.push_back(s);
    }
    CurveSpec helix = CurveSpec::sampled(std::move(pts), std::move(params), false);
    RigidAlignment al = rigid_align(rec.curve, helix);
    CHECK(al.residual < 1e-6);

    // measured invariants of the sampled output
    for (double s : {2.0, 5.0, 8.0}) {
        CHECK(kappa(rec.curve, s) == doctest::Approx(0.8).epsilon(1e-3));
        CHECK(tau(rec.curve, s) == doctest::Approx(0.4).epsilon(1e-3));
    }
}

TEST_CASE("space reconstruction: zero torsion stays planar") {
    IntrinsicSpec spec = IntrinsicSpec::space("1", "0", 0.0, 6.0);
    SpaceReconstruction rec = reconstruct_space(spec, 6000);
    for (const Vec3& p : rec.curve.sampled_data().points) CHECK(std::abs(p.z) < 1e-6);
}

TEST_CASE("space reconstruction: kappa <= 0 rejected") {
    IntrinsicSpec spec = IntrinsicSpec::space("0-1", "0", 0.0, 1.0);
    CHECK_THROWS_AS(reconstruct_space(spec, 100), Error);
}

TEST_CASE("space round trip: moment curve") {
    CurveSpec mom = CurveSpec::analytic("t", "t^2", "t^3", 0.0, 1.0);
    ArcTable tab = arc_table(mom, 2048);
    IntrinsicSpec spec =
        IntrinsicSpec::space_fn(tabulate(mom, tab, kappa), tabulate(mom, tab, tau), 0.0,
                                tab.total());
    int steps = 8192;
    SpaceReconstruction rec = reconstruct_space(spec, steps);
    CurveSpec orig = resample_by_arclength(mom, tab, steps, tab.total());
    RigidAlignment al = rigid_align(rec.curve, orig);
    CHECK(al.residual < 1e-3);
}

TEST_CASE("uniqueness up to isometry") {
    IntrinsicSpec p1 = IntrinsicSpec::plane("1+0.3*cos(s)", 0.0, 5.0);
    IntrinsicSpec p2 = p1;
    double phi = 1.1;
    p2.origin = {3.0, -2.0, 0.0};
    p2.T0 = {std::cos(phi), std::sin(phi), 0.0};
    p2.N0 = {-std::sin(phi), std::cos(phi), 0.0};
    CHECK(rigid_align(reconstruct_plane(p1, 8000), reconstruct_plane(p2, 8000)).residual < 1e-8);

    IntrinsicSpec s1 = IntrinsicSpec::space("1+0.2*sin(s)", "0.5", 0.0, 5.0);
    IntrinsicSpec s2 = s1;
    s2.origin = {1.0, 2.0, 3.0};
    s2.T0 = {0.0, 1.0, 0.0};
    s2.N0 = {0.0, 0.0, 1.0};
    CHECK(rigid_align(reconstruct_space(s1, 8000).curve, reconstruct_space(s2, 8000).curve)
              .residual < 1e-8);
}

TEST_CASE("rigid alignment") {
    const CurveSpec& helix = gallery_curve("helix").spec;
    std::vector<Vec3> pts;
    for (int i = 0; i <= 200; ++i)
        pts.push_back(curve_jet(helix, 4.0 * M_PI * i / 200).p);
    CurveSpec a = CurveSpec::sampled(pts);

    Vec3 axis{0.3, -1.0, 0.7};
    double angle = 2.1;
    Vec3 shift{5.0, -3.0, 1.5};
    std::vector<Vec3> moved, mirrored;
    for (const Vec3& p : pts) {
        moved.push_back(rodrigues(axis, angle, p) + shift);
        mirrored.push_back({p.x, p.y, -p.z});
    }
    CurveSpec b = CurveSpec::sampled(moved);
    RigidAlignment al = rigid_align(a, b);
    CHECK(al.residual < 1e-9);
    for (const Vec3& p : pts) CHECK(norm(al.apply(p) - (rodrigues(axis, angle, p) + shift)) < 1e-9);

    // orientation-preserving constraint leaves a mirror image misaligned
    CHECK(rigid_align(a, CurveSpec::sampled(mirrored)).residual > 0.1);

    CurveSpec line = CurveSpec::sampled({{0, 0, 0}, {1, 0, 0}, {2, 0, 0}, {3, 0, 0}});
    CHECK_THROWS_AS(rigid_align(line, line), Error);
}
