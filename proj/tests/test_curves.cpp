#include <cmath>
#include <iomanip>
#include <sstream>

#include "difgeo/curves.hpp"
#include "difgeo/error.hpp"
#include "difgeo/gallery.hpp"
#include "doctest.h"

using namespace difgeo;

namespace {

const double TWO_PI = 2.0 * M_PI;

std::string num(double x) {
    std::ostringstream os;
    os << std::setprecision(17) << x;
    return os.str();
}

CurveSpec circle(double r = 1.0, bool ccw = true) {
    std::string rr = num(r);
    return CurveSpec::analytic(rr + "*cos(t)", ccw ? rr + "*sin(t)" : "0-" + rr + "*sin(t)", "0",
                               0.0, TWO_PI, true);
}

CurveSpec helix(double a, double b, double t1 = TWO_PI) {
    return CurveSpec::analytic(num(a) + "*cos(t)", num(a) + "*sin(t)", num(b) + "*t", 0.0, t1,
                               false);
}

// shrink an analytic curve until it fits in the unit ball
CurveSpec scaled_into_ball(const CurveSpec& c) {
    double max_norm = 0.0;
    for (int i = 0; i <= 512; ++i) {
        double t = c.t_begin() + (c.t_end() - c.t_begin()) * i / 512;
        max_norm = std::max(max_norm, norm(curve_jet(c, t).p));
    }
    const auto& a = c.analytic_data();
    std::string div = ")/" + num(max_norm * 1.001);
    return CurveSpec::analytic("(" + print(a.x) + div, "(" + print(a.y) + div,
                               "(" + print(a.z) + div, a.t0, a.t1, a.closed);
}

CurveSpec inscribed(const CurveSpec& c, int n) {
    std::vector<Vec3> pts;
    std::vector<double> params;
    double t0 = c.t_begin(), t1 = c.t_end();
    for (int i = 0; i < n; ++i) {
        double t = t0 + (t1 - t0) * i / n;
        pts.push_back(curve_jet(c, t).p);
        params.push_back(t);
    }
    return CurveSpec::sampled(std::move(pts), std::move(params), true);
}

const CheckResult& find_check(const std::vector<CheckResult>& checks, const std::string& name) {
    for (const auto& ch : checks)
        if (ch.name == name) return ch;
    REQUIRE(false);
    return checks.front();
}

} // namespace

TEST_CASE("length: analytic and sampled") {
    CHECK(length(circle()) == doctest::Approx(TWO_PI).epsilon(1e-8));
    CHECK(length(helix(3, 4)) == doctest::Approx(10.0 * M_PI).epsilon(1e-10));
    CurveSpec seg = CurveSpec::sampled({{0, 0, 0}, {1, 2, 2}});
    CHECK(length(seg) == doctest::Approx(3.0));
    // stationary parametrization is rejected
    CurveSpec bad = CurveSpec::analytic("t^2", "0", "0", -1.0, 1.0);
    CHECK_THROWS_AS(length(bad), Error);
}

TEST_CASE("arclength reparametrization") {
    CurveSpec line = CurveSpec::analytic("2*t", "0", "0", 0.0, 1.0);
    CurveSpec rl = arclength_reparam(line, 10);
    const auto& params = rl.sampled_data().params;
    CHECK(params.front() == doctest::Approx(0.0));
    CHECK(params.back() == doctest::Approx(2.0).epsilon(1e-12));
    for (size_t i = 0; i + 1 < params.size(); ++i)
        CHECK(params[i + 1] - params[i] == doctest::Approx(0.2).epsilon(1e-10));

    CurveSpec rh = arclength_reparam(helix(3, 4), 512);
    CHECK(rh.sampled_data().params.back() == doctest::Approx(10.0 * M_PI).epsilon(1e-10));

    CurveSpec ell = CurveSpec::analytic("2*cos(t)", "sin(t)", "0", 0.0, TWO_PI, true);
    double s_total = arclength_reparam(ell, 512).sampled_data().params.back();
    auto speed = [&](double t) {
        Vec3 d = curve_jet(ell, t).d1;
        return norm(d);
    };
    CHECK(s_total == doctest::Approx(quad_simpson(speed, 0.0, TWO_PI, 2048)).epsilon(1e-8));
}

TEST_CASE("frenet invariants: helix closed forms") {
    Rng rng(77);
    std::uniform_real_distribution<double> U(0.2, 3.0), V(-2.0, 2.0);
    for (int trial = 0; trial < 20; ++trial) {
        double a = U(rng), b = V(rng);
        CurveSpec h = helix(a, b);
        double denom = a * a + b * b;
        for (double t : {0.3, 1.7, 4.4}) {
            FrenetData f = frenet(h, t);
            CHECK(f.kappa == doctest::Approx(a / denom).epsilon(1e-10));
            CHECK(f.tau == doctest::Approx(b / denom).epsilon(1e-10));
            CHECK(std::abs(dot(f.T, f.N)) < 1e-9);
            CHECK(std::abs(dot(f.N, f.B)) < 1e-9);
            CHECK(norm(cross(f.T, f.N) - f.B) < 1e-9);
        }
    }
}

TEST_CASE("frenet: plane curves and the moment curve") {
    CurveSpec ell = CurveSpec::analytic("2*cos(t)", "sin(t)", "0", 0.0, TWO_PI, true);
    for (double t : {0.1, 1.2, 2.9, 5.0}) CHECK(std::abs(tau(ell, t)) < 1e-9);

    CurveSpec mom = CurveSpec::analytic("t", "t^2", "t^3", -1.0, 1.0);
    CHECK(kappa(mom, 0.0) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(tau(mom, 0.0) == doctest::Approx(3.0).epsilon(1e-12));

    CurveSpec line = CurveSpec::analytic("t", "2*t", "3*t", 0.0, 1.0);
    CHECK(kappa(line, 0.5) < 1e-12);
    CHECK_THROWS_AS(frenet(line, 0.5), Error);
}

TEST_CASE("graph curvature") {
    CHECK(curvature_graph(parse("x^2", {"x"}), 0.0) == doctest::Approx(2.0));
    CHECK(curvature_graph(parse("5", {"x"}), 1.3) == doctest::Approx(0.0));
    CHECK(curvature_graph(parse("ln(cos(x))", {"x"}), 0.0) == doctest::Approx(1.0));
    // agreement with the parametrized graph
    CurveSpec par = CurveSpec::analytic("t", "sin(t)+t^2", "0", -1.0, 1.0);
    Ast f = parse("sin(x)+x^2", {"x"});
    for (double x : {-0.7, 0.0, 0.4})
        CHECK(curvature_graph(f, x) == doctest::Approx(kappa(par, x)).epsilon(1e-10));
}

TEST_CASE("signed curvature orientation") {
    CHECK(signed_curvature(circle(1.0, true), 0.7) == doctest::Approx(1.0));
    CHECK(signed_curvature(circle(1.0, false), 0.7) == doctest::Approx(-1.0));
    CHECK(signed_curvature(circle(2.5, true), 1.0) == doctest::Approx(1.0 / 2.5));
}

TEST_CASE("vertices of the ellipse and the four-vertex bound") {
    CurveSpec ell = CurveSpec::analytic("2*cos(t)", "sin(t)", "0", 0.0, TWO_PI, true);
    auto vs = vertices(ell, 256);
    REQUIRE(vs.size() == 4);
    for (double v : vs) {
        double q = std::fmod(v, M_PI / 2);
        double d = std::min(q, M_PI / 2 - q);
        CHECK(d < 1e-6);
    }
    for (const auto& g : gallery_curves()) {
        if (!g.plane_simple_ccw) continue;
        if (g.name == "circle") continue; // constant curvature: no isolated vertices
        CHECK(vertices(g.spec, 512).size() >= 4);
    }
}

TEST_CASE("total curvature") {
    CurveSpec ell = CurveSpec::analytic("2*cos(t)", "sin(t)", "0", 0.0, TWO_PI, true);
    CHECK(total_curvature(ell) == doctest::Approx(TWO_PI).epsilon(1e-6));

    CurveSpec poly = CurveSpec::sampled({{0, 0, 0}, {1, 0, 0}, {2.5, 0, 0}, {7, 0, 0}});
    CHECK(total_curvature(poly) == doctest::Approx(0.0));

    // inscribed polylines: refinement is monotone and bounded by the curve
    double phi_curve = total_curvature(ell);
    double prev = 0.0;
    for (int n : {16, 32, 64, 128}) {
        double phi = total_curvature(inscribed(ell, n));
        CHECK(phi >= prev - 1e-12);
        CHECK(phi <= phi_curve + 1e-9);
        prev = phi;
    }
}

TEST_CASE("total signed curvature") {
    for (const auto& g : gallery_curves()) {
        if (!g.plane_simple_ccw) continue;
        CHECK(total_signed_curvature(g.spec, 8192) == doctest::Approx(TWO_PI).epsilon(1e-6));
    }
    // trochoid with |a| > 1 makes one clockwise turn of the tangent
    CurveSpec tro = CurveSpec::analytic("t+2*sin(t)", "2*cos(t)", "0", 0.0, TWO_PI);
    CHECK(total_signed_curvature(tro, 8192) == doctest::Approx(-TWO_PI).epsilon(1e-6));

    CurveSpec seg = CurveSpec::analytic("t", "3*t", "0", 0.0, 1.0);
    CHECK(total_signed_curvature(seg) == doctest::Approx(0.0));
}

TEST_CASE("osculating circle") {
    CurveSpec c = circle(2.0);
    for (double t : {0.0, 1.1, 3.9}) {
        OsculatingCircle oc = osculating_circle(c, t);
        REQUIRE(!oc.is_line);
        CHECK(norm(oc.center) < 1e-9);
        CHECK(oc.radius == doctest::Approx(2.0).epsilon(1e-12));
    }

    CurveSpec par = CurveSpec::analytic("t", "t^2", "0", -1.0, 1.0);
    OsculatingCircle oc = osculating_circle(par, 0.0);
    CHECK(norm(oc.center - Vec2{0.0, 0.5}) < 1e-12);
    CHECK(oc.radius == doctest::Approx(0.5));
    // second-order contact: distance to the circle decays like h^4 here
    for (double h : {1e-2, 1e-3}) {
        Vec3 p = curve_jet(par, h).p;
        double d = std::abs(norm(Vec2{p.x, p.y} - oc.center) - oc.radius);
        CHECK(d < 2.0 * h * h * h);
    }

    CurveSpec line = CurveSpec::analytic("t", "t", "0", 0.0, 1.0);
    CHECK(osculating_circle(line, 0.5).is_line);
}

TEST_CASE("evolute and involute") {
    CurveSpec c = circle(1.5);
    CHECK(norm(evolute(c, 2.2)) < 1e-9);

    // unit circle involute: alpha(s) = gamma(s) + (s0 - s) gamma'(s)
    CurveSpec u = circle(1.0);
    double s0 = M_PI / 2;
    for (double s : {0.2, 0.9, 1.4}) {
        Vec3 got = involute(u, s0, s);
        Vec3 want{std::cos(s) - (s0 - s) * std::sin(s), std::sin(s) + (s0 - s) * std::cos(s), 0.0};
        CHECK(norm(got - want) < 1e-6);
    }
}

TEST_CASE("osculating sphere of a unit-sphere curve is the unit sphere") {
    const CurveSpec& c = gallery_curve("sphere_wave").spec;
    for (double t : {0.4, 1.3, 2.6, 4.1, 5.5})
        CHECK(norm(osculating_sphere_center(c, t)) < 1e-6);
}

TEST_CASE("crofton estimators") {
    Rng rng(2024);
    CHECK(crofton_plane(circle(), 10000, rng) == doctest::Approx(TWO_PI).epsilon(0.01));

    CurveSpec seg = CurveSpec::sampled({{0, 0, 0}, {1, 2, 2}});
    CHECK(crofton_space_lines(seg, 20000, rng) == doctest::Approx(3.0).epsilon(0.01));

    CurveSpec tilted = CurveSpec::analytic("cos(t)", "sin(t)", "0", 0.0, TWO_PI, true);
    CHECK(crofton_space_planes(tilted, 20000, rng) == doctest::Approx(TWO_PI).epsilon(0.01));

    CurveSpec great = CurveSpec::analytic("cos(t)", "0", "sin(t)", 0.0, TWO_PI, true);
    CHECK(crofton_sphere(great, 10000, rng) == doctest::Approx(TWO_PI).epsilon(0.01));

    CurveSpec off_sphere = circle(2.0);
    CHECK_THROWS_AS(crofton_sphere(off_sphere, 100, rng), Error);
}

TEST_CASE("theorem battery: fenchel and dna") {
    for (const auto& g : gallery_curves()) {
        if (!g.closed) continue;
        auto checks = theorem_checks(g.spec, 4096);
        const auto& fen = find_check(checks, "fenchel");
        REQUIRE(fen.applicable);
        CHECK(fen.margin >= -1e-6);
        if (g.convex_plane) CHECK(std::abs(fen.margin) < 1e-6);
        const auto& dna =
            find_check(theorem_checks(scaled_into_ball(g.spec), 4096), "dna");
        REQUIRE(dna.applicable);
        CHECK(dna.margin >= -1e-6);
    }
    // knotted curve: total curvature comfortably above 2 pi
    auto checks = theorem_checks(gallery_curve("trefoil").spec, 4096);
    CHECK(find_check(checks, "fenchel").margin > 1.0);

    const auto& open_dna = find_check(theorem_checks(gallery_curve("moment").spec), "dna");
    CHECK(!open_dna.applicable);
}

TEST_CASE("theorem battery: lancret, spherical identity, spiral nesting") {
    auto hx = theorem_checks(helix(1.0, 0.7, 4 * M_PI), 512);
    const auto& lan = find_check(hx, "lancret");
    REQUIRE(lan.applicable);
    CHECK(lan.margin < 1e-10);

    auto sp = theorem_checks(gallery_curve("sphere_wave").spec, 512);
    const auto& si = find_check(sp, "spherical_identity");
    REQUIRE(si.applicable);
    CHECK(si.margin < 1e-4);

    auto ls = theorem_checks(gallery_curve("log_spiral").spec, 512);
    const auto& nest = find_check(ls, "spiral_nesting");
    REQUIRE(nest.applicable);
    CHECK(nest.margin > 0.0);
}

TEST_CASE("reparametrization invariance") {
    CurveSpec ell = CurveSpec::analytic("2*cos(t)", "sin(t)", "0", 0.0, TWO_PI, true);
    CurveSpec rs = arclength_reparam(ell, 4096);
    CHECK(length(rs) == doctest::Approx(length(ell)).epsilon(1e-6));
    CHECK(total_curvature(rs) == doctest::Approx(total_curvature(ell)).epsilon(1e-6));
    CHECK(total_signed_curvature(rs) ==
          doctest::Approx(total_signed_curvature(ell)).epsilon(1e-6));
}

TEST_CASE("curvature scaling law") {
    for (double lam : {0.5, 3.0}) {
        CurveSpec a = circle(1.0);
        CurveSpec b = circle(lam);
        for (double t : {0.3, 2.0})
            CHECK(kappa(b, t) == doctest::Approx(kappa(a, t) / lam).epsilon(1e-9));
    }
    CurveSpec m1 = CurveSpec::analytic("t", "t^2", "t^3", -1.0, 1.0);
    CurveSpec m2 = CurveSpec::analytic("2*t", "2*t^2", "2*t^3", -1.0, 1.0);
    CHECK(kappa(m2, 0.2) == doctest::Approx(kappa(m1, 0.2) / 2.0).epsilon(1e-9));
}

TEST_CASE("spherical curves have curvature at least 1") {
    const CurveSpec& c = gallery_curve("sphere_wave").spec;
    for (int i = 0; i <= 200; ++i) {
        double t = TWO_PI * i / 200;
        CHECK(kappa(c, t) >= 1.0 - 1e-9);
    }
}

TEST_CASE("total curvature equals tangent indicatrix length") {
    CurveSpec h = helix(2.0, 1.0, 4 * M_PI);
    int n = 8192;
    std::vector<Vec3> ind;
    for (int i = 0; i <= n; ++i) {
        double t = 4 * M_PI * i / n;
        Vec3 d = curve_jet(h, t).d1;
        ind.push_back(d / norm(d));
    }
    CurveSpec indc = CurveSpec::sampled(std::move(ind));
    CHECK(length(indc) == doctest::Approx(total_curvature(h, 8192)).epsilon(1e-6));
}
