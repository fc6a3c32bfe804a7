#include "difgeo/curves.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace difgeo {

namespace {

constexpr double kRegularityFloor = 1e-12;

Vec3 jet_component(const Jet3& jx, const Jet3& jy, const Jet3& jz, int order) {
    switch (order) {
        case 0: return {jx.f, jy.f, jz.f};
        case 1: return {jx.f1, jy.f1, jz.f1};
        case 2: return {jx.f2, jy.f2, jz.f2};
        default: return {jx.f3, jy.f3, jz.f3};
    }
}

CurveJet analytic_jet(const AnalyticCurve& a, double t) {
    Jet3 jx = eval_jet3(a.x, "t", t);
    Jet3 jy = eval_jet3(a.y, "t", t);
    Jet3 jz = eval_jet3(a.z, "t", t);
    CurveJet out;
    out.t = t;
    out.p = jet_component(jx, jy, jz, 0);
    out.d1 = jet_component(jx, jy, jz, 1);
    out.d2 = jet_component(jx, jy, jz, 2);
    out.d3 = jet_component(jx, jy, jz, 3);
    return out;
}

// Nonuniform 3-point first/second derivative at the middle node.
void diff3(const Vec3& pm, const Vec3& p0, const Vec3& pp, double h1, double h2,
           Vec3& d1, Vec3& d2) {
    d1 = pm * (-h2 / (h1 * (h1 + h2))) + p0 * ((h2 - h1) / (h1 * h2)) +
         pp * (h1 / (h2 * (h1 + h2)));
    d2 = pm * (2.0 / (h1 * (h1 + h2))) - p0 * (2.0 / (h1 * h2)) + pp * (2.0 / (h2 * (h1 + h2)));
}

struct SampledNeighborhood {
    // five consecutive (param, point) pairs centered at the query node;
    // endpoints of open curves repeat toward the interior
    double t[5];
    Vec3 p[5];
};

SampledNeighborhood neighborhood(const SampledCurve& s, double tq) {
    const size_t n = s.points.size();
    auto it = std::lower_bound(s.params.begin(), s.params.end(), tq);
    size_t i = it == s.params.end() ? n - 1 : static_cast<size_t>(it - s.params.begin());
    if (i > 0 && std::abs(s.params[i - 1] - tq) < std::abs(s.params[i] - tq)) --i;

    const bool dup_end = s.closed && norm(s.points.front() - s.points.back()) == 0.0;
    const size_t eff = dup_end ? n - 1 : n;
    double period = s.params.back() - s.params.front();
    if (s.closed && !dup_end) period += norm(s.points.back() - s.points.front());

    SampledNeighborhood nb;
    for (int k = -2; k <= 2; ++k) {
        long j = static_cast<long>(i) + k;
        double shift = 0.0;
        if (s.closed) {
            while (j < 0) { j += static_cast<long>(eff); shift -= period; }
            while (j >= static_cast<long>(eff)) { j -= static_cast<long>(eff); shift += period; }
        } else {
            j = std::clamp<long>(j, 0, static_cast<long>(n) - 1);
        }
        nb.t[k + 2] = s.params[static_cast<size_t>(j)] + shift;
        nb.p[k + 2] = s.points[static_cast<size_t>(j)];
    }
    return nb;
}

CurveJet sampled_jet(const SampledCurve& s, double tq) {
    SampledNeighborhood nb = neighborhood(s, tq);
    CurveJet out;
    out.t = nb.t[2];
    out.p = nb.p[2];
    double h1 = nb.t[2] - nb.t[1], h2 = nb.t[3] - nb.t[2];
    if (h1 <= 0.0 || h2 <= 0.0) {
        // open-curve endpoint: one-sided from the two interior neighbors
        if (h1 <= 0.0) {
            double g1 = nb.t[3] - nb.t[2], g2 = nb.t[4] - nb.t[3];
            Vec3 d1b, d2b;
            diff3(nb.p[2], nb.p[3], nb.p[4], g1, g2, d1b, d2b);
            out.d1 = (nb.p[3] - nb.p[2]) / g1 - d2b * (g1 / 2.0);
            out.d2 = d2b;
        } else {
            double g1 = nb.t[1] - nb.t[0], g2 = nb.t[2] - nb.t[1];
            Vec3 d1b, d2b;
            diff3(nb.p[0], nb.p[1], nb.p[2], g1, g2, d1b, d2b);
            out.d1 = (nb.p[2] - nb.p[1]) / g2 + d2b * (g2 / 2.0);
            out.d2 = d2b;
        }
        out.d3 = {0, 0, 0};
        return out;
    }
    diff3(nb.p[1], nb.p[2], nb.p[3], h1, h2, out.d1, out.d2);
    // third derivative from second derivatives at the flanking nodes
    double g0 = nb.t[1] - nb.t[0], g3 = nb.t[4] - nb.t[3];
    if (g0 > 0.0 && g3 > 0.0) {
        Vec3 d1m, d2m, d1p, d2p;
        diff3(nb.p[0], nb.p[1], nb.p[2], g0, h1, d1m, d2m);
        diff3(nb.p[2], nb.p[3], nb.p[4], h2, g3, d1p, d2p);
        out.d3 = (d2p - d2m) / (nb.t[3] - nb.t[1]);
    } else {
        out.d3 = {0, 0, 0};
    }
    return out;
}

double curve_scale(const std::vector<Vec3>& pts) {
    double s = 0.0;
    for (const auto& p : pts) s = std::max({s, std::abs(p.x), std::abs(p.y), std::abs(p.z)});
    return std::max(s, 1e-12);
}

} // namespace

CurveSpec CurveSpec::analytic(const std::string& x, const std::string& y, const std::string& z,
                              double t0, double t1, bool closed) {
    AnalyticCurve a;
    a.x = parse(x, {"t"});
    a.y = parse(y, {"t"});
    a.z = parse(z, {"t"});
    a.t0 = t0;
    a.t1 = t1;
    a.closed = closed;
    return analytic(std::move(a));
}

CurveSpec CurveSpec::analytic(AnalyticCurve a) {
    if (!(a.t0 < a.t1)) throw usage_error("curve domain requires t0 < t1");
    CurveSpec c;
    // probe for scale and planarity
    const int probes = 64;
    std::vector<Vec3> pts;
    bool plane = true;
    for (int i = 0; i <= probes; ++i) {
        double t = a.t0 + (a.t1 - a.t0) * i / probes;
        Vec3 p{eval(a.x, {{"t", t}}), eval(a.y, {{"t", t}}), eval(a.z, {{"t", t}})};
        if (!finite(p)) throw numeric_error("curve evaluates non-finite");
        pts.push_back(p);
    }
    double scale = curve_scale(pts);
    for (const auto& p : pts)
        if (std::abs(p.z) > 1e-12 * scale) plane = false;
    if (a.closed) {
        CurveJet j0 = analytic_jet(a, a.t0);
        CurveJet j1 = analytic_jet(a, a.t1);
        double vscale = std::max(norm(j0.d1), norm(j1.d1));
        if (norm(j0.p - j1.p) > 1e-8 * std::max(scale, 1.0) ||
            norm(j0.d1 - j1.d1) > 1e-8 * std::max(vscale, 1.0))
            throw geometry_error("closed curve fails endpoint periodicity check");
    }
    c.data_ = std::move(a);
    c.plane_ = plane;
    c.scale_ = scale;
    return c;
}

CurveSpec CurveSpec::sampled(std::vector<Vec3> points, std::vector<double> params, bool closed) {
    if (points.size() < 2) throw usage_error("sampled curve needs at least 2 points");
    if (params.empty()) {
        params.resize(points.size());
        params[0] = 0.0;
        for (size_t i = 1; i < points.size(); ++i)
            params[i] = params[i - 1] + norm(points[i] - points[i - 1]);
    }
    if (params.size() != points.size())
        throw usage_error("sampled curve params/points length mismatch");
    for (size_t i = 1; i < params.size(); ++i)
        if (!(params[i] > params[i - 1]))
            throw usage_error("sampled curve params must be strictly increasing");
    CurveSpec c;
    double scale = curve_scale(points);
    bool plane = true;
    for (const auto& p : points)
        if (std::abs(p.z) > 1e-12 * scale) plane = false;
    SampledCurve s;
    s.points = std::move(points);
    s.params = std::move(params);
    s.closed = closed;
    c.data_ = std::move(s);
    c.plane_ = plane;
    c.scale_ = scale;
    return c;
}

bool CurveSpec::closed() const {
    return is_analytic() ? analytic_data().closed : sampled_data().closed;
}
double CurveSpec::t_begin() const {
    return is_analytic() ? analytic_data().t0 : sampled_data().params.front();
}
double CurveSpec::t_end() const {
    return is_analytic() ? analytic_data().t1 : sampled_data().params.back();
}

CurveJet curve_jet(const CurveSpec& c, double t) {
    if (c.is_analytic()) return analytic_jet(c.analytic_data(), t);
    return sampled_jet(c.sampled_data(), t);
}

double curvature_floor(const CurveSpec& c) { return 1e-9 / c.scale(); }

// ---------------------------------------------------------------------------
// Frenet apparatus.

FrenetData frenet(const CurveSpec& c, double t) {
    CurveJet j = curve_jet(c, t);
    double speed = norm(j.d1);
    if (speed < kRegularityFloor * std::max(c.scale(), 1.0))
        throw geometry_error("irregular parametrization: |gamma'| ~ 0 at t = " + std::to_string(t));
    Vec3 cr = cross(j.d1, j.d2);
    double k = norm(cr) / (speed * speed * speed);
    if (k <= curvature_floor(c))
        throw geometry_error("Frenet frame undefined: curvature below floor at t = " +
                             std::to_string(t));
    FrenetData f;
    f.t = t;
    f.kappa = k;
    f.T = j.d1 / speed;
    f.B = cr / norm(cr);
    f.N = cross(f.B, f.T);
    f.tau = dot(cr, j.d3) / dot(cr, cr);
    return f;
}

double kappa(const CurveSpec& c, double t) {
    CurveJet j = curve_jet(c, t);
    double speed = norm(j.d1);
    if (speed < kRegularityFloor * std::max(c.scale(), 1.0))
        throw geometry_error("irregular parametrization at t = " + std::to_string(t));
    return norm(cross(j.d1, j.d2)) / (speed * speed * speed);
}

double tau(const CurveSpec& c, double t) { return frenet(c, t).tau; }

double kappa_prime_s(const CurveSpec& c, double t) {
    double span = c.t_end() - c.t_begin();
    double h = 1e-3 * span;
    if (!c.closed()) {
        double room = std::min(t - c.t_begin(), c.t_end() - t) / 2.5;
        if (room > 0.0) h = std::min(h, room);
        if (h <= 0.0) h = 1e-3 * span; // endpoint: lean on analytic extension
    }
    double dkdt = (-kappa(c, t + 2 * h) + 8 * kappa(c, t + h) - 8 * kappa(c, t - h) +
                   kappa(c, t - 2 * h)) / (12 * h);
    return dkdt / norm(curve_jet(c, t).d1);
}

PlaneFrenetData plane_frenet(const CurveSpec& c, double t) {
    if (!c.is_plane()) throw usage_error("plane Frenet data requires a plane curve");
    CurveJet j = curve_jet(c, t);
    Vec2 d1{j.d1.x, j.d1.y}, d2{j.d2.x, j.d2.y};
    double speed = norm(d1);
    if (speed < kRegularityFloor * std::max(c.scale(), 1.0))
        throw geometry_error("irregular parametrization at t = " + std::to_string(t));
    PlaneFrenetData f;
    f.t = t;
    f.T = d1 / speed;
    f.Nu = perp(f.T);
    f.k_signed = cross2(d1, d2) / (speed * speed * speed);
    return f;
}

double signed_curvature(const CurveSpec& c, double t) { return plane_frenet(c, t).k_signed; }

double curvature_graph(const Ast& f, double x) {
    Jet3 j = eval_jet3(f, "x", x);
    double d = 1.0 + j.f1 * j.f1;
    return std::abs(j.f2) / (d * std::sqrt(d));
}

// ---------------------------------------------------------------------------
// Length.

namespace {

double analytic_speed_checked(const CurveSpec& c, double t) {
    double s = norm(curve_jet(c, t).d1);
    if (s < kRegularityFloor * std::max(c.scale(), 1.0))
        throw geometry_error("irregular parametrization: |gamma'| ~ 0 at t = " + std::to_string(t));
    return s;
}

double chord_length(const SampledCurve& s, bool include_closing) {
    double acc = 0.0;
    for (size_t i = 1; i < s.points.size(); ++i) acc += norm(s.points[i] - s.points[i - 1]);
    if (include_closing && s.closed) acc += norm(s.points.front() - s.points.back());
    return acc;
}

} // namespace

double length(const CurveSpec& c, int n) {
    if (!c.is_analytic()) return chord_length(c.sampled_data(), true);
    if (n < 2) throw usage_error("length: need n >= 2");
    if (n % 2) ++n;
    return quad_simpson([&](double t) { return analytic_speed_checked(c, t); },
                        c.t_begin(), c.t_end(), n);
}

CurveSpec arclength_reparam(const CurveSpec& c, int samples) {
    if (!c.is_analytic()) throw usage_error("arclength_reparam expects an analytic curve");
    if (samples < 2) throw usage_error("arclength_reparam: samples must be >= 2");
    const double t0 = c.t_begin(), t1 = c.t_end();
    std::vector<Vec3> pts(samples + 1);
    std::vector<double> s(samples + 1);
    s[0] = 0.0;
    pts[0] = curve_jet(c, t0).p;
    for (int i = 1; i <= samples; ++i) {
        double ta = t0 + (t1 - t0) * (i - 1) / samples;
        double tb = t0 + (t1 - t0) * i / samples;
        s[i] = s[i - 1] + quad_simpson([&](double t) { return analytic_speed_checked(c, t); },
                                       ta, tb, 8);
        pts[i] = curve_jet(c, tb).p;
    }
    return CurveSpec::sampled(std::move(pts), std::move(s), c.closed());
}

// ---------------------------------------------------------------------------
// Total curvature.

namespace {

// external angle between consecutive chord directions
double external_angle(const Vec3& u1, const Vec3& u2) {
    double cosang = std::clamp(dot(u1, u2) / (norm(u1) * norm(u2)), -1.0, 1.0);
    return std::acos(cosang);
}

struct PolylineAngles {
    double sum = 0.0;
    bool cusp = false;
};

PolylineAngles polyline_external_angles(const SampledCurve& s) {
    PolylineAngles out;
    std::vector<Vec3> chords;
    const bool dup_end = s.closed && norm(s.points.front() - s.points.back()) == 0.0;
    size_t n = s.points.size();
    for (size_t i = 1; i < n; ++i) {
        Vec3 d = s.points[i] - s.points[i - 1];
        if (norm(d) == 0.0) throw usage_error("polyline has repeated consecutive points");
        chords.push_back(d);
    }
    if (s.closed && !dup_end) chords.push_back(s.points.front() - s.points.back());
    size_t m = chords.size();
    size_t junctions = s.closed ? m : m - 1;
    for (size_t i = 0; i < junctions; ++i) {
        double a = external_angle(chords[i], chords[(i + 1) % m]);
        if (std::abs(a - M_PI) < 1e-9) out.cusp = true;
        out.sum += a;
    }
    return out;
}

} // namespace

double total_curvature(const CurveSpec& c, int n, bool* cusp_flag) {
    if (cusp_flag) *cusp_flag = false;
    if (!c.is_analytic()) {
        PolylineAngles pa = polyline_external_angles(c.sampled_data());
        if (cusp_flag) *cusp_flag = pa.cusp;
        return pa.sum;
    }
    if (n % 2) ++n;
    return quad_simpson(
        [&](double t) {
            CurveJet j = curve_jet(c, t);
            double speed = norm(j.d1);
            if (speed < kRegularityFloor * std::max(c.scale(), 1.0))
                throw geometry_error("irregular parametrization at t = " + std::to_string(t));
            return norm(cross(j.d1, j.d2)) / (speed * speed);
        },
        c.t_begin(), c.t_end(), n);
}

double total_signed_curvature(const CurveSpec& c, int n) {
    if (!c.is_plane()) throw usage_error("total signed curvature requires a plane curve");
    if (!c.is_analytic()) {
        const SampledCurve& s = c.sampled_data();
        std::vector<Vec2> chords;
        const bool dup_end = s.closed && norm(s.points.front() - s.points.back()) == 0.0;
        for (size_t i = 1; i < s.points.size(); ++i) {
            Vec3 d = s.points[i] - s.points[i - 1];
            if (norm(d) == 0.0) throw usage_error("polyline has repeated consecutive points");
            chords.push_back({d.x, d.y});
        }
        if (s.closed && !dup_end) {
            Vec3 d = s.points.front() - s.points.back();
            chords.push_back({d.x, d.y});
        }
        size_t m = chords.size();
        size_t junctions = s.closed ? m : m - 1;
        double sum = 0.0;
        for (size_t i = 0; i < junctions; ++i) {
            const Vec2& a = chords[i];
            const Vec2& b = chords[(i + 1) % m];
            double ang = std::atan2(cross2(a, b), dot(a, b));
            if (std::abs(std::abs(ang) - M_PI) < 1e-9)
                throw geometry_error("oriented external angle undefined at a cusp corner");
            sum += ang;
        }
        return sum;
    }
    if (n % 2) ++n;
    return quad_simpson(
        [&](double t) {
            CurveJet j = curve_jet(c, t);
            Vec2 d1{j.d1.x, j.d1.y}, d2{j.d2.x, j.d2.y};
            double speed = norm(d1);
            if (speed < kRegularityFloor * std::max(c.scale(), 1.0))
                throw geometry_error("irregular parametrization at t = " + std::to_string(t));
            return cross2(d1, d2) / (speed * speed);
        },
        c.t_begin(), c.t_end(), n);
}

std::vector<double> vertices(const CurveSpec& c, int grid) {
    if (!c.is_plane()) throw usage_error("vertices require a plane curve");
    if (grid < 4) throw usage_error("vertices: grid too small");
    const double t0 = c.t_begin(), t1 = c.t_end();
    const double span = t1 - t0;
    const double h = 1e-4 * span;
    auto kp = [&](double t) {
        return (-signed_curvature(c, t + 2 * h) + 8 * signed_curvature(c, t + h) -
                8 * signed_curvature(c, t - h) + signed_curvature(c, t - 2 * h)) / (12 * h);
    };

    std::vector<double> ts(grid + 1), kv(grid + 1), kd(grid + 1);
    double kmin = 1e300, kmax = -1e300;
    for (int i = 0; i <= grid; ++i) {
        ts[i] = t0 + span * i / grid;
        kv[i] = signed_curvature(c, ts[i]);
        kmin = std::min(kmin, kv[i]);
        kmax = std::max(kmax, kv[i]);
    }
    double kscale = std::max(std::abs(kmin), std::abs(kmax));
    if (kmax - kmin <= 1e-12 * std::max(kscale, 1e-12))
        throw geometry_error("vertex search inconclusive: curvature constant on the grid");
    for (int i = 0; i <= grid; ++i) kd[i] = kp(ts[i]);

    std::vector<double> roots;
    double kdscale = 0.0;
    for (int i = 0; i <= grid; ++i) kdscale = std::max(kdscale, std::abs(kd[i]));
    for (int i = 0; i < grid; ++i) {
        double fa = kd[i], fb = kd[i + 1];
        if (std::abs(fa) <= 1e-9 * kdscale) {
            roots.push_back(ts[i]);
            continue;
        }
        if (fa * fb < 0.0) {
            double lo = ts[i], hi = ts[i + 1], flo = fa;
            for (int it = 0; it < 60; ++it) {
                double mid = 0.5 * (lo + hi);
                double fm = kp(mid);
                if (flo * fm <= 0.0) hi = mid;
                else { lo = mid; flo = fm; }
            }
            roots.push_back(0.5 * (lo + hi));
        }
    }
    // the last node is a junction only for open curves (for closed ones it wraps to the first)
    if (!c.closed() && std::abs(kd[grid]) <= 1e-9 * kdscale) roots.push_back(ts[grid]);
    // normalize into [t0, t1) for closed curves and deduplicate
    std::vector<double> out;
    double tolsep = span / grid * 0.5;
    std::sort(roots.begin(), roots.end());
    for (double r : roots) {
        if (c.closed() && r >= t1) r -= span;
        bool dup = false;
        for (double o : out)
            if (std::abs(o - r) < tolsep || (c.closed() && std::abs(std::abs(o - r) - span) < tolsep))
                dup = true;
        if (!dup) out.push_back(r);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Osculating objects.

OsculatingCircle osculating_circle(const CurveSpec& c, double t) {
    PlaneFrenetData f = plane_frenet(c, t);
    CurveJet j = curve_jet(c, t);
    OsculatingCircle out;
    if (std::abs(f.k_signed) <= curvature_floor(c)) {
        out.is_line = true;
        out.line_dir = f.T;
        return out;
    }
    out.center = Vec2{j.p.x, j.p.y} + f.Nu / f.k_signed;
    out.radius = 1.0 / std::abs(f.k_signed);
    return out;
}

Vec2 evolute(const CurveSpec& c, double t) {
    OsculatingCircle oc = osculating_circle(c, t);
    if (oc.is_line) throw geometry_error("evolute undefined where curvature vanishes");
    return oc.center;
}

namespace {

// invert the arclength function s(t) by bisection
double param_of_arclength(const CurveSpec& c, double s) {
    const double t0 = c.t_begin();
    double lo = t0, hi = c.t_end();
    double total = length(c, 4096);
    if (s < -1e-9 || s > total + 1e-9)
        throw usage_error("arclength value outside the curve");
    auto arc = [&](double t) {
        if (t <= t0) return 0.0;
        int n = 256;
        return quad_simpson([&](double x) { return norm(curve_jet(c, x).d1); }, t0, t, n);
    };
    for (int i = 0; i < 60; ++i) {
        double mid = 0.5 * (lo + hi);
        if (arc(mid) < s) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

Vec3 involute(const CurveSpec& c, double s0, double s) {
    double t = param_of_arclength(c, s);
    CurveJet j = curve_jet(c, t);
    Vec3 T = j.d1 / norm(j.d1);
    return j.p + (s0 - s) * T;
}

Vec3 osculating_sphere_center(const CurveSpec& c, double t) {
    FrenetData f = frenet(c, t);
    if (std::abs(f.tau) <= curvature_floor(c))
        throw geometry_error("osculating sphere undefined: torsion ~ 0 at t = " + std::to_string(t));
    double kps = kappa_prime_s(c, t);
    CurveJet j = curve_jet(c, t);
    // center of the sphere with third-order contact; the beta coefficient is
    // (1/kappa)' / tau = -kappa' / (kappa^2 tau) under nu' = -k T + tau B
    return j.p + f.N / f.kappa - f.B * (kps / (f.kappa * f.kappa * f.tau));
}

// ---------------------------------------------------------------------------
// Crofton estimators.

namespace {

// chord list of a fine polyline along the curve
std::vector<Vec3> curve_chords(const CurveSpec& c, int segments, std::vector<Vec3>* samples_out) {
    std::vector<Vec3> pts;
    if (c.is_analytic()) {
        for (int i = 0; i <= segments; ++i) {
            double t = c.t_begin() + (c.t_end() - c.t_begin()) * i / segments;
            pts.push_back(curve_jet(c, t).p);
        }
    } else {
        pts = c.sampled_data().points;
        if (c.closed() && norm(pts.front() - pts.back()) > 0.0) pts.push_back(pts.front());
    }
    std::vector<Vec3> chords;
    for (size_t i = 1; i < pts.size(); ++i) chords.push_back(pts[i] - pts[i - 1]);
    if (samples_out) *samples_out = std::move(pts);
    return chords;
}

} // namespace

double crofton_plane(const CurveSpec& c, int n_dirs, Rng& rng, int segments) {
    if (n_dirs < 1) throw usage_error("crofton: n_dirs must be >= 1");
    std::vector<Vec3> chords = curve_chords(c, segments, nullptr);
    double acc = 0.0;
    for (int d = 0; d < n_dirs; ++d) {
        Vec2 u = sample_unit_circle(rng);
        double len = 0.0;
        for (const auto& ch : chords) len += std::abs(u.x * ch.x + u.y * ch.y);
        acc += len;
    }
    return (M_PI / 2.0) * acc / n_dirs;
}

double crofton_space_lines(const CurveSpec& c, int n_dirs, Rng& rng, int segments) {
    if (n_dirs < 1) throw usage_error("crofton: n_dirs must be >= 1");
    std::vector<Vec3> chords = curve_chords(c, segments, nullptr);
    double acc = 0.0;
    for (int d = 0; d < n_dirs; ++d) {
        Vec3 u = sample_unit_sphere(rng);
        double len = 0.0;
        for (const auto& ch : chords) len += std::abs(dot(u, ch));
        acc += len;
    }
    return 2.0 * acc / n_dirs;
}

double crofton_space_planes(const CurveSpec& c, int n_dirs, Rng& rng, int segments) {
    if (n_dirs < 1) throw usage_error("crofton: n_dirs must be >= 1");
    std::vector<Vec3> chords = curve_chords(c, segments, nullptr);
    double acc = 0.0;
    for (int d = 0; d < n_dirs; ++d) {
        Vec3 u = sample_unit_sphere(rng);
        double len = 0.0;
        for (const auto& ch : chords) len += norm(ch - u * dot(u, ch));
        acc += len;
    }
    return (4.0 / M_PI) * acc / n_dirs;
}

double crofton_sphere(const CurveSpec& c, int n_dirs, Rng& rng, int segments) {
    if (n_dirs < 1) throw usage_error("crofton: n_dirs must be >= 1");
    std::vector<Vec3> samples;
    curve_chords(c, segments, &samples);
    for (const auto& p : samples)
        if (std::abs(norm(p) - 1.0) > 1e-6)
            throw geometry_error("spherical Crofton requires a curve on the unit sphere");
    double acc = 0.0;
    for (int d = 0; d < n_dirs; ++d) {
        Vec3 u = sample_unit_sphere(rng);
        int crossings = 0;
        double prev = dot(u, samples[0]);
        for (size_t i = 1; i < samples.size(); ++i) {
            double cur = dot(u, samples[i]);
            if (prev * cur < 0.0) ++crossings;
            if (cur != 0.0) prev = cur;
        }
        acc += crossings;
    }
    return M_PI * acc / n_dirs;
}

// ---------------------------------------------------------------------------
// Theorem checks.

std::vector<CheckResult> theorem_checks(const CurveSpec& c, int n) {
    std::vector<CheckResult> out;
    auto skip = [&](const char* name, const char* why) {
        out.push_back({name, false, 0.0, why});
    };
    auto report = [&](const char* name, double margin, std::string detail = "") {
        out.push_back({name, true, margin, std::move(detail)});
    };

    const bool closed = c.closed();
    const bool analytic = c.is_analytic();
    double len = length(c, 2 * n);
    double phi = total_curvature(c, 2 * n);

    // Fenchel: closed curves have total curvature >= 2 pi
    if (closed) report("fenchel", phi - 2 * M_PI);
    else skip("fenchel", "open curve");

    // curve inside the closed unit ball?
    bool in_ball = true;
    {
        std::vector<Vec3> samples;
        curve_chords(c, n, &samples);
        for (const auto& p : samples)
            if (norm(p) > 1.0 + 1e-9) in_ball = false;
    }

    // DNA: closed curve in the unit ball has total curvature >= its length
    if (closed && in_ball) {
        if (analytic) report("dna", phi - len);
        else skip("dna", "polyline covered by dna_poly");
    } else {
        skip("dna", closed ? "curve leaves the unit ball" : "open curve");
    }

    if (!analytic && closed && in_ball) report("dna_poly", phi - len, "strict inequality expected");
    else skip("dna_poly", "needs a closed polyline in the unit ball");

    // Lancret: slope lines have constant tau/kappa
    if (analytic) {
        bool ok = true;
        std::vector<double> ratio;
        for (int i = 1; i < n; ++i) {
            double t = c.t_begin() + (c.t_end() - c.t_begin()) * i / n;
            double k = kappa(c, t);
            if (k <= 100 * curvature_floor(c)) { ok = false; break; }
            ratio.push_back(frenet(c, t).tau / k);
        }
        if (ok && !ratio.empty()) {
            double mean = std::accumulate(ratio.begin(), ratio.end(), 0.0) / ratio.size();
            double var = 0.0;
            for (double r : ratio) var += (r - mean) * (r - mean);
            report("lancret", std::sqrt(var / ratio.size()),
                   "stddev of tau/kappa; ~0 means slope line");
        } else {
            skip("lancret", "curvature not bounded away from 0");
        }
    } else {
        skip("lancret", "needs an analytic curve");
    }

    // Spherical identity |k'/tau| = k sqrt(k^2 - 1) on unit-sphere curves
    if (analytic) {
        bool on_sphere = true;
        std::vector<Vec3> samples;
        curve_chords(c, 64, &samples);
        for (const auto& p : samples)
            if (std::abs(norm(p) - 1.0) > 1e-6) on_sphere = false;
        if (on_sphere) {
            double worst = 0.0;
            bool usable = false;
            for (int i = 1; i < n; ++i) {
                double t = c.t_begin() + (c.t_end() - c.t_begin()) * i / n;
                FrenetData f = frenet(c, t);
                if (std::abs(f.tau) <= 1e-6) continue;
                usable = true;
                double lhs = std::abs(kappa_prime_s(c, t) / f.tau);
                double rhs = f.kappa * std::sqrt(std::max(f.kappa * f.kappa - 1.0, 0.0));
                worst = std::max(worst, std::abs(lhs - rhs));
            }
            if (usable) report("spherical_identity", worst, "max residual, 0 expected");
            else skip("spherical_identity", "torsion ~ 0 everywhere sampled");
        } else {
            skip("spherical_identity", "curve not on the unit sphere");
        }
    } else {
        skip("spherical_identity", "needs an analytic curve");
    }

    // Spiral nesting: osculating circles of a monotone-curvature plane arc nest
    if (analytic && c.is_plane() && !closed) {
        std::vector<double> ts, ks;
        bool regular = true;
        for (int i = 1; i < n; ++i) {
            double t = c.t_begin() + (c.t_end() - c.t_begin()) * i / n;
            double k = std::abs(signed_curvature(c, t));
            if (k <= 100 * curvature_floor(c)) { regular = false; break; }
            ts.push_back(t);
            ks.push_back(k);
        }
        bool monotone = regular && ts.size() >= 8;
        for (size_t i = 1; monotone && i < ks.size(); ++i)
            if ((ks[i] - ks[i - 1]) * (ks[1] - ks[0]) <= 0.0) monotone = false;
        if (monotone) {
            double margin = 1e300;
            size_t step = std::max<size_t>(1, ts.size() / 16);
            for (size_t i = 0; i + step < ts.size(); i += step) {
                for (size_t jdx = i + step; jdx < ts.size(); jdx += step) {
                    Vec2 wa = evolute(c, ts[i]), wb = evolute(c, ts[jdx]);
                    double ra = 1.0 / ks[i], rb = 1.0 / ks[jdx];
                    margin = std::min(margin, std::abs(rb - ra) - norm(wb - wa));
                }
            }
            report("spiral_nesting", margin, "min radius-gap minus center distance, > 0 expected");
        } else {
            skip("spiral_nesting", "needs a regular monotone-curvature plane arc");
        }
    } else {
        skip("spiral_nesting", "needs an open analytic plane arc");
    }

    return out;
}

} // namespace difgeo
