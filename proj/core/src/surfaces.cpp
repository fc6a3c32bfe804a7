#include "difgeo/surfaces.hpp"

#include <cmath>
#include <sstream>

namespace difgeo {

namespace {

double param_or(const std::map<std::string, double>& params, const std::string& key,
                double fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

} // namespace

SurfaceSpec SurfaceSpec::parametric(const std::string& x, const std::string& y,
                                    const std::string& z, double u0, double u1, double v0,
                                    double v1) {
    if (!(u0 < u1) || !(v0 < v1)) throw usage_error("surface domain rectangle is empty");
    SurfaceSpec s;
    auto ax = std::make_shared<Ast>(parse(x, {"u", "v"}));
    auto ay = std::make_shared<Ast>(parse(y, {"u", "v"}));
    auto az = std::make_shared<Ast>(parse(z, {"u", "v"}));
    s.eval_ = [ax, ay, az](double u, double v, Jet2x2& jx, Jet2x2& jy, Jet2x2& jz) {
        jx = eval_jet2x2(*ax, "u", "v", u, v);
        jy = eval_jet2x2(*ay, "u", "v", u, v);
        jz = eval_jet2x2(*az, "u", "v", u, v);
    };
    s.u0_ = u0; s.u1_ = u1; s.v0_ = v0; s.v1_ = v1;
    s.kind_ = "parametric";
    return s;
}

SurfaceSpec SurfaceSpec::graph(const std::string& f, double u0, double u1, double v0, double v1) {
    if (!(u0 < u1) || !(v0 < v1)) throw usage_error("surface domain rectangle is empty");
    SurfaceSpec s;
    auto af = std::make_shared<Ast>(parse(f, {"x", "y"}));
    s.eval_ = [af](double u, double v, Jet2x2& jx, Jet2x2& jy, Jet2x2& jz) {
        jx = Jet2x2::var_u(u);
        jy = Jet2x2::var_v(v);
        jz = eval_jet2x2(*af, "x", "y", u, v);
    };
    s.u0_ = u0; s.u1_ = u1; s.v0_ = v0; s.v1_ = v1;
    s.kind_ = "graph";
    return s;
}

SurfaceSpec SurfaceSpec::revolution(const std::string& axial, const std::string& radial,
                                    double s0, double s1, double a0, double a1) {
    if (!(s0 < s1) || !(a0 < a1)) throw usage_error("surface domain rectangle is empty");
    SurfaceSpec s;
    auto gx = std::make_shared<Ast>(parse(axial, {"s"}));
    auto gy = std::make_shared<Ast>(parse(radial, {"s"}));
    s.eval_ = [gx, gy](double u, double v, Jet2x2& jx, Jet2x2& jy, Jet2x2& jz) {
        Jet3 a = eval_jet3(*gx, "s", u);
        Jet3 r = eval_jet3(*gy, "s", u);
        if (r.f <= 0.0)
            throw geometry_error("revolution generatrix must keep radial coordinate > 0");
        double c = std::cos(v), sn = std::sin(v);
        // point = (r(u) cos v, r(u) sin v, a(u))
        jx = {r.f * c, r.f1 * c, -r.f * sn, r.f2 * c, -r.f1 * sn, -r.f * c};
        jy = {r.f * sn, r.f1 * sn, r.f * c, r.f2 * sn, r.f1 * c, -r.f * sn};
        jz = {a.f, a.f1, 0.0, a.f2, 0.0, 0.0};
    };
    s.u0_ = s0; s.u1_ = s1; s.v0_ = a0; s.v1_ = a1;
    s.kind_ = "revolution";
    s.angular_ = 1;
    s.generatrix_axial_ = gx;
    s.generatrix_radial_ = gy;
    return s;
}

void SurfaceSpec::generatrix(double s, Jet3& axial, Jet3& radial) const {
    if (!is_revolution_chart())
        throw usage_error("generatrix is only defined for revolution charts");
    axial = eval_jet3(*generatrix_axial_, "s", s);
    radial = eval_jet3(*generatrix_radial_, "s", s);
}

SurfaceSpec SurfaceSpec::builtin(const std::string& name,
                                 const std::map<std::string, double>& params) {
    auto num = [](double x) {
        std::ostringstream os;
        os.precision(17);
        os << x;
        std::string s = os.str();
        return x < 0 ? "(" + s + ")" : s;
    };
    SurfaceSpec s;
    if (name == "sphere") {
        double R = param_or(params, "R", 1.0);
        s = parametric(num(R) + "*cos(v)*cos(u)", num(R) + "*cos(v)*sin(u)", num(R) + "*sin(v)",
                       -M_PI, M_PI, -M_PI / 2, M_PI / 2);
        s.angular_ = 0;
    } else if (name == "cylinder") {
        double R = param_or(params, "R", 1.0);
        double h = param_or(params, "h", 2.0);
        s = parametric(num(R) + "*cos(u)", num(R) + "*sin(u)", "v", -M_PI, M_PI, -h / 2, h / 2);
        s.angular_ = 0;
    } else if (name == "torus") {
        double R = param_or(params, "R", 2.0);
        double r = param_or(params, "r", 1.0);
        std::string rad = "(" + num(R) + "+" + num(r) + "*cos(v))";
        s = parametric(rad + "*cos(u)", rad + "*sin(u)", num(r) + "*sin(v)",
                       -M_PI, M_PI, -M_PI, M_PI);
        s.angular_ = 0;
    } else if (name == "catenoid") {
        double c = param_or(params, "c", 1.0);
        std::string rad = "(" + num(c) + "*cosh(v/" + num(c) + "))";
        s = parametric(rad + "*cos(u)", rad + "*sin(u)", "v", -M_PI, M_PI, -1.2, 1.2);
        s.angular_ = 0;
    } else if (name == "helicoid") {
        double c = param_or(params, "c", 1.0);
        s = parametric("v*cos(u)", "v*sin(u)", num(c) + "*u", -M_PI, M_PI, 0.2, 1.5);
    } else if (name == "pseudosphere") {
        // tractrix revolution; chart kept away from the v = 0 rim
        s = parametric("cos(u)/cosh(v)", "sin(u)/cosh(v)", "v-tanh(v)",
                       -M_PI, M_PI, 0.3, 2.5);
        s.angular_ = 0;
    } else if (name == "saddle") {
        s = graph("x^2-y^2", -1.0, 1.0, -1.0, 1.0);
    } else if (name == "plane") {
        s = graph("0", -2.0, 2.0, -2.0, 2.0);
    } else {
        throw usage_error("unknown builtin surface '" + name + "'");
    }
    s.kind_ = name;
    return s;
}

ChartJet SurfaceSpec::chart(double u, double v) const {
    Jet2x2 jx, jy, jz;
    eval_(u, v, jx, jy, jz);
    ChartJet out;
    out.u = u;
    out.v = v;
    out.p = {jx.f, jy.f, jz.f};
    out.s_u = {jx.fu, jy.fu, jz.fu};
    out.s_v = {jx.fv, jy.fv, jz.fv};
    out.s_uu = {jx.fuu, jy.fuu, jz.fuu};
    out.s_uv = {jx.fuv, jy.fuv, jz.fuv};
    out.s_vv = {jx.fvv, jy.fvv, jz.fvv};
    Vec3 cr = cross(out.s_u, out.s_v);
    double floor = 1e-10 * std::max(norm(out.s_u) * norm(out.s_v), 1e-30);
    if (norm(cr) <= floor)
        throw geometry_error("degenerate chart point at (u,v) = (" + std::to_string(u) + ", " +
                             std::to_string(v) + ")");
    out.N = cr / norm(cr);
    return out;
}

// ---------------------------------------------------------------------------
// Curvature machinery.

FundForms fund_forms(const ChartJet& j) {
    FundForms f;
    f.E = dot(j.s_u, j.s_u);
    f.F = dot(j.s_u, j.s_v);
    f.G = dot(j.s_v, j.s_v);
    f.l = dot(j.s_uu, j.N);
    f.m = dot(j.s_uv, j.N);
    f.n = dot(j.s_vv, j.N);
    return f;
}

void metric_basis(const ChartJet& j, Vec2& e1, Vec2& e2) {
    FundForms ff = fund_forms(j);
    double disc = ff.E * (ff.E * ff.G - ff.F * ff.F);
    if (ff.E <= 0.0 || disc <= 0.0) throw geometry_error("degenerate first form");
    e1 = {1.0 / std::sqrt(ff.E), 0.0};
    e2 = Vec2{-ff.F, ff.E} / std::sqrt(disc);
}

double metric_norm(const ChartJet& j, const Vec2& w) {
    FundForms ff = fund_forms(j);
    double q = ff.E * w.x * w.x + 2.0 * ff.F * w.x * w.y + ff.G * w.y * w.y;
    return std::sqrt(std::max(q, 0.0));
}

Mat2 shape_matrix(const ChartJet& j) {
    FundForms f = fund_forms(j);
    double d = f.E * f.G - f.F * f.F;
    if (!(d > 0.0)) throw geometry_error("degenerate first fundamental form");
    // M = I^{-1} II
    return Mat2{(f.G * f.l - f.F * f.m) / d, (f.G * f.m - f.F * f.n) / d,
                (f.E * f.m - f.F * f.l) / d, (f.E * f.n - f.F * f.m) / d};
}

CurvatureReport curvature_report(const SurfaceSpec& S, double u, double v) {
    ChartJet j = S.chart(u, v);
    FundForms f = fund_forms(j);
    SymEig2 e = eig_generalized_sym2(f.second(), f.first());
    CurvatureReport r;
    r.k1 = e.k1;
    r.k2 = e.k2;
    r.K = e.k1 * e.k2;
    r.H = e.k1 + e.k2;
    r.umbilic = e.umbilic;
    r.N = j.N;
    r.chart_dir1 = e.v1;
    r.chart_dir2 = e.v2;
    r.dir1 = normalized(j.s_u * e.v1.x + j.s_v * e.v1.y);
    r.dir2 = normalized(j.s_u * e.v2.x + j.s_v * e.v2.y);
    return r;
}

double normal_curvature(const SurfaceSpec& S, double u, double v, const Vec2& dir) {
    if (dir.x == 0.0 && dir.y == 0.0) throw usage_error("normal curvature needs a direction");
    ChartJet j = S.chart(u, v);
    FundForms f = fund_forms(j);
    double ii = dir.x * dir.x * f.l + 2.0 * dir.x * dir.y * f.m + dir.y * dir.y * f.n;
    double i = dir.x * dir.x * f.E + 2.0 * dir.x * dir.y * f.F + dir.y * dir.y * f.G;
    return ii / i;
}

std::pair<double, double> revolution_principal(const SurfaceSpec& S, double s) {
    Jet3 a, r;
    S.generatrix(s, a, r);
    double speed2 = a.f1 * a.f1 + r.f1 * r.f1;
    if (std::abs(speed2 - 1.0) > 1e-6)
        throw usage_error("revolution_principal needs a unit-speed generatrix; "
                          "run the generatrix through arclength_reparam first");
    if (std::abs(a.f1) < 1e-12)
        throw geometry_error("revolution_principal: axial derivative vanishes");
    double k_meridian = -r.f2 / a.f1;
    double k_parallel = a.f1 / r.f;
    return {k_meridian, k_parallel};
}

// ---------------------------------------------------------------------------
// Curves in a chart.

ParamCurve ParamCurve::make(const std::string& u_expr, const std::string& v_expr, double t0,
                            double t1) {
    ParamCurve c;
    c.u = parse(u_expr, {"t"});
    c.v = parse(v_expr, {"t"});
    c.t0 = t0;
    c.t1 = t1;
    return c;
}

EmbeddedJet embedded_jet(const SurfaceSpec& S, const ParamCurve& c, double t) {
    Jet3 ju = eval_jet3(c.u, "t", t);
    Jet3 jv = eval_jet3(c.v, "t", t);
    EmbeddedJet e;
    e.t = t;
    e.q = {ju.f, jv.f};
    e.dq = {ju.f1, jv.f1};
    e.ddq = {ju.f2, jv.f2};
    e.chart = S.chart(ju.f, jv.f);
    const ChartJet& j = e.chart;
    e.p = j.p;
    e.d1 = j.s_u * ju.f1 + j.s_v * jv.f1;
    e.d2 = j.s_uu * (ju.f1 * ju.f1) + j.s_uv * (2.0 * ju.f1 * jv.f1) + j.s_vv * (jv.f1 * jv.f1) +
           j.s_u * ju.f2 + j.s_v * jv.f2;
    return e;
}

double meusnier_check(const SurfaceSpec& S, const ParamCurve& c, double t) {
    EmbeddedJet e = embedded_jet(S, c, t);
    double speed = norm(e.d1);
    if (speed < 1e-12) throw geometry_error("meusnier: irregular curve point");
    Vec3 cr = cross(e.d1, e.d2);
    double kap = norm(cr) / (speed * speed * speed);
    if (kap < 1e-12) throw geometry_error("meusnier: curve frame undefined (kappa ~ 0)");
    Vec3 T = e.d1 / speed;
    Vec3 n_curve = normalized(e.d2 - T * dot(e.d2, T));
    double cos_alpha = dot(n_curve, e.chart.N);
    double k_n = normal_curvature(S, e.q.x, e.q.y, e.dq);
    return kap * cos_alpha - k_n;
}

// ---------------------------------------------------------------------------
// Region integration.

double integrate_region(const SurfaceSpec& S, const std::function<double(double, double)>& h,
                        const Region& region, int nu, int nv) {
    if (nu < 1 || nv < 1) throw usage_error("integrate_region: grid must be positive");
    const double du = (region.u1 - region.u0) / nu;
    const double dv = (region.v1 - region.v0) / nv;
    double acc = 0.0;
    bool any_cell = false;
    for (int i = 0; i < nu; ++i) {
        for (int k = 0; k < nv; ++k) {
            double u = region.u0 + (i + 0.5) * du;
            double v = region.v0 + (k + 0.5) * dv;
            if (region.indicator) {
                double g = eval(*region.indicator, {{"u", u}, {"v", v}});
                if (g > 0.0) continue;
            }
            any_cell = true;
            ChartJet j = S.chart(u, v);
            acc += h(u, v) * norm(cross(j.s_u, j.s_v)) * du * dv;
        }
    }
    if (region.indicator && !any_cell)
        throw usage_error("integrate_region: indicator selects no cells");
    return acc;
}

double area(const SurfaceSpec& S, const Region& region, int nu, int nv) {
    return integrate_region(S, [](double, double) { return 1.0; }, region, nu, nv);
}

double total_K(const SurfaceSpec& S, const Region& region, int nu, int nv) {
    return integrate_region(
        S, [&](double u, double v) { return curvature_report(S, u, v).K; }, region, nu, nv);
}

double mean_square_normal_curvature(const SurfaceSpec& S, double u, double v, int n_dirs,
                                    Rng& rng) {
    if (n_dirs < 1) throw usage_error("mean_square_normal_curvature: n_dirs must be >= 1");
    CurvatureReport r = curvature_report(S, u, v);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * M_PI);
    double acc = 0.0;
    for (int i = 0; i < n_dirs; ++i) {
        double th = ang(rng);
        // I-orthonormal principal basis makes theta a true tangent angle
        Vec2 w = r.chart_dir1 * std::cos(th) + r.chart_dir2 * std::sin(th);
        double kn = normal_curvature(S, u, v, w);
        acc += kn * kn;
    }
    return acc / n_dirs;
}

} // namespace difgeo
