#include "difgeo/intrinsic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "difgeo/error.hpp"

namespace difgeo {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

} // namespace

PolarField polar_field(const SurfaceSpec& S, const Vec2& p, double r_max, int nr, int ntheta) {
    if (nr < 5) throw usage_error("polar_field: nr must be >= 5");
    if (ntheta < 8) throw usage_error("polar_field: ntheta must be >= 8");
    if (r_max <= 0.0) throw usage_error("polar_field: r_max must be positive");

    ChartJet j0 = S.chart(p.x, p.y);
    Vec2 e1, e2;
    metric_basis(j0, e1, e2);

    PolarField f;
    f.base = p;
    for (int i = 0; i <= nr; ++i) f.r.push_back(r_max * i / nr);
    for (int j = 0; j < ntheta; ++j) f.theta.push_back(2.0 * M_PI * j / ntheta);

    for (int j = 0; j < ntheta; ++j) {
        double th = f.theta[j];
        Vec2 w = e1 * std::cos(th) + e2 * std::sin(th); // unit speed in the metric
        GeodesicPath path = trace_geodesic(S, p, w, r_max, nr);
        if (path.truncated) f.truncated = true;

        std::vector<Vec2> uv(nr + 1, Vec2{});
        std::vector<Vec3> pt(nr + 1), rad(nr + 1);
        std::vector<double> sp(nr + 1, 0.0), b(nr + 1, kNan);
        std::vector<char> ok(nr + 1, 0);
        for (size_t i = 0; i < path.states.size(); ++i) {
            const GeodesicState& st = path.states[i];
            ChartJet jet = S.chart(st.u, st.v);
            uv[i] = {st.u, st.v};
            pt[i] = jet.p;
            rad[i] = jet.s_u * st.du + jet.s_v * st.dv;
            sp[i] = path.speed[i];
            ok[i] = 1;
        }
        b[0] = 0.0;
        f.uv.push_back(std::move(uv));
        f.point.push_back(std::move(pt));
        f.radial.push_back(std::move(rad));
        f.radial_speed.push_back(std::move(sp));
        f.b.push_back(std::move(b));
        f.valid.push_back(std::move(ok));
    }

    // s_theta by fourth-order periodic differences across rays
    double dth = 2.0 * M_PI / ntheta;
    for (int j = 0; j < ntheta; ++j) {
        int jm2 = (j - 2 + ntheta) % ntheta, jm1 = (j - 1 + ntheta) % ntheta;
        int jp1 = (j + 1) % ntheta, jp2 = (j + 2) % ntheta;
        for (int i = 1; i <= nr; ++i) {
            if (!(f.valid[j][i] && f.valid[jm2][i] && f.valid[jm1][i] && f.valid[jp1][i] &&
                  f.valid[jp2][i]))
                continue;
            Vec3 s_th = (-f.point[jp2][i] + 8.0 * f.point[jp1][i] - 8.0 * f.point[jm1][i] +
                         f.point[jm2][i]) /
                        (12.0 * dth);
            double bb = norm(s_th);
            f.b[j][i] = bb;
            if (bb > 1e-12)
                f.gauss_residual =
                    std::max(f.gauss_residual, std::abs(dot(s_th, f.radial[j][i])) / bb);
        }
    }
    return f;
}

JacobiResidual jacobi_residual(const PolarField& f, const SurfaceSpec& S) {
    size_t nrays = f.theta.size();
    size_t nnodes = f.r.size();
    if (nnodes < 6) throw usage_error("jacobi_residual: field needs nr >= 5");
    double dr = f.r[1] - f.r[0];

    JacobiResidual out;
    out.grid.assign(nrays, std::vector<double>(nnodes, kNan));
    for (size_t j = 0; j < nrays; ++j) {
        for (size_t i = 1; i + 1 < nnodes; ++i) {
            double bm = f.b[j][i - 1], b0 = f.b[j][i], bp = f.b[j][i + 1];
            if (!std::isfinite(bm) || !std::isfinite(b0) || !std::isfinite(bp)) continue;
            double b_rr = (bm - 2.0 * b0 + bp) / (dr * dr);
            double K = curvature_report(S, f.uv[j][i].x, f.uv[j][i].y).K;
            double res = b_rr + K * b0;
            out.grid[j][i] = res;
            out.max_abs = std::max(out.max_abs, std::abs(res));
        }
    }
    return out;
}

namespace {

// a = |s_u|, b = |s_v| with the orthogonality hypothesis enforced
void orthogonal_ab(const SurfaceSpec& S, double u, double v, double& a, double& b) {
    FundForms ff = fund_forms(S.chart(u, v));
    double scale = std::sqrt(std::max(ff.E * ff.G, 1e-300));
    if (std::abs(ff.F) > 1e-8 * scale)
        throw geometry_error("intrinsic_K_orthogonal: chart is not orthogonal at stencil point");
    a = std::sqrt(ff.E);
    b = std::sqrt(ff.G);
}

} // namespace

double intrinsic_K_orthogonal(const SurfaceSpec& S, double u, double v, double h) {
    if (h <= 0.0) throw usage_error("intrinsic_K_orthogonal: h must be positive");
    auto a_of = [&](double uu, double vv) {
        double a, b;
        orthogonal_ab(S, uu, vv, a, b);
        return a;
    };
    auto b_of = [&](double uu, double vv) {
        double a, b;
        orthogonal_ab(S, uu, vv, a, b);
        return b;
    };
    // nested central differences of the divergence terms
    auto bu_over_a = [&](double uu) {
        return (b_of(uu + h, v) - b_of(uu - h, v)) / (2.0 * h) / a_of(uu, v);
    };
    auto av_over_b = [&](double vv) {
        return (a_of(u, vv + h) - a_of(u, vv - h)) / (2.0 * h) / b_of(u, vv);
    };
    double term_u = (bu_over_a(u + h) - bu_over_a(u - h)) / (2.0 * h);
    double term_v = (av_over_b(v + h) - av_over_b(v - h)) / (2.0 * h);
    return -(term_u + term_v) / (a_of(u, v) * b_of(u, v));
}

double intrinsic_K_conformal(const Ast& b, double u, double v) {
    Jet2x2 j = eval_jet2x2(b, "u", "v", u, v);
    if (j.f <= 0.0) throw domain_error("intrinsic_K_conformal: conformal factor must be positive");
    // laplacian of ln b, jet-exact
    double luu = j.fuu / j.f - (j.fu / j.f) * (j.fu / j.f);
    double lvv = j.fvv / j.f - (j.fv / j.f) * (j.fv / j.f);
    return -(luu + lvv) / (j.f * j.f);
}

double egregium_check(const SurfaceSpec& S, const std::vector<Vec2>& points, double h) {
    if (points.empty()) throw usage_error("egregium_check: no points");
    double worst = 0.0;
    for (const Vec2& p : points) {
        double ext = curvature_report(S, p.x, p.y).K;
        double intr = intrinsic_K_orthogonal(S, p.x, p.y, h);
        worst = std::max(worst, std::abs(ext - intr));
    }
    return worst;
}

// ---------------------------------------------------------------------------
// Comparison geometry.

double model_angle(double a, double b, double c) {
    if (a <= 0.0 || b <= 0.0 || c < 0.0)
        throw usage_error("model_angle: side lengths must be positive");
    double cosang = (a * a + b * b - c * c) / (2.0 * a * b);
    return std::acos(std::clamp(cosang, -1.0, 1.0));
}

ModelTriangle ModelTriangle::make(double a, double b, double c) {
    ModelTriangle t;
    t.a = a;
    t.b = b;
    t.c = c;
    if (a <= 0.0 || b <= 0.0 || c <= 0.0 || a + b <= c || b + c <= a || c + a <= b)
        t.degenerate = true;
    t.alpha = model_angle(b, c, a);
    t.beta = model_angle(c, a, b);
    t.gamma = model_angle(a, b, c);
    return t;
}

double hinge_angle(const SurfaceSpec& S, const Vec2& p, const Vec2& q1, const Vec2& q2,
                   const ShootOptions& opts) {
    ShootResult r1 = shoot_log(S, p, q1, opts);
    ShootResult r2 = shoot_log(S, p, q2, opts);
    if (!r1.converged || !r2.converged)
        throw geometry_error("hinge_angle: shooting did not converge");
    ChartJet j = S.chart(p.x, p.y);
    FundForms ff = fund_forms(j);
    double ip = ff.E * r1.w.x * r2.w.x + ff.F * (r1.w.x * r2.w.y + r1.w.y * r2.w.x) +
                ff.G * r1.w.y * r2.w.y;
    double n1 = metric_norm(j, r1.w), n2 = metric_norm(j, r2.w);
    if (n1 <= 0.0 || n2 <= 0.0) throw geometry_error("hinge_angle: zero-length side");
    return std::acos(std::clamp(ip / (n1 * n2), -1.0, 1.0));
}

std::vector<TriangleVerdict> comparison_check(const SurfaceSpec& S,
                                              const std::vector<std::array<Vec2, 3>>& triangles,
                                              const ShootOptions& opts) {
    std::vector<TriangleVerdict> out;
    for (const std::array<Vec2, 3>& tri : triangles) {
        TriangleVerdict v;
        v.vertices = tri;
        try {
            // one shot per ordered vertex pair
            Vec2 w[3][3];
            double d[3][3] = {};
            for (int i = 0; i < 3; ++i)
                for (int k = 0; k < 3; ++k) {
                    if (i == k) continue;
                    ShootResult r = shoot_log(S, tri[i], tri[k], opts);
                    if (!r.converged) throw geometry_error("side shooting did not converge");
                    w[i][k] = r.w;
                    d[i][k] = r.distance;
                }
            ChartJet jets[3] = {S.chart(tri[0].x, tri[0].y), S.chart(tri[1].x, tri[1].y),
                               S.chart(tri[2].x, tri[2].y)};
            for (int i = 0; i < 3; ++i) {
                int a = (i + 1) % 3, b = (i + 2) % 3;
                v.sides[i] = 0.5 * (d[a][b] + d[b][a]);
                FundForms ff = fund_forms(jets[i]);
                double ip = ff.E * w[i][a].x * w[i][b].x +
                            ff.F * (w[i][a].x * w[i][b].y + w[i][a].y * w[i][b].x) +
                            ff.G * w[i][a].y * w[i][b].y;
                double measured =
                    std::acos(std::clamp(ip / (d[i][a] * d[i][b]), -1.0, 1.0));
                v.margins[i] = measured - model_angle(d[i][a], d[i][b], 0.5 * (d[a][b] + d[b][a]));
            }

            // midpoint distance witness against the model triangle
            Vec2 mid = exp_map(S, tri[1], w[1][2] * 0.5, opts.steps);
            ShootResult rm = shoot_log(S, tri[0], mid, opts);
            if (!rm.converged) throw geometry_error("midpoint shooting did not converge");
            double c01 = d[0][1], c02 = d[0][2];
            double alpha = model_angle(c01, c02, v.sides[0]);
            Vec2 y_m{c01, 0.0};
            Vec2 z_m{c02 * std::cos(alpha), c02 * std::sin(alpha)};
            Vec2 mid_m = (y_m + z_m) * 0.5;
            v.midpoint_margin = rm.distance - norm(mid_m);
            v.ok = true;
        } catch (const Error& e) {
            v.ok = false;
            v.reason = e.what();
        }
        out.push_back(v);
    }
    return out;
}

namespace {

double plane_angle(const Vec2& at, const Vec2& a, const Vec2& b) {
    Vec2 u = a - at, v = b - at;
    double nu = norm(u), nv = norm(v);
    if (nu <= 0.0 || nv <= 0.0) throw geometry_error("alexandrov_signs: coincident points");
    return std::acos(std::clamp(dot(u, v) / (nu * nv), -1.0, 1.0));
}

} // namespace

AlexandrovSigns alexandrov_signs(const Vec2& p, const Vec2& x, const Vec2& y, const Vec2& z) {
    double l1 = norm(y - x), l2 = norm(z - y);
    double dpx = norm(p - x), dpy = norm(p - y), dpz = norm(p - z);
    if (l1 <= 0.0 || l2 <= 0.0 || dpx <= 0.0 || dpy <= 0.0 || dpz <= 0.0)
        throw geometry_error("alexandrov_signs: coincident points");
    if (std::abs(cross2(x - p, z - p)) < 1e-12 * (dpx * dpz))
        throw geometry_error("alexandrov_signs: p is collinear with x and z");

    // straightened configuration: x', y', z' on a line, |p'x'| and |p'z'| kept
    double base = l1 + l2;
    double px = (base * base + dpx * dpx - dpz * dpz) / (2.0 * base);
    double h2 = dpx * dpx - px * px;
    if (h2 <= 0.0 || dpx + dpz <= base || base + std::min(dpx, dpz) <= std::max(dpx, dpz))
        throw geometry_error("alexandrov_signs: straightened quadrilateral is not constructible");
    Vec2 xp{0.0, 0.0}, yp{l1, 0.0}, zp{base, 0.0}, pp{px, std::sqrt(h2)};

    AlexandrovSigns s;
    s.dist_term = dpy - norm(pp - yp);
    s.angle_x_term = plane_angle(x, p, y) - plane_angle(xp, pp, yp);
    s.angle_y_term = M_PI - plane_angle(y, p, x) - plane_angle(y, p, z);
    return s;
}

RauchResult rauch_check(const SurfaceSpec& S, const Vec2& p, const ParamCurve& tangent_curve,
                        int n, int steps) {
    if (n < 2) throw usage_error("rauch_check: n must be >= 2");
    ChartJet j0 = S.chart(p.x, p.y);
    Vec2 e1, e2;
    metric_basis(j0, e1, e2);

    RauchResult out;
    Vec2 prev_tan;
    Vec3 prev_emb;
    for (int k = 0; k <= n; ++k) {
        double t = tangent_curve.t0 + (tangent_curve.t1 - tangent_curve.t0) * k / n;
        double a = eval(tangent_curve.u, {{"t", t}});
        double b = eval(tangent_curve.v, {{"t", t}});
        Vec2 tan{a, b};
        Vec2 w = e1 * a + e2 * b;
        Vec2 end = exp_map(S, p, w, steps);
        Vec3 emb = S.chart(end.x, end.y).p;
        if (k > 0) {
            out.preimage_length += norm(tan - prev_tan);
            out.embedded_length += norm(emb - prev_emb);
        }
        prev_tan = tan;
        prev_emb = emb;
    }
    out.margin = out.embedded_length - out.preimage_length;
    return out;
}

} // namespace difgeo
