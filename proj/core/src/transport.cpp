#include "difgeo/transport.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "difgeo/error.hpp"

namespace difgeo {

namespace {

size_t locate(const std::vector<double>& times, double t) {
    size_t hi = std::upper_bound(times.begin(), times.end(), t) - times.begin();
    if (hi <= 1) return 0;
    if (hi >= times.size()) return times.size() - 2;
    return hi - 1;
}

} // namespace

CurvePiece CurvePiece::from_param(ParamCurve c) {
    CurvePiece p;
    p.analytic = std::move(c);
    return p;
}

CurvePiece CurvePiece::from_samples(std::vector<double> times, std::vector<Vec2> uv,
                                    std::vector<Vec2> duv) {
    if (times.size() < 2 || times.size() != uv.size() || times.size() != duv.size())
        throw usage_error("sampled curve piece needs matching times/positions/velocities, >= 2");
    for (size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1]))
            throw usage_error("sampled curve piece times must be strictly increasing");
    CurvePiece p;
    p.times = std::move(times);
    p.uv = std::move(uv);
    p.duv = std::move(duv);
    return p;
}

double CurvePiece::t0() const { return analytic ? analytic->t0 : times.front(); }
double CurvePiece::t1() const { return analytic ? analytic->t1 : times.back(); }

void CurvePiece::eval(double t, Vec2& pos, Vec2& vel) const {
    if (analytic) {
        Jet3 ju = eval_jet3(analytic->u, "t", t);
        Jet3 jv = eval_jet3(analytic->v, "t", t);
        pos = {ju.f, jv.f};
        vel = {ju.f1, jv.f1};
        return;
    }
    size_t i = locate(times, t);
    double h = times[i + 1] - times[i];
    double s = (t - times[i]) / h;
    // cubic Hermite on positions, linear on velocities
    double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
    double h10 = s * (1 - s) * (1 - s);
    double h01 = s * s * (3 - 2 * s);
    double h11 = s * s * (s - 1);
    pos = uv[i] * h00 + duv[i] * (h * h10) + uv[i + 1] * h01 + duv[i + 1] * (h * h11);
    vel = duv[i] * (1 - s) + duv[i + 1] * s;
}

Vec2 CurvePiece::accel(double t) const {
    if (analytic) {
        return {eval_jet3(analytic->u, "t", t).f2, eval_jet3(analytic->v, "t", t).f2};
    }
    if (times.size() == 2) return (duv[1] - duv[0]) / (times[1] - times[0]);
    size_t i = locate(times, t);
    size_t a = i == 0 ? 0 : i - 1;
    if (a + 2 >= times.size()) a = times.size() - 3;
    double ta = times[a], tb = times[a + 1], tc = times[a + 2];
    // derivative of the quadratic through three velocity samples
    return duv[a] * ((2 * t - tb - tc) / ((ta - tb) * (ta - tc))) +
           duv[a + 1] * ((2 * t - ta - tc) / ((tb - ta) * (tb - tc))) +
           duv[a + 2] * ((2 * t - ta - tb) / ((tc - ta) * (tc - tb)));
}

OnSurfaceCurve OnSurfaceCurve::make(SurfaceSpec S, std::vector<CurvePiece> pieces, bool closed) {
    if (pieces.empty()) throw usage_error("on-surface curve needs at least one piece");
    size_t n = pieces.size();
    size_t junctions = closed ? n : n - 1;
    for (size_t i = 0; i < junctions; ++i) {
        const CurvePiece& a = pieces[i];
        const CurvePiece& b = pieces[(i + 1) % n];
        Vec2 pa, va, pb, vb;
        a.eval(a.t1(), pa, va);
        b.eval(b.t0(), pb, vb);
        // compared in the embedding so periodic charts may wrap in (u, v)
        Vec3 ea = S.chart(pa.x, pa.y).p;
        Vec3 eb = S.chart(pb.x, pb.y).p;
        double scale = std::max({norm(ea), norm(eb), 1.0});
        if (norm(ea - eb) > 1e-8 * scale)
            throw usage_error("on-surface curve pieces do not join at junction " +
                              std::to_string(i));
    }
    OnSurfaceCurve c{std::move(S), std::move(pieces), closed};
    return c;
}

DarbouxFrame darboux(const SurfaceSpec& S, const CurvePiece& c, double t) {
    Vec2 pos, vel;
    c.eval(t, pos, vel);
    Vec2 acc = c.accel(t);
    ChartJet j = S.chart(pos.x, pos.y);
    Vec3 d1 = j.s_u * vel.x + j.s_v * vel.y;
    double sp = norm(d1);
    if (sp < 1e-12) throw geometry_error("irregular on-surface curve point");
    Vec3 d2 = j.s_uu * (vel.x * vel.x) + j.s_uv * (2 * vel.x * vel.y) +
              j.s_vv * (vel.y * vel.y) + j.s_u * acc.x + j.s_v * acc.y;
    DarbouxFrame f;
    f.t = t;
    f.T = d1 / sp;
    f.N = j.N;
    f.mu = cross(f.N, f.T);
    // normal-plane components of the unit-speed second derivative
    f.k_g = dot(d2, f.mu) / (sp * sp);
    f.k_n = dot(d2, f.N) / (sp * sp);
    return f;
}

namespace {

Vec3 embedded_dir(const SurfaceSpec& S, const CurvePiece& c, double t) {
    Vec2 pos, vel;
    c.eval(t, pos, vel);
    ChartJet j = S.chart(pos.x, pos.y);
    Vec3 d = j.s_u * vel.x + j.s_v * vel.y;
    double sp = norm(d);
    if (sp < 1e-12) throw geometry_error("irregular junction tangent");
    return d / sp;
}

} // namespace

double total_geodesic_curvature(const OnSurfaceCurve& c, int n) {
    double psi = 0.0;
    for (const CurvePiece& piece : c.pieces) {
        if (piece.analytic) {
            auto f = [&](double t) {
                Vec2 pos, vel;
                piece.eval(t, pos, vel);
                ChartJet j = c.surface.chart(pos.x, pos.y);
                double sp = norm(j.s_u * vel.x + j.s_v * vel.y);
                return darboux(c.surface, piece, t).k_g * sp;
            };
            int nn = std::max(n, 2);
            psi += quad_simpson(f, piece.t0(), piece.t1(), nn + (nn % 2));
        } else {
            // trapezoid on the native sample grid
            double acc = 0.0;
            for (size_t i = 0; i + 1 < piece.times.size(); ++i) {
                double ta = piece.times[i], tb = piece.times[i + 1];
                auto g = [&](double t) {
                    Vec2 pos, vel;
                    piece.eval(t, pos, vel);
                    ChartJet j = c.surface.chart(pos.x, pos.y);
                    double sp = norm(j.s_u * vel.x + j.s_v * vel.y);
                    return darboux(c.surface, piece, t).k_g * sp;
                };
                acc += 0.5 * (g(ta) + g(tb)) * (tb - ta);
            }
            psi += acc;
        }
    }

    size_t np = c.pieces.size();
    size_t junctions = c.closed ? np : np - 1;
    for (size_t i = 0; i < junctions; ++i) {
        const CurvePiece& a = c.pieces[i];
        const CurvePiece& b = c.pieces[(i + 1) % np];
        Vec3 ta = embedded_dir(c.surface, a, a.t1());
        Vec3 tb = embedded_dir(c.surface, b, b.t0());
        Vec2 pos, vel;
        a.eval(a.t1(), pos, vel);
        Vec3 N = c.surface.chart(pos.x, pos.y).N;
        double ang = std::atan2(dot(N, cross(ta, tb)), dot(ta, tb));
        if (std::abs(std::abs(ang) - M_PI) < 1e-9)
            throw geometry_error("cusp corner: oriented exterior angle undefined");
        psi += ang;
    }
    return psi;
}

TransportResult parallel_transport(const OnSurfaceCurve& c, const Vec2& w0, int steps) {
    if (steps < 1) throw usage_error("parallel_transport: steps must be >= 1");
    TransportResult out;

    Vec2 first_pos, first_vel;
    c.pieces.front().eval(c.pieces.front().t0(), first_pos, first_vel);
    ChartJet j0 = c.surface.chart(first_pos.x, first_pos.y);
    double norm0 = metric_norm(j0, w0);
    if (norm0 <= 0.0) throw usage_error("parallel_transport: w0 must be nonzero");

    Vec2 w = w0;
    auto record = [&](const Vec2& pos, const Vec2& comp) {
        ChartJet j = c.surface.chart(pos.x, pos.y);
        Vec3 vec = j.s_u * comp.x + j.s_v * comp.y;
        out.positions.push_back(pos);
        out.components.push_back(comp);
        out.vectors.push_back(vec);
        double nw = metric_norm(j, comp);
        out.norm_drift = std::max(out.norm_drift, std::abs(nw - norm0) / norm0);
        out.max_normal_component =
            std::max(out.max_normal_component, std::abs(dot(vec, j.N)) / std::max(nw, 1e-300));
    };
    record(first_pos, w);

    for (const CurvePiece& piece : c.pieces) {
        OdeRhs rhs = [&](double t, const State& y) {
            Vec2 pos, vel;
            piece.eval(t, pos, vel);
            ChartJet j = c.surface.chart(pos.x, pos.y);
            Vec3 D = (j.s_uu * vel.x + j.s_uv * vel.y) * y[0] +
                     (j.s_uv * vel.x + j.s_vv * vel.y) * y[1];
            Mat2 I = fund_forms(j).first();
            Vec2 ab = solve2(I, {-dot(D, j.s_u), -dot(D, j.s_v)});
            return State{ab.x, ab.y};
        };

        std::vector<double> grid;
        if (piece.analytic) {
            for (int i = 0; i <= steps; ++i)
                grid.push_back(piece.t0() + (piece.t1() - piece.t0()) * i / steps);
        } else {
            grid = piece.times;
        }
        State y{w.x, w.y};
        for (size_t i = 0; i + 1 < grid.size(); ++i) {
            y = rk4_step(rhs, grid[i], y, grid[i + 1] - grid[i]);
            if (!std::isfinite(y[0]) || !std::isfinite(y[1]))
                throw numeric_error("parallel transport diverged");
            Vec2 pos, vel;
            piece.eval(grid[i + 1], pos, vel);
            record(pos, {y[0], y[1]});
        }
        w = {y[0], y[1]};
    }

    if (c.closed) {
        Vec2 e1, e2;
        metric_basis(j0, e1, e2);
        Vec3 E1 = j0.s_u * e1.x + j0.s_v * e1.y;
        Vec3 E2 = j0.s_u * e2.x + j0.s_v * e2.y;
        Vec3 wa = j0.s_u * w0.x + j0.s_v * w0.y;
        Vec3 wb = j0.s_u * w.x + j0.s_v * w.y;
        double a0 = dot(wa, E1), b0 = dot(wa, E2);
        double a1 = dot(wb, E1), b1 = dot(wb, E2);
        // counterclockwise rotation about N, reported clockwise-positive
        double ccw = std::atan2(a0 * b1 - a1 * b0, a0 * a1 + b0 * b1);
        out.holonomy_angle = -ccw;
    }
    return out;
}

namespace {

// light consistency check: boundary samples must stay inside the region box
// and on the indicator's zero set when one is given
void check_boundary(const OnSurfaceCurve& boundary, const Region& region) {
    double pad = 1e-6 * std::max({region.u1 - region.u0, region.v1 - region.v0, 1.0});
    for (const CurvePiece& piece : boundary.pieces) {
        for (int i = 0; i <= 16; ++i) {
            double t = piece.t0() + (piece.t1() - piece.t0()) * i / 16;
            Vec2 pos, vel;
            piece.eval(t, pos, vel);
            if (pos.x < region.u0 - pad || pos.x > region.u1 + pad || pos.y < region.v0 - pad ||
                pos.y > region.v1 + pad)
                throw geometry_error("boundary loop leaves the region rectangle");
            if (region.indicator) {
                double g = eval(*region.indicator, {{"u", pos.x}, {"v", pos.y}});
                if (g > pad)
                    throw geometry_error("boundary loop lies outside the indicator region");
            }
        }
    }
}

} // namespace

GaussBonnetResult gauss_bonnet(const OnSurfaceCurve& boundary, const Region& region, int nu,
                               int nv, int n_quad) {
    if (!boundary.closed) throw usage_error("gauss_bonnet boundary must be a closed loop");
    check_boundary(boundary, region);
    GaussBonnetResult out;
    out.psi = total_geodesic_curvature(boundary, n_quad);
    out.total_K = total_K(boundary.surface, region, nu, nv);
    out.residual = out.psi + out.total_K - 2.0 * M_PI;
    return out;
}

ChiResult gauss_bonnet_general(const SurfaceSpec& S, const std::vector<OnSurfaceCurve>& loops,
                               const Region& region, int nu, int nv, int n_quad) {
    ChiResult out;
    for (const OnSurfaceCurve& loop : loops) {
        if (!loop.closed) throw usage_error("gauss_bonnet_general loops must be closed");
        out.psi_sum += total_geodesic_curvature(loop, n_quad);
    }
    out.total_K = total_K(S, region, nu, nv);
    out.chi_raw = (out.total_K + out.psi_sum) / (2.0 * M_PI);
    out.chi = (int)std::lround(out.chi_raw);
    return out;
}

} // namespace difgeo
