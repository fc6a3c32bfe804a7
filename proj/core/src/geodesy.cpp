#include "difgeo/geodesy.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "difgeo/error.hpp"

namespace difgeo {

namespace {

Vec3 second_deriv_terms(const ChartJet& j, double du, double dv) {
    return j.s_uu * (du * du) + j.s_uv * (2.0 * du * dv) + j.s_vv * (dv * dv);
}

} // namespace

Vec2 geodesic_accel(const SurfaceSpec& S, const GeodesicState& st) {
    ChartJet j = S.chart(st.u, st.v);
    Vec3 C = second_deriv_terms(j, st.du, st.dv);
    Mat2 I = fund_forms(j).first();
    return solve2(I, {-dot(C, j.s_u), -dot(C, j.s_v)});
}

GeodesicPath trace_geodesic(const SurfaceSpec& S, const Vec2& p, const Vec2& w, double T,
                            int steps) {
    if (steps < 1) throw usage_error("trace_geodesic: steps must be >= 1");
    if (!S.contains(p.x, p.y)) throw usage_error("trace start outside the chart domain");

    OdeRhs rhs = [&](double, const State& y) {
        Vec2 a = geodesic_accel(S, {y[0], y[1], y[2], y[3]});
        return State{y[2], y[3], a.x, a.y};
    };

    GeodesicPath path;
    if (S.angular_param()) path.clairaut = std::vector<double>{};
    const int ia = S.angular_param().value_or(-1);

    auto record = [&](double t, const State& y) {
        GeodesicState st{y[0], y[1], y[2], y[3]};
        ChartJet j = S.chart(st.u, st.v);
        Vec3 vel = j.s_u * st.du + j.s_v * st.dv;
        double sp = norm(vel);

        path.times.push_back(t);
        path.states.push_back(st);
        path.points.push_back(j.p);
        path.speed.push_back(sp);
        if (path.speed.size() > 1) {
            double sp0 = path.speed.front();
            path.max_speed_drift =
                std::max(path.max_speed_drift, std::abs(sp - sp0) / std::max(sp0, 1e-300));
        }

        // tangential residual of the accepted acceleration
        Vec2 a = geodesic_accel(S, st);
        Vec3 gpp = second_deriv_terms(j, st.du, st.dv) + j.s_u * a.x + j.s_v * a.y;
        path.max_residual =
            std::max(path.max_residual, std::abs(dot(gpp, j.s_u)) + std::abs(dot(gpp, j.s_v)));

        if (path.clairaut) {
            Vec3 sa = ia == 0 ? j.s_u : j.s_v;
            double c = dot(vel, sa) / std::max(sp, 1e-300);
            path.clairaut->push_back(c);
            path.max_clairaut_drift =
                std::max(path.max_clairaut_drift, std::abs(c - path.clairaut->front()));
        }
        path.end_time = t;
    };

    State y{p.x, p.y, w.x, w.y};
    record(0.0, y);
    double h = T / steps;
    for (int i = 0; i < steps; ++i) {
        State next = rk4_step(rhs, i * h, y, h);
        for (double c : next)
            if (!std::isfinite(c)) throw numeric_error("geodesic integrator diverged");
        if (!S.contains(next[0], next[1])) {
            path.truncated = true;
            return path;
        }
        y = next;
        record((i + 1) * h, y);
    }
    return path;
}

Vec2 exp_map(const SurfaceSpec& S, const Vec2& p, const Vec2& w, int steps) {
    if (w.x == 0.0 && w.y == 0.0) return p;
    GeodesicPath path = trace_geodesic(S, p, w, 1.0, steps);
    if (path.truncated)
        throw domain_error("exp_map trace left the chart domain at t = " +
                           std::to_string(path.end_time));
    const GeodesicState& st = path.states.back();
    return {st.u, st.v};
}

ShootResult shoot_log(const SurfaceSpec& S, const Vec2& p, const Vec2& q,
                      const ShootOptions& opts) {
    if (!S.contains(p.x, p.y) || !S.contains(q.x, q.y))
        throw usage_error("shoot_log endpoints must lie in the chart domain");

    ChartJet jp = S.chart(p.x, p.y);
    Vec3 target = S.chart(q.x, q.y).p;
    double chord = norm(target - jp.p);

    ShootResult best;          // best converged
    ShootResult fallback;      // smallest residual overall
    fallback.residual = std::numeric_limits<double>::infinity();
    bool have_best = false;

    if (chord == 0.0) {
        best.w = {0, 0};
        best.converged = true;
        best.path = trace_geodesic(S, p, {0, 0}, 1.0, 1);
        return best;
    }

    Vec2 e1, e2;
    metric_basis(jp, e1, e2);

    auto miss = [&](const Vec2& w) -> double {
        Vec2 e = exp_map(S, p, w, opts.steps);
        ChartJet je = S.chart(e.x, e.y);
        return norm(je.p - target);
    };
    auto endpoint = [&](const Vec2& w) { return exp_map(S, p, w, opts.steps); };

    for (int s = 0; s < opts.multistart; ++s) {
        double th = 2.0 * M_PI * s / opts.multistart;
        Vec2 w = (e1 * std::cos(th) + e2 * std::sin(th)) * chord;
        bool dead = false;
        double res = std::numeric_limits<double>::infinity();

        for (int it = 0; it < opts.max_iter && !dead; ++it) {
            Vec2 g, ep;
            try {
                ep = endpoint(w);
            } catch (const Error&) {
                dead = true;
                break;
            }
            g = ep - q;
            ChartJet je = S.chart(ep.x, ep.y);
            res = norm(je.p - target);
            if (res < opts.tol) break;

            // finite-difference Jacobian of the chart endpoint
            double h = 1e-6 * std::max(1.0, std::hypot(w.x, w.y));
            Vec2 gu, gv;
            try {
                gu = (endpoint({w.x + h, w.y}) - ep) / h;
                gv = (endpoint({w.x, w.y + h}) - ep) / h;
            } catch (const Error&) {
                dead = true;
                break;
            }
            Mat2 J{gu.x, gv.x, gu.y, gv.y};
            double det = J.det();
            if (!std::isfinite(det) || std::abs(det) < 1e-14) {
                dead = true;
                break;
            }
            Vec2 delta = solve2(J, {-g.x, -g.y});
            w = w + delta;
            if (!finite(Vec3{w.x, w.y, 0})) {
                dead = true;
                break;
            }
        }
        if (dead) continue;

        double final_res;
        try {
            final_res = miss(w);
        } catch (const Error&) {
            continue;
        }
        double dist = metric_norm(jp, w);
        if (final_res < opts.tol) {
            if (!have_best || dist < best.distance - 1e-12) {
                best.w = w;
                best.distance = dist;
                best.residual = final_res;
                best.converged = true;
                have_best = true;
            }
        } else if (final_res < fallback.residual) {
            fallback.w = w;
            fallback.distance = dist;
            fallback.residual = final_res;
        }
    }

    ShootResult& out = have_best ? best : fallback;
    if (!std::isfinite(out.residual))
        throw geometry_error("shoot_log: every start diverged or left the chart");
    out.path = trace_geodesic(S, p, out.w, 1.0, opts.steps);
    return out;
}

CircleLength geodesic_circle_length(const SurfaceSpec& S, const Vec2& p, double r, int n_dirs,
                                    int steps) {
    if (n_dirs < 16) throw usage_error("geodesic_circle_length: n_dirs must be >= 16");
    if (r <= 0.0) throw usage_error("geodesic_circle_length: r must be positive");

    ChartJet jp = S.chart(p.x, p.y);
    Vec2 e1, e2;
    metric_basis(jp, e1, e2);

    std::vector<Vec3> ring;
    ring.reserve(n_dirs);
    for (int k = 0; k < n_dirs; ++k) {
        double th = 2.0 * M_PI * k / n_dirs;
        Vec2 w = (e1 * std::cos(th) + e2 * std::sin(th)) * r;
        Vec2 e;
        try {
            e = exp_map(S, p, w, steps);
        } catch (const Error&) {
            throw domain_error("geodesic circle direction theta = " + std::to_string(th) +
                               " leaves the chart domain");
        }
        ring.push_back(S.chart(e.x, e.y).p);
    }

    CircleLength out;
    for (int k = 0; k < n_dirs; ++k) out.length += norm(ring[(k + 1) % n_dirs] - ring[k]);
    out.K_estimate = 3.0 * (2.0 * M_PI * r - out.length) / (M_PI * r * r * r);
    return out;
}

} // namespace difgeo
