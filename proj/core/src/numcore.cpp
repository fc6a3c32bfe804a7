#include "difgeo/numcore.hpp"

#include <algorithm>
#include <string>

namespace difgeo {

namespace {

bool all_finite(const State& y) {
    return std::all_of(y.begin(), y.end(), [](double v) { return std::isfinite(v); });
}

State axpy(const State& y, double h, const State& k) {
    State out(y.size());
    for (size_t i = 0; i < y.size(); ++i) out[i] = y[i] + h * k[i];
    return out;
}

} // namespace

State rk4_step(const OdeRhs& rhs, double t, const State& y, double h) {
    State k1 = rhs(t, y);
    State k2 = rhs(t + 0.5 * h, axpy(y, 0.5 * h, k1));
    State k3 = rhs(t + 0.5 * h, axpy(y, 0.5 * h, k2));
    State k4 = rhs(t + h, axpy(y, h, k3));
    State out(y.size());
    for (size_t i = 0; i < y.size(); ++i)
        out[i] = y[i] + (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    return out;
}

OdeTrajectory integrate_rk4(const OdeRhs& rhs, State y0, double t0, double t1, int steps) {
    if (steps < 1) throw usage_error("integrate_rk4: steps must be >= 1");
    OdeTrajectory traj;
    traj.times.reserve(steps + 1);
    traj.states.reserve(steps + 1);
    double h = (t1 - t0) / steps;
    traj.times.push_back(t0);
    traj.states.push_back(std::move(y0));
    for (int i = 0; i < steps; ++i) {
        double t = t0 + i * h;
        State next = rk4_step(rhs, t, traj.states.back(), h);
        if (!all_finite(next))
            throw numeric_error("integration diverged at t = " + std::to_string(t + h));
        traj.times.push_back(t0 + (i + 1) * h);
        traj.states.push_back(std::move(next));
    }
    return traj;
}

double quad_simpson(const std::function<double(double)>& f, double a, double b, int n) {
    if (n < 2 || n % 2 != 0) throw usage_error("quad_simpson: n must be even and >= 2");
    double h = (b - a) / n;
    double sum = f(a) + f(b);
    for (int i = 1; i < n; ++i) {
        double fx = f(a + i * h);
        if (!std::isfinite(fx)) throw numeric_error("quad_simpson: non-finite sample");
        sum += (i % 2 == 1 ? 4.0 : 2.0) * fx;
    }
    if (!std::isfinite(sum)) throw numeric_error("quad_simpson: non-finite sample");
    return sum * h / 3.0;
}

namespace {

// Normalize v in the metric of `first`, i.e. v' I v = 1.
Vec2 metric_normalize(const Mat2& first, Vec2 v) {
    double q = dot(v, first.apply(v));
    if (q <= 0.0) throw numeric_error("eig_generalized_sym2: eigenvector with nonpositive norm");
    return v / std::sqrt(q);
}

} // namespace

SymEig2 eig_generalized_sym2(const Mat2& second, const Mat2& first) {
    const double E = first.a11, F = first.a12, G = first.a22;
    const double l = second.a11, m = second.a12, n = second.a22;
    const double detI = E * G - F * F;
    if (!(detI > 0.0) || !(E > 0.0))
        throw geometry_error("degenerate chart: first form not positive-definite");

    // det(II - k I) = 0  =>  detI k^2 - (E n + G l - 2 F m) k + det II = 0
    const double b = E * n + G * l - 2.0 * F * m;
    const double c = l * n - m * m;
    // b^2 - 4 detI c rewritten so it cannot cancel catastrophically at an
    // umbilic (there every term below is individually tiny).
    double disc = (E * n - G * l) * (E * n - G * l) +
                  4.0 * (E * m - F * l) * (G * m - F * n);
    disc = std::max(disc, 0.0);
    const double sq = std::sqrt(disc);
    // Citardauq-stable roots.
    double k1, k2;
    if (b >= 0.0) {
        k2 = (b + sq) / (2.0 * detI);
        k1 = (sq > 0.0 && b + sq != 0.0) ? (2.0 * c) / (b + sq) : k2;
    } else {
        k1 = (b - sq) / (2.0 * detI);
        k2 = (sq > 0.0 && b - sq != 0.0) ? (2.0 * c) / (b - sq) : k1;
    }
    if (k1 > k2) std::swap(k1, k2);

    SymEig2 out;
    out.k1 = k1;
    out.k2 = k2;

    const double scale = std::max({std::abs(k1), std::abs(k2), 1e-30});
    // generous band: nearly-equal roots have ill-conditioned eigenvectors,
    // so treat them as umbilic and hand back an arbitrary orthonormal pair
    out.umbilic = std::abs(k2 - k1) <= 1e-7 * std::max(scale, 1e-8);

    if (out.umbilic) {
        // Every direction is principal; return an I-orthonormal pair.
        Vec2 e1 = metric_normalize(first, {1.0, 0.0});
        Vec2 raw = {0.0, 1.0};
        // Gram-Schmidt in the I metric.
        double proj = dot(raw, first.apply(e1));
        Vec2 e2 = raw - e1 * proj;
        out.v1 = e1;
        out.v2 = metric_normalize(first, e2);
        return out;
    }

    auto eigvec = [&](double k) -> Vec2 {
        // (II - k I) v = 0; pick the larger row for stability.
        double r1x = l - k * E, r1y = m - k * F;
        double r2x = m - k * F, r2y = n - k * G;
        Vec2 v;
        if (r1x * r1x + r1y * r1y >= r2x * r2x + r2y * r2y)
            v = {-r1y, r1x};
        else
            v = {-r2y, r2x};
        return metric_normalize(first, v);
    };
    out.v1 = eigvec(k1);
    out.v2 = eigvec(k2);
    return out;
}

Vec3 sample_unit_sphere(Rng& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    while (true) {
        Vec3 v{g(rng), g(rng), g(rng)};
        double n = norm(v);
        if (n > 1e-8) return v / n;
    }
}

Vec2 sample_unit_circle(Rng& rng) {
    std::uniform_real_distribution<double> u(0.0, 2.0 * M_PI);
    double a = u(rng);
    return {std::cos(a), std::sin(a)};
}

} // namespace difgeo
