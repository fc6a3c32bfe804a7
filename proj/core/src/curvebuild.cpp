#include "difgeo/curvebuild.hpp"

#include <cmath>

#include <Eigen/Dense>
#include <Eigen/SVD>

namespace difgeo {

IntrinsicSpec IntrinsicSpec::plane(const std::string& kappa_expr, double s0, double s1) {
    IntrinsicSpec spec;
    spec.kappa = parse(kappa_expr, {"s"});
    spec.s0 = s0;
    spec.s1 = s1;
    return spec;
}

IntrinsicSpec IntrinsicSpec::space(const std::string& kappa_expr, const std::string& tau_expr,
                                   double s0, double s1) {
    IntrinsicSpec spec;
    spec.kappa = parse(kappa_expr, {"s"});
    spec.tau = parse(tau_expr, {"s"});
    spec.s0 = s0;
    spec.s1 = s1;
    return spec;
}

IntrinsicSpec IntrinsicSpec::plane_fn(std::function<double(double)> kappa, double s0, double s1) {
    IntrinsicSpec spec;
    spec.kappa_fn = std::move(kappa);
    spec.s0 = s0;
    spec.s1 = s1;
    return spec;
}

IntrinsicSpec IntrinsicSpec::space_fn(std::function<double(double)> kappa,
                                      std::function<double(double)> tau, double s0, double s1) {
    IntrinsicSpec spec;
    spec.kappa_fn = std::move(kappa);
    spec.tau_fn = std::move(tau);
    spec.s0 = s0;
    spec.s1 = s1;
    return spec;
}

void IntrinsicSpec::validate() const {
    if (!(s0 < s1)) throw usage_error("intrinsic spec requires s0 < s1");
    if (std::abs(norm(T0) - 1.0) > 1e-12 || std::abs(norm(N0) - 1.0) > 1e-12 ||
        std::abs(dot(T0, N0)) > 1e-12)
        throw usage_error("initial frame must be orthonormal within 1e-12");
}

CurveSpec reconstruct_plane(const IntrinsicSpec& spec, int steps) {
    spec.validate();
    if (steps < 2) throw usage_error("reconstruct_plane: steps must be >= 2");
    // state = (theta, x, y); theta' = kappa(s), (x, y)' = (cos theta, sin theta)
    double theta0 = std::atan2(spec.T0.y, spec.T0.x);
    OdeRhs rhs = [&](double s, const State& y) {
        double k = spec.kappa_fn ? spec.kappa_fn(s) : eval(spec.kappa, {{"s", s}});
        return State{k, std::cos(y[0]), std::sin(y[0])};
    };
    OdeTrajectory traj =
        integrate_rk4(rhs, {theta0, spec.origin.x, spec.origin.y}, spec.s0, spec.s1, steps);
    std::vector<Vec3> pts;
    pts.reserve(traj.states.size());
    for (const auto& st : traj.states) pts.push_back({st[1], st[2], 0.0});
    std::vector<double> params = traj.times;
    return CurveSpec::sampled(std::move(pts), std::move(params), false);
}

namespace {

void gram_schmidt(Vec3& T, Vec3& N, Vec3& B) {
    T = T / norm(T);
    N = N - T * dot(T, N);
    N = N / norm(N);
    B = cross(T, N);
}

} // namespace

SpaceReconstruction reconstruct_space(const IntrinsicSpec& spec, int steps) {
    spec.validate();
    if (!spec.tau && !spec.tau_fn)
        throw usage_error("space reconstruction needs a torsion expression");
    if (steps < 2) throw usage_error("reconstruct_space: steps must be >= 2");

    // 12 scalars: gamma, T, N, B
    auto pack = [](const Vec3& p, const Vec3& T, const Vec3& N, const Vec3& B) {
        return State{p.x, p.y, p.z, T.x, T.y, T.z, N.x, N.y, N.z, B.x, B.y, B.z};
    };
    auto v = [](const State& y, int i) { return Vec3{y[3 * i], y[3 * i + 1], y[3 * i + 2]}; };

    OdeRhs rhs = [&](double s, const State& y) {
        double k = spec.kappa_fn ? spec.kappa_fn(s) : eval(spec.kappa, {{"s", s}});
        if (k <= 0.0)
            throw geometry_error("space reconstruction hypothesis violated: kappa <= 0 at s = " +
                                 std::to_string(s));
        double tv = spec.tau_fn ? spec.tau_fn(s) : eval(*spec.tau, {{"s", s}});
        Vec3 T = v(y, 1), N = v(y, 2), B = v(y, 3);
        return pack(T, N * k, T * -k + B * tv, N * -tv);
    };

    Vec3 T = spec.T0, N = spec.N0, B = cross(spec.T0, spec.N0);
    State y = pack(spec.origin, T, N, B);
    double h = (spec.s1 - spec.s0) / steps;

    SpaceReconstruction out{CurveSpec::sampled({spec.origin, spec.origin + T}, {}, false), {}, 0.0};
    std::vector<Vec3> pts{spec.origin};
    std::vector<double> params{spec.s0};
    out.frames.push_back({T, N, B});

    for (int i = 0; i < steps; ++i) {
        double s = spec.s0 + i * h;
        y = rk4_step(rhs, s, y, h);
        Vec3 Ti = v(y, 1), Ni = v(y, 2), Bi = v(y, 3);
        double drift = std::max({std::abs(norm(Ti) - 1.0), std::abs(norm(Ni) - 1.0),
                                 std::abs(norm(Bi) - 1.0), std::abs(dot(Ti, Ni)),
                                 std::abs(dot(Ni, Bi)), std::abs(dot(Ti, Bi))});
        out.max_orthonormality_drift = std::max(out.max_orthonormality_drift, drift);
        gram_schmidt(Ti, Ni, Bi);
        y = pack(v(y, 0), Ti, Ni, Bi);
        if (!finite(v(y, 0))) throw numeric_error("space reconstruction diverged");
        pts.push_back(v(y, 0));
        params.push_back(spec.s0 + (i + 1) * h);
        out.frames.push_back({Ti, Ni, Bi});
    }
    out.curve = CurveSpec::sampled(std::move(pts), std::move(params), false);
    return out;
}

Vec3 RigidAlignment::apply(const Vec3& p) const {
    const auto& r = rotation;
    return Vec3{r[0] * p.x + r[1] * p.y + r[2] * p.z,
                r[3] * p.x + r[4] * p.y + r[5] * p.z,
                r[6] * p.x + r[7] * p.y + r[8] * p.z} + translation;
}

RigidAlignment rigid_align(const CurveSpec& a, const CurveSpec& b) {
    if (a.is_analytic() || b.is_analytic())
        throw usage_error("rigid_align expects sampled curves");
    const auto& pa = a.sampled_data().points;
    const auto& pb = b.sampled_data().points;
    if (pa.size() != pb.size())
        throw usage_error("rigid_align: sample counts differ");
    const size_t n = pa.size();

    Eigen::Vector3d ca = Eigen::Vector3d::Zero(), cb = Eigen::Vector3d::Zero();
    for (size_t i = 0; i < n; ++i) {
        ca += Eigen::Vector3d(pa[i].x, pa[i].y, pa[i].z);
        cb += Eigen::Vector3d(pb[i].x, pb[i].y, pb[i].z);
    }
    ca /= double(n);
    cb /= double(n);

    Eigen::Matrix3d H = Eigen::Matrix3d::Zero();
    for (size_t i = 0; i < n; ++i) {
        Eigen::Vector3d qa = Eigen::Vector3d(pa[i].x, pa[i].y, pa[i].z) - ca;
        Eigen::Vector3d qb = Eigen::Vector3d(pb[i].x, pb[i].y, pb[i].z) - cb;
        H += qa * qb.transpose();
    }
    Eigen::JacobiSVD<Eigen::Matrix3d> svd(H, Eigen::ComputeFullU | Eigen::ComputeFullV);
    // collinear point sets leave the rotation underdetermined
    if (svd.singularValues()(1) < 1e-12 * std::max(svd.singularValues()(0), 1e-300))
        throw geometry_error("rigid_align underdetermined: points nearly collinear");
    Eigen::Matrix3d U = svd.matrixU(), V = svd.matrixV();
    Eigen::Matrix3d D = Eigen::Matrix3d::Identity();
    if ((V * U.transpose()).determinant() < 0.0) D(2, 2) = -1.0;
    Eigen::Matrix3d R = V * D * U.transpose();

    RigidAlignment out;
    for (int r = 0; r < 3; ++r)
        for (int col = 0; col < 3; ++col) out.rotation[3 * r + col] = R(r, col);
    Eigen::Vector3d tr = cb - R * ca;
    out.translation = {tr(0), tr(1), tr(2)};

    double ss = 0.0;
    for (size_t i = 0; i < n; ++i) {
        Vec3 m = out.apply(pa[i]) - pb[i];
        ss += dot(m, m);
    }
    out.residual = std::sqrt(ss / double(n));
    return out;
}

} // namespace difgeo
