#include "doctest.h"

#include <cmath>

#include "difgeo/numcore.hpp"

using namespace difgeo;

TEST_CASE("rk4: zero field stays constant") {
    auto traj = integrate_rk4([](double, const State&) { return State{0.0}; }, {7.0}, 0, 1, 10);
    REQUIRE(traj.times.size() == 11);
    for (const auto& s : traj.states) CHECK(s[0] == 7.0);
}

TEST_CASE("rk4: exponential growth") {
    auto traj = integrate_rk4([](double, const State& y) { return State{y[0]}; }, {1.0}, 0, 1, 1000);
    CHECK(std::abs(traj.back()[0] - std::exp(1.0)) < 1e-10);
}

TEST_CASE("rk4: harmonic oscillator energy drift") {
    auto rhs = [](double, const State& y) { return State{y[1], -y[0]}; };
    auto traj = integrate_rk4(rhs, {1.0, 0.0}, 0, 2 * M_PI, 10000);
    double worst = 0.0;
    for (const auto& s : traj.states)
        worst = std::max(worst, std::abs(s[0] * s[0] + s[1] * s[1] - 1.0));
    CHECK(worst < 1e-9);
}

TEST_CASE("rk4: order-4 error reduction on y' = y") {
    auto rhs = [](double, const State& y) { return State{y[0]}; };
    double e1 = std::abs(integrate_rk4(rhs, {1.0}, 0, 1, 32).back()[0] - std::exp(1.0));
    double e2 = std::abs(integrate_rk4(rhs, {1.0}, 0, 1, 64).back()[0] - std::exp(1.0));
    double ratio = e1 / e2;
    CHECK(ratio > 12.0);
    CHECK(ratio < 20.0);
}

TEST_CASE("rk4: divergence reported with failing time") {
    auto rhs = [](double, const State& y) { return State{y[0] * y[0]}; };
    CHECK_THROWS_AS(integrate_rk4(rhs, {1.0}, 0, 10, 100), Error);
}

TEST_CASE("simpson: basic integrals") {
    // composite Simpson truncation error at n=100 is (b-a)/180 * h^4 = 1.67e-8
    CHECK(std::abs(quad_simpson([](double x) { return std::sin(x); }, 0, M_PI, 100) - 2.0) < 2e-8);
    CHECK(std::abs(quad_simpson([](double x) { return std::sin(x); }, 0, M_PI, 200) - 2.0) < 1e-8);
    CHECK(std::abs(quad_simpson([](double x) { return x * x; }, 0, 1, 2) - 1.0 / 3.0) < 1e-15);
    // cubics are integrated exactly
    CHECK(std::abs(quad_simpson([](double x) { return x * x * x - 2 * x; }, -1, 3, 2) -
                   (81.0 / 4 - 9 - (1.0 / 4 - 1))) < 1e-12);
    // helix speed: constant sqrt(a^2 + b^2), a=3, b=4
    CHECK(std::abs(quad_simpson([](double) { return 5.0; }, 0, 2 * M_PI, 10) - 10 * M_PI) < 1e-12);
}

TEST_CASE("simpson: odd n rejected") {
    CHECK_THROWS_AS(quad_simpson([](double x) { return x; }, 0, 1, 3), Error);
}

TEST_CASE("generalized eigenproblem: identity pair") {
    auto e = eig_generalized_sym2(Mat2::identity(), Mat2::identity());
    CHECK(e.k1 == doctest::Approx(1.0));
    CHECK(e.k2 == doctest::Approx(1.0));
    CHECK(e.umbilic);
}

TEST_CASE("generalized eigenproblem: diagonal") {
    auto e = eig_generalized_sym2(Mat2::symmetric(0, 0, 4), Mat2::identity());
    CHECK(e.k1 == doctest::Approx(0.0));
    CHECK(e.k2 == doctest::Approx(4.0));
    CHECK(std::abs(e.v1.y) < 1e-12);
    CHECK(std::abs(e.v2.x) < 1e-12);
}

TEST_CASE("generalized eigenproblem: random pairs vs quadratic-formula oracle") {
    Rng rng(42);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int trial = 0; trial < 200; ++trial) {
        Mat2 second = Mat2::symmetric(u(rng), u(rng), u(rng));
        // random SPD first form: A' A + eps I
        double a = u(rng), b = u(rng), c = u(rng), d = u(rng);
        Mat2 first = Mat2::symmetric(a * a + c * c + 0.2, a * b + c * d, b * b + d * d + 0.2);
        auto e = eig_generalized_sym2(second, first);

        // oracle: roots of det(II - k I) = 0 by the quadratic formula
        double A = first.det();
        double B = -(first.a11 * second.a22 + first.a22 * second.a11 - 2 * first.a12 * second.a12);
        double C = second.det();
        double disc = std::sqrt(std::max(B * B - 4 * A * C, 0.0));
        double r1 = (-B - disc) / (2 * A), r2 = (-B + disc) / (2 * A);
        if (r1 > r2) std::swap(r1, r2);
        double scale = std::max({std::abs(r1), std::abs(r2), 1.0});
        CHECK(std::abs(e.k1 - r1) < 1e-10 * scale);
        CHECK(std::abs(e.k2 - r2) < 1e-10 * scale);

        // residual of the generalized eigen-equation
        for (auto [k, v] : {std::pair{e.k1, e.v1}, std::pair{e.k2, e.v2}}) {
            Vec2 lhs = second.apply(v);
            Vec2 rhs = first.apply(v) * k;
            CHECK(std::abs(lhs.x - rhs.x) < 1e-9 * scale);
            CHECK(std::abs(lhs.y - rhs.y) < 1e-9 * scale);
        }
        // I-orthogonality and I-normalization
        CHECK(std::abs(dot(e.v1, first.apply(e.v2))) < 1e-9);
        CHECK(dot(e.v1, first.apply(e.v1)) == doctest::Approx(1.0));
        CHECK(dot(e.v2, first.apply(e.v2)) == doctest::Approx(1.0));
    }
}

TEST_CASE("generalized eigenproblem: rejects indefinite first form") {
    CHECK_THROWS_AS(eig_generalized_sym2(Mat2::identity(), Mat2::symmetric(1, 0, -1)), Error);
}

TEST_CASE("sphere sampling: unit norm, componentwise mean, determinism") {
    Rng rng(7);
    Vec3 mean{0, 0, 0};
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        Vec3 v = sample_unit_sphere(rng);
        CHECK(std::abs(norm(v) - 1.0) < 1e-12);
        mean += v / n;
    }
    CHECK(std::abs(mean.x) < 0.02);
    CHECK(std::abs(mean.y) < 0.02);
    CHECK(std::abs(mean.z) < 0.02);

    Rng r1(123), r2(123);
    for (int i = 0; i < 10; ++i) {
        Vec3 a = sample_unit_sphere(r1), b = sample_unit_sphere(r2);
        CHECK(a.x == b.x);
        CHECK(a.y == b.y);
        CHECK(a.z == b.z);
    }
}

TEST_CASE("cross product orthogonality property") {
    Rng rng(5);
    std::uniform_real_distribution<double> d(-10.0, 10.0);
    for (int i = 0; i < 500; ++i) {
        Vec3 u{d(rng), d(rng), d(rng)}, v{d(rng), d(rng), d(rng)};
        double bound = 1e-12 * norm(u) * norm(v) * (norm(u) + norm(v));
        CHECK(std::abs(dot(cross(u, v), u)) <= bound);
        Vec3 anti = cross(u, v) + cross(v, u);
        CHECK(norm(anti) == 0.0);
    }
}
