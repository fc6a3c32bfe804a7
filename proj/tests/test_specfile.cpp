#include <cmath>

#include "difgeo/error.hpp"
#include "difgeo/report.hpp"
#include "difgeo/specfile.hpp"
#include "doctest.h"

using namespace difgeo;

namespace {

const char* kSample = R"(difgeo-spec v1

# a helix and two surfaces
curve helix
  x cos(t)
  y sin(t)
  z 0.5*t
  t0 0
  t1 12.566370614359172

surface donut
  builtin torus
  R 2
  r 1

surface bowl
  graph (x^2+y^2)/2
  u0 -2
  u1 2
  v0 -2
  v1 2

surface vase
  axial s
  radial 2 + 0.3*sin(s)
  s0 -1
  s1 1
  a0 -3.14
  a1 3.14

task curve-analyze
  object helix
  steps 512

task surface-report
  object donut
  at 0.3,1.1
)";

} // namespace

TEST_CASE("spec file round trip") {
    SpecFile spec = parse_specfile(kSample, "sample.spec");
    CHECK(spec.version == 1);
    REQUIRE(spec.curves.count("helix") == 1);
    CHECK(!spec.curves.at("helix").is_plane());
    CHECK(spec.curves.at("helix").t_end() == doctest::Approx(12.566370614359172));

    REQUIRE(spec.surfaces.count("donut") == 1);
    CHECK(spec.surfaces.at("donut").kind() == "torus");
    REQUIRE(spec.surfaces.count("bowl") == 1);
    CHECK(spec.surfaces.at("bowl").u1() == 2.0);
    REQUIRE(spec.surfaces.count("vase") == 1);
    CHECK(spec.surfaces.at("vase").angular_param() == 1);

    REQUIRE(spec.tasks.size() == 2);
    CHECK(spec.tasks[0].action == "curve-analyze");
    CHECK(option_int(spec.tasks[0], "steps", 0) == 512);
    CHECK(spec.tasks[1].get("object") == "donut");
    auto at = option_pair(spec.tasks[1], "at");
    CHECK(at.first == 0.3);
    CHECK(at.second == 1.1);
}

TEST_CASE("spec file errors carry file and line") {
    auto message_of = [](const std::string& text) {
        try {
            parse_specfile(text, "bad.spec");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::Parse);
            return std::string(e.what());
        }
        return std::string("<no error>");
    };

    CHECK(message_of("nonsense v9\n").find("bad.spec:1") == 0);
    CHECK(message_of("difgeo-spec v1\n  stray value\n").find("bad.spec:2") == 0);
    CHECK(message_of("difgeo-spec v1\ncurve c\n  x t\n  y t\n  t0 0\n  t1 1\n  wobble 3\n")
              .find("wobble") != std::string::npos);
    CHECK(message_of("difgeo-spec v1\ntask fold-laundry\n").find("unknown task") !=
          std::string::npos);
    CHECK(message_of("difgeo-spec v1\ntask curve-analyze\n  object ghost\n")
              .find("unknown curve 'ghost'") != std::string::npos);
    CHECK(message_of("difgeo-spec v1\ncurve c\n  x t\n  y t\n  t0 zero\n  t1 1\n")
              .find("number") != std::string::npos);

    std::string dup = "difgeo-spec v1\ncurve c\n  x t\n  y t\n  t0 0\n  t1 1\n";
    CHECK(message_of(dup + dup.substr(15)).find("duplicate") != std::string::npos);
}

TEST_CASE("missing required keys are reported") {
    CHECK_THROWS_AS(parse_specfile("difgeo-spec v1\ncurve c\n  x t\n  t0 0\n  t1 1\n"), Error);
    CHECK_THROWS_AS(parse_specfile("difgeo-spec v1\nsurface s\n  graph u\n  u0 0\n  u1 1\n"),
                    Error);
}

TEST_CASE("report json is deterministic without timestamps") {
    Report r;
    r.task = "curve-analyze";
    r.inputs["object"] = "helix";
    r.add("length", 4.0 * M_PI, "length(n=2048)");
    r.add("kappa_max", 0.8, "kappa on a 512 grid", "1/len");

    ReportOptions opts;
    opts.timestamp = false;
    std::string a = reports_to_json({r}, opts);
    std::string b = reports_to_json({r}, opts);
    CHECK(a == b);
    CHECK(a.find("\"generated\"") == std::string::npos);
    CHECK(a.find("\"provenance\"") != std::string::npos);
    CHECK(a.find("curve-analyze") != std::string::npos);

    opts.timestamp = true;
    CHECK(reports_to_json({r}, opts).find("\"generated\"") != std::string::npos);
}

TEST_CASE("csv writers") {
    std::string c = csv_curve({0.0, 0.5}, {{1, 2, 3}, {4, 5, 6}});
    CHECK(c.rfind("t,x,y,z\n", 0) == 0);
    CHECK(c.find("0.5,4,5,6\n") != std::string::npos);
    CHECK_THROWS_AS(csv_curve({0.0}, {}), Error);

    std::string s = csv_surface({{0.5, 0.25, {1, 0, 0}, 1.0, 2.0, 1.0, 1.0}});
    CHECK(s.rfind("u,v,x,y,z,K,H,k1,k2\n", 0) == 0);
    CHECK(s.find("0.5,0.25,1,0,0,1,2,1,1\n") != std::string::npos);
}

TEST_CASE("svg polylines auto-fit") {
    std::vector<std::vector<Vec2>> lines{{{0, 0}, {2, 0}, {2, 1}}};
    std::string svg = svg_polylines(lines);
    CHECK(svg.find("<svg") == 0);
    CHECK(svg.find("viewBox=") != std::string::npos);
    CHECK(svg.find("<path") != std::string::npos);
    CHECK(svg.find("script") == std::string::npos);

    // isometric projection keeps distinct axes distinct
    Vec2 px = project_iso({1, 0, 0}), py = project_iso({0, 1, 0}), pz = project_iso({0, 0, 1});
    CHECK(norm(px - py) > 0.1);
    CHECK(norm(px - pz) > 0.1);
    CHECK(norm(py - pz) > 0.1);
}
