// difgeo: batch front end for the difgeo library.
//
// Subcommands mirror the spec-file task actions. Each run produces a JSON
// report stream (stdout or --out); --plot additionally writes CSV/SVG
// artifacts next to the report. Exit codes: 0 ok, 1 task failure,
// 2 usage/spec error.
#include <cmath>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "difgeo/curvebuild.hpp"
#include "difgeo/curves.hpp"
#include "difgeo/error.hpp"
#include "difgeo/geodesy.hpp"
#include "difgeo/intrinsic.hpp"
#include "difgeo/report.hpp"
#include "difgeo/specfile.hpp"
#include "difgeo/surfaces.hpp"
#include "difgeo/transport.hpp"
#include "difgeo/verify.hpp"

using namespace difgeo;

namespace {

struct Settings {
    std::string spec_path;
    std::string out_path;
    bool plot = false;
    bool fail_fast = false;
    bool no_timestamp = false;
    bool parallel = false;
    unsigned seed = 12345;
};

struct Artifact {
    std::string path, contents;
};

struct TaskOutput {
    Report report;
    std::vector<Artifact> artifacts;
};

std::string fmt_pair(double a, double b) {
    std::ostringstream os;
    os << a << "," << b;
    return os.str();
}

// ---------------------------------------------------------------------------
// object resolution

const CurveSpec& resolve_curve(const SpecFile& spec, const SpecTask& t) {
    if (t.has("object")) {
        auto it = spec.curves.find(t.get("object"));
        if (it == spec.curves.end())
            throw usage_error("unknown curve '" + t.get("object") + "'");
        return it->second;
    }
    if (spec.curves.size() == 1) return spec.curves.begin()->second;
    throw usage_error("task '" + t.action + "' needs --object (spec defines " +
                      std::to_string(spec.curves.size()) + " curves)");
}

const SurfaceSpec& resolve_surface(const SpecFile& spec, const SpecTask& t) {
    if (t.has("object")) {
        auto it = spec.surfaces.find(t.get("object"));
        if (it == spec.surfaces.end())
            throw usage_error("unknown surface '" + t.get("object") + "'");
        return it->second;
    }
    if (spec.surfaces.size() == 1) return spec.surfaces.begin()->second;
    throw usage_error("task '" + t.action + "' needs --object (spec defines " +
                      std::to_string(spec.surfaces.size()) + " surfaces)");
}

std::string artifact_stem(const Settings& s, size_t index) {
    std::string stem = "difgeo-out";
    if (!s.out_path.empty()) {
        stem = s.out_path;
        size_t dot = stem.find_last_of('.');
        size_t slash = stem.find_last_of('/');
        if (dot != std::string::npos && (slash == std::string::npos || dot > slash))
            stem = stem.substr(0, dot);
    }
    return stem + "-" + std::to_string(index + 1);
}

std::vector<std::vector<Vec2>> project_curve(const std::vector<Vec3>& pts, bool plane) {
    std::vector<Vec2> line;
    for (const Vec3& p : pts) line.push_back(plane ? Vec2{p.x, p.y} : project_iso(p));
    return {line};
}

// ---------------------------------------------------------------------------
// task implementations

void run_curve_analyze(const SpecFile& spec, const SpecTask& t, const Settings& s,
                       TaskOutput& out, size_t index) {
    const CurveSpec& c = resolve_curve(spec, t);
    int steps = option_int(t, "steps", 2048);
    int samples = option_int(t, "samples", 256);

    double len = length(c, steps);
    out.report.add("length", len, "length(n=" + std::to_string(steps) + ")");
    double phi = total_curvature(c, steps);
    out.report.add("total_curvature", phi, "total_curvature(n=" + std::to_string(steps) + ")",
                   "rad");
    if (c.is_plane())
        out.report.add("total_signed_curvature", total_signed_curvature(c, steps),
                       "total_signed_curvature(n=" + std::to_string(steps) + ")", "rad");

    std::vector<double> ts;
    std::vector<Vec3> pts;
    double kmax = 0.0;
    for (int i = 0; i <= samples; ++i) {
        double tt = c.t_begin() + (c.t_end() - c.t_begin()) * i / samples;
        ts.push_back(tt);
        pts.push_back(curve_jet(c, tt).p);
        kmax = std::max(kmax, kappa(c, tt));
    }
    out.report.add("kappa_max", kmax, "kappa on " + std::to_string(samples + 1) + " samples",
                   "1/len");
    if (s.plot) {
        std::string stem = artifact_stem(s, index);
        out.artifacts.push_back({stem + ".csv", csv_curve(ts, pts)});
        out.artifacts.push_back({stem + ".svg", svg_polylines(project_curve(pts, c.is_plane()))});
    }
}

void run_curve_reconstruct(const SpecFile&, const SpecTask& t, const Settings& s,
                           TaskOutput& out, size_t index) {
    double len = option_double(t, "length");
    int steps = option_int(t, "steps", 4096);
    Ast kappa_ast = parse(t.get("kappa"), {"s"});
    auto kappa_fn = [kappa_ast](double sv) { return eval(kappa_ast, {{"s", sv}}); };

    CurveSpec rc = [&] {
        if (t.has("tau")) {
            Ast tau_ast = parse(t.get("tau"), {"s"});
            auto tau_fn = [tau_ast](double sv) { return eval(tau_ast, {{"s", sv}}); };
            return reconstruct_space(IntrinsicSpec::space_fn(kappa_fn, tau_fn, 0.0, len), steps)
                .curve;
        }
        return reconstruct_plane(IntrinsicSpec::plane_fn(kappa_fn, 0.0, len), steps);
    }();

    const auto& data = rc.sampled_data();
    double gap = norm(data.points.back() - data.points.front());
    out.report.add("closure_gap", gap,
                   "reconstruct(steps=" + std::to_string(steps) + "), |p(L) - p(0)|", "len");
    out.report.add("length", length(rc, steps), "length of the reconstruction", "len");
    if (s.plot) {
        std::string stem = artifact_stem(s, index);
        out.artifacts.push_back({stem + ".csv", csv_curve(data.params, data.points)});
        out.artifacts.push_back(
            {stem + ".svg", svg_polylines(project_curve(data.points, !t.has("tau")))});
    }
}

void run_curve_crofton(const SpecFile& spec, const SpecTask& t, const Settings& s,
                       TaskOutput& out, size_t index) {
    const CurveSpec& c = resolve_curve(spec, t);
    int dirs = option_int(t, "dirs", 10000);
    int segments = option_int(t, "segments", 4096);
    unsigned seed = (unsigned)option_int(t, "seed", (int)(s.seed + index));

    out.report.add("length_exact", length(c, segments), "length(n=" + std::to_string(segments) + ")");
    std::string prov = "(dirs=" + std::to_string(dirs) + ", seed=" + std::to_string(seed) + ")";
    if (c.is_plane()) {
        Rng rng(seed);
        out.report.add("length_crofton_plane", crofton_plane(c, dirs, rng, segments),
                       "crofton_plane" + prov);
    } else {
        Rng r1(seed), r2(seed + 1);
        out.report.add("length_crofton_lines", crofton_space_lines(c, dirs, r1, segments),
                       "crofton_space_lines" + prov);
        out.report.add("length_crofton_planes", crofton_space_planes(c, dirs, r2, segments),
                       "crofton_space_planes" + prov);
    }
}

void run_surface_report(const SpecFile& spec, const SpecTask& t, const Settings& s,
                        TaskOutput& out, size_t index) {
    const SurfaceSpec& S = resolve_surface(spec, t);
    auto [u, v] = t.has("at") ? option_pair(t, "at")
                              : std::pair{(S.u0() + S.u1()) / 2, (S.v0() + S.v1()) / 2};
    CurvatureReport cr = curvature_report(S, u, v);
    std::string prov = "curvature_report(u=" + std::to_string(u) + ", v=" + std::to_string(v) + ")";
    out.report.add("K", cr.K, prov, "1/len^2");
    out.report.add("H", cr.H, prov, "1/len");
    out.report.add("k1", cr.k1, prov, "1/len");
    out.report.add("k2", cr.k2, prov, "1/len");

    if (s.plot) {
        int grid = option_int(t, "grid", 32);
        std::vector<SurfaceRasterRow> rows;
        for (int i = 0; i <= grid; ++i)
            for (int j = 0; j <= grid; ++j) {
                double uu = S.u0() + (S.u1() - S.u0()) * i / grid;
                double vv = S.v0() + (S.v1() - S.v0()) * j / grid;
                CurvatureReport g = curvature_report(S, uu, vv);
                rows.push_back({uu, vv, S.chart(uu, vv).p, g.K, g.H, g.k1, g.k2});
            }
        out.artifacts.push_back({artifact_stem(s, index) + ".csv", csv_surface(rows)});
    }
}

void run_surface_geodesic(const SpecFile& spec, const SpecTask& t, const Settings& s,
                          TaskOutput& out, size_t index) {
    const SurfaceSpec& S = resolve_surface(spec, t);
    auto [u, v] = option_pair(t, "from");
    int steps = option_int(t, "steps", 2000);

    GeodesicPath path;
    if (t.has("to")) {
        auto [qu, qv] = option_pair(t, "to");
        ShootOptions opts;
        opts.steps = steps;
        ShootResult r = shoot_log(S, {u, v}, {qu, qv}, opts);
        if (!r.converged) throw numeric_error("geodesic shooting did not converge");
        out.report.add("distance", r.distance,
                       "shoot_log(from=" + fmt_pair(u, v) + ", to=" + fmt_pair(qu, qv) + ")",
                       "len");
        out.report.add("endpoint_miss", r.residual, "shoot_log embedded endpoint miss", "len");
        path = r.path;
    } else {
        auto [du, dv] = option_pair(t, "dir");
        double T = option_double(t, "time", 1.0);
        path = trace_geodesic(S, {u, v}, {du, dv}, T, steps);
        out.report.add("speed_drift", path.max_speed_drift,
                       "trace_geodesic(T=" + std::to_string(T) + ", steps=" +
                           std::to_string(steps) + ")");
        out.report.add("geodesic_residual", path.max_residual, "max tangential acceleration");
    }

    if (s.plot) {
        std::string stem = artifact_stem(s, index);
        out.artifacts.push_back({stem + ".csv", csv_curve(path.times, path.points)});
        out.artifacts.push_back({stem + ".svg", svg_polylines(project_curve(path.points, false))});
    }
}

OnSurfaceCurve loop_from_task(const SurfaceSpec& S, const SpecTask& t) {
    double t0 = option_double(t, "t0", 0.0);
    double t1 = option_double(t, "t1", 2.0 * M_PI);
    CurvePiece piece =
        CurvePiece::from_param(ParamCurve::make(t.get("loop-u"), t.get("loop-v"), t0, t1));
    Vec2 pa, pb, va;
    piece.eval(t0, pa, va);
    piece.eval(t1, pb, va);
    double scale = std::max({1.0, norm(pa), norm(pb)});
    bool closed = norm(S.chart(pa.x, pa.y).p - S.chart(pb.x, pb.y).p) <= 1e-8 * scale;
    return OnSurfaceCurve::make(S, {piece}, closed);
}

void run_surface_transport(const SpecFile& spec, const SpecTask& t, const Settings& s,
                           TaskOutput& out, size_t index) {
    const SurfaceSpec& S = resolve_surface(spec, t);
    OnSurfaceCurve loop = loop_from_task(S, t);
    auto [wa, wb] = t.has("w") ? option_pair(t, "w") : std::pair{1.0, 0.0};
    int steps = option_int(t, "steps", 2048);

    TransportResult r = parallel_transport(loop, {wa, wb}, steps);
    std::string prov = "parallel_transport(steps=" + std::to_string(steps) + ")";
    out.report.add("norm_drift", r.norm_drift, prov);
    out.report.add("max_normal_component", r.max_normal_component, prov);
    if (loop.closed) {
        out.report.add("holonomy_cw", r.holonomy_angle, prov + ", clockwise-positive", "rad");
        out.report.add("psi", total_geodesic_curvature(loop, steps),
                       "total_geodesic_curvature(n=" + std::to_string(steps) + ")", "rad");
    }
    if (s.plot) {
        std::vector<Vec3> pts;
        for (const Vec2& uv : r.positions) pts.push_back(S.chart(uv.x, uv.y).p);
        out.artifacts.push_back(
            {artifact_stem(s, index) + ".svg", svg_polylines(project_curve(pts, false))});
    }
}

void run_surface_gauss_bonnet(const SpecFile& spec, const SpecTask& t, const Settings& s,
                              TaskOutput& out, size_t) {
    const SurfaceSpec& S = resolve_surface(spec, t);
    int grid = option_int(t, "grid", 256);
    int quad = option_int(t, "quad", 2048);

    Region region{S.u0(), S.u1(), S.v0(), S.v1(), std::nullopt};
    if (t.has("region")) {
        std::istringstream in(t.get("region"));
        char comma;
        if (!(in >> region.u0 >> comma >> region.u1 >> comma >> region.v0 >> comma >> region.v1))
            throw usage_error("region must be 'u0,u1,v0,v1'");
    }
    if (t.has("indicator")) region.indicator = parse(t.get("indicator"), {"u", "v"});

    if (t.has("loop-u")) {
        OnSurfaceCurve boundary = loop_from_task(S, t);
        GaussBonnetResult r = gauss_bonnet(boundary, region, grid, grid, quad);
        std::string prov = "gauss_bonnet(grid=" + std::to_string(grid) + ")";
        out.report.add("psi", r.psi, prov, "rad");
        out.report.add("total_K", r.total_K, prov, "rad");
        out.report.add("residual", r.residual, prov + ", psi + total_K - 2 pi", "rad");
        if (std::abs(r.residual) > option_double(t, "tol", 1e-3)) {
            out.report.status = "flagged";
            out.report.message = "Gauss-Bonnet residual above tolerance";
        }
    } else {
        ChiResult r = gauss_bonnet_general(S, {}, region, grid, grid, quad);
        std::string prov = "gauss_bonnet_general(grid=" + std::to_string(grid) + ")";
        out.report.add("total_K", r.total_K, prov, "rad");
        out.report.add("chi_raw", r.chi_raw, prov);
        out.report.add("chi", (double)r.chi, prov + ", rounded");
    }
}

void run_surface_intrinsic(const SpecFile& spec, const SpecTask& t, const Settings& s,
                           TaskOutput& out, size_t) {
    const SurfaceSpec& S = resolve_surface(spec, t);
    auto [u, v] = t.has("at") ? option_pair(t, "at")
                              : std::pair{(S.u0() + S.u1()) / 2, (S.v0() + S.v1()) / 2};
    double r_max = option_double(t, "r-max", 0.5);
    int nr = option_int(t, "nr", 100);
    int ntheta = option_int(t, "ntheta", 64);

    PolarField field = polar_field(S, {u, v}, r_max, nr, ntheta);
    std::string prov = "polar_field(r_max=" + std::to_string(r_max) + ", nr=" +
                       std::to_string(nr) + ", ntheta=" + std::to_string(ntheta) + ")";
    out.report.add("gauss_lemma_residual", field.gauss_residual, prov);
    out.report.add("jacobi_residual", jacobi_residual(field, S).max_abs,
                   "jacobi_residual on " + prov);
    out.report.add("K_extrinsic", curvature_report(S, u, v).K, "curvature_report", "1/len^2");
    try {
        double h = option_double(t, "h", 1e-3);
        out.report.add("K_intrinsic", intrinsic_K_orthogonal(S, u, v, h),
                       "intrinsic_K_orthogonal(h=" + std::to_string(h) + ")", "1/len^2");
    } catch (const Error&) {
        // chart not orthogonal here; the polar-field diagnostics stand alone
    }
    if (field.truncated) {
        out.report.status = "flagged";
        out.report.message = "polar field truncated at the chart boundary";
    }
    (void)s;
}

TaskOutput execute(const SpecFile& spec, const SpecTask& t, const Settings& s, size_t index) {
    TaskOutput out;
    out.report.task = t.action;
    out.report.inputs = t.options;
    try {
        if (t.action == "curve-analyze") run_curve_analyze(spec, t, s, out, index);
        else if (t.action == "curve-reconstruct") run_curve_reconstruct(spec, t, s, out, index);
        else if (t.action == "curve-crofton") run_curve_crofton(spec, t, s, out, index);
        else if (t.action == "surface-report") run_surface_report(spec, t, s, out, index);
        else if (t.action == "surface-geodesic") run_surface_geodesic(spec, t, s, out, index);
        else if (t.action == "surface-transport") run_surface_transport(spec, t, s, out, index);
        else if (t.action == "surface-gauss-bonnet") run_surface_gauss_bonnet(spec, t, s, out, index);
        else if (t.action == "surface-intrinsic") run_surface_intrinsic(spec, t, s, out, index);
        else throw usage_error("unknown task action '" + t.action + "'");
    } catch (const Error& e) {
        out.report.status = "error";
        out.report.message = e.what();
        out.artifacts.clear();
    }
    return out;
}

// ---------------------------------------------------------------------------
// driver

int run_tasks(const SpecFile& spec, std::vector<SpecTask> tasks, const Settings& s) {
    std::vector<TaskOutput> outputs;
    if (s.parallel) {
        std::vector<std::future<TaskOutput>> futures;
        for (size_t i = 0; i < tasks.size(); ++i)
            futures.push_back(std::async(std::launch::async, [&, i] {
                return execute(spec, tasks[i], s, i);
            }));
        for (auto& f : futures) outputs.push_back(f.get());
    } else {
        for (size_t i = 0; i < tasks.size(); ++i) {
            outputs.push_back(execute(spec, tasks[i], s, i));
            if (s.fail_fast && outputs.back().report.status == "error") break;
        }
    }

    std::vector<Report> reports;
    for (TaskOutput& o : outputs) {
        for (const Artifact& a : o.artifacts) {
            std::ofstream f(a.path);
            if (!f) throw usage_error("cannot write artifact '" + a.path + "'");
            f << a.contents;
            o.report.inputs["artifact:" + a.path.substr(a.path.find_last_of('.') + 1)] = a.path;
        }
        reports.push_back(std::move(o.report));
    }

    ReportOptions ropts;
    ropts.timestamp = !s.no_timestamp;
    std::string json = reports_to_json(reports, ropts);
    if (s.out_path.empty()) {
        std::cout << json;
    } else {
        std::ofstream f(s.out_path);
        if (!f) throw usage_error("cannot write '" + s.out_path + "'");
        f << json;
    }

    for (const Report& r : reports)
        if (r.status == "error") return 1;
    return 0;
}

int run_action(const std::string& action, const Settings& s,
               const std::map<std::string, std::string>& direct) {
    SpecFile spec;
    if (!s.spec_path.empty()) spec = load_specfile(s.spec_path);

    // tasks of this action from the spec file, with direct flags layered on top
    std::vector<SpecTask> tasks;
    for (const SpecTask& t : spec.tasks)
        if (t.action == action) {
            SpecTask merged = t;
            for (const auto& [k, v] : direct) merged.options[k] = v;
            tasks.push_back(std::move(merged));
        }
    if (tasks.empty()) {
        SpecTask t;
        t.action = action;
        t.options = direct;
        tasks.push_back(std::move(t));
    }
    return run_tasks(spec, std::move(tasks), s);
}

int run_verify(unsigned seed) {
    int failures = 0;
    for (const CriterionResult& r : verify_gallery(seed)) {
        std::printf("[%s] %2d %-42s %s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(),
                    r.detail.c_str());
        if (!r.pass) ++failures;
    }
    return failures ? 1 : 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical differential-geometry toolkit"};
    app.require_subcommand(1);

    Settings s;
    std::string action;
    std::map<std::string, std::string> direct;

    auto add_common = [&](CLI::App* cmd, const std::string& act,
                          const std::vector<std::string>& keys) {
        cmd->add_option("--spec", s.spec_path, "spec file defining objects and tasks");
        cmd->add_option("--out", s.out_path, "write the JSON report here instead of stdout");
        cmd->add_option("--seed", s.seed, "base RNG seed");
        cmd->add_flag("--plot", s.plot, "emit CSV/SVG artifacts next to the report");
        cmd->add_flag("--fail-fast", s.fail_fast, "stop at the first failing task");
        cmd->add_flag("--no-timestamp", s.no_timestamp, "omit 'generated' for byte-stable output");
        cmd->add_flag("--parallel", s.parallel, "run independent tasks concurrently");
        for (const std::string& key : keys) {
            std::string flag = key == "h" ? "fd-h" : key; // '-h' is taken by help
            cmd->add_option_function<std::string>(
                "--" + flag, [&direct, key](const std::string& v) { direct[key] = v; },
                "task option '" + key + "'");
        }
        cmd->callback([&action, act] { action = act; });
    };

    CLI::App* curve = app.add_subcommand("curve", "curve tasks");
    curve->require_subcommand(1);
    add_common(curve->add_subcommand("analyze", "length, total curvature, samples"),
               "curve-analyze", {"object", "steps", "samples"});
    add_common(curve->add_subcommand("reconstruct", "rebuild a curve from kappa (and tau) of s"),
               "curve-reconstruct", {"kappa", "tau", "length", "steps"});
    add_common(curve->add_subcommand("crofton", "Monte Carlo length estimators"),
               "curve-crofton", {"object", "dirs", "segments"});

    CLI::App* surface = app.add_subcommand("surface", "surface tasks");
    surface->require_subcommand(1);
    add_common(surface->add_subcommand("report", "curvature report (and raster with --plot)"),
               "surface-report", {"object", "at", "grid"});
    add_common(surface->add_subcommand("geodesic", "trace (--dir/--time) or shoot (--to)"),
               "surface-geodesic", {"object", "from", "dir", "to", "time", "steps"});
    add_common(surface->add_subcommand("transport", "parallel transport along a chart loop"),
               "surface-transport", {"object", "loop-u", "loop-v", "t0", "t1", "w", "steps"});
    add_common(surface->add_subcommand("gauss-bonnet", "boundary + region curvature balance"),
               "surface-gauss-bonnet",
               {"object", "region", "indicator", "loop-u", "loop-v", "t0", "t1", "grid", "quad",
                "tol"});
    add_common(surface->add_subcommand("intrinsic", "polar field and intrinsic K diagnostics"),
               "surface-intrinsic", {"object", "at", "r-max", "nr", "ntheta", "h"});

    CLI::App* verify = app.add_subcommand("verify-gallery", "run the gallery acceptance battery");
    verify->add_option("--seed", s.seed, "base RNG seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (verify->parsed()) return run_verify(s.seed);
        return run_action(action, s, direct);
    } catch (const Error& e) {
        std::cerr << "difgeo: " << e.what() << "\n";
        return (e.kind() == ErrorKind::Parse || e.kind() == ErrorKind::Usage) ? 2 : 1;
    }
}
