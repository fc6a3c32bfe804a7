#pragma once

#include <map>
#include <string>
#include <vector>

#include "difgeo/numcore.hpp"

namespace difgeo {

/// One reported number, tagged with the library call that produced it.
struct ReportScalar {
    std::string name;
    double value = 0.0;
    std::string unit;        // optional
    std::string provenance;  // operation name + parameters
};

struct Report {
    std::string task;
    std::map<std::string, std::string> inputs; // echo of the task options
    std::vector<ReportScalar> scalars;
    std::string status = "ok";                 // ok | flagged | error
    std::string message;

    void add(const std::string& name, double value, const std::string& provenance,
             const std::string& unit = "");
};

struct ReportOptions {
    bool timestamp = true; // disabled by --no-timestamp for byte-stable output
};

/// Serialize a report stream as a deterministic JSON document.
std::string reports_to_json(const std::vector<Report>& reports, const ReportOptions& opts);

// ---------------------------------------------------------------------------
// Artifact writers.

/// CSV `t,x,y,z` rows for curve samples.
std::string csv_curve(const std::vector<double>& t, const std::vector<Vec3>& p);

struct SurfaceRasterRow {
    double u, v;
    Vec3 p;
    double K, H, k1, k2;
};

/// CSV `u,v,x,y,z,K,H,k1,k2` rows for surface rasters.
std::string csv_surface(const std::vector<SurfaceRasterRow>& rows);

/// Isometric projection used for plotting 3D polylines.
Vec2 project_iso(const Vec3& p);

/// Plain-path SVG with an auto-fitted viewBox; one path per polyline.
std::string svg_polylines(const std::vector<std::vector<Vec2>>& lines, double stroke = 0.01);

} // namespace difgeo
