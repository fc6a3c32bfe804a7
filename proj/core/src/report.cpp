#include "difgeo/report.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <sstream>

#include "difgeo/error.hpp"
#include "json.hpp"

namespace difgeo {

void Report::add(const std::string& name, double value, const std::string& provenance,
                 const std::string& unit) {
    scalars.push_back({name, value, unit, provenance});
}

std::string reports_to_json(const std::vector<Report>& reports, const ReportOptions& opts) {
    nlohmann::ordered_json doc;
    doc["format"] = "difgeo-report";
    doc["version"] = 1;
    if (opts.timestamp) {
        auto now = std::chrono::system_clock::now();
        std::time_t tt = std::chrono::system_clock::to_time_t(now);
        char buf[32];
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&tt));
        doc["generated"] = buf;
    }
    doc["tasks"] = nlohmann::ordered_json::array();
    for (const Report& r : reports) {
        nlohmann::ordered_json t;
        t["task"] = r.task;
        t["status"] = r.status;
        if (!r.message.empty()) t["message"] = r.message;
        t["inputs"] = nlohmann::ordered_json::object();
        for (const auto& [k, v] : r.inputs) t["inputs"][k] = v;
        t["results"] = nlohmann::ordered_json::array();
        for (const ReportScalar& s : r.scalars) {
            nlohmann::ordered_json row;
            row["name"] = s.name;
            row["value"] = s.value;
            if (!s.unit.empty()) row["unit"] = s.unit;
            row["provenance"] = s.provenance;
            t["results"].push_back(std::move(row));
        }
        doc["tasks"].push_back(std::move(t));
    }
    return doc.dump(2) + "\n";
}

namespace {

std::string num(double v) {
    std::ostringstream out;
    out << std::setprecision(17) << v;
    return out.str();
}

} // namespace

std::string csv_curve(const std::vector<double>& t, const std::vector<Vec3>& p) {
    if (t.size() != p.size()) throw usage_error("csv_curve: mismatched column lengths");
    std::string out = "t,x,y,z\n";
    for (size_t i = 0; i < t.size(); ++i) {
        out += num(t[i]) + "," + num(p[i].x) + "," + num(p[i].y) + "," + num(p[i].z) + "\n";
    }
    return out;
}

std::string csv_surface(const std::vector<SurfaceRasterRow>& rows) {
    std::string out = "u,v,x,y,z,K,H,k1,k2\n";
    for (const SurfaceRasterRow& r : rows) {
        out += num(r.u) + "," + num(r.v) + "," + num(r.p.x) + "," + num(r.p.y) + "," +
               num(r.p.z) + "," + num(r.K) + "," + num(r.H) + "," + num(r.k1) + "," + num(r.k2) +
               "\n";
    }
    return out;
}

Vec2 project_iso(const Vec3& p) {
    // standard isometric axes
    const double c = std::sqrt(3.0) / 2.0;
    return {c * (p.x - p.y), 0.5 * (p.x + p.y) - p.z};
}

std::string svg_polylines(const std::vector<std::vector<Vec2>>& lines, double stroke) {
    double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    bool first = true;
    for (const auto& line : lines)
        for (const Vec2& p : line) {
            if (first) {
                x0 = x1 = p.x;
                y0 = y1 = p.y;
                first = false;
            }
            x0 = std::min(x0, p.x);
            x1 = std::max(x1, p.x);
            y0 = std::min(y0, -p.y);
            y1 = std::max(y1, -p.y);
        }
    double pad = 0.05 * std::max({x1 - x0, y1 - y0, 1e-6});
    std::ostringstream out;
    out << std::setprecision(17);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << (x0 - pad) << " "
        << (y0 - pad) << " " << (x1 - x0 + 2 * pad) << " " << (y1 - y0 + 2 * pad) << "\">\n";
    for (const auto& line : lines) {
        if (line.size() < 2) continue;
        out << "  <path fill=\"none\" stroke=\"black\" stroke-width=\"" << stroke << "\" d=\"";
        for (size_t i = 0; i < line.size(); ++i)
            out << (i == 0 ? "M " : "L ") << line[i].x << " " << -line[i].y << " ";
        out << "\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

} // namespace difgeo
