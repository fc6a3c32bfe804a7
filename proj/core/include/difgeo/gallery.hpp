#pragma once

#include <string>
#include <vector>

#include "difgeo/curves.hpp"
#include "difgeo/surfaces.hpp"

namespace difgeo {

/// Analytic test curve with the hypothesis flags the property checks need.
struct GalleryCurve {
    std::string name;
    CurveSpec spec;
    bool closed = false;
    bool plane_simple_ccw = false; // simple closed plane curve, CCW orientation
    bool convex_plane = false;
    bool spherical = false;        // lies on the unit sphere
};

const std::vector<GalleryCurve>& gallery_curves();
const GalleryCurve& gallery_curve(const std::string& name); // throws Usage on miss

struct GallerySurface {
    std::string name;
    SurfaceSpec spec;
};

const std::vector<GallerySurface>& gallery_surfaces();
const SurfaceSpec& gallery_surface(const std::string& name);

} // namespace difgeo
