#include "difgeo/gallery.hpp"

#include <cmath>

#include "difgeo/error.hpp"

namespace difgeo {

namespace {

const double TWO_PI = 2.0 * M_PI;

GalleryCurve plane_closed(const std::string& name, const std::string& x, const std::string& y,
                          bool convex) {
    return {name, CurveSpec::analytic(x, y, "0", 0.0, TWO_PI, true),
            /*closed=*/true, /*plane_simple_ccw=*/true, convex, /*spherical=*/false};
}

std::vector<GalleryCurve> make_curves() {
    std::vector<GalleryCurve> out;

    out.push_back(plane_closed("circle", "cos(t)", "sin(t)", true));
    out.push_back(plane_closed("ellipse", "2*cos(t)", "sin(t)", true));
    out.push_back(plane_closed("tall_ellipse", "cos(t)", "2*sin(t)", true));
    // dimpled limacon, simple but not convex
    out.push_back(plane_closed("limacon", "(1.5+cos(t))*cos(t)", "(1.5+cos(t))*sin(t)", false));
    // three-lobed wobble around the unit circle
    out.push_back(plane_closed("wave_circle", "(1+0.3*cos(3*t))*cos(t)",
                               "(1+0.3*cos(3*t))*sin(t)", false));

    out.push_back({"helix",
                   CurveSpec::analytic("cos(t)", "sin(t)", "0.5*t", 0.0, 2.0 * TWO_PI, false),
                   false, false, false, false});
    out.push_back({"moment", CurveSpec::analytic("t", "t^2", "t^3", -1.0, 1.0, false), false,
                   false, false, false});
    out.push_back({"log_spiral",
                   CurveSpec::analytic("exp(0.1*t)*cos(t)", "exp(0.1*t)*sin(t)", "0", 0.0,
                                       2.0 * TWO_PI, false),
                   false, false, false, false});
    // closed space curve: circle with a vertical 2-lobe wave
    out.push_back({"twisted_circle",
                   CurveSpec::analytic("cos(t)", "sin(t)", "0.3*sin(2*t)", 0.0, TWO_PI, true),
                   true, false, false, false});
    out.push_back({"trefoil",
                   CurveSpec::analytic("(2+cos(3*t))*cos(2*t)", "(2+cos(3*t))*sin(2*t)",
                                       "sin(3*t)", 0.0, TWO_PI, true),
                   true, false, false, false});
    // latitude wobble on the unit sphere: phi(t) = 0.3 sin t
    out.push_back({"sphere_wave",
                   CurveSpec::analytic("cos(t)*cos(0.3*sin(t))", "sin(t)*cos(0.3*sin(t))",
                                       "sin(0.3*sin(t))", 0.0, TWO_PI, true),
                   true, false, false, true});
    return out;
}

std::vector<GallerySurface> make_surfaces() {
    std::vector<GallerySurface> out;
    for (const char* name :
         {"sphere", "cylinder", "torus", "catenoid", "helicoid", "pseudosphere", "saddle", "plane"})
        out.push_back({name, SurfaceSpec::builtin(name)});
    return out;
}

} // namespace

const std::vector<GalleryCurve>& gallery_curves() {
    static const std::vector<GalleryCurve> curves = make_curves();
    return curves;
}

const GalleryCurve& gallery_curve(const std::string& name) {
    for (const auto& g : gallery_curves())
        if (g.name == name) return g;
    throw usage_error("unknown gallery curve: " + name);
}

const std::vector<GallerySurface>& gallery_surfaces() {
    static const std::vector<GallerySurface> surfaces = make_surfaces();
    return surfaces;
}

const SurfaceSpec& gallery_surface(const std::string& name) {
    for (const auto& g : gallery_surfaces())
        if (g.name == name) return g.spec;
    throw usage_error("unknown gallery surface: " + name);
}

} // namespace difgeo
