#pragma once

#include <vector>

#include "qct/image.hpp"

namespace qct {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

/// Fan-beam acquisition geometry. The X-ray source rotates on a circle of
/// radius sdd_cm - idd_cm about the isocenter; detector elements are
/// equispaced points on the line through the isocenter perpendicular to the
/// source axis, with pitch det_spacing_cm (80% of the object pixel scale,
/// measured at the isocenter). Angle 0 puts the source on the +y axis and
/// angles increase counterclockwise.
struct Geometry {
    double sdd_cm = 107.2;       // source-to-detector distance
    double idd_cm = 47.2;        // isocenter-to-detector distance
    int n_det = 0;               // detector elements, 2n
    double det_spacing_cm = 0.0; // element pitch at the isocenter
    std::vector<double> angles_deg;
    double image_side_cm = kObjectSideCm;
    int n = 0;                   // image side in pixels

    int n_angles() const { return static_cast<int>(angles_deg.size()); }
    int n_rays() const { return n_angles() * n_det; }
    double source_radius_cm() const { return sdd_cm - idd_cm; }

    /// Source position at the given gantry angle.
    Vec2 source_position(int angle_index) const;
    /// Center of detector element det at the given gantry angle (a point on
    /// the isocenter line).
    Vec2 detector_position(int angle_index, int det) const;
};

/// Builds the paper geometry for an n x n image with n_angles equispaced
/// gantry angles over 360 degrees. Throws for n < 2 or n_angles < 1.
Geometry make_geometry(int n, int n_angles);

}  // namespace qct
