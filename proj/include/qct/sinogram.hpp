#pragma once

#include <string>
#include <vector>

namespace qct {

/// Projection data: one line integral per (angle, detector) ray, stored as a
/// flat vector indexed row = angle * n_det + det.
struct Sinogram {
    int n_angles = 0;
    int n_det = 0;
    std::vector<double> values;

    Sinogram() = default;
    Sinogram(int angles, int det)
        : n_angles(angles), n_det(det),
          values(static_cast<std::size_t>(angles) * det, 0.0) {}

    double& at(int angle, int det) {
        return values[static_cast<std::size_t>(angle) * n_det + det];
    }
    double at(int angle, int det) const {
        return values[static_cast<std::size_t>(angle) * n_det + det];
    }
    std::size_t size() const { return values.size(); }
};

/// CSV layout: one line per angle, n_det comma-separated values.
void write_sinogram_csv(const Sinogram& sino, const std::string& path);
Sinogram read_sinogram_csv(const std::string& path);

}  // namespace qct
