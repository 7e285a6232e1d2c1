#pragma once

#include <vector>

#include "qct/image.hpp"
#include "qct/sinogram.hpp"
#include "qct/system_matrix.hpp"

namespace qct {

struct MlemConfig {
    int max_iters = 400;
    double x_init = 0.1;
    double epsilon = 1e-12;  // division guard
};

struct MlemResult {
    Image selected;        // iterate with the lowest projection RMSE
    Image final;           // iterate after max_iters updates
    int selected_iter = 0; // 1-based iteration index of the selected image
    std::vector<double> projection_rmse;  // one entry per iteration
};

/// Transmission MLEM:
///   x_j <- x_j * (sum_i A_ij exp(-y*_i)) / (sum_i A_ij exp(-y_i)),
/// with y* = A x recomputed every iteration. After max_iters updates the
/// iterate whose projection is closest (RMSE) to gt_projection is selected;
/// the final iterate is kept as well since the selection rule needs a
/// ground truth only available in simulation. Pixels crossed by no ray stay
/// at x_init; denominators are floored at epsilon.
MlemResult mlem_reconstruct(const SystemMatrix& A, const Sinogram& y,
                            const MlemConfig& cfg, const Sinogram& gt_projection);

}  // namespace qct
