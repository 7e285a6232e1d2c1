#include "qct/mlem.hpp"

#include <cmath>
#include <stdexcept>

#include "qct/metrics.hpp"

namespace qct {

MlemResult mlem_reconstruct(const SystemMatrix& A, const Sinogram& y,
                            const MlemConfig& cfg, const Sinogram& gt_projection) {
    if (cfg.max_iters < 1) throw std::invalid_argument("mlem: max_iters must be >= 1");
    if (!(cfg.x_init > 0.0)) throw std::invalid_argument("mlem: x_init must be positive");
    if (y.size() != A.n_rows() || gt_projection.size() != A.n_rows()) {
        throw std::invalid_argument("mlem: sinogram size does not match matrix rows");
    }
    for (double v : y.values) {
        if (!std::isfinite(v)) throw std::invalid_argument("mlem: projections must be finite");
    }

    const std::size_t n_pixels = A.n_cols();
    const int n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n_pixels))));

    // Fixed denominator sum_i A_ij exp(-y_i) and ray coverage per pixel.
    std::vector<double> exp_data(y.values.size());
    for (std::size_t i = 0; i < y.values.size(); ++i) exp_data[i] = std::exp(-y.values[i]);
    const std::vector<double> denom = back_project_vector(A, exp_data);
    std::vector<char> touched(n_pixels, 0);
    for (std::size_t r = 0; r < A.n_rows(); ++r) {
        for (std::size_t k = A.row_begin(r); k < A.row_end(r); ++k) touched[A.col(k)] = 1;
    }

    std::vector<double> x(n_pixels, cfg.x_init);
    std::vector<double> y_star = forward_project_vector(A, x);
    std::vector<double> exp_est(y.values.size());

    MlemResult out;
    out.projection_rmse.reserve(static_cast<std::size_t>(cfg.max_iters));
    double best = -1.0;
    for (int iter = 1; iter <= cfg.max_iters; ++iter) {
        for (std::size_t i = 0; i < y_star.size(); ++i) exp_est[i] = std::exp(-y_star[i]);
        const std::vector<double> numer = back_project_vector(A, exp_est);
        for (std::size_t j = 0; j < n_pixels; ++j) {
            if (!touched[j]) continue;
            x[j] *= numer[j] / std::max(denom[j], cfg.epsilon);
        }

        y_star = forward_project_vector(A, x);
        const double proj_rmse = rmse(y_star, gt_projection.values);
        out.projection_rmse.push_back(proj_rmse);
        if (best < 0.0 || proj_rmse < best) {
            best = proj_rmse;
            out.selected = Image(n, x);
            out.selected_iter = iter;
        }
    }
    out.final = Image(n, std::move(x));
    return out;
}

}  // namespace qct
