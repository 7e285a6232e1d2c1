#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qct/geometry.hpp"
#include "qct/image.hpp"
#include "qct/sinogram.hpp"

namespace qct {

/// One pixel crossed by a ray and the chord length inside it.
struct RayHit {
    int pixel = 0;       // row-major flat index
    double length = 0.0; // cm
};

/// Sparse ray-pixel intersection matrix in CSR form. Row i holds the pass
/// lengths of ray i (row = angle * n_det + det); columns are row-major pixel
/// indices. Entries within a row are sorted by column and strictly positive.
class SystemMatrix {
public:
    SystemMatrix(std::size_t rows, std::size_t cols)
        : n_rows_(rows), n_cols_(cols), row_start_(rows + 1, 0) {}

    std::size_t n_rows() const { return n_rows_; }
    std::size_t n_cols() const { return n_cols_; }
    std::size_t nnz() const { return cols_.size(); }

    std::size_t row_begin(std::size_t r) const { return row_start_[r]; }
    std::size_t row_end(std::size_t r) const { return row_start_[r + 1]; }
    std::uint32_t col(std::size_t k) const { return cols_[k]; }
    double value(std::size_t k) const { return vals_[k]; }

    double row_sum(std::size_t r) const;

    /// Appends a fully built row; rows must be appended in order.
    void append_row(const std::vector<RayHit>& hits);

    bool operator==(const SystemMatrix& other) const = default;

private:
    std::size_t n_rows_;
    std::size_t n_cols_;
    std::size_t rows_filled_ = 0;
    std::vector<std::size_t> row_start_;
    std::vector<std::uint32_t> cols_;
    std::vector<double> vals_;
};

/// Exact Siddon-style traversal of the n x n pixel grid covering the square
/// [-half_side, half_side]^2. Returns the chord length in every pixel the
/// segment a->b crosses, in traversal order; lengths below 1e-12 cm are
/// dropped. The segment is treated as an infinite line clipped to the grid
/// (sources always sit outside the object).
std::vector<RayHit> trace_ray(Vec2 a, Vec2 b, int n, double half_side);

/// Builds the full system matrix for the geometry: one row per (angle,
/// detector) ray from the source point to the detector element center. Rays
/// that miss the image square produce empty rows.
SystemMatrix build_system_matrix(const Geometry& geom);

/// y_i = sum_j A_ij x_j.
Sinogram forward_project(const SystemMatrix& A, const Image& x,
                         const Geometry& geom);

/// Flat-vector forward projection; y has A.n_rows() entries.
std::vector<double> forward_project_vector(const SystemMatrix& A,
                                           const std::vector<double>& x);

/// x_j = sum_i A_ij y_i (exact transpose application).
Image back_project(const SystemMatrix& A, const Sinogram& y);
std::vector<double> back_project_vector(const SystemMatrix& A,
                                        const std::vector<double>& y);

/// CSV triple list "row,col,length" with a leading "# m=<rows> n=<cols>"
/// header comment carrying the dimensions.
void write_system_matrix_csv(const SystemMatrix& A, const std::string& path);
SystemMatrix read_system_matrix_csv(const std::string& path);

/// Compact binary: little-endian u64 row count, u64 column count, then
/// (u64 row, u64 col, f64 length) triples.
void write_system_matrix_binary(const SystemMatrix& A, const std::string& path);
SystemMatrix read_system_matrix_binary(const std::string& path);

}  // namespace qct
