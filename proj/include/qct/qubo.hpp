#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qct/encoding.hpp"
#include "qct/sinogram.hpp"
#include "qct/system_matrix.hpp"

namespace qct {

/// One off-diagonal QUBO coupling, i < j.
struct QuadTerm {
    std::uint32_t i = 0;
    std::uint32_t j = 0;
    double value = 0.0;

    friend bool operator==(const QuadTerm&, const QuadTerm&) = default;
};

/// Quadratic form over binary variables:
///   energy(sigma) = offset + sum_i linear[i]*sigma_i
///                          + sum_{i<j} quad_ij*sigma_i*sigma_j.
/// Quadratic terms are stored sorted by (i, j) with i < j.
struct QuboProblem {
    std::size_t n_vars = 0;
    std::vector<double> linear;
    std::vector<QuadTerm> quadratic;
    double offset = 0.0;

    double energy(const BitAssignment& bits) const;
};

/// Builds the least-squares QUBO for fixed (A, y), caching the Gram products
/// sum_i A_ij A_ij' that do not depend on the encoding. assemble() is then
/// cheap enough to call once per variational iteration.
class QuboAssembler {
public:
    QuboAssembler(const SystemMatrix& A, const Sinogram& y);

    QuboProblem assemble(const EncodingState& enc) const;

    const SystemMatrix& matrix() const { return *A_; }

private:
    const SystemMatrix* A_;
    std::vector<double> y_;
    // Upper-triangular pixel Gram: pairs (j < j') that share at least one
    // ray, with g = sum_i A_ij A_ij'; diag_[j] = sum_i A_ij^2.
    std::vector<QuadTerm> gram_pairs_;
    std::vector<double> diag_;
};

/// Expands H(sigma) = sum_i (sum_j A_ij x_j(sigma) - y_i)^2 with the given
/// per-pixel encoding into an explicit QUBO. The encoding is affine in the
/// binary variables, so the Hamiltonian is exactly quadratic; no
/// higher-order reduction is involved. Coefficients below 1e-15 in
/// magnitude are dropped.
QuboProblem assemble_qubo(const SystemMatrix& A, const Sinogram& y,
                          const EncodingState& enc);

/// Text format: "VARS <n> OFFSET <offset>" header, then "L <i> <value>" and
/// "Q <i> <j> <value>" lines.
void write_qubo(const QuboProblem& q, const std::string& path);
QuboProblem read_qubo(const std::string& path);

}  // namespace qct
