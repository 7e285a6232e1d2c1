#pragma once

#include <functional>
#include <limits>
#include <vector>

#include "qct/annealer.hpp"
#include "qct/encoding.hpp"
#include "qct/image.hpp"
#include "qct/qubo.hpp"

namespace qct {

/// Sampler contract: anything with anneal's signature and postcondition can
/// stand in for the annealer (e.g. exhaustive_solve for small problems).
using SamplerFn = std::function<SampleResult(const QuboProblem&, const AnnealSchedule&)>;

struct QactConfig {
    int q_max = 2;
    double c = 0.5;
    std::vector<double> c_per_pixel;  // optional; overrides c when non-empty
    double k0 = 1.0;
    double d0 = 0.0;
    int n_iters = 30;
    AnnealSchedule sampler;
    SamplerFn sampler_fn;          // defaults to anneal
    double window_stop = 0.0;      // early stop when window width drops below; 0 = off
};

struct QactTraceEntry {
    int iteration = 0;
    Image image;
    double best_energy = 0.0;
    double rmse = std::numeric_limits<double>::quiet_NaN();  // NaN without ground truth
};

using QactTrace = std::vector<QactTraceEntry>;

struct QactResult {
    Image image;
    QactTrace trace;
};

/// Iterative re-encode / assemble / sample / decode / refine loop. Each
/// iteration solves the QUBO for the current encoding window, then shifts
/// the window onto the decoded value and shrinks it:
///   k_j <- k_j + c_j
///   d_j <- x_j - 2^(q_max - k_j - 1)   (with the updated k_j)
/// so the previous decode stays representable while the quantization step
/// contracts by 2^-c per iteration. The sampler seed for iteration t is
/// derived from (sampler.seed, t); a fixed seed reproduces bit-identically.
QactResult reconstruct_qact(const SystemMatrix& A, const Sinogram& y,
                            const QactConfig& cfg, const Image* ground_truth);

}  // namespace qct
