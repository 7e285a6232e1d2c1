#include "qct/variational.hpp"

#include <cmath>
#include <stdexcept>

#include "qct/metrics.hpp"
#include "qct/rng.hpp"

namespace qct {

QactResult reconstruct_qact(const SystemMatrix& A, const Sinogram& y,
                            const QactConfig& cfg, const Image* ground_truth) {
    if (cfg.n_iters < 1) throw std::invalid_argument("reconstruct_qact: n_iters must be >= 1");
    const std::size_t n_pixels = A.n_cols();
    if (!cfg.c_per_pixel.empty() && cfg.c_per_pixel.size() != n_pixels) {
        throw std::invalid_argument("reconstruct_qact: c_per_pixel size does not match pixels");
    }
    if (ground_truth && ground_truth->size() != n_pixels) {
        throw std::invalid_argument("reconstruct_qact: ground truth size does not match pixels");
    }

    EncodingState enc = make_encoding(n_pixels, cfg.q_max, cfg.c, cfg.k0, cfg.d0);
    const QuboAssembler assembler(A, y);
    const SamplerFn& sample = cfg.sampler_fn ? cfg.sampler_fn : SamplerFn(anneal);

    QactResult out;
    out.trace.reserve(static_cast<std::size_t>(cfg.n_iters));
    Image x;
    for (int iter = 0; iter < cfg.n_iters; ++iter) {
        const QuboProblem q = assembler.assemble(enc);

        AnnealSchedule sched = cfg.sampler;
        sched.seed = derive_seed(cfg.sampler.seed, static_cast<std::uint64_t>(iter));
        const SampleResult res = sample(q, sched);

        x = decode(res.best_bits, enc);
        QactTraceEntry entry;
        entry.iteration = iter;
        entry.image = x;
        entry.best_energy = res.best_energy;
        if (ground_truth) entry.rmse = rmse(x, *ground_truth);
        out.trace.push_back(std::move(entry));

        for (std::size_t j = 0; j < n_pixels; ++j) {
            const double cj = cfg.c_per_pixel.empty() ? cfg.c : cfg.c_per_pixel[j];
            enc.k[j] += cj;
            enc.d[j] = x.pixels[j] - std::exp2(cfg.q_max - enc.k[j] - 1.0);
        }

        if (cfg.window_stop > 0.0) {
            double widest = 0.0;
            for (std::size_t j = 0; j < n_pixels; ++j) {
                widest = std::max(widest, enc.window_width(j));
            }
            if (widest < cfg.window_stop) break;
        }
    }
    out.image = std::move(x);
    return out;
}

}  // namespace qct
