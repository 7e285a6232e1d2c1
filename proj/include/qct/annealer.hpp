#pragma once

#include <cstdint>
#include <vector>

#include "qct/qubo.hpp"

namespace qct {

/// Single-flip Metropolis schedule: n_reads independent chains of n_sweeps
/// sequential sweeps each, under a geometric inverse-temperature ladder from
/// beta_start to beta_end. Betas are relative to the problem's coefficient
/// scale, so the same schedule works across problems whose energy scales
/// differ by orders of magnitude (the variational loop shrinks the scale
/// every iteration).
struct AnnealSchedule {
    int n_sweeps = 1000;
    int n_reads = 32;
    double beta_start = 0.1;
    double beta_end = 50.0;
    std::uint64_t seed = 0;
};

struct SampleResult {
    BitAssignment best_bits;
    double best_energy = 0.0;
    std::vector<double> energies;  // per-read best energies
};

/// Minimizes the QUBO by simulated annealing. Each read starts from a
/// uniformly random assignment and performs sequential single-variable
/// Metropolis sweeps; the lowest-energy assignment seen anywhere (including
/// chain starts) is returned. Deterministic for a fixed seed: read r uses
/// the substream derived from (seed, r).
SampleResult anneal(const QuboProblem& q, const AnnealSchedule& sched);

/// Enumerates all 2^n_vars assignments (Gray-code order with incremental
/// energy updates) and returns the global minimum; exact ties are broken
/// toward the assignment with the lowest value as a little-endian integer.
/// Throws above the 24-variable cap.
SampleResult exhaustive_solve(const QuboProblem& q);

}  // namespace qct
