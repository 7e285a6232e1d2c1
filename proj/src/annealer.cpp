#include "qct/annealer.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "qct/rng.hpp"

namespace qct {

namespace {

// Compressed neighbor lists: for each variable the couplings it shares, so
// a flip of v updates the local fields of exactly its neighbors.
struct Adjacency {
    std::vector<std::size_t> start;
    std::vector<std::uint32_t> other;
    std::vector<double> weight;

    explicit Adjacency(const QuboProblem& q) {
        std::vector<std::size_t> degree(q.n_vars, 0);
        for (const QuadTerm& t : q.quadratic) {
            ++degree[t.i];
            ++degree[t.j];
        }
        start.assign(q.n_vars + 1, 0);
        for (std::size_t v = 0; v < q.n_vars; ++v) start[v + 1] = start[v] + degree[v];
        other.resize(start.back());
        weight.resize(start.back());
        std::vector<std::size_t> fill(q.n_vars, 0);
        for (const QuadTerm& t : q.quadratic) {
            const std::size_t ki = start[t.i] + fill[t.i]++;
            other[ki] = t.j;
            weight[ki] = t.value;
            const std::size_t kj = start[t.j] + fill[t.j]++;
            other[kj] = t.i;
            weight[kj] = t.value;
        }
    }
};

// Local field f_v = linear_v + sum over set neighbors; flipping v changes
// the energy by (1 - 2*sigma_v) * f_v.
std::vector<double> local_fields(const QuboProblem& q, const Adjacency& adj,
                                 const BitAssignment& bits) {
    std::vector<double> f(q.linear);
    for (std::size_t v = 0; v < q.n_vars; ++v) {
        for (std::size_t k = adj.start[v]; k < adj.start[v + 1]; ++k) {
            if (bits[adj.other[k]]) f[v] += adj.weight[k];
        }
    }
    return f;
}

void apply_flip(std::size_t v, BitAssignment& bits, std::vector<double>& f,
                const Adjacency& adj) {
    const double sign = bits[v] ? -1.0 : 1.0;
    bits[v] ^= 1u;
    for (std::size_t k = adj.start[v]; k < adj.start[v + 1]; ++k) {
        f[adj.other[k]] += sign * adj.weight[k];
    }
}

// Energy scale the betas are relative to: the median nonzero coupling
// magnitude, which tracks the single-flip curvature near the optimum. The
// extreme linear coefficients can dwarf it by orders of magnitude, but those
// sort themselves out by plain descent; the couplings set the barrier scale
// the ladder actually has to traverse.
double decision_scale(const QuboProblem& q) {
    std::vector<double> mags;
    mags.reserve(q.quadratic.size());
    for (const QuadTerm& t : q.quadratic) {
        if (t.value != 0.0) mags.push_back(std::fabs(t.value));
    }
    if (!mags.empty()) {
        const std::size_t mid = mags.size() / 2;
        std::nth_element(mags.begin(), mags.begin() + mid, mags.end());
        return mags[mid];
    }
    double max_linear = 0.0;
    for (double v : q.linear) max_linear = std::max(max_linear, std::fabs(v));
    return max_linear > 0.0 ? max_linear : 1.0;
}

// Deterministic descent to a single-flip local minimum.
void descend(const QuboProblem& q, BitAssignment& bits, std::vector<double>& f,
             double& e, const Adjacency& adj) {
    for (std::size_t pass = 0; pass < q.n_vars; ++pass) {
        bool moved = false;
        for (std::size_t v = 0; v < q.n_vars; ++v) {
            const double de = bits[v] ? -f[v] : f[v];
            if (de < 0.0) {
                apply_flip(v, bits, f, adj);
                e += de;
                moved = true;
            }
        }
        if (!moved) break;
    }
}

}  // namespace

SampleResult anneal(const QuboProblem& q, const AnnealSchedule& sched) {
    if (q.n_vars < 1) throw std::invalid_argument("anneal: problem has no variables");
    if (sched.n_sweeps < 1 || sched.n_reads < 1) {
        throw std::invalid_argument("anneal: n_sweeps and n_reads must be >= 1");
    }
    if (!(sched.beta_end > sched.beta_start) || !(sched.beta_start > 0.0)) {
        throw std::invalid_argument("anneal: need beta_end > beta_start > 0");
    }

    const Adjacency adj(q);
    const double beta_unit = 1.0 / decision_scale(q);

    // Geometric ladder; a single sweep runs at the cold end.
    std::vector<double> betas(sched.n_sweeps);
    if (sched.n_sweeps == 1) {
        betas[0] = sched.beta_end * beta_unit;
    } else {
        const double ratio = sched.beta_end / sched.beta_start;
        for (int s = 0; s < sched.n_sweeps; ++s) {
            const double frac = static_cast<double>(s) / (sched.n_sweeps - 1);
            betas[s] = sched.beta_start * std::pow(ratio, frac) * beta_unit;
        }
    }

    SampleResult result;
    result.energies.reserve(sched.n_reads);
    for (int read = 0; read < sched.n_reads; ++read) {
        Xoshiro256ss rng(derive_seed(sched.seed, static_cast<std::uint64_t>(read)));

        BitAssignment bits(q.n_vars);
        for (std::size_t v = 0; v < q.n_vars; ++v) bits[v] = rng.flip() ? 1 : 0;
        std::vector<double> f = local_fields(q, adj, bits);
        double e = q.energy(bits);

        BitAssignment best_bits = bits;
        double best_e = e;
        for (int s = 0; s < sched.n_sweeps; ++s) {
            const double beta = betas[s];
            for (std::size_t v = 0; v < q.n_vars; ++v) {
                const double de = bits[v] ? -f[v] : f[v];
                bool accept = de <= 0.0;
                if (!accept) accept = rng.uniform() < std::exp(-beta * de);
                if (!accept) continue;
                apply_flip(v, bits, f, adj);
                e += de;
                if (e < best_e) {
                    best_e = e;
                    best_bits = bits;
                }
            }
        }

        // Zero-temperature tail: settle the chain into a single-flip local
        // minimum before reporting.
        descend(q, bits, f, e, adj);
        if (e < best_e) {
            best_e = e;
            best_bits = bits;
        }

        best_e = q.energy(best_bits);  // drop incremental rounding
        result.energies.push_back(best_e);
        if (read == 0 || best_e < result.best_energy) {
            result.best_energy = best_e;
            result.best_bits = std::move(best_bits);
        }
    }
    return result;
}

SampleResult exhaustive_solve(const QuboProblem& q) {
    if (q.n_vars < 1) throw std::invalid_argument("exhaustive_solve: problem has no variables");
    if (q.n_vars > 24) {
        throw std::invalid_argument("exhaustive_solve: refusing more than 24 variables");
    }

    const Adjacency adj(q);
    BitAssignment bits(q.n_vars, 0);
    std::vector<double> f(q.linear);
    double e = q.offset;

    double best_e = e;
    std::uint32_t best_state = 0;
    std::uint32_t state = 0;

    const std::uint64_t total = 1ull << q.n_vars;
    for (std::uint64_t g = 1; g < total; ++g) {
        const auto v = static_cast<std::size_t>(std::countr_zero(g));
        const double de = bits[v] ? -f[v] : f[v];
        apply_flip(v, bits, f, adj);
        e += de;
        state ^= (1u << v);
        if (e < best_e || (e == best_e && state < best_state)) {
            best_e = e;
            best_state = state;
        }
    }

    SampleResult result;
    result.best_bits.assign(q.n_vars, 0);
    for (std::size_t v = 0; v < q.n_vars; ++v) {
        result.best_bits[v] = (best_state >> v) & 1u;
    }
    result.best_energy = q.energy(result.best_bits);
    result.energies = {result.best_energy};
    return result;
}

}  // namespace qct
