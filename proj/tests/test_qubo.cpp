#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>

#include "qct/phantom.hpp"
#include "qct/qubo.hpp"
#include "qct/rng.hpp"
#include "qct/system_matrix.hpp"

using namespace qct;

namespace {

// Direct Hamiltonian oracle: H(sigma) = sum_i (A x(sigma) - y)_i^2 through
// decode + forward projection, no QUBO expansion involved.
double direct_hamiltonian(const SystemMatrix& A, const Sinogram& y,
                          const EncodingState& enc, const BitAssignment& bits) {
    const std::vector<double> x = decode_vector(bits, enc);
    const std::vector<double> proj = forward_project_vector(A, x);
    double h = 0.0;
    for (std::size_t i = 0; i < proj.size(); ++i) {
        const double r = proj[i] - y.values[i];
        h += r * r;
    }
    return h;
}

BitAssignment bits_from_int(std::uint64_t state, std::size_t n_vars) {
    BitAssignment bits(n_vars, 0);
    for (std::size_t v = 0; v < n_vars; ++v) bits[v] = (state >> v) & 1u;
    return bits;
}

// Minimal one-ray system: A = [1] on a single pixel.
struct TinySystem {
    SystemMatrix A{1, 1};
    Sinogram y{1, 1};
    TinySystem() {
        A.append_row({{0, 1.0}});
        y.values[0] = 0.5;
    }
};

}  // namespace

TEST_CASE("decode follows the binary expansion") {
    EncodingState enc = make_encoding(1, 2, 0.5, 1.0, 0.0);
    CHECK(decode_vector({1, 1}, enc)[0] == doctest::Approx(1.5).epsilon(1e-15));

    enc.k[0] = 1.5;
    enc.d[0] = 0.2;
    CHECK(decode_vector({0, 1}, enc)[0] == doctest::Approx(0.90711).epsilon(1e-4));

    EncodingState enc3 = make_encoding(3, 2, 0.5, 1.0, 0.0);
    enc3.d = {0.1, 0.2, 0.3};
    const auto x = decode_vector({0, 0, 0, 0, 0, 0}, enc3);
    CHECK(x == enc3.d);

    CHECK_THROWS_AS(decode_vector({0, 1, 1}, enc), std::invalid_argument);
}

TEST_CASE("one-ray example expands to the hand-computed qubo") {
    const TinySystem sys;
    const EncodingState enc = make_encoding(1, 2, 0.5, 1.0, 0.0);
    const QuboProblem q = assemble_qubo(sys.A, sys.y, enc);

    REQUIRE(q.n_vars == 2);
    CHECK(q.linear[0] == doctest::Approx(-0.25).epsilon(1e-15));
    CHECK(q.linear[1] == doctest::Approx(0.0).epsilon(1e-15));
    REQUIRE(q.quadratic.size() == 1);
    CHECK(q.quadratic[0].i == 0);
    CHECK(q.quadratic[0].j == 1);
    CHECK(q.quadratic[0].value == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(q.offset == doctest::Approx(0.25).epsilon(1e-15));

    // Brute force over all four assignments: minimum 0 at (1,0).
    double best = 1e300;
    std::uint64_t best_state = 0;
    for (std::uint64_t s = 0; s < 4; ++s) {
        const double e = q.energy(bits_from_int(s, 2));
        CHECK(e == doctest::Approx(direct_hamiltonian(sys.A, sys.y, enc, bits_from_int(s, 2)))
                       .epsilon(1e-12));
        if (e < best) {
            best = e;
            best_state = s;
        }
    }
    CHECK(best == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(best_state == 1);  // sigma = (1, 0)
}

TEST_CASE("energy is zero at any exactly representable image") {
    const Geometry geom = make_geometry(2, 3);
    const SystemMatrix A = build_system_matrix(geom);
    EncodingState enc = make_encoding(4, 2, 0.5, 1.0, 0.0);
    enc.d = {0.05, 0.1, 0.15, 0.2};

    Xoshiro256ss rng(9);
    for (int trial = 0; trial < 10; ++trial) {
        BitAssignment bits(enc.n_vars());
        for (auto& b : bits) b = rng.flip() ? 1 : 0;
        Sinogram y(geom.n_angles(), geom.n_det);
        y.values = forward_project_vector(A, decode_vector(bits, enc));
        const QuboProblem q = assemble_qubo(A, y, enc);
        CHECK(std::fabs(q.energy(bits)) <= 1e-9);
    }
}

TEST_CASE("qubo energy equals the direct hamiltonian for every assignment") {
    const Geometry geom = make_geometry(2, 3);
    const SystemMatrix A = build_system_matrix(geom);
    Xoshiro256ss rng(31);

    for (int instance = 0; instance < 5; ++instance) {
        EncodingState enc = make_encoding(4, 2, 0.5, 1.0, 0.0);
        for (std::size_t j = 0; j < 4; ++j) {
            enc.d[j] = rng.uniform() * 0.4 - 0.2;
            enc.k[j] = 0.5 + rng.uniform();
        }
        Sinogram y(geom.n_angles(), geom.n_det);
        for (double& v : y.values) v = rng.uniform() * 4.0;

        const QuboProblem q = assemble_qubo(A, y, enc);
        const double scale = std::max(1.0, q.offset);
        for (std::uint64_t s = 0; s < (1u << 8); ++s) {
            const BitAssignment bits = bits_from_int(s, 8);
            const double direct = direct_hamiltonian(A, y, enc, bits);
            CHECK(std::fabs(q.energy(bits) - direct) <= 1e-9 * std::max(scale, direct));
            CHECK(q.energy(bits) >= -1e-9);
        }
    }
}

TEST_CASE("couplings appear only between pixels sharing a ray") {
    // Single horizontal-ish fan at one angle: pixels in different rows of a
    // tall grid are crossed by disjoint ray subsets.
    const Geometry geom = make_geometry(4, 5);
    const SystemMatrix A = build_system_matrix(geom);
    Sinogram y(geom.n_angles(), geom.n_det);
    const EncodingState enc = make_encoding(16, 2, 0.5, 1.0, 0.0);
    const QuboProblem q = assemble_qubo(A, y, enc);

    // Recompute which pixel pairs share a ray.
    std::vector<std::vector<bool>> share(16, std::vector<bool>(16, false));
    for (std::size_t r = 0; r < A.n_rows(); ++r) {
        for (std::size_t k1 = A.row_begin(r); k1 < A.row_end(r); ++k1) {
            for (std::size_t k2 = A.row_begin(r); k2 < A.row_end(r); ++k2) {
                share[A.col(k1)][A.col(k2)] = true;
            }
        }
    }
    for (const QuadTerm& t : q.quadratic) {
        const std::size_t pixel_i = t.i / 2;
        const std::size_t pixel_j = t.j / 2;
        CHECK(share[pixel_i][pixel_j]);
    }
}

TEST_CASE("qubo text format round trips") {
    const TinySystem sys;
    const EncodingState enc = make_encoding(1, 2, 0.5, 1.0, 0.0);
    const QuboProblem q = assemble_qubo(sys.A, sys.y, enc);

    write_qubo(q, "problem.qubo");
    const QuboProblem back = read_qubo("problem.qubo");
    CHECK(back.n_vars == q.n_vars);
    CHECK(back.offset == q.offset);
    CHECK(back.linear == q.linear);
    CHECK(back.quadratic == q.quadratic);
    std::remove("problem.qubo");
}

TEST_CASE("assembly validates dimensions") {
    const TinySystem sys;
    const EncodingState enc = make_encoding(2, 2, 0.5, 1.0, 0.0);
    CHECK_THROWS_AS(assemble_qubo(sys.A, sys.y, enc), std::invalid_argument);
}
