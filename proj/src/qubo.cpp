#include "qct/qubo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace qct {

namespace {

constexpr double kCoefficientFloor = 1e-15;

}  // namespace

double QuboProblem::energy(const BitAssignment& bits) const {
    if (bits.size() != n_vars) {
        throw std::invalid_argument("energy: assignment size does not match n_vars");
    }
    double e = offset;
    for (std::size_t i = 0; i < n_vars; ++i) {
        if (bits[i]) e += linear[i];
    }
    for (const QuadTerm& t : quadratic) {
        if (bits[t.i] && bits[t.j]) e += t.value;
    }
    return e;
}

QuboAssembler::QuboAssembler(const SystemMatrix& A, const Sinogram& y)
    : A_(&A), y_(y.values), diag_(A.n_cols(), 0.0) {
    if (y_.size() != A.n_rows()) {
        throw std::invalid_argument("QuboAssembler: sinogram size does not match matrix rows");
    }

    std::unordered_map<std::uint64_t, double> pairs;
    pairs.reserve(A.n_cols() * 8);
    for (std::size_t r = 0; r < A.n_rows(); ++r) {
        for (std::size_t k = A.row_begin(r); k < A.row_end(r); ++k) {
            const std::uint32_t j = A.col(k);
            const double a = A.value(k);
            diag_[j] += a * a;
            for (std::size_t k2 = k + 1; k2 < A.row_end(r); ++k2) {
                const std::uint32_t j2 = A.col(k2);
                const std::uint64_t key =
                    (static_cast<std::uint64_t>(j) << 32) | j2;
                pairs[key] += a * A.value(k2);
            }
        }
    }
    gram_pairs_.reserve(pairs.size());
    for (const auto& [key, g] : pairs) {
        gram_pairs_.push_back({static_cast<std::uint32_t>(key >> 32),
                               static_cast<std::uint32_t>(key & 0xFFFFFFFFu), g});
    }
    std::sort(gram_pairs_.begin(), gram_pairs_.end(),
              [](const QuadTerm& l, const QuadTerm& r) {
                  return l.i != r.i ? l.i < r.i : l.j < r.j;
              });
}

QuboProblem QuboAssembler::assemble(const EncodingState& enc) const {
    const SystemMatrix& A = *A_;
    const std::size_t n_pixels = A.n_cols();
    if (enc.n_pixels() != n_pixels) {
        throw std::invalid_argument("assemble: encoding pixel count does not match matrix");
    }
    const int q_max = enc.q_max;

    // Residual against the offset image: b_i = y_i - sum_j A_ij d_j.
    std::vector<double> b = forward_project_vector(A, enc.d);
    for (std::size_t i = 0; i < b.size(); ++i) b[i] = y_[i] - b[i];

    QuboProblem q;
    q.n_vars = enc.n_vars();
    q.linear.assign(q.n_vars, 0.0);
    for (double bi : b) q.offset += bi * bi;

    // r_j = sum_i A_ij b_i.
    const std::vector<double> r = back_project_vector(A, b);

    // Per-variable weight w_{jq} = 2^(-k_j) * 2^q.
    std::vector<double> w(q.n_vars);
    for (std::size_t j = 0; j < n_pixels; ++j) {
        const double base = std::exp2(-enc.k[j]);
        for (int bit = 0; bit < q_max; ++bit) {
            w[var_index(j, bit, q_max)] = base * std::exp2(bit);
        }
    }

    for (std::size_t j = 0; j < n_pixels; ++j) {
        for (int bit = 0; bit < q_max; ++bit) {
            const std::size_t v = var_index(j, bit, q_max);
            const double coef = w[v] * w[v] * diag_[j] - 2.0 * w[v] * r[j];
            q.linear[v] = std::fabs(coef) < kCoefficientFloor ? 0.0 : coef;
        }
    }

    // Same-pixel couplings use the Gram diagonal (sigma^2 = sigma folds the
    // squared bits into the linear part; distinct bits of a pixel remain).
    q.quadratic.reserve(gram_pairs_.size() * q_max * q_max +
                        n_pixels * q_max * (q_max - 1) / 2);
    for (std::size_t j = 0; j < n_pixels; ++j) {
        if (diag_[j] == 0.0) continue;
        for (int b1 = 0; b1 < q_max; ++b1) {
            for (int b2 = b1 + 1; b2 < q_max; ++b2) {
                const std::size_t v1 = var_index(j, b1, q_max);
                const std::size_t v2 = var_index(j, b2, q_max);
                const double coef = 2.0 * w[v1] * w[v2] * diag_[j];
                if (std::fabs(coef) >= kCoefficientFloor) {
                    q.quadratic.push_back({static_cast<std::uint32_t>(v1),
                                           static_cast<std::uint32_t>(v2), coef});
                }
            }
        }
    }
    for (const QuadTerm& g : gram_pairs_) {
        for (int b1 = 0; b1 < q_max; ++b1) {
            for (int b2 = 0; b2 < q_max; ++b2) {
                const std::size_t v1 = var_index(g.i, b1, q_max);
                const std::size_t v2 = var_index(g.j, b2, q_max);
                const double coef = 2.0 * w[v1] * w[v2] * g.value;
                if (std::fabs(coef) >= kCoefficientFloor) {
                    q.quadratic.push_back({static_cast<std::uint32_t>(v1),
                                           static_cast<std::uint32_t>(v2), coef});
                }
            }
        }
    }
    std::sort(q.quadratic.begin(), q.quadratic.end(),
              [](const QuadTerm& l, const QuadTerm& r) {
                  return l.i != r.i ? l.i < r.i : l.j < r.j;
              });
    return q;
}

QuboProblem assemble_qubo(const SystemMatrix& A, const Sinogram& y,
                          const EncodingState& enc) {
    return QuboAssembler(A, y).assemble(enc);
}

void write_qubo(const QuboProblem& q, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("qubo: cannot write " + path);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", q.offset);
    out << "VARS " << q.n_vars << " OFFSET " << buf << "\n";
    for (std::size_t i = 0; i < q.n_vars; ++i) {
        if (q.linear[i] == 0.0) continue;
        std::snprintf(buf, sizeof(buf), "%.17g", q.linear[i]);
        out << "L " << i << " " << buf << "\n";
    }
    for (const QuadTerm& t : q.quadratic) {
        std::snprintf(buf, sizeof(buf), "%.17g", t.value);
        out << "Q " << t.i << " " << t.j << " " << buf << "\n";
    }
    if (!out) throw std::runtime_error("qubo: write failed for " + path);
}

QuboProblem read_qubo(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("qubo: cannot open " + path);
    QuboProblem q;
    std::string line;
    bool have_header = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::stringstream ss(line);
        std::string tag;
        ss >> tag;
        if (tag == "VARS") {
            std::string offset_tag;
            ss >> q.n_vars >> offset_tag >> q.offset;
            if (offset_tag != "OFFSET" || !ss) {
                throw std::runtime_error("qubo: malformed header in " + path);
            }
            q.linear.assign(q.n_vars, 0.0);
            have_header = true;
        } else if (tag == "L") {
            std::size_t i = 0;
            double v = 0.0;
            ss >> i >> v;
            if (!have_header || !ss || i >= q.n_vars) {
                throw std::runtime_error("qubo: malformed linear term in " + path);
            }
            q.linear[i] = v;
        } else if (tag == "Q") {
            std::uint32_t i = 0, j = 0;
            double v = 0.0;
            ss >> i >> j >> v;
            if (!have_header || !ss || j >= q.n_vars || i >= j) {
                throw std::runtime_error("qubo: malformed quadratic term in " + path);
            }
            q.quadratic.push_back({i, j, v});
        } else {
            throw std::runtime_error("qubo: unknown record '" + tag + "' in " + path);
        }
    }
    if (!have_header) throw std::runtime_error("qubo: missing header in " + path);
    std::sort(q.quadratic.begin(), q.quadratic.end(),
              [](const QuadTerm& l, const QuadTerm& r) {
                  return l.i != r.i ? l.i < r.i : l.j < r.j;
              });
    return q;
}

}  // namespace qct
