#include "qct/system_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace qct {

namespace {

constexpr double kMinChordCm = 1e-12;

// Little-endian scalar I/O, explicit so the binary format is
// platform-independent.
void put_u64(std::ostream& out, std::uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    out.write(reinterpret_cast<const char*>(b), 8);
}

std::uint64_t get_u64(std::istream& in) {
    unsigned char b[8];
    in.read(reinterpret_cast<char*>(b), 8);
    if (!in) throw std::runtime_error("system matrix: truncated binary file");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return v;
}

void put_f64(std::ostream& out, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, 8);
    put_u64(out, bits);
}

double get_f64(std::istream& in) {
    const std::uint64_t bits = get_u64(in);
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
}

}  // namespace

double SystemMatrix::row_sum(std::size_t r) const {
    double sum = 0.0;
    for (std::size_t k = row_begin(r); k < row_end(r); ++k) sum += vals_[k];
    return sum;
}

void SystemMatrix::append_row(const std::vector<RayHit>& hits) {
    if (rows_filled_ >= n_rows_) {
        throw std::invalid_argument("SystemMatrix: more rows than declared");
    }
    std::vector<RayHit> sorted = hits;
    std::sort(sorted.begin(), sorted.end(),
              [](const RayHit& l, const RayHit& r) { return l.pixel < r.pixel; });
    for (const RayHit& h : sorted) {
        cols_.push_back(static_cast<std::uint32_t>(h.pixel));
        vals_.push_back(h.length);
    }
    row_start_[++rows_filled_] = cols_.size();
}

std::vector<RayHit> trace_ray(Vec2 a, Vec2 b, int n, double half_side) {
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    const double norm = std::hypot(dx, dy);
    if (norm == 0.0) throw std::invalid_argument("trace_ray: zero-length ray");

    // Clip the infinite line to the image square (slab method).
    double t_lo = -std::numeric_limits<double>::infinity();
    double t_hi = std::numeric_limits<double>::infinity();
    const auto clip_axis = [&](double origin, double dir) -> bool {
        if (dir == 0.0) return std::fabs(origin) <= half_side;
        const double ta = (-half_side - origin) / dir;
        const double tb = (half_side - origin) / dir;
        t_lo = std::max(t_lo, std::min(ta, tb));
        t_hi = std::min(t_hi, std::max(ta, tb));
        return true;
    };
    if (!clip_axis(a.x, dx) || !clip_axis(a.y, dy) || t_lo >= t_hi) return {};

    // Parameter values of every pixel-boundary crossing inside (t_lo, t_hi).
    const double pixel = 2.0 * half_side / n;
    std::vector<double> ts;
    ts.reserve(static_cast<std::size_t>(2 * n + 4));
    ts.push_back(t_lo);
    ts.push_back(t_hi);
    const auto add_axis_crossings = [&](double origin, double dir) {
        if (dir == 0.0) return;
        for (int i = 1; i < n; ++i) {
            const double plane = -half_side + i * pixel;
            const double t = (plane - origin) / dir;
            if (t > t_lo && t < t_hi) ts.push_back(t);
        }
    };
    add_axis_crossings(a.x, dx);
    add_axis_crossings(a.y, dy);
    std::sort(ts.begin(), ts.end());

    std::vector<RayHit> hits;
    hits.reserve(ts.size());
    for (std::size_t k = 0; k + 1 < ts.size(); ++k) {
        const double length = (ts[k + 1] - ts[k]) * norm;
        if (length < kMinChordCm) continue;
        const double tm = 0.5 * (ts[k] + ts[k + 1]);
        const double px = a.x + tm * dx;
        const double py = a.y + tm * dy;
        int col = static_cast<int>(std::floor((px + half_side) / pixel));
        int row = static_cast<int>(std::floor((half_side - py) / pixel));
        col = std::clamp(col, 0, n - 1);
        row = std::clamp(row, 0, n - 1);
        hits.push_back({row * n + col, length});
    }
    return hits;
}

SystemMatrix build_system_matrix(const Geometry& geom) {
    const std::size_t n_cols = static_cast<std::size_t>(geom.n) * geom.n;
    SystemMatrix A(static_cast<std::size_t>(geom.n_rays()), n_cols);
    const double half = 0.5 * geom.image_side_cm;
    for (int angle = 0; angle < geom.n_angles(); ++angle) {
        const Vec2 src = geom.source_position(angle);
        for (int det = 0; det < geom.n_det; ++det) {
            const Vec2 dst = geom.detector_position(angle, det);
            A.append_row(trace_ray(src, dst, geom.n, half));
        }
    }
    return A;
}

std::vector<double> forward_project_vector(const SystemMatrix& A,
                                           const std::vector<double>& x) {
    if (x.size() != A.n_cols()) {
        throw std::invalid_argument("forward_project: pixel count does not match matrix columns");
    }
    std::vector<double> y(A.n_rows(), 0.0);
    for (std::size_t r = 0; r < A.n_rows(); ++r) {
        double acc = 0.0;
        for (std::size_t k = A.row_begin(r); k < A.row_end(r); ++k) {
            acc += A.value(k) * x[A.col(k)];
        }
        y[r] = acc;
    }
    return y;
}

Sinogram forward_project(const SystemMatrix& A, const Image& x,
                         const Geometry& geom) {
    if (static_cast<std::size_t>(geom.n_rays()) != A.n_rows()) {
        throw std::invalid_argument("forward_project: geometry rays do not match matrix rows");
    }
    Sinogram sino(geom.n_angles(), geom.n_det);
    sino.values = forward_project_vector(A, x.pixels);
    return sino;
}

std::vector<double> back_project_vector(const SystemMatrix& A,
                                        const std::vector<double>& y) {
    if (y.size() != A.n_rows()) {
        throw std::invalid_argument("back_project: ray count does not match matrix rows");
    }
    std::vector<double> x(A.n_cols(), 0.0);
    for (std::size_t r = 0; r < A.n_rows(); ++r) {
        const double w = y[r];
        if (w == 0.0) continue;
        for (std::size_t k = A.row_begin(r); k < A.row_end(r); ++k) {
            x[A.col(k)] += A.value(k) * w;
        }
    }
    return x;
}

Image back_project(const SystemMatrix& A, const Sinogram& y) {
    const int n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(A.n_cols()))));
    if (static_cast<std::size_t>(n) * n != A.n_cols()) {
        throw std::invalid_argument("back_project: matrix columns are not a square grid");
    }
    Image img(n);
    img.pixels = back_project_vector(A, y.values);
    return img;
}

void write_system_matrix_csv(const SystemMatrix& A, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("system matrix: cannot write " + path);
    out << "# m=" << A.n_rows() << " n=" << A.n_cols() << "\n";
    char buf[32];
    for (std::size_t r = 0; r < A.n_rows(); ++r) {
        for (std::size_t k = A.row_begin(r); k < A.row_end(r); ++k) {
            std::snprintf(buf, sizeof(buf), "%.17g", A.value(k));
            out << r << "," << A.col(k) << "," << buf << "\n";
        }
    }
    if (!out) throw std::runtime_error("system matrix: write failed for " + path);
}

SystemMatrix read_system_matrix_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("system matrix: cannot open " + path);
    std::string line;
    std::size_t rows = 0, cols = 0;
    std::vector<std::tuple<std::size_t, std::uint32_t, double>> triples;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::size_t m_pos = line.find("m=");
            std::size_t n_pos = line.find("n=");
            if (m_pos != std::string::npos && n_pos != std::string::npos) {
                rows = std::stoull(line.substr(m_pos + 2));
                cols = std::stoull(line.substr(n_pos + 2));
            }
            continue;
        }
        std::stringstream ss(line);
        std::string cell;
        std::getline(ss, cell, ',');
        const std::size_t r = std::stoull(cell);
        std::getline(ss, cell, ',');
        const auto c = static_cast<std::uint32_t>(std::stoul(cell));
        std::getline(ss, cell, ',');
        const double v = std::stod(cell);
        triples.emplace_back(r, c, v);
        rows = std::max(rows, r + 1);
        cols = std::max(cols, static_cast<std::size_t>(c) + 1);
    }
    SystemMatrix A(rows, cols);
    std::vector<RayHit> row_hits;
    std::size_t next = 0;
    for (std::size_t r = 0; r < rows; ++r) {
        row_hits.clear();
        while (next < triples.size() && std::get<0>(triples[next]) == r) {
            row_hits.push_back({static_cast<int>(std::get<1>(triples[next])),
                                std::get<2>(triples[next])});
            ++next;
        }
        A.append_row(row_hits);
    }
    return A;
}

void write_system_matrix_binary(const SystemMatrix& A, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("system matrix: cannot write " + path);
    put_u64(out, A.n_rows());
    put_u64(out, A.n_cols());
    for (std::size_t r = 0; r < A.n_rows(); ++r) {
        for (std::size_t k = A.row_begin(r); k < A.row_end(r); ++k) {
            put_u64(out, r);
            put_u64(out, A.col(k));
            put_f64(out, A.value(k));
        }
    }
    if (!out) throw std::runtime_error("system matrix: write failed for " + path);
}

SystemMatrix read_system_matrix_binary(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("system matrix: cannot open " + path);
    const std::uint64_t rows = get_u64(in);
    const std::uint64_t cols = get_u64(in);
    SystemMatrix A(rows, cols);
    std::vector<RayHit> row_hits;
    std::size_t current = 0;
    bool have_pending = false;
    std::uint64_t pend_row = 0, pend_col = 0;
    double pend_val = 0.0;
    const auto flush_until = [&](std::uint64_t row) {
        while (current < row) {
            A.append_row(row_hits);
            row_hits.clear();
            ++current;
        }
    };
    for (;;) {
        if (!have_pending) {
            if (in.peek() == EOF) break;
            pend_row = get_u64(in);
            pend_col = get_u64(in);
            pend_val = get_f64(in);
        }
        have_pending = false;
        if (pend_row >= rows) throw std::runtime_error("system matrix: row index out of range");
        flush_until(pend_row);
        row_hits.push_back({static_cast<int>(pend_col), pend_val});
    }
    flush_until(rows);
    return A;
}

}  // namespace qct
