#include "qct/plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace qct {

namespace {

struct Canvas {
    int width;
    int height;
    std::vector<unsigned char> px;

    Canvas(int w, int h) : width(w), height(h), px(static_cast<std::size_t>(w) * h, 255) {}

    void set(int x, int y, unsigned char v) {
        if (x >= 0 && x < width && y >= 0 && y < height) {
            px[static_cast<std::size_t>(y) * width + x] = v;
        }
    }

    void line(int x0, int y0, int x1, int y1, unsigned char v) {
        const int dx = std::abs(x1 - x0), sx = x0 < x1 ? 1 : -1;
        const int dy = -std::abs(y1 - y0), sy = y0 < y1 ? 1 : -1;
        int err = dx + dy;
        for (;;) {
            set(x0, y0, v);
            if (x0 == x1 && y0 == y1) break;
            const int e2 = 2 * err;
            if (e2 >= dy) {
                err += dy;
                x0 += sx;
            }
            if (e2 <= dx) {
                err += dx;
                y0 += sy;
            }
        }
    }
};

}  // namespace

void write_line_plot(const std::vector<double>& values, const std::string& path,
                     int width, int height) {
    if (values.empty()) throw std::invalid_argument("plot: no data");

    bool use_log = true;
    for (double v : values) {
        if (!(v > 0.0)) {
            use_log = false;
            break;
        }
    }
    std::vector<double> ys(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        ys[i] = use_log ? std::log10(values[i]) : values[i];
    }
    const auto [mn_it, mx_it] = std::minmax_element(ys.begin(), ys.end());
    double lo = *mn_it, hi = *mx_it;
    if (use_log && hi - lo < 2.0) {
        // Narrow dynamic range: linear axis reads better.
        use_log = false;
        for (std::size_t i = 0; i < values.size(); ++i) ys[i] = values[i];
        const auto [mn2, mx2] = std::minmax_element(ys.begin(), ys.end());
        lo = *mn2;
        hi = *mx2;
    }
    if (hi - lo <= 0.0) {
        lo -= 0.5;
        hi += 0.5;
    }

    Canvas canvas(width, height);
    const int margin = 24;
    const int x0 = margin, x1 = width - margin;
    const int y0 = height - margin, y1 = margin;
    canvas.line(x0, y0, x1, y0, 0);
    canvas.line(x0, y0, x0, y1, 0);

    const auto to_x = [&](std::size_t i) {
        if (values.size() == 1) return (x0 + x1) / 2;
        return x0 + static_cast<int>(std::lround(
                        static_cast<double>(i) * (x1 - x0) / (values.size() - 1)));
    };
    const auto to_y = [&](double v) {
        return y0 - static_cast<int>(std::lround((v - lo) / (hi - lo) * (y0 - y1)));
    };
    for (std::size_t i = 0; i + 1 < ys.size(); ++i) {
        canvas.line(to_x(i), to_y(ys[i]), to_x(i + 1), to_y(ys[i + 1]), 0);
    }
    if (ys.size() == 1) canvas.set(to_x(0), to_y(ys[0]), 0);

    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("plot: cannot write " + path);
    out << "P5\n" << width << " " << height << "\n255\n";
    out.write(reinterpret_cast<const char*>(canvas.px.data()),
              static_cast<std::streamsize>(canvas.px.size()));
    if (!out) throw std::runtime_error("plot: write failed for " + path);
}

}  // namespace qct
