#include "qct/image_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qct {

namespace {

// Reads the next whitespace-delimited token of a PGM header, skipping
// '#' comment lines.
std::string next_header_token(std::istream& in) {
    std::string token;
    int ch = 0;
    while ((ch = in.get()) != EOF) {
        if (ch == '#') {
            while ((ch = in.get()) != EOF && ch != '\n') {
            }
            continue;
        }
        if (!std::isspace(ch)) {
            token.push_back(static_cast<char>(ch));
            while ((ch = in.get()) != EOF && !std::isspace(ch)) {
                token.push_back(static_cast<char>(ch));
            }
            return token;
        }
    }
    throw std::runtime_error("PGM: truncated header");
}

int parse_positive(const std::string& token, const char* what) {
    int value = 0;
    try {
        value = std::stoi(token);
    } catch (const std::exception&) {
        throw std::runtime_error(std::string("PGM: bad ") + what);
    }
    if (value <= 0) throw std::runtime_error(std::string("PGM: bad ") + what);
    return value;
}

}  // namespace

GrayRaster read_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("PGM: cannot open " + path);

    if (next_header_token(in) != "P5") {
        throw std::runtime_error("PGM: not a binary P5 file: " + path);
    }
    GrayRaster raster;
    raster.width = parse_positive(next_header_token(in), "width");
    raster.height = parse_positive(next_header_token(in), "height");
    raster.maxval = parse_positive(next_header_token(in), "maxval");
    if (raster.maxval > 65535) throw std::runtime_error("PGM: maxval > 65535");

    const std::size_t count =
        static_cast<std::size_t>(raster.width) * raster.height;
    const int bytes_per_sample = raster.maxval < 256 ? 1 : 2;
    std::vector<unsigned char> buf(count * bytes_per_sample);
    in.read(reinterpret_cast<char*>(buf.data()),
            static_cast<std::streamsize>(buf.size()));
    if (static_cast<std::size_t>(in.gcount()) != buf.size()) {
        throw std::runtime_error("PGM: truncated pixel data in " + path);
    }

    raster.samples.resize(count);
    if (bytes_per_sample == 1) {
        for (std::size_t i = 0; i < count; ++i) raster.samples[i] = buf[i];
    } else {
        // 16-bit samples are big-endian per the PGM specification.
        for (std::size_t i = 0; i < count; ++i) {
            raster.samples[i] = 256.0 * buf[2 * i] + buf[2 * i + 1];
        }
    }
    return raster;
}

void write_pgm16(const Image& img, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("PGM: cannot write " + path);
    out << "P5\n" << img.n << " " << img.n << "\n65535\n";
    for (double p : img.pixels) {
        const double clamped = std::clamp(p, 0.0, 1.0);
        const auto v = static_cast<std::uint16_t>(std::lround(clamped * 65535.0));
        const unsigned char hi = static_cast<unsigned char>(v >> 8);
        const unsigned char lo = static_cast<unsigned char>(v & 0xFF);
        out.put(static_cast<char>(hi));
        out.put(static_cast<char>(lo));
    }
    if (!out) throw std::runtime_error("PGM: write failed for " + path);
}

void write_image_csv(const Image& img, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("CSV: cannot write " + path);
    char buf[32];
    for (int r = 0; r < img.n; ++r) {
        for (int c = 0; c < img.n; ++c) {
            std::snprintf(buf, sizeof(buf), "%.17g", img.at(r, c));
            out << buf << (c + 1 == img.n ? "\n" : ",");
        }
    }
    if (!out) throw std::runtime_error("CSV: write failed for " + path);
}

Image read_image_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("CSV: cannot open " + path);
    std::vector<double> values;
    std::size_t rows = 0;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        ++rows;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            values.push_back(std::stod(cell));
        }
    }
    if (rows == 0 || values.size() != rows * rows) {
        throw std::runtime_error("CSV: not a square image: " + path);
    }
    return Image(static_cast<int>(rows), std::move(values));
}

}  // namespace qct
