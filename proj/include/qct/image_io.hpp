#pragma once

#include <string>
#include <vector>

#include "qct/image.hpp"

namespace qct {

/// Raw grayscale raster as decoded from a PGM file, values in [0, maxval].
struct GrayRaster {
    int width = 0;
    int height = 0;
    int maxval = 0;
    std::vector<double> samples;  // row-major
};

/// Reads a binary (P5) PGM, 8- or 16-bit. Throws on malformed input.
GrayRaster read_pgm(const std::string& path);

/// Writes a 16-bit binary PGM; pixel values are clamped to [0,1] and scaled
/// by 65535.
void write_pgm16(const Image& img, const std::string& path);

/// Full-precision CSV, one image row per line, comma-separated.
void write_image_csv(const Image& img, const std::string& path);

/// Reads an image CSV written by write_image_csv; requires a square grid.
Image read_image_csv(const std::string& path);

}  // namespace qct
