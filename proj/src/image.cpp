#include "qct/image.hpp"

#include <stdexcept>

namespace qct {

namespace {

std::size_t checked_area(int side) {
    if (side < 1) throw std::invalid_argument("Image: side must be positive");
    return static_cast<std::size_t>(side) * side;
}

}  // namespace

Image::Image(int side)
    : n(side), pixels(checked_area(side), 0.0), pixel_scale_cm(kObjectSideCm / side) {}

Image::Image(int side, std::vector<double> values) : Image(side) {
    if (values.size() != pixels.size()) {
        throw std::invalid_argument("Image: value count does not match n*n");
    }
    pixels = std::move(values);
}

}  // namespace qct
