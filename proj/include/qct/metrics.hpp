#pragma once

#include <vector>

#include "qct/image.hpp"

namespace qct {

/// Root mean squared error between two equally sized images.
double rmse(const Image& a, const Image& b);

/// RMSE between two flat vectors of equal length.
double rmse(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace qct
