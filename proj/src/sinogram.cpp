#include "qct/sinogram.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qct {

void write_sinogram_csv(const Sinogram& sino, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("sinogram: cannot write " + path);
    char buf[32];
    for (int a = 0; a < sino.n_angles; ++a) {
        for (int d = 0; d < sino.n_det; ++d) {
            std::snprintf(buf, sizeof(buf), "%.17g", sino.at(a, d));
            out << buf << (d + 1 == sino.n_det ? "\n" : ",");
        }
    }
    if (!out) throw std::runtime_error("sinogram: write failed for " + path);
}

Sinogram read_sinogram_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("sinogram: cannot open " + path);
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::runtime_error("sinogram: empty file " + path);
    const std::size_t n_det = rows.front().size();
    Sinogram sino(static_cast<int>(rows.size()), static_cast<int>(n_det));
    for (std::size_t a = 0; a < rows.size(); ++a) {
        if (rows[a].size() != n_det) {
            throw std::runtime_error("sinogram: ragged rows in " + path);
        }
        for (std::size_t d = 0; d < n_det; ++d) {
            sino.values[a * n_det + d] = rows[a][d];
        }
    }
    return sino;
}

}  // namespace qct
