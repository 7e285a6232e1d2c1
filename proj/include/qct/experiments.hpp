#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "qct/image.hpp"
#include "qct/mlem.hpp"
#include "qct/variational.hpp"

namespace qct {

enum class PhantomKind { Block4, SheppLogan, CtImage };

struct PhantomSpec {
    PhantomKind kind = PhantomKind::SheppLogan;
    int n = 16;
    std::string source_path;  // CtImage only

    std::string name() const;
};

/// Builds the phantom an experiment row refers to.
Image make_phantom(const PhantomSpec& spec);

/// Full experiment grid: every combination of phantom x angle count x i0 x
/// method x seed is one job. i0 = +infinity means noiseless projections.
struct ExperimentSpec {
    std::vector<PhantomSpec> phantoms;
    std::vector<int> angle_counts{36};
    std::vector<double> i0_values{std::numeric_limits<double>::infinity()};
    std::vector<std::string> methods{"qact", "mlem", "fbp"};
    std::vector<std::uint64_t> seeds{1};
    QactConfig qact;
    MlemConfig mlem;
    std::string out_dir = "out";
    bool write_images = true;
    bool write_montages = true;
};

struct GridRow {
    std::string phantom;
    int n = 0;
    int n_angles = 0;
    double i0 = 0.0;
    std::string method;
    std::uint64_t seed = 0;
    double rmse = 0.0;
    double seconds = 0.0;
};

/// Runs every grid job in deterministic order and writes results.csv plus
/// per-job image files (CSV exact, PGM for viewing) and a GT|methods montage
/// per (phantom, angles, i0) under spec.out_dir. Off-grid parameter values
/// are accepted with a warning on stderr.
std::vector<GridRow> run_grid(const ExperimentSpec& spec);

/// "inf" for noiseless, otherwise a compact decimal.
std::string format_i0(double i0);

std::string grid_csv_header();
std::string grid_row_csv(const GridRow& row);
void write_grid_csv(const std::vector<GridRow>& rows, const std::string& path);

/// Writes (iteration, rmse, energy) rows and a line plot of the RMSE curve.
void convergence_report(const QactTrace& trace, const std::string& csv_path,
                        const std::string& plot_path);

/// Parses the key = value experiment config format (see README).
ExperimentSpec parse_experiment_config(const std::string& path);

/// Single-row montage of equally sized tiles, 1-pixel separators, each tile
/// clamped to [0,1] and scaled to 16-bit.
void write_montage(const std::vector<Image>& tiles, const std::string& path);

}  // namespace qct
