// Command-line front end: phantom generation, projection, noise, QUBO
// solving, reconstruction, and the experiment grid.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <limits>
#include <string>

#include <CLI11.hpp>

#include "qct/experiments.hpp"
#include "qct/fbp.hpp"
#include "qct/image_io.hpp"
#include "qct/metrics.hpp"
#include "qct/noise.hpp"
#include "qct/phantom.hpp"
#include "qct/plot.hpp"
#include "qct/qubo.hpp"
#include "qct/rng.hpp"
#include "qct/sinogram.hpp"
#include "qct/system_matrix.hpp"
#include "qct/variational.hpp"

namespace {

using namespace qct;

std::string default_out_dir() {
    const char* env = std::getenv("QCT_OUT_DIR");
    return env ? env : "out";
}

PhantomSpec parse_phantom(const std::string& kind, int size, const std::string& src) {
    PhantomSpec spec;
    spec.n = size;
    spec.source_path = src;
    if (kind == "block") {
        spec.kind = PhantomKind::Block4;
        spec.n = 4;
    } else if (kind == "shepp") {
        spec.kind = PhantomKind::SheppLogan;
    } else if (kind == "ct") {
        spec.kind = PhantomKind::CtImage;
        if (src.empty()) throw CLI::ValidationError("--src is required for --kind ct");
    } else if (kind == "disk") {
        spec.kind = PhantomKind::SheppLogan;  // replaced below
    } else {
        throw CLI::ValidationError("unknown phantom kind '" + kind + "'");
    }
    return spec;
}

void save_image(const Image& img, const std::string& prefix) {
    write_image_csv(img, prefix + ".csv");
    write_pgm16(img, prefix + ".pgm");
    std::cout << "wrote " << prefix << ".csv and " << prefix << ".pgm\n";
}

int cmd_phantom(const std::string& kind, int size, const std::string& src,
                const std::string& out_prefix) {
    const Image img = kind == "disk" ? make_disk_phantom(size, 0.6, 1.0)
                                     : make_phantom(parse_phantom(kind, size, src));
    save_image(img, out_prefix);
    return 0;
}

int cmd_project(const std::string& kind, int size, const std::string& src,
                const std::string& phantom_csv, int angles, const std::string& out,
                const std::string& matrix_csv, const std::string& matrix_bin) {
    const Image img = phantom_csv.empty()
                          ? make_phantom(parse_phantom(kind, size, src))
                          : read_image_csv(phantom_csv);
    const Geometry geom = make_geometry(img.n, angles);
    const SystemMatrix A = build_system_matrix(geom);
    const Sinogram sino = forward_project(A, img, geom);
    write_sinogram_csv(sino, out);
    std::cout << "wrote " << out << " (" << sino.n_angles << " angles x "
              << sino.n_det << " detectors)\n";
    if (!matrix_csv.empty()) write_system_matrix_csv(A, matrix_csv);
    if (!matrix_bin.empty()) write_system_matrix_binary(A, matrix_bin);
    return 0;
}

int cmd_noise(const std::string& in, double i0, std::uint64_t seed,
              const std::string& out) {
    const Sinogram clean = read_sinogram_csv(in);
    const Sinogram noisy = apply_noise(clean, {i0, seed});
    write_sinogram_csv(noisy, out);
    std::cout << "wrote " << out << "\n";
    return 0;
}

int cmd_solve_qubo(const std::string& in, const AnnealSchedule& sched) {
    const QuboProblem q = read_qubo(in);
    const SampleResult res = anneal(q, sched);
    std::cout << "best energy " << res.best_energy << "\n";
    std::cout << "assignment ";
    for (std::uint8_t b : res.best_bits) std::cout << static_cast<int>(b);
    std::cout << "\n";
    return 0;
}

int cmd_reconstruct(const std::string& method, const std::string& kind, int size,
                    const std::string& src, int angles, double i0,
                    std::uint64_t seed, const QactConfig& qact_cfg,
                    const MlemConfig& mlem_cfg, const std::string& out_dir) {
    const Image gt = make_phantom(parse_phantom(kind, size, src));
    const Geometry geom = make_geometry(gt.n, angles);
    const SystemMatrix A = build_system_matrix(geom);
    const Sinogram gt_proj = forward_project(A, gt, geom);
    Sinogram data = gt_proj;
    if (!std::isinf(i0)) data = apply_noise(gt_proj, {i0, derive_seed(seed, 1)});

    std::filesystem::create_directories(out_dir);
    const std::string prefix = out_dir + "/" + method;

    Image recon;
    if (method == "qact") {
        QactConfig cfg = qact_cfg;
        cfg.sampler.seed = derive_seed(seed, 2);
        const QactResult result = reconstruct_qact(A, data, cfg, &gt);
        recon = result.image;

        std::ofstream trace(prefix + "_trace.csv");
        trace << "iter,energy,rmse\n";
        char buf[32];
        for (const QactTraceEntry& e : result.trace) {
            trace << e.iteration << ",";
            std::snprintf(buf, sizeof(buf), "%.17g", e.best_energy);
            trace << buf << ",";
            std::snprintf(buf, sizeof(buf), "%.17g", e.rmse);
            trace << buf << "\n";
        }
        std::cout << "wrote " << prefix << "_trace.csv\n";
    } else if (method == "mlem") {
        const MlemResult result = mlem_reconstruct(A, data, mlem_cfg, gt_proj);
        recon = result.selected;
        std::cout << "selected MLEM iterate " << result.selected_iter << "\n";
    } else if (method == "fbp") {
        recon = fbp_reconstruct(geom, data);
    } else {
        throw CLI::ValidationError("unknown method '" + method + "'");
    }

    save_image(recon, prefix);
    std::cout << "rmse vs ground truth: " << rmse(recon, gt) << "\n";
    return 0;
}

int cmd_grid(const std::string& config, const std::string& out_dir) {
    ExperimentSpec spec = parse_experiment_config(config);
    if (!out_dir.empty()) spec.out_dir = out_dir;
    const auto rows = run_grid(spec);
    std::cout << grid_csv_header() << "\n";
    for (const GridRow& row : rows) std::cout << grid_row_csv(row) << "\n";
    std::cout << "wrote " << spec.out_dir << "/results.csv\n";
    return 0;
}

int cmd_report(const std::string& trace_path, const std::string& out_prefix) {
    std::ifstream in(trace_path);
    if (!in) throw std::runtime_error("report: cannot open " + trace_path);
    QactTrace trace;
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        QactTraceEntry e;
        std::stringstream ss(line);
        std::string cell;
        std::getline(ss, cell, ',');
        e.iteration = std::stoi(cell);
        std::getline(ss, cell, ',');
        e.best_energy = std::stod(cell);
        std::getline(ss, cell, ',');
        e.rmse = std::stod(cell);
        trace.push_back(std::move(e));
    }
    convergence_report(trace, out_prefix + ".csv", out_prefix + ".pgm");
    std::cout << "wrote " << out_prefix << ".csv and " << out_prefix << ".pgm\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"QUBO-based CT reconstruction toolkit"};
    app.require_subcommand(1);

    std::string kind = "shepp", src, phantom_csv, method = "qact";
    int size = 16, angles = 36;
    double i0 = std::numeric_limits<double>::infinity();
    std::uint64_t seed = 1;
    std::string out, out_prefix = "phantom", out_dir = default_out_dir();
    std::string matrix_csv, matrix_bin, config, trace_path;
    QactConfig qact_cfg;
    MlemConfig mlem_cfg;
    AnnealSchedule sched;

    auto* phantom = app.add_subcommand("phantom", "generate a phantom image");
    phantom->add_option("--kind", kind, "block | shepp | ct | disk");
    phantom->add_option("--size", size, "image side in pixels");
    phantom->add_option("--src", src, "source PGM for --kind ct");
    phantom->add_option("--out-prefix", out_prefix, "output path prefix");

    auto* project = app.add_subcommand("project", "forward-project a phantom");
    project->add_option("--kind", kind, "block | shepp | ct");
    project->add_option("--size", size, "image side in pixels");
    project->add_option("--src", src, "source PGM for --kind ct");
    project->add_option("--phantom-csv", phantom_csv, "project this image instead");
    project->add_option("--angles", angles, "gantry angle count");
    project->add_option("--out", out, "sinogram CSV path")->required();
    project->add_option("--matrix-csv", matrix_csv, "also save the system matrix as CSV");
    project->add_option("--matrix-bin", matrix_bin, "also save the system matrix as binary");

    auto* noise = app.add_subcommand("noise", "add Poisson transmission noise");
    noise->add_option("--in", trace_path, "input sinogram CSV")->required();
    noise->add_option("--i0", i0, "source intensity in photons")->required();
    noise->add_option("--seed", seed, "RNG seed");
    noise->add_option("--out", out, "output sinogram CSV")->required();

    auto* solve = app.add_subcommand("solve-qubo", "anneal a QUBO text file");
    solve->add_option("--in", config, "QUBO text file")->required();
    solve->add_option("--sweeps", sched.n_sweeps, "sweeps per read");
    solve->add_option("--reads", sched.n_reads, "independent chains");
    solve->add_option("--beta0", sched.beta_start, "initial inverse temperature");
    solve->add_option("--beta1", sched.beta_end, "final inverse temperature");
    solve->add_option("--seed", sched.seed, "RNG seed");

    auto* recon = app.add_subcommand("reconstruct", "reconstruct a simulated scan");
    recon->add_option("--method", method, "qact | mlem | fbp");
    recon->add_option("--kind", kind, "block | shepp | ct");
    recon->add_option("--size", size, "image side in pixels");
    recon->add_option("--src", src, "source PGM for --kind ct");
    recon->add_option("--angles", angles, "gantry angle count");
    recon->add_option("--i0", i0, "source intensity; omit for noiseless");
    recon->add_option("--seed", seed, "RNG seed");
    recon->add_option("--iters", qact_cfg.n_iters, "variational iterations");
    recon->add_option("--qmax", qact_cfg.q_max, "bits per pixel");
    recon->add_option("--c", qact_cfg.c, "exponent step per iteration");
    recon->add_option("--k0", qact_cfg.k0, "initial exponent");
    recon->add_option("--d0", qact_cfg.d0, "initial offset");
    recon->add_option("--sweeps", qact_cfg.sampler.n_sweeps, "annealer sweeps");
    recon->add_option("--reads", qact_cfg.sampler.n_reads, "annealer reads");
    recon->add_option("--beta0", qact_cfg.sampler.beta_start, "annealer beta start");
    recon->add_option("--beta1", qact_cfg.sampler.beta_end, "annealer beta end");
    recon->add_option("--mlem-iters", mlem_cfg.max_iters, "MLEM iterations");
    recon->add_option("--mlem-init", mlem_cfg.x_init, "MLEM initial value");
    recon->add_option("--out-dir", out_dir, "output directory");

    auto* grid = app.add_subcommand("grid", "run an experiment grid");
    grid->add_option("--config", config, "experiment config file")->required();
    grid->add_option("--out-dir", out_dir, "output directory (overrides config)");

    auto* report = app.add_subcommand("report", "convergence report from a trace CSV");
    report->add_option("--trace", trace_path, "trace CSV from reconstruct")->required();
    report->add_option("--out-prefix", out_prefix, "output path prefix");

    CLI11_PARSE(app, argc, argv);

    try {
        if (phantom->parsed()) return cmd_phantom(kind, size, src, out_prefix);
        if (project->parsed())
            return cmd_project(kind, size, src, phantom_csv, angles, out, matrix_csv, matrix_bin);
        if (noise->parsed()) return cmd_noise(trace_path, i0, seed, out);
        if (solve->parsed()) return cmd_solve_qubo(config, sched);
        if (recon->parsed())
            return cmd_reconstruct(method, kind, size, src, angles, i0, seed, qact_cfg,
                                   mlem_cfg, out_dir);
        if (grid->parsed()) return cmd_grid(config, grid->count("--out-dir") ? out_dir : "");
        if (report->parsed()) return cmd_report(trace_path, out_prefix);
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
    return 0;
}
