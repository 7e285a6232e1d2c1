#include "qct/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "qct/fbp.hpp"
#include "qct/image_io.hpp"
#include "qct/metrics.hpp"
#include "qct/noise.hpp"
#include "qct/phantom.hpp"
#include "qct/plot.hpp"
#include "qct/rng.hpp"

namespace qct {

namespace {

namespace fs = std::filesystem;

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> items;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) items.push_back(item);
    }
    return items;
}

void warn_if_off_grid(const ExperimentSpec& spec) {
    const auto warn = [](const std::string& msg) {
        std::cerr << "warning: " << msg << " (outside the benchmark grid)\n";
    };
    for (const PhantomSpec& p : spec.phantoms) {
        if (p.n != 4 && p.n != 8 && p.n != 16 && p.n != 24) {
            warn("image size " + std::to_string(p.n));
        }
    }
    for (int a : spec.angle_counts) {
        if (a != 3 && a != 9 && a != 18 && a != 36) {
            warn("angle count " + std::to_string(a));
        }
    }
    for (double i0 : spec.i0_values) {
        if (std::isinf(i0)) continue;
        if (!(i0 >= 10.0 && i0 <= 1e6)) warn("i0 " + format_i0(i0));
    }
    for (const std::string& m : spec.methods) {
        if (m != "qact" && m != "mlem" && m != "fbp") {
            throw std::invalid_argument("run_grid: unknown method '" + m + "'");
        }
    }
}

std::string job_tag(const std::string& phantom, int n_angles, double i0,
                    std::uint64_t seed, const std::string& method) {
    std::ostringstream os;
    os << phantom << "_a" << n_angles << "_i0" << format_i0(i0) << "_s" << seed
       << "_" << method;
    return os.str();
}

}  // namespace

std::string PhantomSpec::name() const {
    switch (kind) {
        case PhantomKind::Block4:
            return "block4";
        case PhantomKind::SheppLogan:
            return "shepp" + std::to_string(n);
        case PhantomKind::CtImage:
            return "ct" + std::to_string(n);
    }
    return "unknown";
}

Image make_phantom(const PhantomSpec& spec) {
    switch (spec.kind) {
        case PhantomKind::Block4:
            return make_block_phantom();
        case PhantomKind::SheppLogan:
            return make_shepp_logan(spec.n);
        case PhantomKind::CtImage:
            return make_ct_phantom(spec.source_path, spec.n);
    }
    throw std::invalid_argument("make_phantom: unknown kind");
}

std::string format_i0(double i0) {
    if (std::isinf(i0)) return "inf";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", i0);
    return buf;
}

std::string grid_csv_header() {
    return "phantom,n,n_angles,i0,method,seed,rmse,seconds";
}

std::string grid_row_csv(const GridRow& row) {
    char rmse_buf[32];
    std::snprintf(rmse_buf, sizeof(rmse_buf), "%.17g", row.rmse);
    char sec_buf[32];
    std::snprintf(sec_buf, sizeof(sec_buf), "%.3f", row.seconds);
    std::ostringstream os;
    os << row.phantom << "," << row.n << "," << row.n_angles << ","
       << format_i0(row.i0) << "," << row.method << "," << row.seed << ","
       << rmse_buf << "," << sec_buf;
    return os.str();
}

void write_grid_csv(const std::vector<GridRow>& rows, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("grid: cannot write " + path);
    out << grid_csv_header() << "\n";
    for (const GridRow& row : rows) out << grid_row_csv(row) << "\n";
}

std::vector<GridRow> run_grid(const ExperimentSpec& spec) {
    if (spec.phantoms.empty()) throw std::invalid_argument("run_grid: no phantoms");
    if (spec.seeds.empty()) throw std::invalid_argument("run_grid: no seeds");
    warn_if_off_grid(spec);
    if (spec.write_images || spec.write_montages) {
        fs::create_directories(spec.out_dir);
    }

    std::vector<GridRow> rows;
    for (const PhantomSpec& pspec : spec.phantoms) {
        const Image gt = make_phantom(pspec);
        for (int n_angles : spec.angle_counts) {
            const Geometry geom = make_geometry(gt.n, n_angles);
            const SystemMatrix A = build_system_matrix(geom);
            const Sinogram gt_proj = forward_project(A, gt, geom);

            for (double i0 : spec.i0_values) {
                std::vector<Image> montage_tiles{gt};
                bool first_seed = true;
                for (std::uint64_t seed : spec.seeds) {
                    Sinogram data = gt_proj;
                    if (!std::isinf(i0)) {
                        data = apply_noise(gt_proj, {i0, derive_seed(seed, 1)});
                    }

                    for (const std::string& method : spec.methods) {
                        const auto t0 = std::chrono::steady_clock::now();
                        Image recon;
                        if (method == "qact") {
                            QactConfig cfg = spec.qact;
                            cfg.sampler.seed = derive_seed(seed, 2);
                            recon = reconstruct_qact(A, data, cfg, &gt).image;
                        } else if (method == "mlem") {
                            recon = mlem_reconstruct(A, data, spec.mlem, gt_proj).selected;
                        } else {
                            recon = fbp_reconstruct(geom, data);
                        }
                        const auto t1 = std::chrono::steady_clock::now();

                        GridRow row;
                        row.phantom = pspec.name();
                        row.n = gt.n;
                        row.n_angles = n_angles;
                        row.i0 = i0;
                        row.method = method;
                        row.seed = seed;
                        row.rmse = rmse(recon, gt);
                        row.seconds = std::chrono::duration<double>(t1 - t0).count();
                        rows.push_back(row);

                        if (spec.write_images) {
                            const std::string tag =
                                job_tag(pspec.name(), n_angles, i0, seed, method);
                            write_image_csv(recon, spec.out_dir + "/" + tag + ".csv");
                            write_pgm16(recon, spec.out_dir + "/" + tag + ".pgm");
                        }
                        if (first_seed) montage_tiles.push_back(recon);
                    }
                    first_seed = false;
                }
                if (spec.write_montages && montage_tiles.size() > 1) {
                    std::ostringstream os;
                    os << spec.out_dir << "/montage_" << pspec.name() << "_a"
                       << n_angles << "_i0" << format_i0(i0) << ".pgm";
                    write_montage(montage_tiles, os.str());
                }
            }
        }
    }

    if (spec.write_images || spec.write_montages) {
        write_grid_csv(rows, spec.out_dir + "/results.csv");
    }
    return rows;
}

void convergence_report(const QactTrace& trace, const std::string& csv_path,
                        const std::string& plot_path) {
    if (trace.empty()) throw std::invalid_argument("convergence_report: empty trace");
    std::ofstream out(csv_path);
    if (!out) throw std::runtime_error("convergence_report: cannot write " + csv_path);
    out << "iteration,rmse,energy\n";
    char buf[32];
    std::vector<double> rmse_curve;
    rmse_curve.reserve(trace.size());
    for (const QactTraceEntry& e : trace) {
        out << e.iteration << ",";
        std::snprintf(buf, sizeof(buf), "%.17g", e.rmse);
        out << buf << ",";
        std::snprintf(buf, sizeof(buf), "%.17g", e.best_energy);
        out << buf << "\n";
        rmse_curve.push_back(e.rmse);
    }
    write_line_plot(rmse_curve, plot_path);
}

ExperimentSpec parse_experiment_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open " + path);

    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error("config: expected key = value, got '" + line + "'");
        }
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }

    ExperimentSpec spec;
    const std::string ct_source = kv.count("ct_source") ? kv["ct_source"] : "";
    if (kv.count("phantom")) {
        spec.phantoms.clear();
        for (const std::string& item : split_list(kv["phantom"])) {
            PhantomSpec p;
            const auto colon = item.find(':');
            const std::string kind = colon == std::string::npos ? item : item.substr(0, colon);
            if (colon != std::string::npos) p.n = std::stoi(item.substr(colon + 1));
            if (kind == "block") {
                p.kind = PhantomKind::Block4;
                p.n = 4;
            } else if (kind == "shepp") {
                p.kind = PhantomKind::SheppLogan;
            } else if (kind == "ct") {
                p.kind = PhantomKind::CtImage;
                p.source_path = ct_source;
                if (ct_source.empty()) {
                    throw std::runtime_error("config: ct phantom needs ct_source");
                }
            } else {
                throw std::runtime_error("config: unknown phantom '" + item + "'");
            }
            spec.phantoms.push_back(p);
        }
    }
    if (kv.count("angles")) {
        spec.angle_counts.clear();
        for (const auto& s : split_list(kv["angles"])) spec.angle_counts.push_back(std::stoi(s));
    }
    if (kv.count("i0")) {
        spec.i0_values.clear();
        for (const auto& s : split_list(kv["i0"])) {
            spec.i0_values.push_back(
                s == "inf" ? std::numeric_limits<double>::infinity() : std::stod(s));
        }
    }
    if (kv.count("methods")) spec.methods = split_list(kv["methods"]);
    if (kv.count("seeds")) {
        spec.seeds.clear();
        for (const auto& s : split_list(kv["seeds"])) spec.seeds.push_back(std::stoull(s));
    }
    if (kv.count("iters")) spec.qact.n_iters = std::stoi(kv["iters"]);
    if (kv.count("qmax")) spec.qact.q_max = std::stoi(kv["qmax"]);
    if (kv.count("c")) spec.qact.c = std::stod(kv["c"]);
    if (kv.count("k0")) spec.qact.k0 = std::stod(kv["k0"]);
    if (kv.count("d0")) spec.qact.d0 = std::stod(kv["d0"]);
    if (kv.count("sweeps")) spec.qact.sampler.n_sweeps = std::stoi(kv["sweeps"]);
    if (kv.count("reads")) spec.qact.sampler.n_reads = std::stoi(kv["reads"]);
    if (kv.count("beta0")) spec.qact.sampler.beta_start = std::stod(kv["beta0"]);
    if (kv.count("beta1")) spec.qact.sampler.beta_end = std::stod(kv["beta1"]);
    if (kv.count("mlem_iters")) spec.mlem.max_iters = std::stoi(kv["mlem_iters"]);
    if (kv.count("mlem_init")) spec.mlem.x_init = std::stod(kv["mlem_init"]);
    if (kv.count("out_dir")) {
        spec.out_dir = kv["out_dir"];
    } else if (const char* env = std::getenv("QCT_OUT_DIR")) {
        spec.out_dir = env;
    }
    return spec;
}

void write_montage(const std::vector<Image>& tiles, const std::string& path) {
    if (tiles.empty()) throw std::invalid_argument("montage: no tiles");
    const int n = tiles.front().n;
    for (const Image& t : tiles) {
        if (t.n != n) throw std::invalid_argument("montage: tiles differ in size");
    }
    const int count = static_cast<int>(tiles.size());
    const int width = count * n + (count - 1);

    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("montage: cannot write " + path);
    out << "P5\n" << width << " " << n << "\n65535\n";
    const auto put16 = [&](std::uint16_t v) {
        out.put(static_cast<char>(v >> 8));
        out.put(static_cast<char>(v & 0xFF));
    };
    for (int r = 0; r < n; ++r) {
        for (int t = 0; t < count; ++t) {
            for (int c = 0; c < n; ++c) {
                const double clamped = std::clamp(tiles[t].at(r, c), 0.0, 1.0);
                put16(static_cast<std::uint16_t>(std::lround(clamped * 65535.0)));
            }
            if (t + 1 < count) put16(65535);
        }
    }
    if (!out) throw std::runtime_error("montage: write failed for " + path);
}

}  // namespace qct
